#pragma once

#include "patchcert/certifiers.hpp"
#include "patchcert/geometry.hpp"
#include "patchcert/types.hpp"
#include "patchcert/votes.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace patchcert {

using BigInt = boost::multiprecision::cpp_int;

// One attacker vote allocation: extra votes per label (any label, including
// the true one — the oracle assumes nothing about attacker rationality).
struct Allocation {
    std::vector<Count> per_label;

    Count total() const;
};

// Size limits for exhaustive enumeration; anything beyond them throws
// OracleTooLarge. max_states additionally bounds the number of allocations
// a single min-cost search may visit.
struct OracleCaps {
    Label max_labels = 6;
    Count max_budget = 8;
    Count max_total_alpha = 16;
    BigInt max_states = 20'000'000;
};

// Exact minimum total of extra votes that makes more than k labels
// (including y0) reach vote counts >= y0's, found by enumerating all
// allocations in nondecreasing total order. Returns TieCost::infeasible()
// when no allocation can (k >= num_labels).
TieCost oracle_min_push_cost(const CleanLevel& clean, Label y0, int k,
                             const OracleCaps& caps = {});

// True iff some assignment of the region's q overlapped votes to arbitrary
// labels leaves at least k rivals with votes >= y0's (conservative ties:
// y0 ranks after equal-vote rivals).
bool oracle_attack_feasible(const SampleVotes& sample, const PatchRegion& region,
                            const AblationScheme& scheme, const LabelSpace& labels,
                            int k, const OracleCaps& caps = {});

// Same search on a prebuilt clean level; overlap_count is the attacker's
// vote budget.
bool oracle_attack_feasible(const CleanLevel& clean, Label y0, int k,
                            const OracleCaps& caps = {});

// Number of ways to distribute q indistinguishable votes over num_labels
// labels: C(q + num_labels - 1, num_labels - 1), exact.
BigInt allocation_count(Count q, Label num_labels);

}  // namespace patchcert
