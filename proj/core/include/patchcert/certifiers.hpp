#pragma once

#include "patchcert/geometry.hpp"
#include "patchcert/types.hpp"
#include "patchcert/votes.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace patchcert {

enum class Analyzer { costcert, strategy1, strategy2 };

std::string to_string(Analyzer a);
Analyzer parse_analyzer(const std::string& s);

// What the attacker's vote budget is compared against per patch region:
// the global attack budget (the default), or the region's own overlap
// count, which is never larger and therefore certifies at least as much.
enum class BudgetMode { global_delta, per_patch };

std::string to_string(BudgetMode m);
BudgetMode parse_budget_mode(const std::string& s);

// Minimum number of extra votes, on top of the clean level, that pushes the
// true label out of the top k under conservative ties. INFEASIBLE means no
// allocation whatsoever can do it; it compares greater than any budget.
struct TieCost {
    Count value = 0;
    bool infeasible = false;

    static TieCost of(Count v) { return TieCost{v, false}; }
    static TieCost infeasible_cost() { return TieCost{0, true}; }

    bool exceeds(Count budget) const { return infeasible || value > budget; }

    friend bool operator==(const TieCost&, const TieCost&) = default;
};

struct CertOutcome {
    Analyzer analyzer = Analyzer::costcert;
    int k = 0;
    bool certified = false;
    // Smallest k' for which this analyzer certifies the sample, saturated at
    // num_labels (a trivial certificate). Includes the requirement that the
    // true label be top-k' correct, so certified == (k >= mink).
    int mink = 0;
    std::optional<std::vector<std::pair<PatchRegion, TieCost>>> per_patch_costs;
    // A region attaining the minimum margin over the budget (the binding
    // constraint); unset when there are no regions to bind.
    std::optional<PatchRegion> binding_region;
};

// Number of labels whose clean vote is >= the true label's, counting the
// true label itself; labels with zero clean votes count when the true
// label's clean vote is zero.
int conservative_rank_n(const CleanLevel& clean, Label y0);

// Cost to make k+1 labels (including y0) reach y0's clean vote: zero when
// y0 already sits below position k at the clean level, otherwise
// (k-n+1) * alpha[y0] minus the sum of the k-n+1 largest clean votes
// strictly below alpha[y0]. Throws ConfigError unless 1 <= k < num_labels.
TieCost smallest_tie_cost(const CleanLevel& clean, Label y0, int k);

CertOutcome costcert_certify(const SampleVotes& sample, const AblationScheme& scheme,
                             const LabelSpace& labels, const PatchSpec& patch, int k,
                             BudgetMode budget = BudgetMode::global_delta,
                             bool collect_costs = false);

int costcert_mink(const SampleVotes& sample, const AblationScheme& scheme,
                  const LabelSpace& labels, const PatchSpec& patch,
                  BudgetMode budget = BudgetMode::global_delta);

// Per-region vote bounds used by the pairwise baseline: the lower bound of a
// label's votes keeps only non-overlapping mutants, the upper bound grants
// the label every overlapping mutant on top.
struct Strategy2Bounds {
    CleanLevel clean;

    Count lower(Label y) const { return clean.alpha_of(y); }
    Count upper(Label y) const { return clean.overlap_count + clean.alpha_of(y); }
};

Strategy2Bounds strategy2_bounds(const SampleVotes& sample, const PatchRegion& region,
                                 const AblationScheme& scheme, const LabelSpace& labels);

// Pairwise bound baseline: certified iff for every region fewer than k
// rival labels have upper bound >= y0's lower bound. Accepts 1 <= k <=
// num_labels (k = num_labels is vacuously true).
CertOutcome strategy2_certify(const SampleVotes& sample, const AblationScheme& scheme,
                              const LabelSpace& labels, const PatchSpec& patch, int k);

int strategy2_mink(const SampleVotes& sample, const AblationScheme& scheme,
                   const LabelSpace& labels, const PatchSpec& patch);

// Top-1 margin baseline on raw vote confidences: certified iff
// v[y0] > max_{y != y0} v[y] + 2 * delta.
bool strategy1_certify(const SampleVotes& sample, Count delta);

// One pass over all canonical regions of one sample, producing everything
// the dataset sweep needs for a given patch size.
struct SampleAnalysis {
    int costcert_mink = 0;
    int strategy2_mink = 0;
    bool strategy1_pass = false;
    int true_label_rank = 0;  // operational rank of y0 in g(x)
};

SampleAnalysis analyze_sample(const SampleVotes& sample, const AblationScheme& scheme,
                              const LabelSpace& labels, const PatchSpec& patch,
                              BudgetMode budget = BudgetMode::global_delta);

}  // namespace patchcert
