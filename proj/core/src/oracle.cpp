#include "patchcert/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace patchcert {

Count Allocation::total() const {
    return std::accumulate(per_label.begin(), per_label.end(), Count{0});
}

namespace {

// Dense clean-vote vector for a small instance.
std::vector<Count> dense_alpha(const CleanLevel& clean) {
    std::vector<Count> a(static_cast<std::size_t>(clean.num_labels), 0);
    for (const auto& [y, c] : clean.alpha) a[static_cast<std::size_t>(y)] = c;
    return a;
}

// More than k labels (y0 included) with adjusted votes >= y0's?
bool pushed_out(const std::vector<Count>& adjusted, Label y0, int k) {
    const Count v0 = adjusted[static_cast<std::size_t>(y0)];
    int at_or_above = 0;
    for (Count v : adjusted) {
        if (v >= v0) ++at_or_above;
    }
    return at_or_above > k;
}

// Enumerates every way to add exactly `remaining` votes to labels
// `from`..end, invoking check() at each complete allocation. Returns true as
// soon as check() does.
template <typename Check>
bool enumerate_allocations(std::vector<Count>& adjusted, std::size_t from, Count remaining,
                           const Check& check) {
    if (from + 1 == adjusted.size()) {
        adjusted[from] += remaining;
        const bool hit = check(adjusted);
        adjusted[from] -= remaining;
        return hit;
    }
    for (Count take = 0; take <= remaining; ++take) {
        adjusted[from] += take;
        const bool hit = enumerate_allocations(adjusted, from + 1, remaining - take, check);
        adjusted[from] -= take;
        if (hit) return true;
    }
    return false;
}

void check_instance_caps(const CleanLevel& clean, const OracleCaps& caps) {
    if (clean.num_labels > caps.max_labels) {
        throw OracleTooLarge("oracle: " + std::to_string(clean.num_labels) +
                             " labels exceeds cap " + std::to_string(caps.max_labels));
    }
    Count total = 0;
    for (const auto& [_, c] : clean.alpha) total += c;
    if (total > caps.max_total_alpha) {
        throw OracleTooLarge("oracle: total clean votes " + std::to_string(total) +
                             " exceeds cap " + std::to_string(caps.max_total_alpha));
    }
}

}  // namespace

TieCost oracle_min_push_cost(const CleanLevel& clean, Label y0, int k,
                             const OracleCaps& caps) {
    if (k < 1) throw ConfigError("oracle: k must be >= 1");
    check_instance_caps(clean, caps);
    if (k >= clean.num_labels) {
        // Fewer than k+1 labels exist, so no allocation can place k+1 of
        // them at or above y0.
        return TieCost::infeasible_cost();
    }

    std::vector<Count> adjusted = dense_alpha(clean);
    // Adding alpha[y0] votes to each of any k rival labels always works, so
    // the search is bounded.
    const Count bound = static_cast<Count>(k) * adjusted[static_cast<std::size_t>(y0)];
    if (allocation_count(bound, clean.num_labels + 1) > caps.max_states) {
        throw OracleTooLarge("oracle: search space for total <= " + std::to_string(bound) +
                             " over " + std::to_string(clean.num_labels) +
                             " labels exceeds the state cap");
    }
    const auto check = [&](const std::vector<Count>& a) { return pushed_out(a, y0, k); };
    for (Count total = 0; total <= bound; ++total) {
        if (enumerate_allocations(adjusted, 0, total, check)) {
            return TieCost::of(total);
        }
    }
    throw std::logic_error("oracle: no allocation within the guaranteed bound succeeded");
}

bool oracle_attack_feasible(const SampleVotes& sample, const PatchRegion& region,
                            const AblationScheme& scheme, const LabelSpace& labels,
                            int k, const OracleCaps& caps) {
    return oracle_attack_feasible(clean_level(sample, region, scheme, labels),
                                  sample.true_label, k, caps);
}

bool oracle_attack_feasible(const CleanLevel& clean, Label y0, int k,
                            const OracleCaps& caps) {
    if (k < 1) throw ConfigError("oracle: k must be >= 1");
    check_instance_caps(clean, caps);
    if (clean.overlap_count > caps.max_budget) {
        throw OracleTooLarge("oracle: region overlaps " +
                             std::to_string(clean.overlap_count) +
                             " mutants, exceeding cap " + std::to_string(caps.max_budget));
    }

    std::vector<Count> adjusted = dense_alpha(clean);
    const auto outside_topk = [&](const std::vector<Count>& a) {
        const Count v0 = a[static_cast<std::size_t>(y0)];
        int rivals = 0;
        for (std::size_t y = 0; y < a.size(); ++y) {
            if (static_cast<Label>(y) != y0 && a[y] >= v0) ++rivals;
        }
        return rivals >= k;
    };
    return enumerate_allocations(adjusted, 0, clean.overlap_count, outside_topk);
}

BigInt allocation_count(Count q, Label num_labels) {
    if (q < 0) throw ConfigError("allocation count: q must be >= 0");
    if (num_labels < 1) throw ConfigError("allocation count: need at least one label");
    // C(q + L - 1, L - 1)
    BigInt result = 1;
    const Count n = q + num_labels - 1;
    const Count r = std::min<Count>(num_labels - 1, q);
    for (Count i = 1; i <= r; ++i) {
        result *= (n - r + i);
        result /= i;
    }
    return result;
}

}  // namespace patchcert
