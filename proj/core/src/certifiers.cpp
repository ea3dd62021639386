#include "patchcert/certifiers.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace patchcert {

std::string to_string(Analyzer a) {
    switch (a) {
        case Analyzer::costcert: return "costcert";
        case Analyzer::strategy1: return "strategy1";
        case Analyzer::strategy2: return "strategy2";
    }
    return "?";
}

Analyzer parse_analyzer(const std::string& s) {
    if (s == "costcert") return Analyzer::costcert;
    if (s == "strategy1") return Analyzer::strategy1;
    if (s == "strategy2") return Analyzer::strategy2;
    throw ConfigError("unknown analyzer '" + s + "' (expected costcert|strategy1|strategy2)");
}

std::string to_string(BudgetMode m) {
    return m == BudgetMode::global_delta ? "global" : "per-patch";
}

BudgetMode parse_budget_mode(const std::string& s) {
    if (s == "global") return BudgetMode::global_delta;
    if (s == "per-patch") return BudgetMode::per_patch;
    throw ConfigError("unknown budget mode '" + s + "' (expected global|per-patch)");
}

int conservative_rank_n(const CleanLevel& clean, Label y0) {
    const Count a0 = clean.alpha_of(y0);
    if (a0 == 0) return static_cast<int>(clean.num_labels);
    int n = 0;
    for (const auto& [_, c] : clean.alpha) {
        if (c >= a0) ++n;
    }
    return n;
}

TieCost smallest_tie_cost(const CleanLevel& clean, Label y0, int k) {
    if (k < 1 || k >= clean.num_labels) {
        throw ConfigError("tie cost: k must satisfy 1 <= k < num_labels, got k=" +
                          std::to_string(k) + " with " + std::to_string(clean.num_labels) +
                          " labels");
    }
    const Count a0 = clean.alpha_of(y0);
    const int n = conservative_rank_n(clean, y0);
    if (n - 1 >= k) return TieCost::of(0);

    const Count need = static_cast<Count>(k - n + 1);
    std::vector<Count> below;
    below.reserve(clean.alpha.size());
    for (const auto& [_, c] : clean.alpha) {
        if (c < a0) below.push_back(c);
    }
    std::sort(below.begin(), below.end(), std::greater<>());
    const Count zero_labels =
        static_cast<Count>(clean.num_labels) - n - static_cast<Count>(below.size());
    if (static_cast<Count>(below.size()) + zero_labels < need) {
        return TieCost::infeasible_cost();
    }
    Count sum = 0;
    for (Count i = 0; i < need && i < static_cast<Count>(below.size()); ++i) {
        sum += below[static_cast<std::size_t>(i)];
    }
    return TieCost::of(need * a0 - sum);
}

namespace {

// Sliding clean-level scan over all canonical regions of one sample. The
// alpha counts start at the full tally; advancing the region by one column
// moves at most two bands across the window boundary, so every update is
// O(1) and the per-region queries walk the count histogram instead of
// sorting.
class RegionScanner {
public:
    RegionScanner(const SampleVotes& sample, const AblationScheme& scheme,
                  const LabelSpace& labels)
        : votes_(sample.mutant_labels),
          num_regions_(scheme.num_regions()),
          num_labels_(labels.num_labels),
          wrap_(scheme.wrap),
          band_width_(scheme.band_width),
          image_width_(scheme.image_width),
          alpha_(static_cast<std::size_t>(labels.num_labels), 0),
          bucket_(static_cast<std::size_t>(scheme.num_regions()) + 1, 0) {
        for (Label y : votes_) {
            Count& a = alpha_[static_cast<std::size_t>(y)];
            if (a > 0) --bucket_[static_cast<std::size_t>(a)];
            ++a;
            ++bucket_[static_cast<std::size_t>(a)];
            if (a == 1) ++positive_;
        }
    }

    // Calls fn(region, overlap_count) for every canonical region in order,
    // with the scanner's alpha state set to that region's clean level.
    template <typename Fn>
    void for_each_region(const PatchSpec& patch, Fn&& fn) {
        const int m = patch.side;
        const int last_start = image_width_ - m;
        long long lo = window_lo(0), hi = window_hi(0, m);
        for (long long p = lo; p <= hi; ++p) hide(band_at(p));
        fn(PatchRegion{0, m - 1, true}, static_cast<Count>(hi - lo + 1));
        for (int start = 1; start <= last_start; ++start) {
            const long long nlo = window_lo(start), nhi = window_hi(start, m);
            for (long long p = lo; p < nlo; ++p) unhide(band_at(p));
            for (long long p = hi + 1; p <= nhi; ++p) hide(band_at(p));
            lo = nlo;
            hi = nhi;
            fn(PatchRegion{start, start + m - 1, true}, static_cast<Count>(hi - lo + 1));
        }
        for (long long p = lo; p <= hi; ++p) unhide(band_at(p));
    }

    Count alpha_of(Label y) const { return alpha_[static_cast<std::size_t>(y)]; }

    // |{y : alpha[y] >= a0}| for the current region, a0 >= 1.
    int labels_at_or_above(Count a0) const {
        int n = 0;
        for (Count c = a0; c <= static_cast<Count>(num_regions_); ++c) {
            n += bucket_[static_cast<std::size_t>(c)];
        }
        return n;
    }

    // Smallest k for which the tie cost exceeds `budget` at the current
    // region, or num_labels if no k < num_labels does.
    int region_mink(Label y0, Count budget) const {
        const Count a0 = alpha_of(y0);
        if (a0 == 0) return static_cast<int>(num_labels_);
        const long long n = labels_at_or_above(a0);
        long long cost = 0;
        long long taken = 0;
        for (Count c = a0 - 1; c >= 1; --c) {
            const long long at_c = bucket_[static_cast<std::size_t>(c)];
            if (at_c == 0) continue;
            const Count per = a0 - c;
            if (cost + per * at_c > budget) {
                const long long extra = (budget - cost) / per + 1;
                return static_cast<int>(n - 1 + taken + extra);
            }
            cost += per * at_c;
            taken += at_c;
        }
        const long long zeros = static_cast<long long>(num_labels_) - positive_;
        if (zeros > 0) {
            const long long extra = (budget - cost) / a0 + 1;
            if (extra <= zeros) return static_cast<int>(n - 1 + taken + extra);
        }
        return static_cast<int>(num_labels_);
    }

    // Tie cost at a specific k for the current region.
    TieCost region_cost(Label y0, int k) const {
        const Count a0 = alpha_of(y0);
        const long long n = (a0 == 0) ? num_labels_ : labels_at_or_above(a0);
        if (n - 1 >= k) return TieCost::of(0);
        const long long need = k - n + 1;
        long long sum = 0;
        long long taken = 0;
        for (Count c = a0 - 1; c >= 1 && taken < need; --c) {
            const long long t =
                std::min<long long>(bucket_[static_cast<std::size_t>(c)], need - taken);
            sum += static_cast<long long>(c) * t;
            taken += t;
        }
        if (taken < need) {
            const long long zeros = static_cast<long long>(num_labels_) - positive_;
            if (taken + zeros < need) return TieCost::infeasible_cost();
        }
        return TieCost::of(static_cast<Count>(need * a0 - sum));
    }

    // |{y != y0 : overlap + alpha[y] >= alpha[y0]}| for the current region.
    int region_exceeders(Label y0, Count overlap) const {
        const Count a0 = alpha_of(y0);
        const Count threshold = a0 - overlap;
        if (threshold <= 0) return static_cast<int>(num_labels_) - 1;
        return labels_at_or_above(threshold) - 1;
    }

private:
    long long window_lo(int start) const {
        if (wrap_) return static_cast<long long>(start) - band_width_ + 1;
        return std::max(0LL, static_cast<long long>(start) - band_width_ + 1);
    }
    long long window_hi(int start, int side) const {
        const long long end = static_cast<long long>(start) + side - 1;
        if (wrap_) {
            // A window spanning >= num_regions bands covers everything.
            return std::min(end, window_lo(start) + num_regions_ - 1);
        }
        return std::min<long long>(num_regions_ - 1, end);
    }
    int band_at(long long pos) const {
        if (!wrap_) return static_cast<int>(pos);
        long long r = pos % num_regions_;
        if (r < 0) r += num_regions_;
        return static_cast<int>(r);
    }

    void hide(int band) {
        Count& a = alpha_[static_cast<std::size_t>(votes_[static_cast<std::size_t>(band)])];
        --bucket_[static_cast<std::size_t>(a)];
        --a;
        if (a > 0) {
            ++bucket_[static_cast<std::size_t>(a)];
        } else {
            --positive_;
        }
    }
    void unhide(int band) {
        Count& a = alpha_[static_cast<std::size_t>(votes_[static_cast<std::size_t>(band)])];
        if (a > 0) {
            --bucket_[static_cast<std::size_t>(a)];
        } else {
            ++positive_;
        }
        ++a;
        ++bucket_[static_cast<std::size_t>(a)];
    }

    const std::vector<Label>& votes_;
    int num_regions_;
    Label num_labels_;
    bool wrap_;
    int band_width_;
    int image_width_;
    std::vector<Count> alpha_;
    std::vector<int> bucket_;  // bucket_[c] = #labels with alpha == c, c >= 1
    long long positive_ = 0;
};

int clamp_mink(long long mink, Label num_labels) {
    return static_cast<int>(std::min<long long>(mink, num_labels));
}

void validate_costcert_k(int k, Label num_labels) {
    if (k < 1 || k >= num_labels) {
        throw ConfigError("certify: k must satisfy 1 <= k < num_labels, got k=" +
                          std::to_string(k) + " with " + std::to_string(num_labels) +
                          " labels");
    }
}

}  // namespace

CertOutcome costcert_certify(const SampleVotes& sample, const AblationScheme& scheme,
                             const LabelSpace& labels, const PatchSpec& patch, int k,
                             BudgetMode budget, bool collect_costs) {
    validate_costcert_k(k, labels.num_labels);
    sample.validate(scheme, labels);
    const Count delta = compute_delta(scheme, patch);

    RegionScanner scan(sample, scheme, labels);
    CertOutcome out;
    out.analyzer = Analyzer::costcert;
    out.k = k;
    if (collect_costs) out.per_patch_costs.emplace();

    bool all_exceed = true;
    int analysis_mink = 1;
    Count best_margin = std::numeric_limits<Count>::max();
    scan.for_each_region(patch, [&](const PatchRegion& region, Count overlap) {
        const Count b = (budget == BudgetMode::global_delta) ? delta : overlap;
        const TieCost cost = scan.region_cost(sample.true_label, k);
        if (!cost.exceeds(b)) all_exceed = false;
        analysis_mink = std::max(analysis_mink, scan.region_mink(sample.true_label, b));
        if (collect_costs) out.per_patch_costs->emplace_back(region, cost);
        const Count margin =
            cost.infeasible ? std::numeric_limits<Count>::max() : cost.value - b;
        if (margin < best_margin) {
            best_margin = margin;
            out.binding_region = region;
        }
    });

    const int rank = rank_of_label(vote_confidence(sample), sample.true_label, labels);
    out.mink = clamp_mink(std::max<long long>(analysis_mink, rank), labels.num_labels);
    out.certified = all_exceed && rank <= k;
    assert(out.certified == (k >= out.mink));
    return out;
}

int costcert_mink(const SampleVotes& sample, const AblationScheme& scheme,
                  const LabelSpace& labels, const PatchSpec& patch, BudgetMode budget) {
    sample.validate(scheme, labels);
    const Count delta = compute_delta(scheme, patch);

    RegionScanner scan(sample, scheme, labels);
    long long analysis_mink = 1;
    scan.for_each_region(patch, [&](const PatchRegion&, Count overlap) {
        const Count b = (budget == BudgetMode::global_delta) ? delta : overlap;
        analysis_mink =
            std::max<long long>(analysis_mink, scan.region_mink(sample.true_label, b));
    });
    const int rank = rank_of_label(vote_confidence(sample), sample.true_label, labels);
    return clamp_mink(std::max<long long>(analysis_mink, rank), labels.num_labels);
}

Strategy2Bounds strategy2_bounds(const SampleVotes& sample, const PatchRegion& region,
                                 const AblationScheme& scheme, const LabelSpace& labels) {
    return Strategy2Bounds{clean_level(sample, region, scheme, labels)};
}

CertOutcome strategy2_certify(const SampleVotes& sample, const AblationScheme& scheme,
                              const LabelSpace& labels, const PatchSpec& patch, int k) {
    if (k < 1 || k > labels.num_labels) {
        throw ConfigError("certify: k must satisfy 1 <= k <= num_labels");
    }
    sample.validate(scheme, labels);
    patch.validate(scheme);

    RegionScanner scan(sample, scheme, labels);
    int max_exceeders = -1;
    CertOutcome out;
    out.analyzer = Analyzer::strategy2;
    out.k = k;
    scan.for_each_region(patch, [&](const PatchRegion& region, Count overlap) {
        const int e = scan.region_exceeders(sample.true_label, overlap);
        if (e > max_exceeders) {
            max_exceeders = e;
            out.binding_region = region;
        }
    });

    const int rank = rank_of_label(vote_confidence(sample), sample.true_label, labels);
    out.mink =
        clamp_mink(std::max<long long>(max_exceeders + 1, rank), labels.num_labels);
    out.certified = max_exceeders < k && rank <= k;
    return out;
}

int strategy2_mink(const SampleVotes& sample, const AblationScheme& scheme,
                   const LabelSpace& labels, const PatchSpec& patch) {
    sample.validate(scheme, labels);
    patch.validate(scheme);
    RegionScanner scan(sample, scheme, labels);
    long long max_exceeders = 0;
    scan.for_each_region(patch, [&](const PatchRegion&, Count overlap) {
        max_exceeders = std::max<long long>(
            max_exceeders, scan.region_exceeders(sample.true_label, overlap));
    });
    const int rank = rank_of_label(vote_confidence(sample), sample.true_label, labels);
    return clamp_mink(std::max<long long>(max_exceeders + 1, rank), labels.num_labels);
}

bool strategy1_certify(const SampleVotes& sample, Count delta) {
    const VoteConfidence conf = vote_confidence(sample);
    const Count v0 = conf.of(sample.true_label);
    Count best_other = 0;
    for (const auto& [y, c] : conf.counts) {
        if (y != sample.true_label) best_other = std::max(best_other, c);
    }
    return v0 > best_other + 2 * delta;
}

SampleAnalysis analyze_sample(const SampleVotes& sample, const AblationScheme& scheme,
                              const LabelSpace& labels, const PatchSpec& patch,
                              BudgetMode budget) {
    sample.validate(scheme, labels);
    const Count delta = compute_delta(scheme, patch);

    RegionScanner scan(sample, scheme, labels);
    long long cc_mink = 1;
    long long s2_exceeders = 0;
    scan.for_each_region(patch, [&](const PatchRegion&, Count overlap) {
        const Count b = (budget == BudgetMode::global_delta) ? delta : overlap;
        cc_mink = std::max<long long>(cc_mink, scan.region_mink(sample.true_label, b));
        s2_exceeders = std::max<long long>(
            s2_exceeders, scan.region_exceeders(sample.true_label, overlap));
    });

    SampleAnalysis a;
    a.true_label_rank = rank_of_label(vote_confidence(sample), sample.true_label, labels);
    a.costcert_mink =
        clamp_mink(std::max<long long>(cc_mink, a.true_label_rank), labels.num_labels);
    a.strategy2_mink = clamp_mink(
        std::max<long long>(s2_exceeders + 1, a.true_label_rank), labels.num_labels);
    a.strategy1_pass = strategy1_certify(sample, delta);
    return a;
}

}  // namespace patchcert
