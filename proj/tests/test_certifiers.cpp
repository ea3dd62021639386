#include "patchcert/certifiers.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace patchcert;

namespace {

CleanLevel make_level(std::vector<std::pair<Label, Count>> alpha, Label num_labels,
                      Count overlap = 0) {
    std::sort(alpha.begin(), alpha.end());
    return CleanLevel{PatchRegion{0, 0, true}, std::move(alpha), overlap, num_labels};
}

SampleVotes seventeen_mutant_sample() {
    std::vector<Label> votes(17, 0);
    std::fill_n(votes.begin(), 4, 1);
    std::fill_n(votes.begin() + 13, 4, 2);
    return SampleVotes{"fig", 0, std::move(votes)};
}

// Reference min-k built from the one-region public operations; the
// production path uses an incremental scan, so agreement here is a real
// dual-route check.
int reference_costcert_mink(const SampleVotes& sample, const AblationScheme& scheme,
                            const LabelSpace& labels, const PatchSpec& patch,
                            BudgetMode budget) {
    const Count delta = compute_delta(scheme, patch);
    long long worst = 1;
    for (const PatchRegion& region : build_patch_regions(scheme, patch)) {
        const CleanLevel level = clean_level(sample, region, scheme, labels);
        const Count b = budget == BudgetMode::global_delta ? delta : level.overlap_count;
        long long region_mink = labels.num_labels;
        for (int k = 1; k < labels.num_labels; ++k) {
            if (smallest_tie_cost(level, sample.true_label, k).exceeds(b)) {
                region_mink = k;
                break;
            }
        }
        worst = std::max(worst, region_mink);
    }
    const int rank = rank_of_label(vote_confidence(sample), sample.true_label, labels);
    return static_cast<int>(
        std::min<long long>(std::max<long long>(worst, rank), labels.num_labels));
}

int reference_strategy2_mink(const SampleVotes& sample, const AblationScheme& scheme,
                             const LabelSpace& labels, const PatchSpec& patch) {
    long long worst = 0;
    for (const PatchRegion& region : build_patch_regions(scheme, patch)) {
        const Strategy2Bounds bounds = strategy2_bounds(sample, region, scheme, labels);
        long long exceeders = 0;
        for (Label y = 0; y < labels.num_labels; ++y) {
            if (y != sample.true_label &&
                bounds.upper(y) >= bounds.lower(sample.true_label)) {
                ++exceeders;
            }
        }
        worst = std::max(worst, exceeders);
    }
    const int rank = rank_of_label(vote_confidence(sample), sample.true_label, labels);
    return static_cast<int>(
        std::min<long long>(std::max<long long>(worst + 1, rank), labels.num_labels));
}

SampleVotes random_sample(std::mt19937& rng, int num_mutants, Label num_labels) {
    SampleVotes s;
    s.sample_id = "r";
    s.true_label = static_cast<Label>(rng() % num_labels);
    s.mutant_labels.resize(static_cast<std::size_t>(num_mutants));
    for (auto& v : s.mutant_labels) {
        // Bias towards the true label so certifiable samples appear often.
        v = (rng() % 3 != 0) ? s.true_label : static_cast<Label>(rng() % num_labels);
    }
    return s;
}

}  // namespace

TEST_SUITE("certifiers") {

TEST_CASE("conservative rank of the true label") {
    CHECK(conservative_rank_n(make_level({{0, 6}, {1, 4}, {2, 4}}, 3), 0) == 1);
    CHECK(conservative_rank_n(make_level({}, 3), 0) == 3);  // all zero: every label ties
    CHECK(conservative_rank_n(make_level({{0, 110}}, 1000), 0) == 1);
    CHECK(conservative_rank_n(make_level({{0, 2}, {1, 2}, {2, 5}}, 4), 0) == 3);
}

TEST_CASE("smallest tie cost on the 6/4/4 clean level") {
    const CleanLevel level = make_level({{0, 6}, {1, 4}, {2, 4}}, 3);
    CHECK(smallest_tie_cost(level, 0, 2) == TieCost::of(4));
    CHECK(smallest_tie_cost(level, 0, 1) == TieCost::of(2));
}

TEST_CASE("smallest tie cost with a unanimous leader") {
    const CleanLevel level = make_level({{0, 110}}, 1000);
    CHECK(smallest_tie_cost(level, 0, 2) == TieCost::of(220));
    CHECK(smallest_tie_cost(level, 0, 1) == TieCost::of(110));
}

TEST_CASE("tie cost is zero exactly when the true label already sits below k") {
    // alpha[y0]=2 with two labels at 5: n = 3, so k <= 2 costs nothing.
    const CleanLevel level = make_level({{0, 2}, {1, 5}, {2, 5}}, 4);
    CHECK(smallest_tie_cost(level, 0, 2) == TieCost::of(0));
    CHECK(smallest_tie_cost(level, 0, 3) == TieCost::of(2));  // raise label 3 from 0 to 2
}

TEST_CASE("tie cost rejects out-of-range k") {
    const CleanLevel level = make_level({{0, 3}}, 3);
    CHECK_THROWS_AS(smallest_tie_cost(level, 0, 0), ConfigError);
    CHECK_THROWS_AS(smallest_tie_cost(level, 0, 3), ConfigError);
}

TEST_CASE("certification on the seventeen-mutant scenario") {
    const AblationScheme scheme{17, 17, 1, true};
    const LabelSpace labels{3};
    const SampleVotes sample = seventeen_mutant_sample();
    const PatchSpec patch{3};
    CHECK(compute_delta(scheme, patch) == 3);

    const CertOutcome at2 = costcert_certify(sample, scheme, labels, patch, 2,
                                             BudgetMode::global_delta, true);
    CHECK(at2.certified);
    CHECK(at2.mink == 2);
    const CertOutcome at1 = costcert_certify(sample, scheme, labels, patch, 1);
    CHECK_FALSE(at1.certified);
    CHECK(at1.mink == 2);

    // The region silencing three true-label mutants carries the cost of 4.
    REQUIRE(at2.per_patch_costs.has_value());
    const auto it = std::find_if(at2.per_patch_costs->begin(), at2.per_patch_costs->end(),
                                 [](const auto& e) { return e.first == PatchRegion{4, 6}; });
    REQUIRE(it != at2.per_patch_costs->end());
    CHECK(it->second == TieCost::of(4));
    REQUIRE(at2.binding_region.has_value());
    const CleanLevel binding =
        clean_level(sample, *at2.binding_region, scheme, labels);
    CHECK(binding.alpha_of(0) == 6);

    CHECK(costcert_mink(sample, scheme, labels, patch) == 2);
    CHECK(strategy2_mink(sample, scheme, labels, patch) == 3);
    CHECK_FALSE(strategy2_certify(sample, scheme, labels, patch, 2).certified);
    CHECK(strategy2_certify(sample, scheme, labels, patch, 3).certified);
}

TEST_CASE("certification on a unanimous 224-mutant sample") {
    const AblationScheme scheme{224, 224, 19, true};
    const LabelSpace labels{1000};
    const SampleVotes sample{"well", 42, std::vector<Label>(224, 42)};
    const PatchSpec patch{96};

    CHECK_FALSE(costcert_certify(sample, scheme, labels, patch, 1).certified);
    CHECK(costcert_certify(sample, scheme, labels, patch, 2).certified);
    CHECK(costcert_mink(sample, scheme, labels, patch) == 2);
    CHECK(strategy2_mink(sample, scheme, labels, patch) == 1000);
}

TEST_CASE("a region wiping out the true label forces the trivial certificate") {
    const AblationScheme scheme{5, 5, 1, true};
    const LabelSpace labels{3};
    const SampleVotes sample{"lone", 0, {0, 1, 1, 1, 1}};
    CHECK(costcert_mink(sample, scheme, labels, {2}) == 3);
}

TEST_CASE("pairwise bounds on the five-mutant scenario") {
    const AblationScheme scheme{5, 5, 1, true};
    const LabelSpace labels{2};
    const SampleVotes sample{"fig2", 0, {0, 0, 0, 0, 1}};

    const Strategy2Bounds right = strategy2_bounds(sample, {3, 4, true}, scheme, labels);
    CHECK(right.lower(0) == 3);
    CHECK(right.upper(1) == 2);

    const Strategy2Bounds left = strategy2_bounds(sample, {0, 1, true}, scheme, labels);
    CHECK(left.lower(0) == 2);
    CHECK(left.upper(1) == 3);

    // One region fails the pairwise check, so top-1 certification fails.
    CHECK_FALSE(strategy2_certify(sample, scheme, labels, {2}, 1).certified);
}

TEST_CASE("pairwise bounds on the seventeen-mutant scenario") {
    const AblationScheme scheme{17, 17, 1, true};
    const LabelSpace labels{3};
    const Strategy2Bounds bounds =
        strategy2_bounds(seventeen_mutant_sample(), {4, 6, true}, scheme, labels);
    CHECK(bounds.lower(0) == 6);
    CHECK(bounds.upper(1) == 7);
    CHECK(bounds.upper(2) == 7);
}

TEST_CASE("top-1 margin baseline") {
    CHECK(strategy1_certify(SampleVotes{"a", 0, {0, 0, 0, 0, 0}}, 2));
    CHECK_FALSE(strategy1_certify(SampleVotes{"b", 0, {0, 0, 0, 0, 1}}, 2));
    CHECK_FALSE(strategy1_certify(SampleVotes{"c", 0, {0, 0, 0, 1, 1, 1}}, 0));
}

TEST_CASE("scan agrees with the single-region reference on random samples") {
    std::mt19937 rng(20240);
    for (int trial = 0; trial < 300; ++trial) {
        const int width = 4 + static_cast<int>(rng() % 9);
        const int band = 1 + static_cast<int>(rng() % 3);
        if (band > width) continue;
        const bool wrap = rng() % 2 == 0;
        const AblationScheme scheme{width, width, band, wrap};
        const LabelSpace labels{static_cast<Label>(2 + rng() % 4)};
        const int side = 1 + static_cast<int>(rng() % width);
        const PatchSpec patch{side};
        const SampleVotes sample = random_sample(rng, scheme.num_regions(), labels.num_labels);

        for (BudgetMode budget : {BudgetMode::global_delta, BudgetMode::per_patch}) {
            const int expected =
                reference_costcert_mink(sample, scheme, labels, patch, budget);
            CHECK_MESSAGE(costcert_mink(sample, scheme, labels, patch, budget) == expected,
                          "width=", width, " band=", band, " side=", side, " wrap=", wrap);
        }
        CHECK(strategy2_mink(sample, scheme, labels, patch) ==
              reference_strategy2_mink(sample, scheme, labels, patch));

        const SampleAnalysis analysis = analyze_sample(sample, scheme, labels, patch);
        CHECK(analysis.costcert_mink == costcert_mink(sample, scheme, labels, patch));
        CHECK(analysis.strategy2_mink == strategy2_mink(sample, scheme, labels, patch));
    }
}

TEST_CASE("certified exactly when k reaches mink") {
    std::mt19937 rng(555);
    for (int trial = 0; trial < 100; ++trial) {
        const AblationScheme scheme{10, 10, 2, true};
        const LabelSpace labels{4};
        const PatchSpec patch{1 + static_cast<int>(rng() % 6)};
        const SampleVotes sample = random_sample(rng, 10, 4);
        const int cc_mink = costcert_mink(sample, scheme, labels, patch);
        const int s2_mink = strategy2_mink(sample, scheme, labels, patch);
        for (int k = 1; k < 4; ++k) {
            CHECK(costcert_certify(sample, scheme, labels, patch, k).certified ==
                  (k >= cc_mink));
            CHECK(strategy2_certify(sample, scheme, labels, patch, k).certified ==
                  (k >= s2_mink));
        }
    }
}

TEST_CASE("pairwise certification implies cost certification") {
    std::mt19937 rng(909);
    for (int trial = 0; trial < 200; ++trial) {
        const int width = 5 + static_cast<int>(rng() % 8);
        const AblationScheme scheme{width, width, 1 + static_cast<int>(rng() % 2), true};
        const LabelSpace labels{static_cast<Label>(3 + rng() % 3)};
        const PatchSpec patch{1 + static_cast<int>(rng() % 4)};
        const SampleVotes sample = random_sample(rng, scheme.num_regions(), labels.num_labels);
        CHECK(costcert_mink(sample, scheme, labels, patch) <=
              strategy2_mink(sample, scheme, labels, patch));
    }
}

TEST_CASE("per-patch budgets certify at least as much as the global budget") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const int width = 5 + static_cast<int>(rng() % 8);
        // Edge regions overlap fewer bands only without wrap.
        const AblationScheme scheme{width, width, 2, false};
        const LabelSpace labels{4};
        const PatchSpec patch{1 + static_cast<int>(rng() % 4)};
        const SampleVotes sample = random_sample(rng, scheme.num_regions(), 4);
        CHECK(costcert_mink(sample, scheme, labels, patch, BudgetMode::per_patch) <=
              costcert_mink(sample, scheme, labels, patch, BudgetMode::global_delta));
    }
}

TEST_CASE("relabeling the classes relabels nothing else") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        const AblationScheme scheme{9, 9, 2, true};
        const LabelSpace labels{5};
        const PatchSpec patch{3};
        const SampleVotes sample = random_sample(rng, 9, 5);

        std::vector<Label> perm(5);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        SampleVotes mapped = sample;
        mapped.true_label = perm[static_cast<std::size_t>(sample.true_label)];
        for (auto& v : mapped.mutant_labels) v = perm[static_cast<std::size_t>(v)];

        CHECK(costcert_mink(sample, scheme, labels, patch) ==
              costcert_mink(mapped, scheme, labels, patch));
        CHECK(strategy2_mink(sample, scheme, labels, patch) ==
              strategy2_mink(mapped, scheme, labels, patch));
        for (int k = 1; k < 5; ++k) {
            CHECK(costcert_certify(sample, scheme, labels, patch, k).certified ==
                  costcert_certify(mapped, scheme, labels, patch, k).certified);
        }
    }
}

}  // TEST_SUITE
