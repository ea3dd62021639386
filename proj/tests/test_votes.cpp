#include "patchcert/votes.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace patchcert;

namespace {

SampleVotes make_sample(std::vector<Label> votes, Label y0 = 0) {
    return SampleVotes{"s", y0, std::move(votes)};
}

}  // namespace

TEST_SUITE("votes") {

TEST_CASE("vote tallies") {
    const auto conf = vote_confidence(make_sample({0, 0, 0, 0, 1}));
    CHECK(conf.of(0) == 4);
    CHECK(conf.of(1) == 1);
    CHECK(conf.of(2) == 0);
    CHECK(conf.total() == 5);

    // 17 mutants: 9 / 4 / 4.
    std::vector<Label> votes(17, 0);
    std::fill_n(votes.begin(), 4, 1);
    std::fill_n(votes.begin() + 13, 4, 2);
    const auto conf17 = vote_confidence(make_sample(std::move(votes)));
    CHECK(conf17.of(0) == 9);
    CHECK(conf17.of(1) == 4);
    CHECK(conf17.of(2) == 4);

    CHECK(vote_confidence(make_sample({3})).of(3) == 1);
}

TEST_CASE("ranked prediction ordering and ties") {
    const LabelSpace three{3};
    std::vector<Label> votes(17, 0);
    std::fill_n(votes.begin(), 4, 1);
    std::fill_n(votes.begin() + 13, 4, 2);
    const auto conf = vote_confidence(make_sample(std::move(votes)));
    CHECK(ranked_prediction(conf, 3, three) == std::vector<Label>{0, 1, 2});

    const LabelSpace two{2};
    const auto single = vote_confidence(make_sample({0}));
    CHECK(ranked_prediction(single, 1, two) == std::vector<Label>{0});

    // Uniform counts: ascending label ids win.
    const LabelSpace four{4};
    const auto uniform = vote_confidence(make_sample({0, 1, 2, 3}));
    CHECK(ranked_prediction(uniform, 2, four) == std::vector<Label>{0, 1});

    // Zero-vote labels fill the tail in id order.
    const auto sparse = vote_confidence(make_sample({2, 2}));
    CHECK(ranked_prediction(sparse, 3, four) == std::vector<Label>{2, 0, 1});
}

TEST_CASE("rank of the true label") {
    const LabelSpace four{4};
    const auto conf = vote_confidence(make_sample({1, 1, 2}));
    CHECK(rank_of_label(conf, 1, four) == 1);
    CHECK(rank_of_label(conf, 2, four) == 2);
    CHECK(rank_of_label(conf, 0, four) == 3);  // zero votes, lowest id
    CHECK(rank_of_label(conf, 3, four) == 4);
    CHECK(topk_correct(conf, 2, 2, four));
    CHECK_FALSE(topk_correct(conf, 0, 2, four));
}

TEST_CASE("ranked prediction is prefix-stable in k") {
    const LabelSpace labels{6};
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Label> votes(12);
        for (auto& v : votes) v = static_cast<Label>(rng() % 6);
        const auto conf = vote_confidence(make_sample(std::move(votes)));
        for (int k = 1; k < 6; ++k) {
            const auto a = ranked_prediction(conf, k, labels);
            const auto b = ranked_prediction(conf, k + 1, labels);
            CHECK(std::equal(a.begin(), a.end(), b.begin()));
        }
    }
}

TEST_CASE("ranked prediction is invariant under mutant order") {
    const LabelSpace labels{5};
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Label> votes(10);
        for (auto& v : votes) v = static_cast<Label>(rng() % 5);
        auto shuffled = votes;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto a = vote_confidence(make_sample(std::move(votes)));
        const auto b = vote_confidence(make_sample(std::move(shuffled)));
        CHECK(ranked_prediction(a, 5, labels) == ranked_prediction(b, 5, labels));
    }
}

TEST_CASE("clean level splits votes at a region") {
    const AblationScheme scheme{17, 17, 1, true};
    const LabelSpace labels{3};
    std::vector<Label> votes(17, 0);
    std::fill_n(votes.begin(), 4, 1);
    std::fill_n(votes.begin() + 13, 4, 2);
    const SampleVotes sample{"fig", 0, votes};

    // Region over columns 4..6 silences three true-label mutants.
    const CleanLevel level = clean_level(sample, {4, 6, true}, scheme, labels);
    CHECK(level.alpha_of(0) == 6);
    CHECK(level.alpha_of(1) == 4);
    CHECK(level.alpha_of(2) == 4);
    CHECK(level.overlap_count == 3);
}

TEST_CASE("clean level of a unanimous sample") {
    const AblationScheme scheme{224, 224, 19, true};
    const LabelSpace labels{1000};
    const SampleVotes sample{"well", 7, std::vector<Label>(224, 7)};
    const CleanLevel level = clean_level(sample, {0, 95, true}, scheme, labels);
    CHECK(level.alpha_of(7) == 110);
    CHECK(level.overlap_count == 114);
}

TEST_CASE("clean plus dirty equals the observed tally") {
    const AblationScheme scheme{12, 12, 3, true};
    const LabelSpace labels{4};
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Label> votes(12);
        for (auto& v : votes) v = static_cast<Label>(rng() % 4);
        const SampleVotes sample{"t", 0, votes};
        const auto conf = vote_confidence(sample);
        for (const PatchRegion& region : build_patch_regions(scheme, {4})) {
            const CleanLevel level = clean_level(sample, region, scheme, labels);
            Count dirty_total = 0;
            for (Label y = 0; y < 4; ++y) {
                // Dirty votes recomputed directly from the overlapped bands.
                Count dirty = 0;
                for (int band : overlapping_ablations(scheme, region)) {
                    if (votes[static_cast<std::size_t>(band)] == y) ++dirty;
                }
                CHECK(level.alpha_of(y) + dirty == conf.of(y));
                CHECK(level.alpha_of(y) <= conf.of(y));
                dirty_total += dirty;
            }
            CHECK(dirty_total == level.overlap_count);
        }
    }
}

TEST_CASE("clean level ignores the raw row position of a patch") {
    const AblationScheme scheme{10, 10, 2, true};
    const LabelSpace labels{3};
    const SampleVotes sample{"t", 0, {0, 1, 0, 2, 0, 1, 0, 2, 0, 0}};
    const CleanLevel a = clean_level(sample, {2, 5, true}, scheme, labels);
    const CleanLevel b = clean_level(sample, {2, 5, false}, scheme, labels);
    CHECK(a.alpha == b.alpha);
    CHECK(a.overlap_count == b.overlap_count);
}

TEST_CASE("sample validation") {
    const AblationScheme scheme{5, 5, 1, true};
    const LabelSpace labels{2};
    const SampleVotes too_short{"short", 0, {0, 0}};
    const SampleVotes vote_out_of_range{"range", 0, {0, 0, 0, 0, 9}};
    const SampleVotes true_out_of_range{"true", 5, {0, 0, 0, 0, 0}};
    const SampleVotes fine{"ok", 0, {0, 0, 0, 0, 1}};
    CHECK_THROWS_AS(too_short.validate(scheme, labels), DataError);
    CHECK_THROWS_AS(vote_out_of_range.validate(scheme, labels), DataError);
    CHECK_THROWS_AS(true_out_of_range.validate(scheme, labels), DataError);
    CHECK_NOTHROW(fine.validate(scheme, labels));
}

}  // TEST_SUITE
