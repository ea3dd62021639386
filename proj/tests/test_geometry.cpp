#include "patchcert/geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace patchcert;

namespace {

// Position-by-position intersection test, independent of the band-span
// arithmetic in the library: does band `s` cover any column of [cs, ce]?
bool band_touches(const AblationScheme& scheme, int s, int cs, int ce) {
    for (int c = 0; c < scheme.band_width; ++c) {
        const int col = (s + c) % scheme.image_width;
        if (col >= cs && col <= ce) return true;
    }
    return false;
}

Count brute_force_delta(const AblationScheme& scheme, const PatchSpec& patch) {
    Count best = 0;
    for (int cs = 0; cs + patch.side <= scheme.image_width; ++cs) {
        const int ce = cs + patch.side - 1;
        Count touched = 0;
        for (int s = 0; s < scheme.num_regions(); ++s) {
            if (band_touches(scheme, s, cs, ce)) ++touched;
        }
        best = std::max(best, touched);
    }
    return best;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("ablation region counts") {
    CHECK(build_ablation_regions({224, 224, 19, true}).size() == 224);
    CHECK(build_ablation_regions({5, 5, 1, false}).size() == 5);

    const auto wrapped = build_ablation_regions({4, 4, 2, true});
    REQUIRE(wrapped.size() == 4);
    // The band starting at column 3 continues onto column 0.
    CHECK(wrapped[3].wraps());
    CHECK(wrapped[3].covers(3));
    CHECK(wrapped[3].covers(0));
    CHECK_FALSE(wrapped[3].covers(1));
}

TEST_CASE("invalid schemes are rejected") {
    CHECK_THROWS_AS(build_ablation_regions({4, 4, 5, true}), ConfigError);
    CHECK_THROWS_AS(build_ablation_regions({0, 4, 1, true}), ConfigError);
    CHECK_THROWS_AS(build_ablation_regions({4, 4, 0, true}), ConfigError);
}

TEST_CASE("patch region enumeration") {
    const AblationScheme scheme{224, 224, 19, true};
    CHECK(build_patch_regions(scheme, {96}).size() == 129);
    CHECK(build_patch_regions(scheme, {224}).size() == 1);
    CHECK(build_patch_regions({5, 5, 1, true}, {2}).size() == 4);

    const auto regions = build_patch_regions({5, 5, 1, true}, {2});
    for (std::size_t i = 0; i < regions.size(); ++i) {
        CHECK(regions[i].col_start == static_cast<int>(i));
        CHECK(regions[i].width() == 2);
        CHECK(regions[i].canonical);
    }

    CHECK_THROWS_AS(build_patch_regions(scheme, {225}), ConfigError);
    CHECK_THROWS_AS(build_patch_regions(scheme, {0}), ConfigError);
}

TEST_CASE("overlapping ablations") {
    const AblationScheme imagenet{224, 224, 19, true};
    CHECK(overlapping_ablations(imagenet, {0, 95, true}).size() == 114);

    const AblationScheme single{8, 8, 1, false};
    const auto only = overlapping_ablations(single, {3, 3, true});
    CHECK(only == std::vector<int>{3});

    const AblationScheme tiny{6, 6, 2, true};
    const auto edge = overlapping_ablations(tiny, {0, 0, true});
    CHECK(edge == std::vector<int>{0, 5});
}

TEST_CASE("attack budget values") {
    CHECK(compute_delta({224, 224, 19, true}, {96}) == 114);
    CHECK(compute_delta({224, 224, 19, true}, {32}) == 50);
    CHECK(compute_delta({8, 8, 1, true}, {1}) == 1);
}

TEST_CASE("attack budget matches brute force on small schemes") {
    for (int width : {6, 9, 13}) {
        for (int band = 1; band <= 4; ++band) {
            for (int side = 1; side <= width; ++side) {
                for (bool wrap : {true, false}) {
                    if (band > width) continue;
                    const AblationScheme scheme{width, width, band, wrap};
                    const PatchSpec patch{side};
                    const Count expected = brute_force_delta(scheme, patch);
                    CHECK_MESSAGE(compute_delta(scheme, patch) == expected,
                                  "width=", width, " band=", band, " side=", side,
                                  " wrap=", wrap);
                    if (wrap && side + band - 1 <= width) {
                        CHECK(compute_delta(scheme, patch) == side + band - 1);
                    }
                }
            }
        }
    }
}

TEST_CASE("attack budget is nondecreasing in side and band width") {
    for (int band = 1; band <= 5; ++band) {
        Count prev = 0;
        for (int side = 1; side <= 12; ++side) {
            const Count d = compute_delta({12, 12, band, true}, {side});
            CHECK(d >= prev);
            prev = d;
        }
    }
    for (int side = 1; side <= 5; ++side) {
        Count prev = 0;
        for (int band = 1; band <= 12; ++band) {
            const Count d = compute_delta({12, 12, band, true}, {side});
            CHECK(d >= prev);
            prev = d;
        }
    }
}

TEST_CASE("every region's overlap count stays within the budget") {
    const AblationScheme scheme{30, 30, 7, true};
    for (int side : {1, 5, 11, 30}) {
        const PatchSpec patch{side};
        const Count delta = compute_delta(scheme, patch);
        for (const PatchRegion& region : build_patch_regions(scheme, patch)) {
            CHECK(static_cast<Count>(overlapping_ablations(scheme, region).size()) <= delta);
        }
    }
}

TEST_CASE("overlap depends only on the column extent") {
    const AblationScheme scheme{20, 20, 3, true};
    const PatchRegion canonical{7, 11, true};
    const PatchRegion raw_position{7, 11, false};
    CHECK(overlapping_ablations(scheme, canonical) ==
          overlapping_ablations(scheme, raw_position));
}

}  // TEST_SUITE
