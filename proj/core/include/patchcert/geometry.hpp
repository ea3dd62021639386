#pragma once

#include "patchcert/types.hpp"

#include <vector>

namespace patchcert {

// Column-band ablation over a w x h image. Bands are vertical stripes of
// band_width columns; with wrap = true a band may continue past the right
// edge onto column 0, giving exactly image_width bands.
struct AblationScheme {
    int image_width = 0;
    int image_height = 0;
    int band_width = 0;
    bool wrap = true;

    // Number of ablation regions (= number of mutants per sample).
    int num_regions() const {
        return wrap ? image_width : image_width - band_width + 1;
    }

    // Throws ConfigError on invalid dimensions.
    void validate() const;
};

// Square patch of side x side pixels. Patches never wrap.
struct PatchSpec {
    int side = 0;

    void validate(const AblationScheme& scheme) const;
};

// One vertical band, possibly wrapping past the right edge.
struct ColumnBand {
    int start = 0;        // first column
    int width = 0;        // number of columns covered
    int image_width = 0;

    bool wraps() const { return start + width > image_width; }

    bool covers(int col) const {
        int rel = col - start;
        if (rel < 0) rel += image_width;
        return rel < width;
    }
};

// The column extent of a patch position, inclusive on both ends. For column
// ablation the row position of a square patch never changes which bands it
// touches, so positions sharing a column extent are merged into one
// canonical region.
struct PatchRegion {
    int col_start = 0;
    int col_end = 0;      // inclusive
    bool canonical = true;

    int width() const { return col_end - col_start + 1; }

    friend bool operator==(const PatchRegion& a, const PatchRegion& b) {
        return a.col_start == b.col_start && a.col_end == b.col_end;
    }
    friend auto operator<=>(const PatchRegion& a, const PatchRegion& b) {
        if (auto c = a.col_start <=> b.col_start; c != 0) return c;
        return a.col_end <=> b.col_end;
    }
};

// One band per ablation region, ordered by start column.
std::vector<ColumnBand> build_ablation_regions(const AblationScheme& scheme);

// All canonical column extents of a patch of the given side, sorted by
// col_start. Count = image_width - side + 1.
std::vector<PatchRegion> build_patch_regions(const AblationScheme& scheme,
                                             const PatchSpec& patch);

// Contiguous run of band indices whose bands intersect the region's column
// interval: indices first, first+1, ... (mod num_regions when the scheme
// wraps), `count` of them. This is the hot-path form of
// overlapping_ablations.
struct BandSpan {
    int first = 0;
    int count = 0;
};
BandSpan overlapping_band_span(const AblationScheme& scheme,
                               const PatchRegion& region);

// Sorted indices of the ablation regions whose band intersects the region.
std::vector<int> overlapping_ablations(const AblationScheme& scheme,
                                       const PatchRegion& region);

// Attack budget: the maximum, over all canonical patch regions, of the
// number of bands a single region can touch. For wrapped column ablation
// this equals min(side + band_width - 1, num_regions).
Count compute_delta(const AblationScheme& scheme, const PatchSpec& patch);

}  // namespace patchcert
