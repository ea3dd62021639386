#include "patchcert/geometry.hpp"

#include <algorithm>
#include <string>

namespace patchcert {

void AblationScheme::validate() const {
    if (image_width < 1 || image_height < 1) {
        throw ConfigError("ablation scheme: image dimensions must be positive, got " +
                          std::to_string(image_width) + "x" + std::to_string(image_height));
    }
    if (band_width < 1) {
        throw ConfigError("ablation scheme: band width must be >= 1");
    }
    if (band_width > image_width) {
        throw ConfigError("ablation scheme: band width " + std::to_string(band_width) +
                          " exceeds image width " + std::to_string(image_width));
    }
}

void PatchSpec::validate(const AblationScheme& scheme) const {
    if (side < 1) {
        throw ConfigError("patch: side must be >= 1 (side 0 means no attack; skip certification)");
    }
    if (side > scheme.image_width) {
        throw ConfigError("patch: side " + std::to_string(side) +
                          " exceeds image width " + std::to_string(scheme.image_width));
    }
}

std::vector<ColumnBand> build_ablation_regions(const AblationScheme& scheme) {
    scheme.validate();
    std::vector<ColumnBand> bands;
    bands.reserve(static_cast<std::size_t>(scheme.num_regions()));
    for (int start = 0; start < scheme.num_regions(); ++start) {
        bands.push_back(ColumnBand{start, scheme.band_width, scheme.image_width});
    }
    return bands;
}

std::vector<PatchRegion> build_patch_regions(const AblationScheme& scheme,
                                             const PatchSpec& patch) {
    scheme.validate();
    patch.validate(scheme);
    std::vector<PatchRegion> regions;
    regions.reserve(static_cast<std::size_t>(scheme.image_width - patch.side + 1));
    for (int start = 0; start + patch.side <= scheme.image_width; ++start) {
        regions.push_back(PatchRegion{start, start + patch.side - 1, true});
    }
    return regions;
}

BandSpan overlapping_band_span(const AblationScheme& scheme, const PatchRegion& region) {
    const int b = scheme.band_width;
    const int n = scheme.num_regions();
    if (scheme.wrap) {
        // Band s covers columns {s .. s+b-1 mod w}; it meets [cs, ce] exactly
        // when s lies in the cyclic run [cs-b+1, ce].
        int count = std::min(region.width() + b - 1, n);
        int first = region.col_start - b + 1;
        first %= n;
        if (first < 0) first += n;
        if (count == n) first = 0;
        return BandSpan{first, count};
    }
    int lo = std::max(0, region.col_start - b + 1);
    int hi = std::min(n - 1, region.col_end);
    if (hi < lo) return BandSpan{0, 0};
    return BandSpan{lo, hi - lo + 1};
}

std::vector<int> overlapping_ablations(const AblationScheme& scheme,
                                       const PatchRegion& region) {
    const BandSpan span = overlapping_band_span(scheme, region);
    std::vector<int> indices;
    indices.reserve(static_cast<std::size_t>(span.count));
    const int n = scheme.num_regions();
    for (int i = 0; i < span.count; ++i) {
        indices.push_back((span.first + i) % n);
    }
    std::sort(indices.begin(), indices.end());
    return indices;
}

Count compute_delta(const AblationScheme& scheme, const PatchSpec& patch) {
    scheme.validate();
    patch.validate(scheme);
    Count delta = 0;
    for (const PatchRegion& region : build_patch_regions(scheme, patch)) {
        delta = std::max(delta, static_cast<Count>(overlapping_band_span(scheme, region).count));
    }
    return delta;
}

}  // namespace patchcert
