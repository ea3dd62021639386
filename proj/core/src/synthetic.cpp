#include "patchcert/synthetic.hpp"

#include <limits>
#include <random>
#include <string>

namespace patchcert {

namespace {

// Unbiased bounded draw on top of the (fully specified) mt19937_64 stream,
// independent of any stdlib distribution implementation.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

std::string sample_name(const std::string& stem, int index, int total) {
    if (total == 1) return stem;
    return stem + "-" + std::to_string(index);
}

void require(bool ok, const std::string& profile, const std::string& what) {
    if (!ok) {
        throw DataError(DataError::Kind::incompatible_profile,
                        "profile '" + profile + "' requires " + what);
    }
}

}  // namespace

SyntheticProfile parse_profile(const std::string& s) {
    if (s == "figure2") return SyntheticProfile::figure2;
    if (s == "figure45") return SyntheticProfile::figure45;
    if (s == "well_classified") return SyntheticProfile::well_classified;
    if (s == "random") return SyntheticProfile::random_votes;
    throw DataError(DataError::Kind::unknown_profile,
                    "unknown profile '" + s +
                        "' (expected figure2|figure45|well_classified|random)");
}

std::string to_string(SyntheticProfile p) {
    switch (p) {
        case SyntheticProfile::figure2: return "figure2";
        case SyntheticProfile::figure45: return "figure45";
        case SyntheticProfile::well_classified: return "well_classified";
        case SyntheticProfile::random_votes: return "random";
    }
    return "?";
}

RunConfig profile_defaults(SyntheticProfile profile) {
    RunConfig config;
    switch (profile) {
        case SyntheticProfile::figure2:
            config.image_width = 5;
            config.image_height = 5;
            config.band_width = 1;
            config.num_labels = 2;
            config.patch_sides = {2};
            config.k_values = {1};
            break;
        case SyntheticProfile::figure45:
            config.image_width = 17;
            config.image_height = 17;
            config.band_width = 1;
            config.num_labels = 3;
            config.patch_sides = {3};
            config.k_values = {1, 2};
            break;
        case SyntheticProfile::well_classified:
        case SyntheticProfile::random_votes:
            break;  // stock defaults
    }
    return config;
}

PatchRegion figure45_focus_region() { return PatchRegion{4, 6, true}; }

VoteDataset gen_synthetic(SyntheticProfile profile, const RunConfig& config,
                          std::uint64_t seed, int num_samples) {
    config.scheme().validate();
    config.label_space().validate();
    if (num_samples < 1) throw ConfigError("synthetic: need at least one sample");

    const AblationScheme scheme = config.scheme();
    const LabelSpace labels = config.label_space();
    const int regions = scheme.num_regions();
    VoteDataset dataset{scheme, labels, {}};
    dataset.samples.reserve(static_cast<std::size_t>(num_samples));
    std::mt19937_64 rng(seed);

    switch (profile) {
        case SyntheticProfile::figure2: {
            require(regions == 5, "figure2", "a 5-region scheme (width 5, band 1)");
            require(labels.num_labels >= 2, "figure2", "at least 2 labels");
            for (int i = 0; i < num_samples; ++i) {
                SampleVotes s;
                s.sample_id = sample_name("figure2", i, num_samples);
                s.true_label = 0;
                s.mutant_labels = {0, 0, 0, 0, 1};
                dataset.samples.push_back(std::move(s));
            }
            break;
        }
        case SyntheticProfile::figure45: {
            require(scheme.band_width == 1, "figure45", "band width 1");
            require(regions >= 17, "figure45", "at least 17 ablation regions");
            require(labels.num_labels >= 3, "figure45", "at least 3 labels");
            for (int i = 0; i < num_samples; ++i) {
                SampleVotes s;
                s.sample_id = sample_name("figure45", i, num_samples);
                s.true_label = 0;
                s.mutant_labels.assign(static_cast<std::size_t>(regions), 0);
                for (int j = 0; j < 4; ++j) s.mutant_labels[static_cast<std::size_t>(j)] = 1;
                for (int j = 13; j < 17; ++j) s.mutant_labels[static_cast<std::size_t>(j)] = 2;
                dataset.samples.push_back(std::move(s));
            }
            break;
        }
        case SyntheticProfile::well_classified: {
            for (int i = 0; i < num_samples; ++i) {
                SampleVotes s;
                s.sample_id = sample_name("well", i, num_samples);
                s.true_label = static_cast<Label>(
                    draw_below(rng, static_cast<std::uint64_t>(labels.num_labels)));
                s.mutant_labels.assign(static_cast<std::size_t>(regions), s.true_label);
                dataset.samples.push_back(std::move(s));
            }
            break;
        }
        case SyntheticProfile::random_votes: {
            for (int i = 0; i < num_samples; ++i) {
                SampleVotes s;
                s.sample_id = sample_name("rand", i, num_samples);
                s.true_label = static_cast<Label>(
                    draw_below(rng, static_cast<std::uint64_t>(labels.num_labels)));
                // Peak strength 30%..95% in 5% steps, drawn per sample.
                const std::uint64_t peak_pct = 30 + 5 * draw_below(rng, 14);
                s.mutant_labels.reserve(static_cast<std::size_t>(regions));
                for (int j = 0; j < regions; ++j) {
                    if (draw_below(rng, 100) < peak_pct) {
                        s.mutant_labels.push_back(s.true_label);
                    } else {
                        s.mutant_labels.push_back(static_cast<Label>(
                            draw_below(rng, static_cast<std::uint64_t>(labels.num_labels))));
                    }
                }
                dataset.samples.push_back(std::move(s));
            }
            break;
        }
    }
    dataset.validate();
    return dataset;
}

}  // namespace patchcert
