#pragma once

#include "patchcert/certifiers.hpp"
#include "patchcert/geometry.hpp"
#include "patchcert/metrics.hpp"
#include "patchcert/types.hpp"
#include "patchcert/votes.hpp"

#include <cstdint>
#include <vector>

namespace patchcert {

// One run's knobs. Defaults follow the 224x224 / band-19 column-ablation
// setup with square patches from 16 to 112 px in steps of 16.
struct RunConfig {
    int image_width = 224;
    int image_height = 224;
    int band_width = 19;
    bool wrap = true;
    Label num_labels = 1000;
    std::vector<int> patch_sides = {16, 32, 48, 64, 80, 96, 112};
    std::vector<int> k_values = {1, 2, 3, 5, 10};
    BudgetMode budget = BudgetMode::global_delta;
    std::vector<Analyzer> analyzers = {Analyzer::costcert, Analyzer::strategy1,
                                       Analyzer::strategy2};
    std::uint64_t seed = 0;

    AblationScheme scheme() const {
        return AblationScheme{image_width, image_height, band_width, wrap};
    }
    LabelSpace label_space() const { return LabelSpace{num_labels}; }

    SweepRequest sweep_request() const {
        return SweepRequest{analyzers, patch_sides, k_values, budget};
    }

    void validate() const;
};

}  // namespace patchcert
