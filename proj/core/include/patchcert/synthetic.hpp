#pragma once

#include "patchcert/metrics.hpp"
#include "patchcert/run_config.hpp"
#include "patchcert/types.hpp"

#include <cstdint>
#include <string>

namespace patchcert {

// Canned vote tables.
//
//   figure2          one two-class sample, 5 mutants voting 4:1
//   figure45         one three-class sample, 17 mutants voting 9:4:4 with
//                    the true label's votes contiguous, so a side-3 patch
//                    region can silence exactly 3 of them
//   well_classified  every mutant votes the sample's true label
//   random_votes     per-sample peaked draws: each sample picks a true
//                    label and a peak strength, mutants vote the true label
//                    with that probability and uniformly otherwise
enum class SyntheticProfile { figure2, figure45, well_classified, random_votes };

SyntheticProfile parse_profile(const std::string& s);
std::string to_string(SyntheticProfile p);

// Geometry and label space each profile is defined on. figure2 and figure45
// pin their scheme; the other two keep the stock defaults.
RunConfig profile_defaults(SyntheticProfile profile);

// Deterministic under (profile, config, seed, num_samples).
VoteDataset gen_synthetic(SyntheticProfile profile, const RunConfig& config,
                          std::uint64_t seed, int num_samples = 1);

// The figure45 region whose overlap removes 3 true-label votes, leaving the
// 6:4:4 clean level.
PatchRegion figure45_focus_region();

}  // namespace patchcert
