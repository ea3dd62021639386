#pragma once

#include "patchcert/geometry.hpp"
#include "patchcert/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace patchcert {

struct LabelSpace {
    Label num_labels = 0;

    void validate() const {
        if (num_labels < 2) throw ConfigError("label space must have at least 2 labels");
    }
    bool contains(Label y) const { return y >= 0 && y < num_labels; }
};

// One sample: its true label and the top-1 label each mutant voted for,
// indexed by ablation region.
struct SampleVotes {
    std::string sample_id;
    Label true_label = 0;
    std::vector<Label> mutant_labels;

    // Throws DataError if the vote vector does not match the scheme or a
    // label falls outside the label space.
    void validate(const AblationScheme& scheme, const LabelSpace& labels) const;
};

// Sparse tally: (label, count) pairs sorted by label, positive counts only.
// Absent labels read as zero.
struct VoteConfidence {
    std::vector<std::pair<Label, Count>> counts;

    Count of(Label y) const;
    Count total() const;
};

// Per-patch-region vote split: alpha holds the votes from mutants whose band
// does not touch the region (sparse, like VoteConfidence); overlap_count is
// the number of excluded mutants, i.e. the votes an attacker through this
// region fully controls.
struct CleanLevel {
    PatchRegion region;
    std::vector<std::pair<Label, Count>> alpha;
    Count overlap_count = 0;
    Label num_labels = 0;

    Count alpha_of(Label y) const;
};

VoteConfidence vote_confidence(const SampleVotes& sample);

// Top-k labels in descending count order; equal counts break by ascending
// label id. This operational tie rule is for reporting only — certification
// never relies on it.
std::vector<Label> ranked_prediction(const VoteConfidence& conf, int k,
                                     const LabelSpace& labels);

// 1-based position of y0 under the operational tie rule. y0 is top-k correct
// exactly when rank_of_label(conf, y0, labels) <= k.
int rank_of_label(const VoteConfidence& conf, Label y0, const LabelSpace& labels);

bool topk_correct(const VoteConfidence& conf, Label y0, int k, const LabelSpace& labels);

CleanLevel clean_level(const SampleVotes& sample, const PatchRegion& region,
                       const AblationScheme& scheme, const LabelSpace& labels);

}  // namespace patchcert
