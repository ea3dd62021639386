#include "patchcert/votes.hpp"

#include <algorithm>
#include <map>

namespace patchcert {

void SampleVotes::validate(const AblationScheme& scheme, const LabelSpace& labels) const {
    if (static_cast<int>(mutant_labels.size()) != scheme.num_regions()) {
        throw DataError(DataError::Kind::length_mismatch,
                        "sample '" + sample_id + "': " + std::to_string(mutant_labels.size()) +
                            " mutant votes, scheme has " + std::to_string(scheme.num_regions()) +
                            " ablation regions");
    }
    if (!labels.contains(true_label)) {
        throw DataError(DataError::Kind::label_out_of_range,
                        "sample '" + sample_id + "': true label " + std::to_string(true_label) +
                            " outside [0, " + std::to_string(labels.num_labels) + ")");
    }
    for (Label y : mutant_labels) {
        if (!labels.contains(y)) {
            throw DataError(DataError::Kind::label_out_of_range,
                            "sample '" + sample_id + "': mutant label " + std::to_string(y) +
                                " outside [0, " + std::to_string(labels.num_labels) + ")");
        }
    }
}

Count VoteConfidence::of(Label y) const {
    auto it = std::lower_bound(counts.begin(), counts.end(), y,
                               [](const auto& e, Label l) { return e.first < l; });
    return (it != counts.end() && it->first == y) ? it->second : 0;
}

Count VoteConfidence::total() const {
    Count t = 0;
    for (const auto& [_, c] : counts) t += c;
    return t;
}

Count CleanLevel::alpha_of(Label y) const {
    auto it = std::lower_bound(alpha.begin(), alpha.end(), y,
                               [](const auto& e, Label l) { return e.first < l; });
    return (it != alpha.end() && it->first == y) ? it->second : 0;
}

VoteConfidence vote_confidence(const SampleVotes& sample) {
    std::map<Label, Count> tally;
    for (Label y : sample.mutant_labels) ++tally[y];
    VoteConfidence conf;
    conf.counts.assign(tally.begin(), tally.end());
    return conf;
}

std::vector<Label> ranked_prediction(const VoteConfidence& conf, int k,
                                     const LabelSpace& labels) {
    labels.validate();
    if (k < 1 || k > labels.num_labels) {
        throw ConfigError("ranked prediction: k must be in [1, num_labels]");
    }
    std::vector<std::pair<Label, Count>> order = conf.counts;
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<Label> top;
    top.reserve(static_cast<std::size_t>(k));
    for (const auto& [y, _] : order) {
        if (static_cast<int>(top.size()) == k) return top;
        top.push_back(y);
    }
    // Fill the remainder with zero-vote labels in ascending id order.
    std::vector<bool> seen(static_cast<std::size_t>(labels.num_labels), false);
    for (const auto& [y, _] : conf.counts) seen[static_cast<std::size_t>(y)] = true;
    for (Label y = 0; y < labels.num_labels && static_cast<int>(top.size()) < k; ++y) {
        if (!seen[static_cast<std::size_t>(y)]) top.push_back(y);
    }
    return top;
}

int rank_of_label(const VoteConfidence& conf, Label y0, const LabelSpace& labels) {
    labels.validate();
    const Count v0 = conf.of(y0);
    int ahead = 0;
    Label positive_below_id = 0;  // positive-count labels with id < y0
    for (const auto& [y, c] : conf.counts) {
        if (c > v0 || (c == v0 && y < y0)) ++ahead;
        if (y < y0) ++positive_below_id;
    }
    if (v0 == 0) {
        // Zero-vote labels with smaller ids also rank ahead of y0.
        ahead += static_cast<int>(y0 - positive_below_id);
    }
    return ahead + 1;
}

bool topk_correct(const VoteConfidence& conf, Label y0, int k, const LabelSpace& labels) {
    return rank_of_label(conf, y0, labels) <= k;
}

CleanLevel clean_level(const SampleVotes& sample, const PatchRegion& region,
                       const AblationScheme& scheme, const LabelSpace& labels) {
    sample.validate(scheme, labels);
    std::map<Label, Count> tally;
    for (Label y : sample.mutant_labels) ++tally[y];

    const BandSpan span = overlapping_band_span(scheme, region);
    const int n = scheme.num_regions();
    for (int i = 0; i < span.count; ++i) {
        const int band = (span.first + i) % n;
        auto it = tally.find(sample.mutant_labels[static_cast<std::size_t>(band)]);
        if (--it->second == 0) tally.erase(it);
    }

    CleanLevel level;
    level.region = region;
    level.alpha.assign(tally.begin(), tally.end());
    level.overlap_count = span.count;
    level.num_labels = labels.num_labels;
    return level;
}

}  // namespace patchcert
