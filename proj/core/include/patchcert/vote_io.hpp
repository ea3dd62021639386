#pragma once

#include "patchcert/metrics.hpp"
#include "patchcert/types.hpp"
#include "patchcert/votes.hpp"

#include <iosfwd>
#include <string>

namespace patchcert {

enum class VoteFileFormat { jsonl, csv };

// Loads a vote table and validates it against the scheme and label space.
// The format is sniffed from the first line: a '{' starts JSON Lines,
// an "id," header starts CSV. Duplicate ids, length mismatches, labels out
// of range, and empty files are each rejected with a distinct DataError.
VoteDataset load_votes(const std::string& path, const AblationScheme& scheme,
                       const LabelSpace& labels);
VoteDataset load_votes(std::istream& in, const std::string& origin,
                       const AblationScheme& scheme, const LabelSpace& labels);

// Writes the dataset; format from the path extension (.csv writes CSV,
// anything else JSON Lines). load_votes(save_votes(d)) == d.
void save_votes(const VoteDataset& dataset, const std::string& path);
void save_votes(const VoteDataset& dataset, std::ostream& out, VoteFileFormat format);

}  // namespace patchcert
