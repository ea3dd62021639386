#include "patchcert/vote_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace patchcert {

namespace {

using json = nlohmann::json;

std::string location(const std::string& origin, std::size_t line) {
    return origin + ":" + std::to_string(line);
}

SampleVotes parse_jsonl_record(const std::string& text, const std::string& origin,
                               std::size_t line) {
    json record;
    try {
        record = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(DataError::Kind::malformed_line,
                        location(origin, line) + ": invalid JSON: " + e.what());
    }
    if (!record.is_object() || !record.contains("id") || !record.contains("true_label") ||
        !record.contains("mutant_labels") || !record["id"].is_string() ||
        !record["true_label"].is_number_integer() || !record["mutant_labels"].is_array()) {
        throw DataError(DataError::Kind::malformed_line,
                        location(origin, line) +
                            ": expected {\"id\": str, \"true_label\": int, "
                            "\"mutant_labels\": [int, ...]}");
    }
    SampleVotes sample;
    sample.sample_id = record["id"].get<std::string>();
    sample.true_label = record["true_label"].get<Label>();
    sample.mutant_labels.reserve(record["mutant_labels"].size());
    for (const auto& v : record["mutant_labels"]) {
        if (!v.is_number_integer()) {
            throw DataError(DataError::Kind::malformed_line,
                            location(origin, line) + ": mutant_labels must be integers");
        }
        sample.mutant_labels.push_back(v.get<Label>());
    }
    return sample;
}

std::vector<std::string> split_csv_line(const std::string& text) {
    // The vote schema has no quoted fields; a plain comma split suffices.
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(text);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!text.empty() && text.back() == ',') fields.emplace_back();
    return fields;
}

Label parse_label_field(const std::string& field, const std::string& origin,
                        std::size_t line) {
    try {
        std::size_t used = 0;
        const long v = std::stol(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return static_cast<Label>(v);
    } catch (const std::exception&) {
        throw DataError(DataError::Kind::malformed_line,
                        location(origin, line) + ": '" + field + "' is not an integer");
    }
}

SampleVotes parse_csv_record(const std::string& text, const std::string& origin,
                             std::size_t line) {
    const std::vector<std::string> fields = split_csv_line(text);
    if (fields.size() < 3) {
        throw DataError(DataError::Kind::malformed_line,
                        location(origin, line) + ": expected id,true_label,m0,...");
    }
    SampleVotes sample;
    sample.sample_id = fields[0];
    sample.true_label = parse_label_field(fields[1], origin, line);
    sample.mutant_labels.reserve(fields.size() - 2);
    for (std::size_t i = 2; i < fields.size(); ++i) {
        sample.mutant_labels.push_back(parse_label_field(fields[i], origin, line));
    }
    return sample;
}

}  // namespace

VoteDataset load_votes(std::istream& in, const std::string& origin,
                       const AblationScheme& scheme, const LabelSpace& labels) {
    scheme.validate();
    labels.validate();

    VoteDataset dataset{scheme, labels, {}};
    std::string line;
    std::size_t line_no = 0;
    bool csv = false;
    bool format_known = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!format_known) {
            format_known = true;
            if (line.front() == '{') {
                csv = false;
            } else if (line.rfind("id,", 0) == 0) {
                csv = true;
                continue;  // header row
            } else {
                throw DataError(DataError::Kind::malformed_line,
                                location(origin, line_no) +
                                    ": expected a JSON object or an 'id,true_label,m0,...' header");
            }
        }
        SampleVotes sample = csv ? parse_csv_record(line, origin, line_no)
                                 : parse_jsonl_record(line, origin, line_no);
        try {
            sample.validate(scheme, labels);
        } catch (const DataError& e) {
            throw DataError(e.kind(), location(origin, line_no) + ": " + e.what());
        }
        dataset.samples.push_back(std::move(sample));
    }
    if (dataset.samples.empty()) {
        throw DataError(DataError::Kind::empty_dataset,
                        origin + ": no vote records found");
    }
    dataset.validate();  // rejects duplicate ids
    return dataset;
}

VoteDataset load_votes(const std::string& path, const AblationScheme& scheme,
                       const LabelSpace& labels) {
    std::ifstream in(path);
    if (!in) throw DataError(DataError::Kind::malformed_line, "cannot open '" + path + "'");
    return load_votes(in, path, scheme, labels);
}

void save_votes(const VoteDataset& dataset, std::ostream& out, VoteFileFormat format) {
    if (format == VoteFileFormat::csv) {
        out << "id,true_label";
        for (int i = 0; i < dataset.scheme.num_regions(); ++i) out << ",m" << i;
        out << "\n";
        for (const SampleVotes& s : dataset.samples) {
            out << s.sample_id << "," << s.true_label;
            for (Label y : s.mutant_labels) out << "," << y;
            out << "\n";
        }
        return;
    }
    for (const SampleVotes& s : dataset.samples) {
        nlohmann::ordered_json record;
        record["id"] = s.sample_id;
        record["true_label"] = s.true_label;
        record["mutant_labels"] = s.mutant_labels;
        out << record.dump() << "\n";
    }
}

void save_votes(const VoteDataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError(DataError::Kind::malformed_line, "cannot write '" + path + "'");
    const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
    save_votes(dataset, out, csv ? VoteFileFormat::csv : VoteFileFormat::jsonl);
}

}  // namespace patchcert
