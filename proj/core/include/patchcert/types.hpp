#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace patchcert {

// Class labels are dense integers 0 .. num_labels-1.
using Label = std::int32_t;

// Vote counts, costs, and budgets. Certification is a discrete proof, so
// everything stays in exact integer arithmetic; 64 bits covers any product
// of counts that a realistic ablation scheme can produce.
using Count = std::int64_t;

// Usage / configuration problems (bad geometry, bad flags). CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid input data (vote files, synthetic profiles). CLI exit code 2.
class DataError : public std::runtime_error {
public:
    enum class Kind {
        malformed_line,
        length_mismatch,
        label_out_of_range,
        duplicate_id,
        empty_dataset,
        unknown_profile,
        incompatible_profile,
        bad_report,
    };

    DataError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// An exhaustive-enumeration request beyond the configured caps. Exit code 3.
class OracleTooLarge : public std::runtime_error {
public:
    explicit OracleTooLarge(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace patchcert
