#pragma once

#include "patchcert/metrics.hpp"

#include <string>

namespace patchcert {

enum class ReportFormat { csv, markdown };

ReportFormat parse_report_format(const std::string& s);

// "57.2" style rendering: one decimal, half-up. render_percent scales a
// [0,1] ratio to percent first.
std::string render_percent(const Rational& ratio);
std::string render_decimal(const Rational& value);

// CSV carries the rounded human-readable columns followed by exact
// num/den columns, so a parsed report preserves the rationals bit for bit.
// Markdown renders the rounded table plus per-analyzer mean min-k and
// sensitivity-ratio lines.
std::string emit_report(const DatasetReport& report, ReportFormat format);

// Inverse of emit_report(.., csv) for the row table; rationals come from the
// exact columns, never from the rounded text.
DatasetReport parse_report_csv(const std::string& text);

}  // namespace patchcert
