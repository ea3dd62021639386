#include "patchcert/report.hpp"

#include <sstream>
#include <vector>

namespace patchcert {

namespace {

constexpr const char* kHeader =
    "analyzer,patch_side,k,clean_acc,cert_acc,mean_mink,median_mink,"
    "clean_acc_exact,cert_acc_exact,mean_mink_exact,median_mink_exact";

// Tenths of `value`, rounded half-up. Values are never negative here.
Count tenths_half_up(const Rational& value) {
    return (value.numerator() * 20 + value.denominator()) / (2 * value.denominator());
}

std::string one_decimal(const Rational& value) {
    const Count t = tenths_half_up(value);
    return std::to_string(t / 10) + "." + std::to_string(t % 10);
}

std::string exact(const Rational& value) {
    return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

Rational parse_exact(const std::string& field, std::size_t line) {
    const auto slash = field.find('/');
    try {
        if (slash == std::string::npos) throw std::invalid_argument(field);
        const Count num = std::stoll(field.substr(0, slash));
        const Count den = std::stoll(field.substr(slash + 1));
        if (den == 0) throw std::invalid_argument(field);
        return Rational(num, den);
    } catch (const std::exception&) {
        throw DataError(DataError::Kind::bad_report,
                        "report line " + std::to_string(line) + ": bad rational '" +
                            field + "'");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(text);
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

std::string emit_csv(const DatasetReport& report) {
    std::ostringstream out;
    out << kHeader << "\n";
    for (const ReportRow& row : report.rows) {
        out << to_string(row.analyzer) << "," << row.patch_side << "," << row.k << ","
            << render_percent(row.clean_acc) << "," << render_percent(row.cert_acc) << ",";
        if (row.mean_mink) out << one_decimal(*row.mean_mink);
        out << ",";
        if (row.median_mink) out << one_decimal(*row.median_mink);
        out << "," << exact(row.clean_acc) << "," << exact(row.cert_acc) << ",";
        if (row.mean_mink) out << exact(*row.mean_mink);
        out << ",";
        if (row.median_mink) out << exact(*row.median_mink);
        out << "\n";
    }
    return out.str();
}

std::string emit_markdown(const DatasetReport& report) {
    std::ostringstream out;
    out << "| analyzer | patch | k | clean acc (%) | certified acc (%) | mean min-k | "
           "median min-k |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const ReportRow& row : report.rows) {
        out << "| " << to_string(row.analyzer) << " | " << row.patch_side << " | " << row.k
            << " | " << render_percent(row.clean_acc) << " | " << render_percent(row.cert_acc)
            << " | " << (row.mean_mink ? one_decimal(*row.mean_mink) : std::string("-"))
            << " | " << (row.median_mink ? one_decimal(*row.median_mink) : std::string("-"))
            << " |\n";
    }
    for (const SensitivitySeries& sens : report.sensitivity) {
        out << "\nSensitivity ratios for " << to_string(sens.analyzer) << " (patch sides";
        for (int side : sens.patch_sides) out << " " << side;
        out << "):";
        for (const Rational& r : sens.ratios) out << " " << one_decimal(r);
        out << "\n";
    }
    return out.str();
}

}  // namespace

ReportFormat parse_report_format(const std::string& s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "markdown" || s == "md") return ReportFormat::markdown;
    throw ConfigError("unknown report format '" + s + "' (expected csv|markdown)");
}

std::string render_percent(const Rational& ratio) {
    return one_decimal(ratio * 100);
}

std::string render_decimal(const Rational& value) { return one_decimal(value); }

std::string emit_report(const DatasetReport& report, ReportFormat format) {
    return format == ReportFormat::csv ? emit_csv(report) : emit_markdown(report);
}

DatasetReport parse_report_csv(const std::string& text) {
    std::stringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    DatasetReport report;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != kHeader) {
                throw DataError(DataError::Kind::bad_report,
                                "report header mismatch: got '" + line + "'");
            }
            continue;
        }
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 11) {
            throw DataError(DataError::Kind::bad_report,
                            "report line " + std::to_string(line_no) + ": expected 11 fields");
        }
        ReportRow row;
        try {
            row.analyzer = parse_analyzer(f[0]);
        } catch (const ConfigError& e) {
            throw DataError(DataError::Kind::bad_report, e.what());
        }
        try {
            row.patch_side = std::stoi(f[1]);
            row.k = std::stoi(f[2]);
        } catch (const std::exception&) {
            throw DataError(DataError::Kind::bad_report,
                            "report line " + std::to_string(line_no) + ": bad integer field");
        }
        row.clean_acc = parse_exact(f[7], line_no);
        row.cert_acc = parse_exact(f[8], line_no);
        if (!f[9].empty()) row.mean_mink = parse_exact(f[9], line_no);
        if (!f[10].empty()) row.median_mink = parse_exact(f[10], line_no);
        report.rows.push_back(row);
    }
    if (line_no == 0) {
        throw DataError(DataError::Kind::bad_report, "empty report");
    }
    return report;
}

}  // namespace patchcert
