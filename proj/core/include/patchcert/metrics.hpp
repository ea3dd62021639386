#pragma once

#include "patchcert/certifiers.hpp"
#include "patchcert/types.hpp"
#include "patchcert/votes.hpp"

#include <boost/rational.hpp>

#include <optional>
#include <vector>

namespace patchcert {

// Accuracies and min-k summaries are exact rationals; rounding happens only
// when a report is rendered.
using Rational = boost::rational<Count>;

struct VoteDataset {
    AblationScheme scheme;
    LabelSpace labels;
    std::vector<SampleVotes> samples;

    void validate() const;
};

struct MinkStats {
    Rational mean;
    Rational median;
    Rational lower_quartile;
    Rational upper_quartile;
    int max_value = 0;
    std::size_t count = 0;
};

// Summary of an already-computed min-k column.
MinkStats summarize_minks(const std::vector<int>& minks);

// Fraction of samples whose true label is top-k correct.
Rational clean_accuracy(const VoteDataset& dataset, int k);

// Fraction of samples certified at k (the top-k-correct requirement is part
// of being certified). strategy1 is defined for k = 1 only.
Rational certified_accuracy(const VoteDataset& dataset, Analyzer analyzer,
                            const PatchSpec& patch, int k,
                            BudgetMode budget = BudgetMode::global_delta);

MinkStats mink_statistics(const VoteDataset& dataset, Analyzer analyzer,
                          const PatchSpec& patch,
                          BudgetMode budget = BudgetMode::global_delta);

// r_i = mean_mink(m_i) / mean_mink(m_{i-1}); one entry per consecutive pair.
std::vector<Rational> sensitivity_ratios(const std::vector<Rational>& mean_minks);

struct ReportRow {
    Analyzer analyzer = Analyzer::costcert;
    int patch_side = 0;
    int k = 0;
    Rational clean_acc;
    Rational cert_acc;
    std::optional<Rational> mean_mink;
    std::optional<Rational> median_mink;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct MinkSeries {
    Analyzer analyzer = Analyzer::costcert;
    int patch_side = 0;
    std::vector<int> mink_per_sample;
    MinkStats stats;
};

struct SensitivitySeries {
    Analyzer analyzer = Analyzer::costcert;
    std::vector<int> patch_sides;
    std::vector<Rational> ratios;
};

struct DatasetReport {
    std::vector<ReportRow> rows;
    std::vector<MinkSeries> mink_series;
    std::vector<SensitivitySeries> sensitivity;
};

struct SweepRequest {
    std::vector<Analyzer> analyzers;
    std::vector<int> patch_sides;
    std::vector<int> k_values;
    BudgetMode budget = BudgetMode::global_delta;
};

// Full cross-product evaluation. Each (sample, patch side) pair is analyzed
// once; every k value is answered from the resulting min-k columns.
// Parallel over samples, deterministic output ordering.
DatasetReport sweep(const VoteDataset& dataset, const SweepRequest& request);

}  // namespace patchcert
