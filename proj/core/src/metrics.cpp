#include "patchcert/metrics.hpp"

#include "patchcert/parallel.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace patchcert {

void VoteDataset::validate() const {
    scheme.validate();
    labels.validate();
    std::unordered_set<std::string> ids;
    ids.reserve(samples.size());
    for (const SampleVotes& s : samples) {
        s.validate(scheme, labels);
        if (!ids.insert(s.sample_id).second) {
            throw DataError(DataError::Kind::duplicate_id,
                            "duplicate sample id '" + s.sample_id + "'");
        }
    }
}

namespace {

void require_nonempty(std::size_t n) {
    if (n == 0) {
        throw DataError(DataError::Kind::empty_dataset, "dataset contains no samples");
    }
}

Rational median_of_sorted(const std::vector<int>& v, std::size_t lo, std::size_t hi) {
    // Median of v[lo..hi), which must be nonempty and sorted.
    const std::size_t n = hi - lo;
    const std::size_t mid = lo + n / 2;
    if (n % 2 == 1) return Rational(v[mid]);
    return Rational(v[mid - 1] + v[mid], 2);
}

std::vector<int> collect_minks(const VoteDataset& dataset, Analyzer analyzer,
                               const PatchSpec& patch, BudgetMode budget) {
    if (analyzer == Analyzer::strategy1) {
        throw ConfigError("strategy1 certifies top-1 only and has no min-k");
    }
    std::vector<int> minks(dataset.samples.size(), 0);
    parallel_for(dataset.samples.size(), [&](std::size_t i) {
        const SampleVotes& s = dataset.samples[i];
        minks[i] = (analyzer == Analyzer::costcert)
                       ? costcert_mink(s, dataset.scheme, dataset.labels, patch, budget)
                       : strategy2_mink(s, dataset.scheme, dataset.labels, patch);
    });
    return minks;
}

}  // namespace

MinkStats summarize_minks(const std::vector<int>& minks) {
    require_nonempty(minks.size());
    std::vector<int> sorted = minks;
    std::sort(sorted.begin(), sorted.end());

    MinkStats stats;
    stats.count = sorted.size();
    Count sum = 0;
    for (int v : sorted) sum += v;
    stats.mean = Rational(sum, static_cast<Count>(sorted.size()));
    stats.median = median_of_sorted(sorted, 0, sorted.size());
    stats.max_value = sorted.back();

    // Quartiles as medians of the halves, the middle element excluded when
    // the size is odd.
    const std::size_t n = sorted.size();
    if (n == 1) {
        stats.lower_quartile = stats.upper_quartile = Rational(sorted[0]);
    } else {
        stats.lower_quartile = median_of_sorted(sorted, 0, n / 2);
        stats.upper_quartile = median_of_sorted(sorted, (n + 1) / 2, n);
    }
    return stats;
}

Rational clean_accuracy(const VoteDataset& dataset, int k) {
    dataset.validate();
    require_nonempty(dataset.samples.size());
    if (k < 1 || k > dataset.labels.num_labels) {
        throw ConfigError("clean accuracy: k must be in [1, num_labels]");
    }
    Count correct = 0;
    for (const SampleVotes& s : dataset.samples) {
        if (topk_correct(vote_confidence(s), s.true_label, k, dataset.labels)) ++correct;
    }
    return Rational(correct, static_cast<Count>(dataset.samples.size()));
}

Rational certified_accuracy(const VoteDataset& dataset, Analyzer analyzer,
                            const PatchSpec& patch, int k, BudgetMode budget) {
    dataset.validate();
    require_nonempty(dataset.samples.size());
    std::vector<char> certified(dataset.samples.size(), 0);
    if (analyzer == Analyzer::strategy1) {
        if (k != 1) throw ConfigError("strategy1 certifies top-1 only (k must be 1)");
        const Count delta = compute_delta(dataset.scheme, patch);
        parallel_for(dataset.samples.size(), [&](std::size_t i) {
            const SampleVotes& s = dataset.samples[i];
            certified[i] = strategy1_certify(s, delta) &&
                           topk_correct(vote_confidence(s), s.true_label, 1, dataset.labels);
        });
    } else {
        std::vector<int> minks = collect_minks(dataset, analyzer, patch, budget);
        for (std::size_t i = 0; i < minks.size(); ++i) certified[i] = minks[i] <= k;
    }
    Count hits = 0;
    for (char c : certified) hits += c;
    return Rational(hits, static_cast<Count>(dataset.samples.size()));
}

MinkStats mink_statistics(const VoteDataset& dataset, Analyzer analyzer,
                          const PatchSpec& patch, BudgetMode budget) {
    dataset.validate();
    require_nonempty(dataset.samples.size());
    return summarize_minks(collect_minks(dataset, analyzer, patch, budget));
}

std::vector<Rational> sensitivity_ratios(const std::vector<Rational>& mean_minks) {
    std::vector<Rational> ratios;
    for (std::size_t i = 1; i < mean_minks.size(); ++i) {
        ratios.push_back(mean_minks[i] / mean_minks[i - 1]);
    }
    return ratios;
}

DatasetReport sweep(const VoteDataset& dataset, const SweepRequest& request) {
    dataset.validate();
    require_nonempty(dataset.samples.size());
    if (request.analyzers.empty()) throw ConfigError("sweep: no analyzers selected");
    if (request.patch_sides.empty()) throw ConfigError("sweep: no patch sides given");
    if (request.k_values.empty()) throw ConfigError("sweep: no k values given");

    std::vector<Analyzer> analyzers(request.analyzers);
    std::sort(analyzers.begin(), analyzers.end());
    analyzers.erase(std::unique(analyzers.begin(), analyzers.end()), analyzers.end());

    std::vector<int> sides(request.patch_sides);
    std::sort(sides.begin(), sides.end());
    sides.erase(std::unique(sides.begin(), sides.end()), sides.end());

    std::vector<int> ks(request.k_values);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (int k : ks) {
        if (k < 1 || k >= dataset.labels.num_labels) {
            throw ConfigError("sweep: k=" + std::to_string(k) +
                              " outside [1, num_labels), num_labels=" +
                              std::to_string(dataset.labels.num_labels));
        }
    }

    const std::size_t n = dataset.samples.size();
    // One pass per (sample, patch side); every k is answered from min-k.
    std::vector<std::vector<SampleAnalysis>> per_side(sides.size());
    for (std::size_t si = 0; si < sides.size(); ++si) {
        const PatchSpec patch{sides[si]};
        patch.validate(dataset.scheme);
        per_side[si].resize(n);
        parallel_for(n, [&, si](std::size_t i) {
            per_side[si][i] = analyze_sample(dataset.samples[i], dataset.scheme,
                                             dataset.labels, patch, request.budget);
        });
    }

    std::vector<int> ranks(n);
    for (std::size_t i = 0; i < n; ++i) ranks[i] = per_side[0][i].true_label_rank;

    const auto clean_at = [&](int k) {
        Count c = 0;
        for (int r : ranks) c += (r <= k);
        return Rational(c, static_cast<Count>(n));
    };

    DatasetReport report;
    for (Analyzer analyzer : analyzers) {
        std::vector<Rational> mean_series;
        for (std::size_t si = 0; si < sides.size(); ++si) {
            const std::vector<SampleAnalysis>& column = per_side[si];
            if (analyzer != Analyzer::strategy1) {
                MinkSeries series;
                series.analyzer = analyzer;
                series.patch_side = sides[si];
                series.mink_per_sample.resize(n);
                for (std::size_t i = 0; i < n; ++i) {
                    series.mink_per_sample[i] = (analyzer == Analyzer::costcert)
                                                    ? column[i].costcert_mink
                                                    : column[i].strategy2_mink;
                }
                series.stats = summarize_minks(series.mink_per_sample);
                mean_series.push_back(series.stats.mean);

                for (int k : ks) {
                    Count hits = 0;
                    for (int mk : series.mink_per_sample) hits += (mk <= k);
                    ReportRow row;
                    row.analyzer = analyzer;
                    row.patch_side = sides[si];
                    row.k = k;
                    row.clean_acc = clean_at(k);
                    row.cert_acc = Rational(hits, static_cast<Count>(n));
                    row.mean_mink = series.stats.mean;
                    row.median_mink = series.stats.median;
                    report.rows.push_back(row);
                }
                report.mink_series.push_back(std::move(series));
            } else {
                // strategy1 is a top-1 analyzer; it contributes k = 1 rows only.
                if (std::find(ks.begin(), ks.end(), 1) == ks.end()) continue;
                Count hits = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    hits += (column[i].strategy1_pass && ranks[i] <= 1);
                }
                ReportRow row;
                row.analyzer = analyzer;
                row.patch_side = sides[si];
                row.k = 1;
                row.clean_acc = clean_at(1);
                row.cert_acc = Rational(hits, static_cast<Count>(n));
                report.rows.push_back(row);
            }
        }
        if (analyzer != Analyzer::strategy1 && sides.size() > 1) {
            SensitivitySeries sens;
            sens.analyzer = analyzer;
            sens.patch_sides = sides;
            sens.ratios = sensitivity_ratios(mean_series);
            report.sensitivity.push_back(std::move(sens));
        }
    }
    return report;
}

}  // namespace patchcert
