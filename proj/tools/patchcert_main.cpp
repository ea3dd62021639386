// Command-line front end: certify / mink / sweep / oracle / synth / report.

#include "patchcert/certifiers.hpp"
#include "patchcert/geometry.hpp"
#include "patchcert/metrics.hpp"
#include "patchcert/oracle.hpp"
#include "patchcert/report.hpp"
#include "patchcert/run_config.hpp"
#include "patchcert/synthetic.hpp"
#include "patchcert/vote_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace patchcert;

struct CommonOptions {
    RunConfig config;
    std::string votes_path;
    std::string out_path;
    std::string analyzer_spec = "all";
    std::string budget_spec = "global";
};

void add_geometry_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--width", opt.config.image_width, "Image width in pixels");
    cmd->add_option("--height", opt.config.image_height, "Image height in pixels");
    cmd->add_option("--band", opt.config.band_width, "Ablation band width in pixels");
    cmd->add_flag("--wrap,!--no-wrap", opt.config.wrap,
                  "Ablation bands wrap past the right edge (default on)");
    cmd->add_option("--labels", opt.config.num_labels, "Number of class labels");
    cmd->add_option("--seed", opt.config.seed, "RNG seed");
}

void add_analysis_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--patch", opt.config.patch_sides, "Patch side length(s) in pixels");
    cmd->add_option("--k", opt.config.k_values, "Top-k value(s) to certify");
    cmd->add_option("--budget", opt.budget_spec, "Budget mode: global|per-patch")
        ->check(CLI::IsMember({"global", "per-patch"}));
    cmd->add_option("--analyzer", opt.analyzer_spec,
                    "Analyzer: costcert|strategy1|strategy2|all")
        ->check(CLI::IsMember({"costcert", "strategy1", "strategy2", "all"}));
}

std::vector<Analyzer> selected_analyzers(const std::string& spec) {
    if (spec == "all") {
        return {Analyzer::costcert, Analyzer::strategy1, Analyzer::strategy2};
    }
    return {parse_analyzer(spec)};
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot write '" + out_path + "'");
    out << text;
}

VoteDataset load_dataset(const CommonOptions& opt) {
    if (opt.votes_path.empty()) throw ConfigError("--votes <path> is required");
    return load_votes(opt.votes_path, opt.config.scheme(), opt.config.label_space());
}

int run_certify(CommonOptions& opt) {
    opt.config.budget = parse_budget_mode(opt.budget_spec);
    const VoteDataset dataset = load_dataset(opt);
    const std::vector<Analyzer> analyzers = selected_analyzers(opt.analyzer_spec);

    std::ostringstream out;
    out << "id,analyzer,patch_side,k,certified,mink\n";
    for (int side : opt.config.patch_sides) {
        const PatchSpec patch{side};
        const Count delta = compute_delta(dataset.scheme, patch);
        for (int k : opt.config.k_values) {
            for (Analyzer analyzer : analyzers) {
                if (analyzer == Analyzer::strategy1 && k != 1) continue;
                for (const SampleVotes& s : dataset.samples) {
                    out << s.sample_id << "," << to_string(analyzer) << "," << side << ","
                        << k << ",";
                    if (analyzer == Analyzer::strategy1) {
                        const bool pass =
                            strategy1_certify(s, delta) &&
                            topk_correct(vote_confidence(s), s.true_label, 1,
                                         dataset.labels);
                        out << (pass ? "true" : "false") << ",\n";
                        continue;
                    }
                    const CertOutcome outcome =
                        (analyzer == Analyzer::costcert)
                            ? costcert_certify(s, dataset.scheme, dataset.labels, patch, k,
                                               opt.config.budget)
                            : strategy2_certify(s, dataset.scheme, dataset.labels, patch,
                                                k);
                    out << (outcome.certified ? "true" : "false") << "," << outcome.mink
                        << "\n";
                }
            }
        }
    }
    write_output(opt.out_path, out.str());
    return 0;
}

int run_mink(CommonOptions& opt) {
    opt.config.budget = parse_budget_mode(opt.budget_spec);
    const VoteDataset dataset = load_dataset(opt);
    std::vector<Analyzer> analyzers = selected_analyzers(opt.analyzer_spec);
    std::erase(analyzers, Analyzer::strategy1);
    if (analyzers.empty()) {
        throw ConfigError("mink: strategy1 certifies top-1 only and has no min-k");
    }

    std::ostringstream out;
    out << "id,analyzer,patch_side,mink\n";
    for (int side : opt.config.patch_sides) {
        const PatchSpec patch{side};
        for (Analyzer analyzer : analyzers) {
            for (const SampleVotes& s : dataset.samples) {
                const int mink =
                    (analyzer == Analyzer::costcert)
                        ? costcert_mink(s, dataset.scheme, dataset.labels, patch,
                                        opt.config.budget)
                        : strategy2_mink(s, dataset.scheme, dataset.labels, patch);
                out << s.sample_id << "," << to_string(analyzer) << "," << side << ","
                    << mink << "\n";
            }
        }
    }
    write_output(opt.out_path, out.str());
    return 0;
}

int run_sweep(CommonOptions& opt, const std::string& format_spec) {
    opt.config.budget = parse_budget_mode(opt.budget_spec);
    opt.config.analyzers = selected_analyzers(opt.analyzer_spec);
    const VoteDataset dataset = load_dataset(opt);
    const DatasetReport report = sweep(dataset, opt.config.sweep_request());
    write_output(opt.out_path, emit_report(report, parse_report_format(format_spec)));
    return 0;
}

int run_oracle(CommonOptions& opt, const OracleCaps& caps, bool show_allocations) {
    opt.config.budget = parse_budget_mode(opt.budget_spec);
    const VoteDataset dataset = load_dataset(opt);

    std::ostringstream out;
    bool sound = true;
    for (int side : opt.config.patch_sides) {
        const PatchSpec patch{side};
        const Count delta = compute_delta(dataset.scheme, patch);
        if (show_allocations) {
            out << "patch " << side << ": delta " << delta << ", allocations "
                << allocation_count(delta, dataset.labels.num_labels) << "\n";
        }
        const auto regions = build_patch_regions(dataset.scheme, patch);
        for (int k : opt.config.k_values) {
            for (const SampleVotes& s : dataset.samples) {
                const CertOutcome outcome = costcert_certify(
                    s, dataset.scheme, dataset.labels, patch, k, opt.config.budget);
                bool attack_found = false;
                for (const PatchRegion& region : regions) {
                    if (oracle_attack_feasible(s, region, dataset.scheme, dataset.labels,
                                               k, caps)) {
                        attack_found = true;
                        break;
                    }
                }
                const bool violation = outcome.certified && attack_found;
                sound = sound && !violation;
                out << s.sample_id << ",patch=" << side << ",k=" << k
                    << ",certified=" << (outcome.certified ? "true" : "false")
                    << ",attack_found=" << (attack_found ? "true" : "false")
                    << (violation ? ",SOUNDNESS-VIOLATION" : "") << "\n";
            }
        }
    }
    out << (sound ? "oracle agreement: no certified sample admits an attack\n"
                  : "oracle agreement: VIOLATIONS FOUND\n");
    write_output(opt.out_path, out.str());
    return sound ? 0 : 2;
}

int run_synth(CommonOptions& opt, CLI::App* cmd, const std::string& profile_spec,
              int num_samples) {
    const SyntheticProfile profile = parse_profile(profile_spec);
    RunConfig config = profile_defaults(profile);
    // Explicit flags override the profile's canonical geometry.
    if (cmd->count("--width")) config.image_width = opt.config.image_width;
    if (cmd->count("--height")) config.image_height = opt.config.image_height;
    if (cmd->count("--band")) config.band_width = opt.config.band_width;
    if (cmd->count("--wrap") || cmd->count("--no-wrap")) config.wrap = opt.config.wrap;
    if (cmd->count("--labels")) config.num_labels = opt.config.num_labels;
    config.seed = opt.config.seed;

    const VoteDataset dataset = gen_synthetic(profile, config, config.seed, num_samples);
    if (opt.out_path.empty()) {
        std::ostringstream out;
        save_votes(dataset, out, VoteFileFormat::jsonl);
        std::cout << out.str();
    } else {
        save_votes(dataset, opt.out_path);
    }
    return 0;
}

int run_report(const std::string& in_path, const std::string& format_spec,
               const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw ConfigError("cannot open '" + in_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const DatasetReport report = parse_report_csv(buffer.str());
    write_output(out_path, emit_report(report, parse_report_format(format_spec)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certifies that a voting classifier keeps the true label in its top-k "
                 "predictions under any single adversarial patch, from per-mutant votes."};
    app.require_subcommand(1);

    CommonOptions certify_opt, mink_opt, sweep_opt, oracle_opt, synth_opt;
    std::string sweep_format = "csv";
    std::string synth_profile;
    int synth_samples = 1;
    OracleCaps caps;
    bool show_allocations = false;
    std::string report_in, report_format = "markdown", report_out;

    CLI::App* certify = app.add_subcommand("certify", "Per-sample certification decisions");
    add_geometry_flags(certify, certify_opt);
    add_analysis_flags(certify, certify_opt);
    certify->add_option("--votes", certify_opt.votes_path, "Vote table (JSONL or CSV)");
    certify->add_option("--out", certify_opt.out_path, "Output path (default stdout)");

    CLI::App* mink = app.add_subcommand("mink", "Per-sample smallest certifying k");
    add_geometry_flags(mink, mink_opt);
    add_analysis_flags(mink, mink_opt);
    mink->add_option("--votes", mink_opt.votes_path, "Vote table (JSONL or CSV)");
    mink->add_option("--out", mink_opt.out_path, "Output path (default stdout)");

    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Dataset accuracies and min-k statistics over patch sizes and k");
    add_geometry_flags(sweep_cmd, sweep_opt);
    add_analysis_flags(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--votes", sweep_opt.votes_path, "Vote table (JSONL or CSV)");
    sweep_cmd->add_option("--out", sweep_opt.out_path, "Output path (default stdout)");
    sweep_cmd->add_option("--format", sweep_format, "csv|markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));

    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "Exhaustive attack search cross-checked against certification");
    add_geometry_flags(oracle_cmd, oracle_opt);
    add_analysis_flags(oracle_cmd, oracle_opt);
    oracle_cmd->add_option("--votes", oracle_opt.votes_path, "Vote table (JSONL or CSV)");
    oracle_cmd->add_option("--out", oracle_opt.out_path, "Output path (default stdout)");
    oracle_cmd->add_option("--cap-labels", caps.max_labels, "Label-count enumeration cap");
    oracle_cmd->add_option("--cap-budget", caps.max_budget, "Per-region vote budget cap");
    oracle_cmd->add_option("--cap-alpha", caps.max_total_alpha, "Total clean-vote cap");
    oracle_cmd->add_flag("--show-allocations", show_allocations,
                         "Print the attacker allocation count per patch size");

    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic vote table");
    add_geometry_flags(synth, synth_opt);
    synth->add_option("--profile", synth_profile,
                      "figure2|figure45|well_classified|random")
        ->required();
    synth->add_option("--samples", synth_samples, "Number of samples to generate");
    synth->add_option("--out", synth_opt.out_path,
                      "Output path (.csv for CSV, else JSONL; default stdout)");

    CLI::App* report_cmd =
        app.add_subcommand("report", "Re-render a sweep CSV (e.g. to markdown)");
    report_cmd->add_option("--in", report_in, "Sweep CSV produced by `sweep`")->required();
    report_cmd->add_option("--format", report_format, "csv|markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));
    report_cmd->add_option("--out", report_out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(certify)) return run_certify(certify_opt);
        if (app.got_subcommand(mink)) return run_mink(mink_opt);
        if (app.got_subcommand(sweep_cmd)) return run_sweep(sweep_opt, sweep_format);
        if (app.got_subcommand(oracle_cmd))
            return run_oracle(oracle_opt, caps, show_allocations);
        if (app.got_subcommand(synth))
            return run_synth(synth_opt, synth, synth_profile, synth_samples);
        if (app.got_subcommand(report_cmd))
            return run_report(report_in, report_format, report_out);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const OracleTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
