// Command-line workbench around the aisrec core library: synthetic data
// generation, the full predictor/neighbourhood experiment, stimulation-rate
// sweeps and summary recomputation from saved runs.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aisrec/config.hpp"
#include "aisrec/errors.hpp"
#include "aisrec/experiment.hpp"
#include "aisrec/export.hpp"
#include "aisrec/numfmt.hpp"
#include "aisrec/ratings.hpp"

namespace {

using namespace aisrec;

struct TableOptions {
    std::string ratings_path;
    bool synthetic = false;
    std::size_t users = 500;
    std::size_t items = 300;
    std::size_t clusters = 5;
    double density = 0.2;
    double noise = 1.0;
    std::uint64_t gen_seed = 1;
};

void add_table_options(CLI::App* cmd, TableOptions* opts) {
    auto* ratings = cmd->add_option("--ratings", opts->ratings_path,
                                    "Ratings file (user_id,item_id,vote per line)");
    auto* synthetic =
        cmd->add_flag("--synthetic", opts->synthetic, "Generate a synthetic table");
    ratings->excludes(synthetic);
    synthetic->excludes(ratings);
    cmd->add_option("--users", opts->users, "Synthetic: number of users");
    cmd->add_option("--items", opts->items, "Synthetic: number of items");
    cmd->add_option("--clusters", opts->clusters, "Synthetic: number of clusters");
    cmd->add_option("--density", opts->density, "Synthetic: vote density in (0,1]");
    cmd->add_option("--noise", opts->noise, "Synthetic: additive noise spread");
    cmd->add_option("--gen-seed", opts->gen_seed, "Synthetic: generator seed");
}

RatingsTable make_table(const TableOptions& opts, const ExperimentConfig& cfg) {
    if (!opts.ratings_path.empty())
        return load_ratings_file(opts.ratings_path, cfg.scale);
    if (!opts.synthetic)
        throw ConfigError("either --ratings FILE or --synthetic is required");
    SyntheticSpec spec;
    spec.n_users = opts.users;
    spec.n_items = opts.items;
    spec.n_clusters = opts.clusters;
    spec.density = opts.density;
    spec.noise = opts.noise;
    spec.scale = cfg.scale;
    spec.seed = opts.gen_seed;
    return generate_synthetic(spec);
}

ExportFormat parse_format(const std::string& format) {
    if (format == "csv") return ExportFormat::Csv;
    if (format == "json") return ExportFormat::Json;
    throw ConfigError("unknown format `" + format + "` (expected csv or json)");
}

std::string p_cell(const std::optional<double>& p) {
    return p ? format_p_upper(*p) : std::string("-");
}

std::string num_cell(const std::optional<double>& v) {
    if (!v) return "-";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", *v);
    return buf;
}

void print_summary(const ExperimentSummary& summary) {
    std::printf("neighbourhood characteristics (SP first, AIS second):\n");
    std::printf("  %-22s %10s %10s %6s %10s %10s %12s\n", "characteristic", "mean SP",
                "mean AIS", "n", "ranks SP", "ranks AIS", "p (upper)");
    for (const auto& c : summary.characteristics) {
        std::printf("  %-22s %10s %10s %6zu %10.1f %10.1f %12s\n",
                    std::string(c.characteristic).c_str(), num_cell(c.mean_sp).c_str(),
                    num_cell(c.mean_ais).c_str(), c.n_unequal, c.rank_sum_sp,
                    c.rank_sum_ais, p_cell(c.p_upper_bound).c_str());
    }
    std::printf("\nneighbourhood composition (mean over trials):\n");
    std::printf("  AIS size %s, SP size %s, common %s, unique AIS %s, unique SP %s\n",
                num_cell(summary.ais_size.mean).c_str(),
                num_cell(summary.sp_size.mean).c_str(),
                num_cell(summary.common_neighbours.mean).c_str(),
                num_cell(summary.unique_ais.mean).c_str(),
                num_cell(summary.unique_sp.mean).c_str());

    const auto print_tests = [](const char* label,
                                const std::vector<RegimePairTest>& tests) {
        std::printf("\n%s (predictor/neighbourhood pairs):\n", label);
        std::printf("  %-9s %-9s %10s %10s %6s %10s %10s %12s\n", "first", "second",
                    "median 1", "median 2", "n", "ranks 1", "ranks 2", "p (upper)");
        for (const auto& t : tests) {
            const std::string first = std::string(regime_predictor(t.first)) + "/" +
                                      std::string(regime_neighbourhood(t.first));
            const std::string second = std::string(regime_predictor(t.second)) + "/" +
                                       std::string(regime_neighbourhood(t.second));
            std::printf("  %-9s %-9s %10s %10s %6zu %10.1f %10.1f %12s\n",
                        first.c_str(), second.c_str(), num_cell(t.median_first).c_str(),
                        num_cell(t.median_second).c_str(), t.n_unequal, t.rank_sum_first,
                        t.rank_sum_second, p_cell(t.p_upper_bound).c_str());
        }
    };
    print_tests("prediction (MAE)", summary.mae_tests);
    print_tests("recommendation (Kendall's tau)", summary.tau_tests);
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Immune-inspired collaborative filtering workbench"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic ratings file");
    std::size_t gen_users = 500, gen_items = 300, gen_clusters = 5;
    double gen_density = 0.2, gen_noise = 1.0;
    std::uint64_t gen_seed = 1;
    VoteScale gen_scale;
    std::string gen_out;
    gen->add_option("--users", gen_users, "Number of users")->required();
    gen->add_option("--items", gen_items, "Number of items")->required();
    gen->add_option("--clusters", gen_clusters, "Number of clusters")->required();
    gen->add_option("--density", gen_density, "Vote density in (0,1]")->required();
    gen->add_option("--noise", gen_noise, "Additive noise spread");
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--vote-min", gen_scale.min_vote, "Scale minimum");
    gen->add_option("--vote-max", gen_scale.max_vote, "Scale maximum");
    gen->add_option("--vote-step", gen_scale.step, "Scale step (0 = continuous)");
    gen->add_option("--out", gen_out, "Output ratings file")->required();

    // run
    auto* run = app.add_subcommand("run", "Run the experiment and export tables");
    TableOptions run_table;
    add_table_options(run, &run_table);
    std::string run_config, run_out, run_format = "csv";
    run->add_option("--config", run_config, "Config file (key=value lines)");
    run->add_option("--out", run_out, "Output directory")->required();
    run->add_option("--format", run_format, "Export format: csv or json");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Stimulation-rate sweep");
    TableOptions sweep_table;
    add_table_options(sweep, &sweep_table);
    std::string sweep_config, sweep_out, sweep_format = "csv";
    std::string sweep_rates;
    sweep->add_option("--rates", sweep_rates, "Comma-separated k1 values")->required();
    sweep->add_option("--config", sweep_config, "Config file (key=value lines)");
    sweep->add_option("--out", sweep_out, "Output directory")->required();
    sweep->add_option("--format", sweep_format, "Export format: csv or json");

    // stats
    auto* stats = app.add_subcommand(
        "stats", "Recompute summary tables from a saved run (trials.csv)");
    std::string stats_out, stats_config, stats_format = "csv";
    stats->add_option("--out", stats_out, "Directory holding trials.csv")->required();
    stats->add_option("--config", stats_config, "Config file (key=value lines)");
    stats->add_option("--format", stats_format, "Export format: csv or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (*gen) {
        SyntheticSpec spec;
        spec.n_users = gen_users;
        spec.n_items = gen_items;
        spec.n_clusters = gen_clusters;
        spec.density = gen_density;
        spec.noise = gen_noise;
        spec.scale = gen_scale;
        spec.seed = gen_seed;
        const RatingsTable table = generate_synthetic(spec);
        save_ratings_file(table, gen_out);
        std::printf("wrote %zu votes from %zu users to %s\n", table.vote_count(),
                    table.user_count(), gen_out.c_str());
        return 0;
    }

    if (*run) {
        const ExperimentConfig cfg =
            run_config.empty() ? ExperimentConfig{} : load_config_file(run_config);
        const ExportFormat format = parse_format(run_format);
        const RatingsTable table = make_table(run_table, cfg);
        const ExperimentResult result = run_experiment(table, cfg);
        export_results(result, run_out, format);
        std::printf("ran %zu trials over %zu users; results in %s\n",
                    result.trials.size(), table.user_count(), run_out.c_str());
        print_summary(result.summary);
        return 0;
    }

    if (*sweep) {
        const ExperimentConfig cfg =
            sweep_config.empty() ? ExperimentConfig{} : load_config_file(sweep_config);
        const ExportFormat format = parse_format(sweep_format);
        const RatingsTable table = make_table(sweep_table, cfg);
        std::vector<double> rates;
        std::stringstream list(sweep_rates);
        std::string token;
        while (std::getline(list, token, ',')) {
            const auto rate = parse_double(token);
            if (!rate) throw ConfigError("bad rate `" + token + "` in --rates");
            rates.push_back(*rate);
        }
        const auto points = sweep_stimulation(table, rates, cfg);
        export_sweep(points, sweep_out, format);
        std::printf("%8s %10s %10s %12s %12s\n", "k1", "mean size", "sd size",
                    "mean seen", "sd seen");
        for (const auto& p : points)
            std::printf("%8.3f %10.2f %10.2f %12.2f %12.2f\n", p.k1, p.mean_size,
                        p.sd_size, p.mean_reviewers_examined, p.sd_reviewers_examined);
        return 0;
    }

    // stats
    const ExperimentConfig cfg =
        stats_config.empty() ? ExperimentConfig{} : load_config_file(stats_config);
    const ExportFormat format = parse_format(stats_format);
    const std::filesystem::path dir(stats_out);
    ExperimentResult result;
    result.trials = load_trials_csv(dir / "trials.csv");
    result.summary = summarize(result.trials, cfg.wilcoxon_exact_cutoff);
    export_results(result, dir, format);
    std::printf("recomputed summaries over %zu trials in %s\n", result.trials.size(),
                stats_out.c_str());
    print_summary(result.summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
