#include "aisrec/export.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aisrec/errors.hpp"
#include "aisrec/numfmt.hpp"

namespace aisrec {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kTrialsHeader =
    "trial,target,n_visible,n_hidden,ais_reviewers_examined,sp_reviewers_examined,"
    "ais_size,ais_overlap,ais_target_correlation,ais_neighbour_correlation,"
    "sp_size,sp_overlap,sp_target_correlation,sp_neighbour_correlation,"
    "common_neighbours,unique_ais,unique_sp,"
    "sp_sp_mae,sp_sp_tau,sp_sp_tau_n,sp_sp_tau_nd,"
    "ais_sp_mae,ais_sp_tau,ais_sp_tau_n,ais_sp_tau_nd,"
    "sp_ais_mae,sp_ais_tau,sp_ais_tau_n,sp_ais_tau_nd,"
    "ais_ais_mae,ais_ais_tau,ais_ais_tau_n,ais_ais_tau_nd,"
    "rand_mae,rand_tau,rand_tau_n,rand_tau_nd";

constexpr std::array<Regime, 5> kExportRegimes = {Regime::SpOnSp, Regime::AisOnSp,
                                                  Regime::SpOnAis, Regime::AisOnAis,
                                                  Regime::RandomizedControl};

std::string opt_cell(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

std::string render_trials_csv(std::span<const TrialOutcome> trials) {
    std::string out{kTrialsHeader};
    out += '\n';
    for (const auto& t : trials) {
        out += std::to_string(t.trial_index);
        out += ',' + std::to_string(t.target);
        out += ',' + std::to_string(t.n_visible);
        out += ',' + std::to_string(t.n_hidden);
        out += ',' + std::to_string(t.ais_reviewers_examined);
        out += ',' + std::to_string(t.sp_reviewers_examined);
        for (const NeighbourhoodStats* stats : {&t.ais_stats, &t.sp_stats}) {
            out += ',' + std::to_string(stats->size);
            out += ',' + std::to_string(stats->overlap);
            out += ',' + opt_cell(stats->mean_target_correlation);
            out += ',' + opt_cell(stats->mean_inter_neighbour_correlation);
        }
        out += ',' + std::to_string(t.common_neighbours);
        out += ',' + std::to_string(t.unique_ais);
        out += ',' + std::to_string(t.unique_sp);
        for (const Regime r : kExportRegimes) {
            const auto it = t.regimes.find(r);
            if (it == t.regimes.end()) {
                out += ",,,,";
                continue;
            }
            out += ',' + opt_cell(it->second.mae);
            if (it->second.tau) {
                out += ',' + format_double(it->second.tau->tau);
                out += ',' + std::to_string(it->second.tau->n_overlap);
                out += ',' + std::to_string(it->second.tau->n_discordant);
            } else {
                out += ",,,";
            }
        }
        out += '\n';
    }
    return out;
}

std::string render_pair_tests_csv(std::span<const RegimePairTest> tests) {
    std::string out =
        "first_predictor,first_neighbourhood,second_predictor,second_neighbourhood,"
        "median_first,median_second,n_compared,rank_sum_first,rank_sum_second,"
        "p_upper_bound\n";
    for (const auto& test : tests) {
        out += std::string(regime_predictor(test.first));
        out += ',' + std::string(regime_neighbourhood(test.first));
        out += ',' + std::string(regime_predictor(test.second));
        out += ',' + std::string(regime_neighbourhood(test.second));
        out += ',' + opt_cell(test.median_first);
        out += ',' + opt_cell(test.median_second);
        out += ',' + std::to_string(test.n_unequal);
        out += ',' + format_double(test.rank_sum_first);
        out += ',' + format_double(test.rank_sum_second);
        out += ',' + opt_cell(test.p_upper_bound);
        out += '\n';
    }
    return out;
}

std::string render_characteristics_csv(std::span<const CharacteristicTest> tests) {
    std::string out =
        "characteristic,mean_sp,mean_ais,n_compared,rank_sum_sp,rank_sum_ais,"
        "p_upper_bound\n";
    for (const auto& test : tests) {
        out += std::string(test.characteristic);
        out += ',' + opt_cell(test.mean_sp);
        out += ',' + opt_cell(test.mean_ais);
        out += ',' + std::to_string(test.n_unequal);
        out += ',' + format_double(test.rank_sum_sp);
        out += ',' + format_double(test.rank_sum_ais);
        out += ',' + opt_cell(test.p_upper_bound);
        out += '\n';
    }
    return out;
}

void append_metric_summary_row(std::string& out, std::string_view quantity,
                               const MetricSummary& s) {
    out += std::string(quantity);
    out += ',' + std::to_string(s.n);
    out += ',' + opt_cell(s.mean);
    out += ',' + opt_cell(s.stddev);
    out += '\n';
}

std::string render_composition_csv(const ExperimentSummary& summary) {
    std::string out = "quantity,n,mean,stddev\n";
    append_metric_summary_row(out, "ais_size", summary.ais_size);
    append_metric_summary_row(out, "sp_size", summary.sp_size);
    append_metric_summary_row(out, "common_neighbours", summary.common_neighbours);
    append_metric_summary_row(out, "unique_ais", summary.unique_ais);
    append_metric_summary_row(out, "unique_sp", summary.unique_sp);
    return out;
}

std::string render_regime_summary_csv(const ExperimentSummary& summary) {
    std::string out = "regime,predictor,neighbourhood,metric,n,mean,median,stddev\n";
    const auto row = [&out](Regime r, std::string_view metric, const MetricSummary& s) {
        out += std::string(regime_key(r));
        out += ',' + std::string(regime_predictor(r));
        out += ',' + std::string(regime_neighbourhood(r));
        out += ',' + std::string(metric);
        out += ',' + std::to_string(s.n);
        out += ',' + opt_cell(s.mean);
        out += ',' + opt_cell(s.median);
        out += ',' + opt_cell(s.stddev);
        out += '\n';
    };
    for (const auto& [r, s] : summary.mae_by_regime) row(r, "mae", s);
    for (const auto& [r, s] : summary.tau_by_regime) row(r, "tau", s);
    return out;
}

std::string render_scatter_csv(std::span<const TrialOutcome> trials,
                               std::string_view characteristic) {
    std::string out = "trial,";
    out += characteristic;
    out += ",tau\n";
    for (const auto& t : trials) {
        const auto it = t.regimes.find(Regime::AisOnAis);
        if (it == t.regimes.end() || !it->second.tau) continue;
        std::optional<double> x;
        if (characteristic == "neighbours") {
            x = static_cast<double>(t.ais_stats.size);
        } else if (characteristic == "overlap") {
            x = static_cast<double>(t.ais_stats.overlap);
        } else if (characteristic == "target_correlation") {
            x = t.ais_stats.mean_target_correlation;
        } else {
            x = t.ais_stats.mean_inter_neighbour_correlation;
        }
        if (!x) continue;
        out += std::to_string(t.trial_index);
        out += ',' + format_double(*x);
        out += ',' + format_double(it->second.tau->tau);
        out += '\n';
    }
    return out;
}

ordered_json json_opt(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json trial_to_json(const TrialOutcome& t) {
    ordered_json j;
    j["trial"] = t.trial_index;
    j["target"] = t.target;
    j["n_visible"] = t.n_visible;
    j["n_hidden"] = t.n_hidden;
    j["ais_reviewers_examined"] = t.ais_reviewers_examined;
    j["sp_reviewers_examined"] = t.sp_reviewers_examined;
    const auto stats_json = [](const NeighbourhoodStats& s) {
        ordered_json js;
        js["size"] = s.size;
        js["overlap"] = s.overlap;
        js["target_correlation"] = json_opt(s.mean_target_correlation);
        js["neighbour_correlation"] = json_opt(s.mean_inter_neighbour_correlation);
        return js;
    };
    j["ais_stats"] = stats_json(t.ais_stats);
    j["sp_stats"] = stats_json(t.sp_stats);
    j["common_neighbours"] = t.common_neighbours;
    j["unique_ais"] = t.unique_ais;
    j["unique_sp"] = t.unique_sp;
    ordered_json regimes;
    for (const Regime r : kExportRegimes) {
        const auto it = t.regimes.find(r);
        if (it == t.regimes.end()) continue;
        ordered_json jr;
        jr["mae"] = json_opt(it->second.mae);
        if (it->second.tau) {
            jr["tau"] = it->second.tau->tau;
            jr["tau_n"] = it->second.tau->n_overlap;
            jr["tau_nd"] = it->second.tau->n_discordant;
        } else {
            jr["tau"] = nullptr;
        }
        regimes[std::string(regime_key(r))] = std::move(jr);
    }
    j["regimes"] = std::move(regimes);
    return j;
}

ordered_json summary_to_json(const ExperimentSummary& summary) {
    ordered_json j;
    const auto metric_json = [](const MetricSummary& s) {
        ordered_json js;
        js["n"] = s.n;
        js["mean"] = json_opt(s.mean);
        js["median"] = json_opt(s.median);
        js["stddev"] = json_opt(s.stddev);
        return js;
    };
    ordered_json per_regime;
    for (std::size_t i = 0; i < summary.mae_by_regime.size(); ++i) {
        ordered_json jr;
        jr["mae"] = metric_json(summary.mae_by_regime[i].second);
        jr["tau"] = metric_json(summary.tau_by_regime[i].second);
        per_regime[std::string(regime_key(summary.mae_by_regime[i].first))] =
            std::move(jr);
    }
    j["regimes"] = std::move(per_regime);
    const auto tests_json = [](std::span<const RegimePairTest> tests) {
        ordered_json arr = ordered_json::array();
        for (const auto& test : tests) {
            ordered_json jt;
            jt["first"] = std::string(regime_key(test.first));
            jt["second"] = std::string(regime_key(test.second));
            jt["median_first"] = json_opt(test.median_first);
            jt["median_second"] = json_opt(test.median_second);
            jt["n_compared"] = test.n_unequal;
            jt["rank_sum_first"] = test.rank_sum_first;
            jt["rank_sum_second"] = test.rank_sum_second;
            jt["p_upper_bound"] = json_opt(test.p_upper_bound);
            arr.push_back(std::move(jt));
        }
        return arr;
    };
    j["wilcoxon_mae"] = tests_json(summary.mae_tests);
    j["wilcoxon_tau"] = tests_json(summary.tau_tests);
    ordered_json characteristics = ordered_json::array();
    for (const auto& test : summary.characteristics) {
        ordered_json jt;
        jt["characteristic"] = std::string(test.characteristic);
        jt["mean_sp"] = json_opt(test.mean_sp);
        jt["mean_ais"] = json_opt(test.mean_ais);
        jt["n_compared"] = test.n_unequal;
        jt["rank_sum_sp"] = test.rank_sum_sp;
        jt["rank_sum_ais"] = test.rank_sum_ais;
        jt["p_upper_bound"] = json_opt(test.p_upper_bound);
        characteristics.push_back(std::move(jt));
    }
    j["characteristics"] = std::move(characteristics);
    ordered_json composition;
    composition["ais_size"] = metric_json(summary.ais_size);
    composition["sp_size"] = metric_json(summary.sp_size);
    composition["common_neighbours"] = metric_json(summary.common_neighbours);
    composition["unique_ais"] = metric_json(summary.unique_ais);
    composition["unique_sp"] = metric_json(summary.unique_sp);
    j["composition"] = std::move(composition);
    return j;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::optional<double> load_opt(std::string_view cell, const std::filesystem::path& file,
                               std::size_t line_no) {
    if (cell.empty()) return std::nullopt;
    const auto v = parse_double(cell);
    if (!v)
        throw DataError(file.string() + ":" + std::to_string(line_no) +
                        ": bad numeric field `" + std::string(cell) + "`");
    return v;
}

}  // namespace

void export_results(const ExperimentResult& result, const std::filesystem::path& dir,
                    ExportFormat format) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string());

    if (format == ExportFormat::Json) {
        ordered_json j;
        ordered_json trials = ordered_json::array();
        for (const auto& t : result.trials) trials.push_back(trial_to_json(t));
        j["trials"] = std::move(trials);
        j["summary"] = summary_to_json(result.summary);
        write_text_file(dir / "results.json", j.dump(2) + "\n");
        return;
    }

    write_text_file(dir / "trials.csv", render_trials_csv(result.trials));
    write_text_file(dir / "regime_summary.csv",
                    render_regime_summary_csv(result.summary));
    write_text_file(dir / "wilcoxon_mae.csv",
                    render_pair_tests_csv(result.summary.mae_tests));
    write_text_file(dir / "wilcoxon_tau.csv",
                    render_pair_tests_csv(result.summary.tau_tests));
    write_text_file(dir / "characteristics.csv",
                    render_characteristics_csv(result.summary.characteristics));
    write_text_file(dir / "composition.csv", render_composition_csv(result.summary));
    for (const std::string_view characteristic :
         {"neighbours", "overlap", "target_correlation", "neighbour_correlation"}) {
        write_text_file(dir / ("scatter_" + std::string(characteristic) + ".csv"),
                        render_scatter_csv(result.trials, characteristic));
    }
}

std::vector<TrialOutcome> load_trials_csv(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError(file.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTrialsHeader)
        throw DataError(file.string() + ": unexpected header row");

    const auto n_columns = split_csv_line(kTrialsHeader).size();
    std::vector<TrialOutcome> trials;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != n_columns)
            throw DataError(file.string() + ":" + std::to_string(line_no) +
                            ": wrong field count");
        const auto require_uint = [&](std::string_view cell) -> std::uint64_t {
            const auto v = parse_uint(cell);
            if (!v)
                throw DataError(file.string() + ":" + std::to_string(line_no) +
                                ": bad count field `" + std::string(cell) + "`");
            return *v;
        };
        TrialOutcome t;
        std::size_t f = 0;
        t.trial_index = require_uint(fields[f++]);
        const auto target = parse_int(fields[f++]);
        if (!target)
            throw DataError(file.string() + ":" + std::to_string(line_no) +
                            ": bad target id");
        t.target = *target;
        t.n_visible = require_uint(fields[f++]);
        t.n_hidden = require_uint(fields[f++]);
        t.ais_reviewers_examined = require_uint(fields[f++]);
        t.sp_reviewers_examined = require_uint(fields[f++]);
        for (NeighbourhoodStats* stats : {&t.ais_stats, &t.sp_stats}) {
            stats->size = require_uint(fields[f++]);
            stats->overlap = require_uint(fields[f++]);
            stats->mean_target_correlation = load_opt(fields[f++], file, line_no);
            stats->mean_inter_neighbour_correlation =
                load_opt(fields[f++], file, line_no);
        }
        t.common_neighbours = require_uint(fields[f++]);
        t.unique_ais = require_uint(fields[f++]);
        t.unique_sp = require_uint(fields[f++]);
        for (const Regime r : kExportRegimes) {
            const auto mae_cell = fields[f++];
            const auto tau_cell = fields[f++];
            const auto tau_n_cell = fields[f++];
            const auto tau_nd_cell = fields[f++];
            const bool any = !mae_cell.empty() || !tau_cell.empty() ||
                             !tau_n_cell.empty() || !tau_nd_cell.empty();
            if (r == Regime::RandomizedControl && !any) continue;
            RegimeMetrics metrics;
            metrics.mae = load_opt(mae_cell, file, line_no);
            if (!tau_cell.empty()) {
                TauResult tau;
                tau.tau = *load_opt(tau_cell, file, line_no);
                tau.n_overlap = require_uint(tau_n_cell);
                tau.n_discordant = require_uint(tau_nd_cell);
                metrics.tau = tau;
            }
            t.regimes[r] = std::move(metrics);
        }
        trials.push_back(std::move(t));
    }
    return trials;
}

void export_sweep(const std::vector<SweepPoint>& points,
                  const std::filesystem::path& dir, ExportFormat format) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string());

    if (format == ExportFormat::Json) {
        ordered_json arr = ordered_json::array();
        for (const auto& p : points) {
            ordered_json jp;
            jp["k1"] = p.k1;
            jp["n_trials"] = p.n_trials;
            jp["mean_size"] = p.mean_size;
            jp["sd_size"] = p.sd_size;
            jp["mean_reviewers_examined"] = p.mean_reviewers_examined;
            jp["sd_reviewers_examined"] = p.sd_reviewers_examined;
            arr.push_back(std::move(jp));
        }
        write_text_file(dir / "sweep.json", arr.dump(2) + "\n");
        return;
    }
    std::string out =
        "k1,n_trials,mean_size,sd_size,mean_reviewers_examined,"
        "sd_reviewers_examined\n";
    for (const auto& p : points) {
        out += format_double(p.k1);
        out += ',' + std::to_string(p.n_trials);
        out += ',' + format_double(p.mean_size);
        out += ',' + format_double(p.sd_size);
        out += ',' + format_double(p.mean_reviewers_examined);
        out += ',' + format_double(p.sd_reviewers_examined);
        out += '\n';
    }
    write_text_file(dir / "sweep.csv", out);
}

}  // namespace aisrec
