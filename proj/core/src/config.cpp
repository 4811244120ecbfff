#include "aisrec/config.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "aisrec/errors.hpp"
#include "aisrec/numfmt.hpp"

namespace aisrec {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::size_t line_no, std::string_view key,
                            std::string_view value) {
    throw ConfigError("config line " + std::to_string(line_no) + ": bad value `" +
                      std::string(value) + "` for key `" + std::string(key) + "`");
}

enum class DefaultVoteMode { None, Auto, Value };

}  // namespace

ExperimentConfig parse_config_text(std::string_view text) {
    ExperimentConfig cfg;
    DefaultVoteMode dv_mode = DefaultVoteMode::None;
    double dv_value = 0.0;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto newline = text.find('\n', start);
        const std::string_view raw =
            newline == std::string_view::npos ? text.substr(start)
                                              : text.substr(start, newline - start);
        start = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key=value");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        const auto as_double = [&]() {
            const auto v = parse_double(value);
            if (!v) bad_value(line_no, key, value);
            return *v;
        };
        const auto as_count = [&]() {
            const auto v = parse_uint(value);
            if (!v) bad_value(line_no, key, value);
            return static_cast<std::size_t>(*v);
        };
        const auto as_bool = [&]() {
            if (value == "true") return true;
            if (value == "false") return false;
            bad_value(line_no, key, value);
        };

        if (key == "k1") cfg.ais.k1 = as_double();
        else if (key == "k2") cfg.ais.k2 = as_double();
        else if (key == "k3") cfg.ais.k3 = as_double();
        else if (key == "capacity") cfg.ais.capacity = as_count();
        else if (key == "stability_window") cfg.ais.stability_window = as_count();
        else if (key == "init_concentration") cfg.ais.init_concentration = as_double();
        else if (key == "death_threshold") cfg.ais.death_threshold = as_double();
        else if (key == "max_concentration") cfg.ais.max_concentration = as_double();
        else if (key == "step_size") cfg.ais.step_size = as_double();
        else if (key == "clamp_negative_m_ij") cfg.ais.clamp_negative_m_ij = as_bool();
        else if (key == "overlap_threshold") cfg.overlap_threshold = as_count();
        else if (key == "sp_n") cfg.sp_n = as_count();
        else if (key == "visible_fraction") cfg.visible_fraction = as_double();
        else if (key == "n_trials") cfg.n_trials = as_count();
        else if (key == "min_target_votes") cfg.min_target_votes = as_count();
        else if (key == "master_seed") {
            const auto v = parse_uint(value);
            if (!v) bad_value(line_no, key, value);
            cfg.master_seed = *v;
        } else if (key == "candidate_order") {
            if (value == "dataset") cfg.candidate_order = CandidateOrder::DatasetOrder;
            else if (value == "shuffle") cfg.candidate_order = CandidateOrder::SeededShuffle;
            else bad_value(line_no, key, value);
        } else if (key == "include_randomized_control") {
            cfg.include_randomized_control = as_bool();
        } else if (key == "fixed_step_cap") {
            cfg.fixed_step_cap = as_count();
        } else if (key == "wilcoxon_exact_cutoff") {
            cfg.wilcoxon_exact_cutoff = as_count();
        } else if (key == "vote_min") {
            cfg.scale.min_vote = as_double();
        } else if (key == "vote_max") {
            cfg.scale.max_vote = as_double();
        } else if (key == "vote_step") {
            cfg.scale.step = as_double();
        } else if (key == "default_votes") {
            if (value == "none") dv_mode = DefaultVoteMode::None;
            else if (value == "auto") dv_mode = DefaultVoteMode::Auto;
            else {
                const auto v = parse_double(value);
                if (!v) bad_value(line_no, key, value);
                dv_mode = DefaultVoteMode::Value;
                dv_value = *v;
            }
        } else {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": unknown key `" + std::string(key) + "`");
        }
    }

    switch (dv_mode) {
        case DefaultVoteMode::None: cfg.default_vote.reset(); break;
        case DefaultVoteMode::Auto:
            // Slightly below the scale midpoint.
            cfg.default_vote = (cfg.scale.min_vote + cfg.scale.max_vote) / 2.0 -
                               0.1 * (cfg.scale.max_vote - cfg.scale.min_vote);
            break;
        case DefaultVoteMode::Value: cfg.default_vote = dv_value; break;
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

}  // namespace aisrec
