#pragma once

#include <filesystem>
#include <string_view>

#include "aisrec/experiment.hpp"

namespace aisrec {

// Flat key=value config text. `#` starts a comment; blank lines are
// ignored. Every key is optional and defaults to the ExperimentConfig
// defaults; unknown keys are a ConfigError.
//
//   k1, k2, k3                  dynamics rates (>= 0)
//   capacity                    antibody pool size
//   stability_window            unchanged iterations required to stabilize
//   init_concentration, death_threshold, max_concentration, step_size
//   clamp_negative_m_ij         true|false
//   overlap_threshold           significance-weighting cap
//   sp_n                        Simple Pearson neighbourhood size
//   visible_fraction            share of a target's votes kept visible
//   default_votes               none | auto | <number>
//   n_trials, min_target_votes, master_seed
//   candidate_order             dataset | shuffle
//   include_randomized_control  true|false
//   fixed_step_cap              step cap for fixed-membership dynamics
//   wilcoxon_exact_cutoff       max n for the exact test
//   vote_min, vote_max, vote_step
ExperimentConfig parse_config_text(std::string_view text);

ExperimentConfig load_config_file(const std::filesystem::path& path);

}  // namespace aisrec
