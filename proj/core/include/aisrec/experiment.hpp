#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aisrec/evaluation.hpp"
#include "aisrec/immune.hpp"
#include "aisrec/neighbourhood.hpp"
#include "aisrec/ratings.hpp"

namespace aisrec {

// Predictor x neighbourhood cells. "AisOnSp" is the immune-weighting
// predictor run over the Simple Pearson member set, and so on. The
// randomized-concentration control reruns AisOnAis with random weights.
enum class Regime {
    SpOnSp,
    AisOnSp,
    SpOnAis,
    AisOnAis,
    RandomizedControl,
};

inline constexpr std::array<Regime, 4> kCoreRegimes = {
    Regime::SpOnSp, Regime::AisOnSp, Regime::SpOnAis, Regime::AisOnAis};

std::string_view regime_key(Regime r);            // "sp_sp", "ais_sp", ...
std::string_view regime_predictor(Regime r);      // "SP" / "AIS"
std::string_view regime_neighbourhood(Regime r);  // "SP" / "AIS"

enum class CandidateOrder {
    DatasetOrder,
    SeededShuffle,
};

struct ExperimentConfig {
    AisParams ais{};
    std::size_t sp_n = 100;
    std::size_t overlap_threshold = 50;
    double visible_fraction = 0.5;
    std::optional<double> default_vote;  // nullopt: non-voters are ignored
    std::size_t n_trials = 100;
    std::size_t min_target_votes = 20;
    CandidateOrder candidate_order = CandidateOrder::DatasetOrder;
    std::uint64_t master_seed = 42;
    bool include_randomized_control = false;
    std::size_t fixed_step_cap = 500;
    std::size_t wilcoxon_exact_cutoff = 20;
    VoteScale scale{};

    void validate() const;  // throws std::invalid_argument
};

struct RegimeMetrics {
    std::optional<double> mae;
    std::optional<TauResult> tau;
};

// Per-regime view in the shape callers expect: metric values plus the
// statistics and examination count of the regime's neighbourhood source.
struct RegimeResult {
    std::optional<double> mae;
    std::optional<TauResult> tau;
    NeighbourhoodStats stats;
    std::uint64_t reviewers_examined = 0;
};

struct TrialOutcome {
    std::size_t trial_index = 0;
    UserId target = 0;
    std::size_t n_visible = 0;
    std::size_t n_hidden = 0;
    std::uint64_t ais_reviewers_examined = 0;
    std::uint64_t sp_reviewers_examined = 0;
    NeighbourhoodStats ais_stats;
    NeighbourhoodStats sp_stats;
    std::size_t common_neighbours = 0;
    std::size_t unique_ais = 0;
    std::size_t unique_sp = 0;
    std::map<Regime, RegimeMetrics> regimes;
    // Member sets as recorded from the native builds. Present after
    // run_trial; not reconstructed when trials are reloaded from CSV.
    std::vector<UserId> ais_members;
    std::vector<UserId> sp_members;

    RegimeResult regime(Regime r) const;
    bool has_regime(Regime r) const { return regimes.count(r) != 0; }
};

struct MetricSummary {
    std::size_t n = 0;
    std::optional<double> mean;
    std::optional<double> median;
    std::optional<double> stddev;  // sample standard deviation; absent for n < 2
};

struct RegimePairTest {
    Regime first = Regime::SpOnSp;
    Regime second = Regime::SpOnSp;
    std::optional<double> median_first;
    std::optional<double> median_second;
    std::size_t n_unequal = 0;
    double rank_sum_first = 0.0;
    double rank_sum_second = 0.0;
    std::optional<double> p_upper_bound;  // absent when no test is possible
};

struct CharacteristicTest {
    std::string_view characteristic;  // "neighbours", "overlap", ...
    std::optional<double> mean_sp;
    std::optional<double> mean_ais;
    std::size_t n_unequal = 0;
    double rank_sum_sp = 0.0;
    double rank_sum_ais = 0.0;
    std::optional<double> p_upper_bound;
};

struct ExperimentSummary {
    std::vector<Regime> regimes_present;
    std::vector<std::pair<Regime, MetricSummary>> mae_by_regime;
    std::vector<std::pair<Regime, MetricSummary>> tau_by_regime;
    std::vector<RegimePairTest> mae_tests;  // the six regime pairs
    std::vector<RegimePairTest> tau_tests;
    std::vector<CharacteristicTest> characteristics;  // the four rows
    MetricSummary ais_size;
    MetricSummary sp_size;
    MetricSummary common_neighbours;
    MetricSummary unique_ais;
    MetricSummary unique_sp;
};

struct ExperimentResult {
    std::vector<TrialOutcome> trials;
    ExperimentSummary summary;
};

// Users eligible as trial targets: at least min_target_votes votes.
std::vector<UserId> eligible_targets(const RatingsTable& table,
                                     const ExperimentConfig& config);

// Seeded uniform choice of n_trials distinct targets among the eligible.
std::vector<UserId> select_targets(const RatingsTable& table,
                                   const ExperimentConfig& config);

// One target: split, native AIS and SP builds, the four fixed-neighbourhood
// regime cells (plus the randomized control when enabled), per-regime MAE
// and Kendall's tau over the hidden votes, and neighbourhood statistics.
// Deterministic: all trial seeds derive from (master_seed, target).
TrialOutcome run_trial(const RatingsTable& table, UserId target,
                       const ExperimentConfig& config);

ExperimentSummary summarize(std::span<const TrialOutcome> trials,
                            std::size_t wilcoxon_exact_cutoff);

// Trials run independently (in parallel) and aggregate in selection order.
ExperimentResult run_experiment(const RatingsTable& table,
                                const ExperimentConfig& config);

struct SweepPoint {
    double k1 = 0.0;
    std::size_t n_trials = 0;
    double mean_size = 0.0;
    double sd_size = 0.0;
    double mean_reviewers_examined = 0.0;
    double sd_reviewers_examined = 0.0;
};

// AIS builds only, with k1 overridden per rate; same targets, splits and
// candidate orders as run_experiment under the same config.
std::vector<SweepPoint> sweep_stimulation(const RatingsTable& table,
                                          std::span<const double> rates,
                                          const ExperimentConfig& config);

}  // namespace aisrec
