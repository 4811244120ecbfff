#include "aisrec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "aisrec/baseline.hpp"
#include "aisrec/errors.hpp"
#include "aisrec/matching.hpp"
#include "aisrec/predictor.hpp"
#include "aisrec/rng.hpp"

namespace aisrec {

std::string_view regime_key(Regime r) {
    switch (r) {
        case Regime::SpOnSp: return "sp_sp";
        case Regime::AisOnSp: return "ais_sp";
        case Regime::SpOnAis: return "sp_ais";
        case Regime::AisOnAis: return "ais_ais";
        case Regime::RandomizedControl: return "rand";
    }
    return "?";
}

std::string_view regime_predictor(Regime r) {
    switch (r) {
        case Regime::SpOnSp:
        case Regime::SpOnAis: return "SP";
        default: return "AIS";
    }
}

std::string_view regime_neighbourhood(Regime r) {
    switch (r) {
        case Regime::SpOnSp:
        case Regime::AisOnSp: return "SP";
        default: return "AIS";
    }
}

namespace {

bool uses_ais_neighbourhood(Regime r) {
    return r == Regime::SpOnAis || r == Regime::AisOnAis ||
           r == Regime::RandomizedControl;
}

struct TrialSeeds {
    std::uint64_t split;
    std::uint64_t shuffle;
    std::uint64_t randomize;
};

TrialSeeds trial_seeds(std::uint64_t master_seed, UserId target) {
    SplitMix64 stream(derive_seed(master_seed, static_cast<std::uint64_t>(target)));
    return {stream.next(), stream.next(), stream.next()};
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

MetricSummary summarize_values(const std::vector<double>& values) {
    MetricSummary s;
    s.n = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (const double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    s.mean = mean;
    s.median = median_of(values);
    if (values.size() >= 2) {
        double ss = 0.0;
        for (const double v : values) ss += (v - mean) * (v - mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

}  // namespace

void ExperimentConfig::validate() const {
    ais.validate();
    scale.validate();
    if (sp_n < 1) throw std::invalid_argument("config: sp_n must be >= 1");
    if (overlap_threshold < 1)
        throw std::invalid_argument("config: overlap_threshold must be >= 1");
    if (!(visible_fraction > 0.0 && visible_fraction <= 1.0))
        throw std::invalid_argument("config: visible_fraction must be in (0, 1]");
    if (n_trials < 1) throw std::invalid_argument("config: n_trials must be >= 1");
    if (min_target_votes < 2)
        throw std::invalid_argument("config: min_target_votes must be >= 2");
    if (fixed_step_cap < 1)
        throw std::invalid_argument("config: fixed_step_cap must be >= 1");
    if (wilcoxon_exact_cutoff > 62)
        throw std::invalid_argument("config: wilcoxon_exact_cutoff must be <= 62");
    if (default_vote &&
        !(*default_vote >= scale.min_vote && *default_vote <= scale.max_vote))
        throw std::invalid_argument("config: default vote outside the vote scale");
}

RegimeResult TrialOutcome::regime(Regime r) const {
    const auto it = regimes.find(r);
    if (it == regimes.end())
        throw std::invalid_argument("trial has no regime " + std::string(regime_key(r)));
    const bool on_ais = uses_ais_neighbourhood(r);
    return {it->second.mae, it->second.tau, on_ais ? ais_stats : sp_stats,
            on_ais ? ais_reviewers_examined : sp_reviewers_examined};
}

std::vector<UserId> eligible_targets(const RatingsTable& table,
                                     const ExperimentConfig& config) {
    const std::size_t min_votes = std::max<std::size_t>(config.min_target_votes, 2);
    std::vector<UserId> eligible;
    for (const UserId user : table.users())
        if (table.profile(user).size() >= min_votes) eligible.push_back(user);
    return eligible;
}

std::vector<UserId> select_targets(const RatingsTable& table,
                                   const ExperimentConfig& config) {
    std::vector<UserId> eligible = eligible_targets(table, config);
    if (eligible.size() < config.n_trials)
        throw DataError("only " + std::to_string(eligible.size()) +
                        " eligible targets for " + std::to_string(config.n_trials) +
                        " trials");
    SplitMix64 rng(derive_seed(config.master_seed, 0));
    for (std::size_t i = 0; i < config.n_trials; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rng.next_below(eligible.size() - i));
        std::swap(eligible[i], eligible[j]);
    }
    eligible.resize(config.n_trials);
    return eligible;
}

namespace {

Neighbourhood correlation_weights_over(const std::vector<UserId>& members,
                                       const RatingsTable& table,
                                       const Profile& antigen,
                                       std::size_t overlap_threshold) {
    Neighbourhood nb;
    nb.provenance = Provenance::Fixed;
    nb.members.reserve(members.size());
    for (const UserId user : members) {
        nb.members.push_back(
            {user, significance_weighted_match(antigen, table.profile(user),
                                               overlap_threshold)
                       .weighted});
    }
    return nb;
}

// The immune weighting over a frozen member set: settle the concentration
// dynamics without removing anyone, then weight by m_i * x_i.
Neighbourhood immune_weights_over(const std::vector<UserId>& members,
                                  const RatingsTable& table, const Profile& antigen,
                                  UserId target, const ExperimentConfig& config,
                                  std::optional<std::uint64_t> randomize_seed) {
    if (members.empty()) {
        Neighbourhood nb;
        nb.provenance = randomize_seed ? Provenance::RandomizedConcentration
                                       : Provenance::Fixed;
        return nb;
    }
    AisParams params = config.ais;
    params.capacity = members.size();
    ImmuneSystem system(params, antigen, target);
    for (const UserId user : members)
        system.add_antibody(user, table, config.overlap_threshold);
    system.run_fixed_dynamics(config.fixed_step_cap);
    if (randomize_seed) {
        system.randomize_concentrations(*randomize_seed);
        return system.neighbour_weights(Provenance::RandomizedConcentration);
    }
    return system.neighbour_weights(Provenance::Fixed);
}

RegimeMetrics evaluate_neighbourhood(const Neighbourhood& nb, const RatingsTable& table,
                                     const TargetSplit& split,
                                     std::span<const ItemId> hidden_items,
                                     std::optional<double> default_vote) {
    RegimeMetrics metrics;
    const RecommendationList list =
        recommend(nb, table, split.visible_profile, hidden_items, default_vote);
    if (!list.empty()) {
        std::vector<std::pair<double, double>> pairs;
        pairs.reserve(list.size());
        for (const auto& prediction : list)
            pairs.emplace_back(prediction.score,
                               *find_vote(split.hidden_votes, prediction.item));
        metrics.mae = mae(pairs);
    }
    if (list.size() >= 2) {
        std::vector<ItemId> order;
        order.reserve(list.size());
        for (const auto& prediction : list) order.push_back(prediction.item);
        metrics.tau = kendall_tau(order, split.hidden_votes);
    }
    return metrics;
}

}  // namespace

TrialOutcome run_trial(const RatingsTable& table, UserId target,
                       const ExperimentConfig& config) {
    config.validate();
    const TrialSeeds seeds = trial_seeds(config.master_seed, target);
    const TargetSplit split =
        split_target(table, target, config.visible_fraction, seeds.split);

    std::vector<UserId> candidates;
    candidates.reserve(table.user_count());
    for (const UserId user : table.users())
        if (user != target) candidates.push_back(user);
    if (config.candidate_order == CandidateOrder::SeededShuffle)
        seeded_shuffle(candidates, seeds.shuffle);

    BuildOutcome ais = build_neighbourhood(table, split.visible_profile, config.ais,
                                           candidates, config.overlap_threshold, target);
    const Neighbourhood sp = simple_pearson_neighbourhood(
        table, split.visible_profile, target, config.sp_n, config.overlap_threshold);

    TrialOutcome out;
    out.target = target;
    out.n_visible = split.visible_profile.size();
    out.n_hidden = split.hidden_votes.size();
    out.ais_members = ais.neighbourhood.member_ids();
    out.sp_members = sp.member_ids();
    out.ais_reviewers_examined = ais.reviewers_examined;
    out.sp_reviewers_examined = candidates.size();
    out.ais_stats =
        neighbourhood_stats(ais.neighbourhood, split, table, config.overlap_threshold);
    out.sp_stats = neighbourhood_stats(sp, split, table, config.overlap_threshold);
    const OverlapCounts counts = common_unique_counts(ais.neighbourhood, sp);
    out.common_neighbours = counts.common;
    out.unique_ais = counts.unique_a;
    out.unique_sp = counts.unique_b;

    std::vector<ItemId> hidden_items;
    hidden_items.reserve(split.hidden_votes.size());
    for (const auto& iv : split.hidden_votes) hidden_items.push_back(iv.item);

    const auto evaluate = [&](const Neighbourhood& nb) {
        return evaluate_neighbourhood(nb, table, split, hidden_items,
                                      config.default_vote);
    };
    out.regimes[Regime::SpOnSp] = evaluate(correlation_weights_over(
        out.sp_members, table, split.visible_profile, config.overlap_threshold));
    out.regimes[Regime::AisOnSp] = evaluate(immune_weights_over(
        out.sp_members, table, split.visible_profile, target, config, std::nullopt));
    out.regimes[Regime::SpOnAis] = evaluate(correlation_weights_over(
        out.ais_members, table, split.visible_profile, config.overlap_threshold));
    out.regimes[Regime::AisOnAis] = evaluate(immune_weights_over(
        out.ais_members, table, split.visible_profile, target, config, std::nullopt));
    if (config.include_randomized_control) {
        out.regimes[Regime::RandomizedControl] = evaluate(
            immune_weights_over(out.ais_members, table, split.visible_profile, target,
                                config, seeds.randomize));
    }
    return out;
}

namespace {

std::vector<double> defined_metric(std::span<const TrialOutcome> trials, Regime r,
                                   bool want_tau) {
    std::vector<double> values;
    for (const auto& trial : trials) {
        const auto it = trial.regimes.find(r);
        if (it == trial.regimes.end()) continue;
        if (want_tau) {
            if (it->second.tau) values.push_back(it->second.tau->tau);
        } else {
            if (it->second.mae) values.push_back(*it->second.mae);
        }
    }
    return values;
}

RegimePairTest pair_test(std::span<const TrialOutcome> trials, Regime first,
                         Regime second, bool want_tau, std::size_t exact_cutoff) {
    RegimePairTest test;
    test.first = first;
    test.second = second;
    std::vector<std::pair<double, double>> paired;
    for (const auto& trial : trials) {
        const auto a = trial.regimes.find(first);
        const auto b = trial.regimes.find(second);
        if (a == trial.regimes.end() || b == trial.regimes.end()) continue;
        std::optional<double> va, vb;
        if (want_tau) {
            if (a->second.tau) va = a->second.tau->tau;
            if (b->second.tau) vb = b->second.tau->tau;
        } else {
            va = a->second.mae;
            vb = b->second.mae;
        }
        if (va && vb) paired.emplace_back(*va, *vb);
    }
    if (paired.empty()) return test;

    std::vector<double> firsts, seconds;
    firsts.reserve(paired.size());
    seconds.reserve(paired.size());
    for (const auto& [a, b] : paired) {
        firsts.push_back(a);
        seconds.push_back(b);
    }
    test.median_first = median_of(firsts);
    test.median_second = median_of(seconds);
    if (const auto w = wilcoxon_signed_rank(paired, exact_cutoff)) {
        test.n_unequal = w->n_unequal;
        test.rank_sum_first = w->rank_sum_first;
        test.rank_sum_second = w->rank_sum_second;
        test.p_upper_bound = w->p_upper_bound;
    }
    return test;
}

CharacteristicTest characteristic_test(
    std::span<const TrialOutcome> trials, std::string_view name,
    const std::function<std::optional<double>(const NeighbourhoodStats&)>& value,
    std::size_t exact_cutoff) {
    CharacteristicTest test;
    test.characteristic = name;
    std::vector<double> sp_values, ais_values;
    std::vector<std::pair<double, double>> paired;  // (sp, ais)
    for (const auto& trial : trials) {
        const auto sp = value(trial.sp_stats);
        const auto ais = value(trial.ais_stats);
        if (sp) sp_values.push_back(*sp);
        if (ais) ais_values.push_back(*ais);
        if (sp && ais) paired.emplace_back(*sp, *ais);
    }
    if (!sp_values.empty()) test.mean_sp = summarize_values(sp_values).mean;
    if (!ais_values.empty()) test.mean_ais = summarize_values(ais_values).mean;
    if (!paired.empty()) {
        if (const auto w = wilcoxon_signed_rank(paired, exact_cutoff)) {
            test.n_unequal = w->n_unequal;
            test.rank_sum_sp = w->rank_sum_first;
            test.rank_sum_ais = w->rank_sum_second;
            test.p_upper_bound = w->p_upper_bound;
        }
    }
    return test;
}

}  // namespace

ExperimentSummary summarize(std::span<const TrialOutcome> trials,
                            std::size_t wilcoxon_exact_cutoff) {
    ExperimentSummary summary;
    summary.regimes_present.assign(kCoreRegimes.begin(), kCoreRegimes.end());
    const bool control_present = std::any_of(
        trials.begin(), trials.end(), [](const TrialOutcome& t) {
            const auto it = t.regimes.find(Regime::RandomizedControl);
            return it != t.regimes.end() &&
                   (it->second.mae.has_value() || it->second.tau.has_value());
        });
    if (control_present)
        summary.regimes_present.push_back(Regime::RandomizedControl);

    for (const Regime r : summary.regimes_present) {
        summary.mae_by_regime.emplace_back(
            r, summarize_values(defined_metric(trials, r, false)));
        summary.tau_by_regime.emplace_back(
            r, summarize_values(defined_metric(trials, r, true)));
    }

    // The six predictor/neighbourhood pairings, in the canonical order,
    // plus the native-vs-randomized control comparison when it ran.
    std::vector<std::pair<Regime, Regime>> pairs;
    for (std::size_t i = 0; i < kCoreRegimes.size(); ++i)
        for (std::size_t j = i + 1; j < kCoreRegimes.size(); ++j)
            pairs.emplace_back(kCoreRegimes[i], kCoreRegimes[j]);
    if (control_present)
        pairs.emplace_back(Regime::AisOnAis, Regime::RandomizedControl);

    for (const auto& [first, second] : pairs) {
        summary.mae_tests.push_back(
            pair_test(trials, first, second, false, wilcoxon_exact_cutoff));
        summary.tau_tests.push_back(
            pair_test(trials, first, second, true, wilcoxon_exact_cutoff));
    }

    summary.characteristics.push_back(characteristic_test(
        trials, "neighbours",
        [](const NeighbourhoodStats& s) {
            return std::optional<double>(static_cast<double>(s.size));
        },
        wilcoxon_exact_cutoff));
    summary.characteristics.push_back(characteristic_test(
        trials, "overlap",
        [](const NeighbourhoodStats& s) {
            return std::optional<double>(static_cast<double>(s.overlap));
        },
        wilcoxon_exact_cutoff));
    summary.characteristics.push_back(characteristic_test(
        trials, "target_correlation",
        [](const NeighbourhoodStats& s) { return s.mean_target_correlation; },
        wilcoxon_exact_cutoff));
    summary.characteristics.push_back(characteristic_test(
        trials, "neighbour_correlation",
        [](const NeighbourhoodStats& s) { return s.mean_inter_neighbour_correlation; },
        wilcoxon_exact_cutoff));

    std::vector<double> ais_sizes, sp_sizes, commons, uniques_ais, uniques_sp;
    for (const auto& trial : trials) {
        ais_sizes.push_back(static_cast<double>(trial.ais_stats.size));
        sp_sizes.push_back(static_cast<double>(trial.sp_stats.size));
        commons.push_back(static_cast<double>(trial.common_neighbours));
        uniques_ais.push_back(static_cast<double>(trial.unique_ais));
        uniques_sp.push_back(static_cast<double>(trial.unique_sp));
    }
    summary.ais_size = summarize_values(ais_sizes);
    summary.sp_size = summarize_values(sp_sizes);
    summary.common_neighbours = summarize_values(commons);
    summary.unique_ais = summarize_values(uniques_ais);
    summary.unique_sp = summarize_values(uniques_sp);
    return summary;
}

ExperimentResult run_experiment(const RatingsTable& table,
                                const ExperimentConfig& config) {
    config.validate();
    const std::vector<UserId> targets = select_targets(table, config);

    std::vector<TrialOutcome> trials(targets.size());
    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    const auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= targets.size()) return;
            try {
                trials[i] = run_trial(table, targets[i], config);
                trials[i].trial_index = i;
            } catch (...) {
                const std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    const std::size_t threads = std::min<std::size_t>(
        std::max(1u, std::thread::hardware_concurrency()), targets.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& thread : pool) thread.join();
    }
    if (error) std::rethrow_exception(error);

    ExperimentResult result;
    result.trials = std::move(trials);
    result.summary = summarize(result.trials, config.wilcoxon_exact_cutoff);
    return result;
}

std::vector<SweepPoint> sweep_stimulation(const RatingsTable& table,
                                          std::span<const double> rates,
                                          const ExperimentConfig& config) {
    if (rates.empty()) throw std::invalid_argument("sweep: no rates given");
    config.validate();
    const std::vector<UserId> targets = select_targets(table, config);

    std::vector<SweepPoint> points;
    points.reserve(rates.size());
    for (const double rate : rates) {
        ExperimentConfig swept = config;
        swept.ais.k1 = rate;
        swept.ais.validate();

        std::vector<double> sizes(targets.size());
        std::vector<double> examined(targets.size());
        std::atomic<std::size_t> cursor{0};
        std::mutex error_mutex;
        std::exception_ptr error;
        const auto worker = [&] {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= targets.size()) return;
                try {
                    const UserId target = targets[i];
                    const TrialSeeds seeds = trial_seeds(swept.master_seed, target);
                    const TargetSplit split = split_target(
                        table, target, swept.visible_fraction, seeds.split);
                    std::vector<UserId> candidates;
                    candidates.reserve(table.user_count());
                    for (const UserId user : table.users())
                        if (user != target) candidates.push_back(user);
                    if (swept.candidate_order == CandidateOrder::SeededShuffle)
                        seeded_shuffle(candidates, seeds.shuffle);
                    const BuildOutcome build = build_neighbourhood(
                        table, split.visible_profile, swept.ais, candidates,
                        swept.overlap_threshold, target);
                    sizes[i] = static_cast<double>(build.neighbourhood.size());
                    examined[i] = static_cast<double>(build.reviewers_examined);
                } catch (...) {
                    const std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        };
        const std::size_t threads = std::min<std::size_t>(
            std::max(1u, std::thread::hardware_concurrency()), targets.size());
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(threads);
            for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto& thread : pool) thread.join();
        }
        if (error) std::rethrow_exception(error);

        const MetricSummary size_summary = summarize_values(sizes);
        const MetricSummary examined_summary = summarize_values(examined);
        points.push_back({rate, targets.size(), size_summary.mean.value_or(0.0),
                          size_summary.stddev.value_or(0.0),
                          examined_summary.mean.value_or(0.0),
                          examined_summary.stddev.value_or(0.0)});
    }
    return points;
}

}  // namespace aisrec
