// Acceptance suite. Each check prints one pass/fail line; the process exit
// code is the number of failed checks. An optional argument selects a single
// group: statistics | dynamics | neighbourhoods | sweep | regimes |
// determinism | predictor.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aisrec/baseline.hpp"
#include "aisrec/evaluation.hpp"
#include "aisrec/experiment.hpp"
#include "aisrec/export.hpp"
#include "aisrec/immune.hpp"
#include "aisrec/matching.hpp"
#include "aisrec/predictor.hpp"
#include "aisrec/ratings.hpp"
#include "aisrec/rng.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace aisrec;

namespace {

int failures = 0;

class Check {
  public:
    explicit Check(std::string name) : name_(std::move(name)) {
        start_ = std::chrono::steady_clock::now();
    }

    void require(bool ok, const std::string& detail) {
        if (!ok && pass_) first_failure_ = detail;
        pass_ = pass_ && ok;
    }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

    void finish(double time_limit_seconds = 0.0) {
        const double seconds = elapsed();
        if (time_limit_seconds > 0.0 && seconds > time_limit_seconds)
            require(false, "runtime " + std::to_string(seconds) + " s exceeds " +
                               std::to_string(time_limit_seconds) + " s");
        if (pass_) {
            std::printf("[PASS] %s (%.1f s)\n", name_.c_str(), seconds);
        } else {
            std::printf("[FAIL] %s (%.1f s): %s\n", name_.c_str(), seconds,
                        first_failure_.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }

  private:
    std::string name_;
    bool pass_ = true;
    std::string first_failure_;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// The pinned evaluation setup: a seeded synthetic table of 500 users, 300
// items, 5 clusters at density 0.2, and the "good" dynamics rates k1 = 0.3,
// k2 = 0.2. The remaining knobs are fixed here once for the whole suite.
// ---------------------------------------------------------------------------

SyntheticSpec acceptance_table_spec() {
    SyntheticSpec spec;
    spec.n_users = 500;
    spec.n_items = 300;
    spec.n_clusters = 5;
    spec.density = 0.2;
    spec.noise = 1.2;
    spec.scale = VoteScale{0.0, 5.0, 1.0};
    spec.seed = 48817;
    return spec;
}

// The dynamics knobs are sized so that a decaying antibody crosses the
// death threshold well inside the stability window (otherwise a slowly
// fading full pool counts as stable) and the concentration ceiling keeps
// total suppression bounded enough for strong pools to stabilize at high
// stimulation rates.
ExperimentConfig acceptance_config() {
    ExperimentConfig cfg;
    cfg.ais.k1 = 0.3;
    cfg.ais.k2 = 0.2;
    cfg.ais.k3 = 0.2;
    cfg.ais.death_threshold = 0.5;
    cfg.ais.init_concentration = 1.0;
    cfg.ais.max_concentration = 1.3;
    cfg.ais.capacity = 100;
    cfg.ais.stability_window = 10;
    cfg.sp_n = 100;
    cfg.overlap_threshold = 10;
    cfg.visible_fraction = 0.5;
    cfg.n_trials = 100;
    cfg.min_target_votes = 20;
    cfg.candidate_order = CandidateOrder::SeededShuffle;
    cfg.master_seed = 424242;
    return cfg;
}

// ---------------------------------------------------------------------------
// 1. Statistics oracles: Pearson, Kendall's tau, exact Wilcoxon.
// ---------------------------------------------------------------------------

void check_statistics() {
    Check check("criterion 1: statistics vs brute-force oracles (1000+ instances each)");
    SplitMix64 rng(10001);

    for (int round = 0; round < 1000; ++round) {
        const Profile a = testutil::random_profile(rng, 40, 0, 30);
        const Profile b = testutil::random_profile(rng, 40, 0, 30);
        const auto mine = pearson(a, b);
        const auto ref = oracle::pearson(oracle::as_map(a), oracle::as_map(b));
        check.require(mine.overlap == ref.overlap, "pearson overlap mismatch");
        check.require(std::abs(mine.r - ref.r) <= 1e-12,
                      "pearson r off by " + fmt(std::abs(mine.r - ref.r)));
    }

    for (int round = 0; round < 1000; ++round) {
        const std::size_t n = 2 + rng.next_below(40);
        Profile actual;
        std::vector<ItemId> order;
        for (std::size_t i = 0; i < n; ++i) {
            actual.push_back({static_cast<ItemId>(i + 1),
                              static_cast<double>(rng.next_below(6))});
            order.push_back(static_cast<ItemId>(i + 1));
        }
        seeded_shuffle(order, rng.next());
        const TauResult mine = kendall_tau(order, actual);
        const auto ref = oracle::kendall_tau(order, oracle::as_map(actual));
        check.require(mine.n_discordant == ref.discordant, "tau N_D mismatch");
        check.require(std::abs(mine.tau - ref.tau) <= 1e-12,
                      "tau off by " + fmt(std::abs(mine.tau - ref.tau)));
    }

    int wilcoxon_rounds = 0;
    while (wilcoxon_rounds < 1000) {
        const std::size_t n = 1 + rng.next_below(12);
        std::vector<std::pair<double, double>> pairs;
        for (std::size_t i = 0; i < n; ++i)
            pairs.emplace_back(static_cast<double>(rng.next_below(5)),
                               static_cast<double>(rng.next_below(5)));
        const auto mine = wilcoxon_signed_rank(pairs, 20);
        const auto ref = oracle::wilcoxon_exact(pairs);
        check.require(mine.has_value() == ref.possible, "wilcoxon possibility mismatch");
        if (!mine) continue;
        ++wilcoxon_rounds;
        check.require(mine->n_unequal == ref.n, "wilcoxon n mismatch");
        check.require(std::abs(mine->rank_sum_first - ref.w_plus) <= 1e-12,
                      "wilcoxon W+ mismatch");
        check.require(std::abs(mine->rank_sum_second - ref.w_minus) <= 1e-12,
                      "wilcoxon W- mismatch");
        check.require(std::abs(mine->p_upper_bound - ref.p) <= 1e-12,
                      "wilcoxon p off by " + fmt(std::abs(mine->p_upper_bound - ref.p)));
    }
    check.finish(30.0);
}

// ---------------------------------------------------------------------------
// 2. Concentration dynamics vs the two-pass reference, plus the dynamic
//    invariants.
// ---------------------------------------------------------------------------

struct RandomSystem {
    AisParams params;
    oracle::DynamicsState state;
};

RandomSystem random_dynamics_instance(SplitMix64& rng, std::size_t max_size) {
    RandomSystem rs;
    rs.params.k1 = rng.next_in(0.0, 0.8);
    rs.params.k2 = rng.next_in(0.0, 0.8);
    rs.params.k3 = rng.next_in(0.0, 0.4);
    rs.params.max_concentration = rng.next_in(1.5, 12.0);
    rs.params.death_threshold = rng.next_in(0.01, 0.2);
    rs.params.init_concentration = rng.next_in(rs.params.death_threshold + 0.05, 1.2);
    rs.params.step_size = rng.next_in(0.25, 1.5);
    rs.params.clamp_negative_m_ij = rng.next_below(2) == 0;

    const std::size_t n = 1 + rng.next_below(max_size);
    rs.params.capacity = n;
    std::vector<UserId> users;
    for (std::size_t i = 0; i < 3 * n; ++i)
        users.push_back(static_cast<UserId>(1 + rng.next_below(1000000)));
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    seeded_shuffle(users, rng.next());
    users.resize(std::min(n, users.size()));

    const std::size_t m = users.size();
    rs.state.users = users;
    rs.state.inter.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        rs.state.match.push_back(rng.next_in(-1.0, 1.0));
        rs.state.concentration.push_back(rng.next_in(0.0, rs.params.max_concentration));
        for (std::size_t j = i + 1; j < m; ++j)
            rs.state.inter[i][j] = rs.state.inter[j][i] = rng.next_in(-1.0, 1.0);
    }
    return rs;
}

ImmuneSystem instantiate(const RandomSystem& rs) {
    std::vector<Antibody> pool;
    MatchMatrix matrix(rs.state.users);
    for (std::size_t i = 0; i < rs.state.users.size(); ++i) {
        pool.push_back(
            {rs.state.users[i], rs.state.match[i], rs.state.concentration[i]});
        for (std::size_t j = i + 1; j < rs.state.users.size(); ++j)
            matrix.set(i, j, rs.state.inter[i][j]);
    }
    return ImmuneSystem(rs.params, {}, std::move(pool), std::move(matrix));
}

void check_dynamics() {
    Check check("criterion 2: dynamics vs two-pass reference (1000 pools, size <= 50)");
    SplitMix64 rng(20002);

    for (int round = 0; round < 1000; ++round) {
        const RandomSystem rs = random_dynamics_instance(rng, 50);
        ImmuneSystem system = instantiate(rs);
        const auto expected = oracle::iterate_reference(rs.state, rs.params, 1.0);
        system.iterate();

        std::map<UserId, double> expected_by_user;
        std::size_t expected_alive = 0;
        for (std::size_t i = 0; i < rs.state.users.size(); ++i) {
            expected_by_user[rs.state.users[i]] = expected[i];
            if (expected[i] >= rs.params.death_threshold) ++expected_alive;
        }
        check.require(system.pool().size() == expected_alive,
                      "survivor count mismatch");
        for (const auto& ab : system.pool()) {
            check.require(ab.concentration == expected_by_user.at(ab.user),
                          "concentration differs from the reference");
            check.require(ab.concentration >= 0.0 &&
                              ab.concentration <= rs.params.max_concentration,
                          "concentration escaped [0, max]");
        }
    }

    // Permutation equivariance, exact.
    for (int round = 0; round < 200; ++round) {
        const RandomSystem rs = random_dynamics_instance(rng, 24);
        const std::size_t n = rs.state.users.size();
        RandomSystem permuted = rs;
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        seeded_shuffle(perm, rng.next());
        for (std::size_t i = 0; i < n; ++i) {
            permuted.state.users[i] = rs.state.users[perm[i]];
            permuted.state.match[i] = rs.state.match[perm[i]];
            permuted.state.concentration[i] = rs.state.concentration[perm[i]];
            for (std::size_t j = 0; j < n; ++j)
                permuted.state.inter[i][j] = rs.state.inter[perm[i]][perm[j]];
        }
        ImmuneSystem a = instantiate(rs);
        ImmuneSystem b = instantiate(permuted);
        a.iterate();
        b.iterate();
        check.require(a.pool().size() == b.pool().size(),
                      "permuted survivor count differs");
        std::map<UserId, double> xa, xb;
        for (const auto& ab : a.pool()) xa[ab.user] = ab.concentration;
        for (const auto& ab : b.pool()) xb[ab.user] = ab.concentration;
        check.require(xa == xb, "permuted concentrations differ");
    }

    // Pure stimulation: with k2 = k3 = 0 a positive match never shrinks.
    for (int round = 0; round < 200; ++round) {
        RandomSystem rs = random_dynamics_instance(rng, 24);
        rs.params.k2 = 0.0;
        rs.params.k3 = 0.0;
        for (auto& m : rs.state.match) m = std::abs(m);
        for (auto& x : rs.state.concentration)
            x = std::max(x, rs.params.death_threshold);
        ImmuneSystem system = instantiate(rs);
        system.iterate();
        check.require(system.pool().size() == rs.state.users.size(),
                      "pure stimulation lost a member");
        for (std::size_t i = 0; i < system.pool().size(); ++i)
            check.require(system.pool()[i].concentration >=
                              rs.state.concentration[i],
                          "pure stimulation shrank a concentration");
    }

    // No stimulation: concentrations never grow (suppression kept positive).
    for (int round = 0; round < 200; ++round) {
        RandomSystem rs = random_dynamics_instance(rng, 24);
        rs.params.k1 = 0.0;
        rs.params.clamp_negative_m_ij = true;
        ImmuneSystem system = instantiate(rs);
        std::map<UserId, double> before;
        for (std::size_t i = 0; i < rs.state.users.size(); ++i)
            before[rs.state.users[i]] = rs.state.concentration[i];
        system.iterate();
        for (const auto& ab : system.pool())
            check.require(ab.concentration <= before.at(ab.user),
                          "decay-only step grew a concentration");
    }
    check.finish(30.0);
}

// ---------------------------------------------------------------------------
// 3 + 4. Neighbourhood characteristics and composition on the pinned table.
// ---------------------------------------------------------------------------

void check_neighbourhoods() {
    Check check(
        "criteria 3+4: smaller, less inter-correlated AIS neighbourhoods; "
        "mostly unique members (100 trials)");
    const RatingsTable table = generate_synthetic(acceptance_table_spec());
    const ExperimentConfig cfg = acceptance_config();
    const ExperimentResult result = run_experiment(table, cfg);
    const ExperimentSummary& summary = result.summary;

    const CharacteristicTest& size_row = summary.characteristics[0];
    check.require(size_row.characteristic == "neighbours", "row order changed");
    check.require(size_row.mean_sp.has_value() && size_row.mean_ais.has_value(),
                  "size means missing");
    check.require(*size_row.mean_ais < *size_row.mean_sp,
                  "mean AIS size " + fmt(*size_row.mean_ais) +
                      " not below mean SP size " + fmt(*size_row.mean_sp));
    check.require(size_row.p_upper_bound.has_value() &&
                      *size_row.p_upper_bound <= 0.05,
                  "size difference not significant: p = " +
                      (size_row.p_upper_bound ? fmt(*size_row.p_upper_bound)
                                              : std::string("none")));
    check.require(size_row.rank_sum_sp > size_row.rank_sum_ais,
                  "size ranks favour the AIS side");

    const CharacteristicTest& corr_row = summary.characteristics[3];
    check.require(corr_row.characteristic == "neighbour_correlation",
                  "row order changed");
    check.require(corr_row.mean_sp.has_value() && corr_row.mean_ais.has_value(),
                  "neighbour correlation means missing");
    check.require(*corr_row.mean_ais < *corr_row.mean_sp,
                  "mean AIS inter-neighbour correlation " + fmt(*corr_row.mean_ais) +
                      " not below SP " + fmt(*corr_row.mean_sp));
    check.require(corr_row.p_upper_bound.has_value() &&
                      *corr_row.p_upper_bound <= 0.05,
                  "correlation difference not significant: p = " +
                      (corr_row.p_upper_bound ? fmt(*corr_row.p_upper_bound)
                                              : std::string("none")));
    check.require(corr_row.rank_sum_sp > corr_row.rank_sum_ais,
                  "correlation ranks favour the AIS side");

    // Criterion 4: the bulk of each neighbourhood is unique to its algorithm.
    const double common = summary.common_neighbours.mean.value_or(0.0);
    const double unique_ais = summary.unique_ais.mean.value_or(0.0);
    const double unique_sp = summary.unique_sp.mean.value_or(0.0);
    check.require(unique_ais > common, "mean unique AIS neighbours " + fmt(unique_ais) +
                                           " not above mean common " + fmt(common));
    check.require(unique_sp > common, "mean unique SP neighbours " + fmt(unique_sp) +
                                          " not above mean common " + fmt(common));
    check.finish(300.0);
}

// ---------------------------------------------------------------------------
// 5. Stimulation-rate thresholding on the same table.
// ---------------------------------------------------------------------------

void check_sweep() {
    Check check("criterion 5: stimulation-rate thresholding (k1 grid sweep)");
    const RatingsTable table = generate_synthetic(acceptance_table_spec());
    const ExperimentConfig cfg = acceptance_config();
    const std::vector<double> rates{0.05, 0.1, 0.2, 0.3, 0.45, 0.6};
    const auto points = sweep_stimulation(table, rates, cfg);

    std::map<double, SweepPoint> by_rate;
    for (const auto& p : points) by_rate[p.k1] = p;
    check.require(by_rate.at(0.6).mean_reviewers_examined <
                      by_rate.at(0.2).mean_reviewers_examined,
                  "reviewers examined at k1=0.6 (" +
                      fmt(by_rate.at(0.6).mean_reviewers_examined) +
                      ") not below k1=0.2 (" +
                      fmt(by_rate.at(0.2).mean_reviewers_examined) + ")");
    check.require(by_rate.at(0.05).mean_size < by_rate.at(0.3).mean_size,
                  "mean size at k1=0.05 (" + fmt(by_rate.at(0.05).mean_size) +
                      ") not below k1=0.3 (" + fmt(by_rate.at(0.3).mean_size) + ")");
    std::printf("       sweep:");
    for (const auto& p : points)
        std::printf(" k1=%.2f size=%.1f seen=%.1f |", p.k1, p.mean_size,
                    p.mean_reviewers_examined);
    std::printf("\n");
    check.finish(300.0);
}

// ---------------------------------------------------------------------------
// 6. Regime-pair table structure and the rank-sum identity.
// ---------------------------------------------------------------------------

void check_regimes() {
    Check check("criterion 6: six regime pairs per metric, rank-sum identity");
    SyntheticSpec spec;
    spec.n_users = 120;
    spec.n_items = 100;
    spec.n_clusters = 4;
    spec.density = 0.3;
    spec.noise = 1.0;
    spec.seed = 606;
    const RatingsTable table = generate_synthetic(spec);
    ExperimentConfig cfg = acceptance_config();
    cfg.ais.capacity = 30;
    cfg.sp_n = 30;
    cfg.n_trials = 25;
    cfg.min_target_votes = 15;
    const ExperimentResult result = run_experiment(table, cfg);

    check.require(result.summary.mae_tests.size() == 6, "expected 6 MAE pair rows");
    check.require(result.summary.tau_tests.size() == 6, "expected 6 tau pair rows");
    for (const auto* tests : {&result.summary.mae_tests, &result.summary.tau_tests}) {
        std::set<std::pair<Regime, Regime>> seen;
        for (const auto& row : *tests) {
            seen.insert({row.first, row.second});
            const double expected_total =
                static_cast<double>(row.n_unequal) *
                static_cast<double>(row.n_unequal + 1) / 2.0;
            check.require(row.rank_sum_first + row.rank_sum_second == expected_total,
                          "rank-sum identity broken on a row");
        }
        check.require(seen.size() == 6, "duplicate regime pair rows");
        for (std::size_t i = 0; i < kCoreRegimes.size(); ++i)
            for (std::size_t j = i + 1; j < kCoreRegimes.size(); ++j)
                check.require(seen.count({kCoreRegimes[i], kCoreRegimes[j]}) == 1,
                              "a regime pair is missing");
    }
    check.finish();
}

// ---------------------------------------------------------------------------
// 7. Byte-identical exports under an identical config and seed.
// ---------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void check_determinism() {
    Check check("criterion 7: byte-identical CSV exports across reruns");
    SyntheticSpec spec;
    spec.n_users = 150;
    spec.n_items = 120;
    spec.n_clusters = 5;
    spec.density = 0.25;
    spec.noise = 1.0;
    spec.seed = 707;
    const RatingsTable table = generate_synthetic(spec);
    ExperimentConfig cfg = acceptance_config();
    cfg.ais.capacity = 40;
    cfg.sp_n = 40;
    cfg.n_trials = 30;
    cfg.min_target_votes = 12;
    cfg.include_randomized_control = true;

    const auto base =
        std::filesystem::temp_directory_path() / "aisrec_acceptance_determinism";
    std::filesystem::remove_all(base);
    const auto dir_a = base / "a";
    const auto dir_b = base / "b";
    export_results(run_experiment(table, cfg), dir_a, ExportFormat::Csv);
    export_results(run_experiment(table, cfg), dir_b, ExportFormat::Csv);

    for (const char* name :
         {"trials.csv", "regime_summary.csv", "wilcoxon_mae.csv", "wilcoxon_tau.csv",
          "characteristics.csv", "composition.csv", "scatter_neighbours.csv",
          "scatter_overlap.csv", "scatter_target_correlation.csv",
          "scatter_neighbour_correlation.csv"}) {
        const std::string a = slurp(dir_a / name);
        check.require(!a.empty(), std::string(name) + " missing or empty");
        check.require(a == slurp(dir_b / name),
                      std::string(name) + " differs between reruns");
    }
    check.finish();
}

// ---------------------------------------------------------------------------
// 8. Predictor properties over random instances.
// ---------------------------------------------------------------------------

void check_predictor() {
    Check check("criterion 8: predictor properties (1000+ random cases)");
    SplitMix64 rng(80008);
    std::size_t cases = 0;
    while (cases < 1000) {
        const std::size_t n_neighbours = 1 + rng.next_below(10);
        const std::size_t n_items = 4 + rng.next_below(12);
        std::vector<RawVote> votes;
        for (std::size_t u = 1; u <= n_neighbours; ++u) {
            bool any = false;
            for (std::size_t i = 1; i <= n_items; ++i) {
                if (rng.next_unit() < 0.55) {
                    votes.push_back({static_cast<UserId>(u), static_cast<ItemId>(i),
                                     static_cast<double>(rng.next_below(6))});
                    any = true;
                }
            }
            if (!any)
                votes.push_back({static_cast<UserId>(u), 1,
                                 static_cast<double>(rng.next_below(6))});
        }
        const RatingsTable table(VoteScale{0.0, 5.0, 1.0}, votes);
        Profile antigen;
        antigen.push_back({1000, static_cast<double>(rng.next_below(6))});
        antigen.push_back({1001, static_cast<double>(rng.next_below(6))});
        Neighbourhood nb{{}, Provenance::Fixed};
        for (std::size_t u = 1; u <= n_neighbours; ++u)
            nb.members.push_back({static_cast<UserId>(u), rng.next_in(-1.0, 1.0)});
        const std::optional<double> default_vote =
            rng.next_below(4) == 0 ? std::optional<double>(2.0) : std::nullopt;

        for (std::size_t i = 1; i <= n_items; ++i) {
            const ItemId item = static_cast<ItemId>(i);
            const auto base = predict(nb, table, antigen, item, default_vote);
            ++cases;

            Neighbourhood scaled = nb;
            for (auto& m : scaled.members) m.weight *= 8.0;  // exact in binary
            const auto same = predict(scaled, table, antigen, item, default_vote);
            check.require(base.has_value() == same.has_value(),
                          "presence changed under weight scaling");
            if (base && same)
                check.require(base->score == same->score,
                              "score changed under power-of-two weight scaling");

            Neighbourhood stretched = nb;
            const double factor = 0.2 + 6.0 * rng.next_unit();
            for (auto& m : stretched.members) m.weight *= factor;
            const auto close = predict(stretched, table, antigen, item, default_vote);
            check.require(base.has_value() == close.has_value(),
                          "presence changed under positive weight scaling");
            if (base && close)
                check.require(std::abs(base->score - close->score) <= 1e-9,
                              "score moved under positive weight scaling");

            if (base) {
                check.require(base->score >= 0.0 && base->score <= 5.0,
                              "score escaped the vote scale");
                check.require(base->contributing_neighbours >= 1,
                              "a prediction with no contributors");
            } else if (!default_vote) {
                double mass = 0.0;
                bool any_vote = false;
                for (const auto& m : nb.members) {
                    if (table.vote(m.user, item)) {
                        any_vote = true;
                        mass += std::abs(m.weight);
                    }
                }
                check.require(!any_vote || mass == 0.0,
                              "no-prediction despite voting neighbours with weight");
            }
        }
    }
    check.finish();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string group = argc > 1 ? argv[1] : "all";
    const auto want = [&group](const char* name) {
        return group == "all" || group == name;
    };
    if (want("statistics")) check_statistics();
    if (want("dynamics")) check_dynamics();
    if (want("neighbourhoods")) check_neighbourhoods();
    if (want("sweep")) check_sweep();
    if (want("regimes")) check_regimes();
    if (want("determinism")) check_determinism();
    if (want("predictor")) check_predictor();
    if (failures == 0) std::printf("acceptance: all selected checks passed\n");
    return failures;
}
