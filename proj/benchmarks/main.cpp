#include <benchmark/benchmark.h>

#include <vector>

#include "aisrec/baseline.hpp"
#include "aisrec/evaluation.hpp"
#include "aisrec/immune.hpp"
#include "aisrec/matching.hpp"
#include "aisrec/ratings.hpp"
#include "aisrec/rng.hpp"

namespace {

using namespace aisrec;

RatingsTable bench_table() {
    SyntheticSpec spec;
    spec.n_users = 500;
    spec.n_items = 300;
    spec.n_clusters = 5;
    spec.density = 0.2;
    spec.noise = 1.0;
    spec.seed = 7;
    return generate_synthetic(spec);
}

void BM_Pearson(benchmark::State& state) {
    const RatingsTable table = bench_table();
    const Profile& a = table.profile(table.users()[0]);
    const Profile& b = table.profile(table.users()[1]);
    for (auto _ : state) benchmark::DoNotOptimize(pearson(a, b));
}
BENCHMARK(BM_Pearson);

void BM_PairwiseMatrix(benchmark::State& state) {
    const RatingsTable table = bench_table();
    const auto users = table.users();
    const std::vector<UserId> subset(users.begin(),
                                     users.begin() + state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pairwise_matrix(subset, table, 10));
}
BENCHMARK(BM_PairwiseMatrix)->Arg(25)->Arg(50)->Arg(100);

void BM_Iterate(benchmark::State& state) {
    // A pool balanced exactly at its fixed point (k1*m = k3, zero
    // inter-antibody matches) so membership never changes while every step
    // still runs the full O(n^2) update.
    const auto n = static_cast<std::size_t>(state.range(0));
    AisParams params;
    params.capacity = n;
    params.k1 = 0.3;
    params.k2 = 0.2;
    params.k3 = 0.15;
    std::vector<Antibody> pool;
    std::vector<UserId> users;
    for (std::size_t i = 0; i < n; ++i) {
        users.push_back(static_cast<UserId>(i + 1));
        pool.push_back({static_cast<UserId>(i + 1), 0.5, 1.0});
    }
    ImmuneSystem system(params, {}, std::move(pool), MatchMatrix(users));
    for (auto _ : state) {
        system.iterate();
        benchmark::DoNotOptimize(system.pool().size());
    }
    if (system.pool().size() != n) state.SkipWithError("pool changed size");
}
BENCHMARK(BM_Iterate)->Arg(50)->Arg(100);

void BM_BuildNeighbourhood(benchmark::State& state) {
    const RatingsTable table = bench_table();
    AisParams params;
    params.k3 = 0.05;
    const TargetSplit split = split_target(table, table.users()[2], 0.5, 11);
    std::vector<UserId> candidates;
    for (const UserId user : table.users())
        if (user != split.target_user) candidates.push_back(user);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_neighbourhood(
            table, split.visible_profile, params, candidates, 10, split.target_user));
    }
}
BENCHMARK(BM_BuildNeighbourhood);

void BM_KendallTau(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SplitMix64 rng(3);
    Profile votes;
    std::vector<ItemId> order;
    for (std::size_t i = 0; i < n; ++i) {
        votes.push_back({static_cast<ItemId>(i), rng.next_in(0.0, 5.0)});
        order.push_back(static_cast<ItemId>(i));
    }
    seeded_shuffle(order, 4);
    for (auto _ : state) benchmark::DoNotOptimize(kendall_tau(order, votes));
}
BENCHMARK(BM_KendallTau)->Arg(30)->Arg(100);

void BM_WilcoxonExact(benchmark::State& state) {
    SplitMix64 rng(5);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < 20; ++i)
        pairs.emplace_back(rng.next_unit(), rng.next_unit());
    for (auto _ : state) benchmark::DoNotOptimize(wilcoxon_signed_rank(pairs, 20));
}
BENCHMARK(BM_WilcoxonExact);

}  // namespace

BENCHMARK_MAIN();
