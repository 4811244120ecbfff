#include "aisrec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "aisrec/matching.hpp"

namespace aisrec {

double mae(std::span<const std::pair<double, double>> pairs) {
    if (pairs.empty()) throw std::invalid_argument("mae: no pairs");
    double sum = 0.0;
    for (const auto& [predicted, actual] : pairs) sum += std::abs(predicted - actual);
    return sum / static_cast<double>(pairs.size());
}

TauResult kendall_tau(std::span<const ItemId> recommended_order,
                      const Profile& actual_votes) {
    const std::size_t n = recommended_order.size();
    if (n < 2) throw std::invalid_argument("kendall_tau: need at least two items");

    std::vector<double> votes(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* v = find_vote(actual_votes, recommended_order[i]);
        if (!v)
            throw std::invalid_argument("kendall_tau: no actual vote for item " +
                                        std::to_string(recommended_order[i]));
        votes[i] = *v;
    }

    // Actual ranks: vote descending, ties share the mean of their positions.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&votes](std::size_t a, std::size_t b) { return votes[a] > votes[b]; });
    std::vector<double> rank(n);
    std::size_t pos = 0;
    while (pos < n) {
        std::size_t end = pos;
        while (end + 1 < n && votes[order[end + 1]] == votes[order[pos]]) ++end;
        const double average = static_cast<double>(pos + 1 + end + 1) / 2.0;
        for (std::size_t k = pos; k <= end; ++k) rank[order[k]] = average;
        pos = end + 1;
    }

    // A pair is discordant when the earlier-recommended item has the
    // strictly worse (numerically greater) actual rank; rank ties never
    // count.
    std::size_t discordant = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rank[i] > rank[j]) ++discordant;

    const double tau = 1.0 - 4.0 * static_cast<double>(discordant) /
                                 (static_cast<double>(n) * static_cast<double>(n - 1));
    return {tau, n, discordant};
}

namespace {

// Exact two-sided significance by counting sign assignments over the
// observed (tie-averaged) ranks. Ranks are half-integers, so doubling them
// keeps everything in exact integer arithmetic.
double exact_two_sided_p(const std::vector<std::size_t>& doubled_ranks,
                         std::size_t doubled_w_plus) {
    const std::size_t n = doubled_ranks.size();
    const std::size_t total = n * (n + 1);  // sum of doubled ranks
    std::vector<std::uint64_t> count(total + 1, 0);
    count[0] = 1;
    std::size_t reach = 0;
    for (const std::size_t r : doubled_ranks) {
        for (std::size_t v = reach + 1; v-- > 0;) {
            if (count[v]) count[v + r] += count[v];
        }
        reach += r;
    }
    const std::size_t observed_min = std::min(doubled_w_plus, total - doubled_w_plus);
    std::uint64_t favorable = 0;
    for (std::size_t v = 0; v <= total; ++v)
        if (std::min(v, total - v) <= observed_min) favorable += count[v];
    return std::ldexp(static_cast<double>(favorable), -static_cast<int>(n));
}

double normal_two_sided_p(double w_plus, std::size_t n, double tie_cubic_term) {
    const double dn = static_cast<double>(n);
    const double mean = dn * (dn + 1.0) / 4.0;
    const double variance =
        dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - tie_cubic_term / 48.0;
    const double numerator = std::abs(w_plus - mean) - 0.5;  // continuity correction
    if (numerator <= 0.0) return 1.0;
    const double z = numerator / std::sqrt(variance);
    const double p = std::erfc(z / std::sqrt(2.0));
    return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

}  // namespace

std::optional<PairedTestResult> wilcoxon_signed_rank(
    std::span<const std::pair<double, double>> pairs, std::size_t exact_cutoff) {
    if (pairs.empty()) throw std::invalid_argument("wilcoxon: no pairs");

    struct Diff {
        double magnitude;
        int sign;
    };
    std::vector<Diff> diffs;
    diffs.reserve(pairs.size());
    for (const auto& [first, second] : pairs) {
        const double d = first - second;
        if (d != 0.0) diffs.push_back({std::abs(d), d > 0.0 ? 1 : -1});
    }
    const std::size_t n = diffs.size();
    if (n == 0) return std::nullopt;

    std::sort(diffs.begin(), diffs.end(),
              [](const Diff& a, const Diff& b) { return a.magnitude < b.magnitude; });

    PairedTestResult result;
    result.n_unequal = n;
    std::vector<std::size_t> doubled_ranks(n);
    std::size_t doubled_w_plus = 0;
    double tie_cubic_term = 0.0;
    std::size_t pos = 0;
    while (pos < n) {
        std::size_t end = pos;
        while (end + 1 < n && diffs[end + 1].magnitude == diffs[pos].magnitude) ++end;
        const std::size_t doubled = pos + 1 + end + 1;  // 2 * average rank
        const double average = static_cast<double>(doubled) / 2.0;
        const double t = static_cast<double>(end - pos + 1);
        tie_cubic_term += t * t * t - t;
        for (std::size_t k = pos; k <= end; ++k) {
            doubled_ranks[k] = doubled;
            if (diffs[k].sign > 0) {
                result.rank_sum_first += average;
                doubled_w_plus += doubled;
            } else {
                result.rank_sum_second += average;
            }
        }
        pos = end + 1;
    }

    result.p_upper_bound =
        n <= exact_cutoff
            ? exact_two_sided_p(doubled_ranks, doubled_w_plus)
            : normal_two_sided_p(result.rank_sum_first, n, tie_cubic_term);
    return result;
}

NeighbourhoodStats neighbourhood_stats(const Neighbourhood& nb,
                                       const TargetSplit& split,
                                       const RatingsTable& table,
                                       std::size_t overlap_threshold) {
    NeighbourhoodStats stats;
    stats.size = nb.size();
    if (stats.size == 0) return stats;

    std::unordered_set<ItemId> covered;
    for (const auto& member : nb.members)
        for (const auto& iv : table.profile(member.user)) covered.insert(iv.item);
    for (const auto& hidden : split.hidden_votes)
        if (covered.count(hidden.item)) ++stats.overlap;

    double target_sum = 0.0;
    for (const auto& member : nb.members) {
        target_sum += significance_weighted_match(split.visible_profile,
                                                  table.profile(member.user),
                                                  overlap_threshold)
                          .weighted;
    }
    stats.mean_target_correlation = target_sum / static_cast<double>(stats.size);

    if (stats.size >= 2) {
        double pair_sum = 0.0;
        std::size_t pair_count = 0;
        for (std::size_t i = 0; i < nb.members.size(); ++i) {
            const Profile& pi = table.profile(nb.members[i].user);
            for (std::size_t j = i + 1; j < nb.members.size(); ++j) {
                pair_sum += significance_weighted_match(
                                pi, table.profile(nb.members[j].user), overlap_threshold)
                                .weighted;
                ++pair_count;
            }
        }
        stats.mean_inter_neighbour_correlation =
            pair_sum / static_cast<double>(pair_count);
    }
    return stats;
}

OverlapCounts common_unique_counts(const Neighbourhood& a, const Neighbourhood& b) {
    std::vector<UserId> ids_a = a.member_ids();
    std::vector<UserId> ids_b = b.member_ids();
    std::sort(ids_a.begin(), ids_a.end());
    std::sort(ids_b.begin(), ids_b.end());
    std::vector<UserId> common;
    std::set_intersection(ids_a.begin(), ids_a.end(), ids_b.begin(), ids_b.end(),
                          std::back_inserter(common));
    return {common.size(), ids_a.size() - common.size(), ids_b.size() - common.size()};
}

}  // namespace aisrec
