#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "aisrec/neighbourhood.hpp"
#include "aisrec/ratings.hpp"

namespace aisrec {

// Mean absolute error over (predicted, actual) pairs; pairs must be non-empty.
double mae(std::span<const std::pair<double, double>> pairs);

struct TauResult {
    double tau = 0.0;
    std::size_t n_overlap = 0;     // n: length of the recommended list
    std::size_t n_discordant = 0;  // N_D: discordant pairs
};

// Rank concordance between a recommended ordering and the actual votes:
// items are ranked by actual vote descending (ties share the mean of their
// positions); a pair is discordant when the earlier-recommended item has a
// strictly worse actual rank; tau = 1 - 4*N_D / (n*(n-1)).
// Requires at least two items, each with an actual vote.
TauResult kendall_tau(std::span<const ItemId> recommended_order,
                      const Profile& actual_votes);

struct PairedTestResult {
    std::size_t n_unequal = 0;     // pairs left after dropping zero differences
    double rank_sum_first = 0.0;   // ranks where the first value is larger
    double rank_sum_second = 0.0;  // ranks where the second value is larger
    double p_upper_bound = 1.0;    // two-sided significance
};

// Wilcoxon matched-pairs signed-rank test. Zero differences are dropped;
// absolute differences are ranked ascending with average ranks on ties.
// The p-value is exact (enumeration over sign assignments) when n_unequal
// <= exact_cutoff and a normal approximation with tie and continuity
// corrections otherwise. Returns nullopt when every pair is equal (no test
// possible).
std::optional<PairedTestResult> wilcoxon_signed_rank(
    std::span<const std::pair<double, double>> pairs, std::size_t exact_cutoff = 20);

struct NeighbourhoodStats {
    std::size_t size = 0;
    std::size_t overlap = 0;  // hidden votes on items voted by >= 1 member
    std::optional<double> mean_target_correlation;
    std::optional<double> mean_inter_neighbour_correlation;
};

NeighbourhoodStats neighbourhood_stats(const Neighbourhood& nb,
                                       const TargetSplit& split,
                                       const RatingsTable& table,
                                       std::size_t overlap_threshold);

struct OverlapCounts {
    std::size_t common = 0;
    std::size_t unique_a = 0;
    std::size_t unique_b = 0;
};

OverlapCounts common_unique_counts(const Neighbourhood& a, const Neighbourhood& b);

}  // namespace aisrec
