#include "aisrec/matching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aisrec {

PearsonResult pearson(const Profile& a, const Profile& b) {
    // Two-pointer intersection over item-sorted profiles. First pass
    // collects the co-voted pairs so means are exact over the overlap.
    std::vector<std::pair<double, double>> common;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->item < ib->item) {
            ++ia;
        } else if (ib->item < ia->item) {
            ++ib;
        } else {
            common.emplace_back(ia->vote, ib->vote);
            ++ia;
            ++ib;
        }
    }
    const std::size_t n = common.size();
    if (n < 2) return {0.0, n};

    double sum_a = 0.0, sum_b = 0.0;
    for (const auto& [va, vb] : common) {
        sum_a += va;
        sum_b += vb;
    }
    const double mean_a = sum_a / static_cast<double>(n);
    const double mean_b = sum_b / static_cast<double>(n);

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (const auto& [va, vb] : common) {
        const double da = va - mean_a;
        const double db = vb - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) return {0.0, n};
    const double r = cov / std::sqrt(var_a * var_b);
    return {std::clamp(r, -1.0, 1.0), n};
}

MatchScore significance_weighted_match(const Profile& a, const Profile& b,
                                       std::size_t overlap_threshold) {
    if (overlap_threshold < 1)
        throw std::invalid_argument("significance weighting: threshold must be >= 1");
    const auto [r, overlap] = pearson(a, b);
    const double fraction =
        static_cast<double>(std::min(overlap, overlap_threshold)) /
        static_cast<double>(overlap_threshold);
    return {r, overlap, r * fraction};
}

MatchMatrix::MatchMatrix(std::vector<UserId> users)
    : users_(std::move(users)), entries_(users_.size() * users_.size(), 0.0) {}

void MatchMatrix::set(std::size_t i, std::size_t j, double value) {
    if (i == j) return;  // the diagonal stays zero
    entries_[i * size() + j] = value;
    entries_[j * size() + i] = value;
}

void MatchMatrix::append_user(UserId user) {
    const std::size_t n = size();
    std::vector<double> grown((n + 1) * (n + 1), 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) grown[i * (n + 1) + j] = entries_[i * n + j];
    entries_ = std::move(grown);
    users_.push_back(user);
}

void MatchMatrix::retain(std::span<const std::size_t> kept) {
    const std::size_t n = size();
    const std::size_t m = kept.size();
    std::vector<UserId> users;
    users.reserve(m);
    std::vector<double> entries(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        users.push_back(users_[kept[i]]);
        for (std::size_t j = 0; j < m; ++j) entries[i * m + j] = entries_[kept[i] * n + kept[j]];
    }
    users_ = std::move(users);
    entries_ = std::move(entries);
}

MatchMatrix pairwise_matrix(std::span<const UserId> users, const RatingsTable& table,
                            std::size_t overlap_threshold) {
    MatchMatrix matrix(std::vector<UserId>(users.begin(), users.end()));
    for (std::size_t i = 0; i < users.size(); ++i) {
        const Profile& pi = table.profile(users[i]);
        for (std::size_t j = i + 1; j < users.size(); ++j) {
            const Profile& pj = table.profile(users[j]);
            matrix.set(i, j, significance_weighted_match(pi, pj, overlap_threshold).weighted);
        }
    }
    return matrix;
}

}  // namespace aisrec
