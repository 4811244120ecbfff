#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aisrec/ratings.hpp"

namespace aisrec {

struct PearsonResult {
    double r = 0.0;
    std::size_t overlap = 0;
};

// Pearson correlation over co-voted items only. Returns r = 0 when fewer
// than two items are co-voted or either side has zero variance on the
// overlap; these are not errors.
PearsonResult pearson(const Profile& a, const Profile& b);

struct MatchScore {
    double raw_pearson = 0.0;
    std::size_t overlap = 0;
    double weighted = 0.0;  // the m value used by the algorithms
};

// weighted = raw_pearson * min(overlap, threshold) / threshold, so matches
// built on few co-voted items are penalised linearly up to the cap.
MatchScore significance_weighted_match(const Profile& a, const Profile& b,
                                       std::size_t overlap_threshold);

/// Symmetric matrix of weighted match values with a zero diagonal.
class MatchMatrix {
  public:
    MatchMatrix() = default;
    explicit MatchMatrix(std::vector<UserId> users);

    std::size_t size() const { return users_.size(); }
    std::span<const UserId> users() const { return users_; }

    double at(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }

    // Sets (i,j) and (j,i); the diagonal stays zero.
    void set(std::size_t i, std::size_t j, double value);

    // Grows the matrix by one row/column of zeros for a new user.
    void append_user(UserId user);

    // Keeps only the rows/columns whose indices are listed (ascending).
    void retain(std::span<const std::size_t> kept);

  private:
    std::vector<UserId> users_;
    std::vector<double> entries_;
};

MatchMatrix pairwise_matrix(std::span<const UserId> users, const RatingsTable& table,
                            std::size_t overlap_threshold);

}  // namespace aisrec
