#pragma once

#include <optional>
#include <span>
#include <vector>

#include "aisrec/neighbourhood.hpp"
#include "aisrec/ratings.hpp"

namespace aisrec {

struct Prediction {
    ItemId item;
    double score;  // clamped to the vote scale
    std::size_t contributing_neighbours;
};

// Mean-offset weighted-deviation estimate:
//   score = mean(antigen) + sum_i w_i * (v_i - mean_i) / sum_i |w_i|
// over the neighbours who voted on the item (or all neighbours with missing
// votes replaced by default_vote when one is supplied). mean_i is the
// neighbour's mean over their own votes; default votes never enter it.
// Returns nullopt (no prediction) when no neighbour contributes or the
// weights sum to zero in absolute value. Throws std::invalid_argument if
// the item is already in the antigen profile.
std::optional<Prediction> predict(const Neighbourhood& nb, const RatingsTable& table,
                                  const Profile& antigen, ItemId item,
                                  std::optional<double> default_vote);

// Descending score, ascending item id on ties.
using RecommendationList = std::vector<Prediction>;

// Items with no prediction are omitted from the list.
RecommendationList recommend(const Neighbourhood& nb, const RatingsTable& table,
                             const Profile& antigen,
                             std::span<const ItemId> candidate_items,
                             std::optional<double> default_vote);

}  // namespace aisrec
