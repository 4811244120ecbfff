#pragma once

#include <cstddef>

#include "aisrec/neighbourhood.hpp"
#include "aisrec/ratings.hpp"

namespace aisrec {

// The n users with the highest significance-weighted match to the antigen,
// or all users with a nonzero match if fewer than n qualify. Weight equals
// the weighted match; ties broken by ascending user id.
Neighbourhood simple_pearson_neighbourhood(const RatingsTable& table,
                                           const Profile& antigen, UserId target,
                                           std::size_t n,
                                           std::size_t overlap_threshold);

}  // namespace aisrec
