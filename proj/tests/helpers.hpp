#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "aisrec/ratings.hpp"
#include "aisrec/rng.hpp"

namespace testutil {

inline aisrec::Profile make_profile(
    std::initializer_list<std::pair<aisrec::ItemId, double>> votes) {
    aisrec::Profile p;
    for (const auto& [item, vote] : votes) p.push_back({item, vote});
    std::sort(p.begin(), p.end(),
              [](const aisrec::ItemVote& a, const aisrec::ItemVote& b) {
                  return a.item < b.item;
              });
    return p;
}

inline aisrec::RatingsTable make_table(std::vector<aisrec::RawVote> votes,
                                       aisrec::VoteScale scale = {}) {
    return aisrec::RatingsTable(scale, votes);
}

// Random profile over an item universe, votes uniform on the step grid.
inline aisrec::Profile random_profile(aisrec::SplitMix64& rng, std::size_t universe,
                                      std::size_t min_votes, std::size_t max_votes) {
    const std::size_t n =
        min_votes + static_cast<std::size_t>(rng.next_below(max_votes - min_votes + 1));
    std::vector<aisrec::ItemId> items(universe);
    for (std::size_t i = 0; i < universe; ++i) items[i] = static_cast<aisrec::ItemId>(i + 1);
    aisrec::seeded_shuffle(items, rng.next());
    items.resize(std::min(n, items.size()));
    std::sort(items.begin(), items.end());
    aisrec::Profile p;
    for (const aisrec::ItemId item : items)
        p.push_back({item, static_cast<double>(rng.next_below(6))});
    return p;
}

}  // namespace testutil
