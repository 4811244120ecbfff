#include "aisrec/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aisrec {

std::optional<Prediction> predict(const Neighbourhood& nb, const RatingsTable& table,
                                  const Profile& antigen, ItemId item,
                                  std::optional<double> default_vote) {
    if (find_vote(antigen, item))
        throw std::invalid_argument("predict: item " + std::to_string(item) +
                                    " is in the antigen profile");
    if (antigen.empty()) return std::nullopt;  // no baseline mean to offset from

    double weighted_deviation = 0.0;
    double weight_magnitude = 0.0;
    std::size_t contributing = 0;
    for (const auto& member : nb.members) {
        const Profile& profile = table.profile(member.user);
        const double* voted = find_vote(profile, item);
        double vote;
        if (voted) {
            vote = *voted;
        } else if (default_vote) {
            vote = *default_vote;
        } else {
            continue;  // a neighbour who has not seen the item is ignored
        }
        const double neighbour_mean = profile_mean(profile);
        weighted_deviation += member.weight * (vote - neighbour_mean);
        weight_magnitude += std::abs(member.weight);
        ++contributing;
    }
    if (contributing == 0 || weight_magnitude == 0.0) return std::nullopt;

    const VoteScale& scale = table.scale();
    const double score = std::clamp(
        profile_mean(antigen) + weighted_deviation / weight_magnitude, scale.min_vote,
        scale.max_vote);
    return Prediction{item, score, contributing};
}

RecommendationList recommend(const Neighbourhood& nb, const RatingsTable& table,
                             const Profile& antigen,
                             std::span<const ItemId> candidate_items,
                             std::optional<double> default_vote) {
    RecommendationList list;
    list.reserve(candidate_items.size());
    for (const ItemId item : candidate_items) {
        if (auto p = predict(nb, table, antigen, item, default_vote)) list.push_back(*p);
    }
    std::sort(list.begin(), list.end(), [](const Prediction& a, const Prediction& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.item < b.item;
    });
    return list;
}

}  // namespace aisrec
