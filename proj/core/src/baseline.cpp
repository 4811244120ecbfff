#include "aisrec/baseline.hpp"

#include <algorithm>
#include <stdexcept>

#include "aisrec/matching.hpp"

namespace aisrec {

bool Neighbourhood::contains(UserId user) const {
    return std::any_of(members.begin(), members.end(),
                       [user](const Member& m) { return m.user == user; });
}

std::vector<UserId> Neighbourhood::member_ids() const {
    std::vector<UserId> ids;
    ids.reserve(members.size());
    for (const auto& m : members) ids.push_back(m.user);
    return ids;
}

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::Ais: return "AIS";
        case Provenance::SimplePearson: return "SimplePearson";
        case Provenance::Fixed: return "Fixed";
        case Provenance::RandomizedConcentration: return "RandomizedConcentration";
    }
    return "?";
}

Neighbourhood simple_pearson_neighbourhood(const RatingsTable& table,
                                           const Profile& antigen, UserId target,
                                           std::size_t n,
                                           std::size_t overlap_threshold) {
    if (n < 1)
        throw std::invalid_argument("simple_pearson_neighbourhood: n must be >= 1");
    Neighbourhood nb;
    nb.provenance = Provenance::SimplePearson;
    for (const UserId user : table.users()) {
        if (user == target) continue;
        const double w =
            significance_weighted_match(antigen, table.profile(user), overlap_threshold)
                .weighted;
        if (w != 0.0) nb.members.push_back({user, w});
    }
    std::sort(nb.members.begin(), nb.members.end(), [](const Member& a, const Member& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.user < b.user;
    });
    if (nb.members.size() > n) nb.members.resize(n);
    return nb;
}

}  // namespace aisrec
