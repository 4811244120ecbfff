#pragma once

#include <string_view>
#include <vector>

#include "aisrec/ratings.hpp"

namespace aisrec {

enum class Provenance {
    Ais,
    SimplePearson,
    Fixed,
    RandomizedConcentration,
};

std::string_view to_string(Provenance p);

struct Member {
    UserId user;
    double weight;
};

/// Ordered set of weighted neighbours of a target user. Members are unique
/// by user id and never include the target.
struct Neighbourhood {
    std::vector<Member> members;
    Provenance provenance = Provenance::Fixed;

    std::size_t size() const { return members.size(); }
    bool contains(UserId user) const;
    std::vector<UserId> member_ids() const;
};

}  // namespace aisrec
