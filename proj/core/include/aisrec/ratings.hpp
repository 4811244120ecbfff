#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aisrec {

using UserId = std::int64_t;
using ItemId = std::int64_t;

struct ItemVote {
    ItemId item;
    double vote;

    friend bool operator==(const ItemVote&, const ItemVote&) = default;
};

// A user's votes, ascending by item id.
using Profile = std::vector<ItemVote>;

// Binary search; nullptr when the item was not voted on.
const double* find_vote(const Profile& profile, ItemId item);

// Mean vote of a non-empty profile.
double profile_mean(const Profile& profile);

/// Declared vote scale of a ratings source. step == 0 means continuous.
struct VoteScale {
    double min_vote = 0.0;
    double max_vote = 5.0;
    double step = 1.0;

    void validate() const;  // throws std::invalid_argument
    bool contains(double vote) const;
    double clamp_quantize(double value) const;

    friend bool operator==(const VoteScale&, const VoteScale&) = default;
};

struct RawVote {
    UserId user;
    ItemId item;
    double vote;
};

/// Sparse user x item vote store. Immutable after construction; safe to
/// share across threads.
class RatingsTable {
  public:
    RatingsTable(VoteScale scale, const std::vector<RawVote>& votes);

    const VoteScale& scale() const { return scale_; }

    // Users in first-appearance order ("dataset order").
    std::span<const UserId> users() const { return users_; }

    bool has_user(UserId user) const;
    const Profile& profile(UserId user) const;  // DataError on unknown user
    std::optional<double> vote(UserId user, ItemId item) const;

    std::size_t user_count() const { return users_.size(); }
    std::size_t vote_count() const { return vote_count_; }

    bool operator==(const RatingsTable& other) const;

  private:
    VoteScale scale_;
    std::vector<UserId> users_;
    std::vector<Profile> profiles_;
    std::vector<std::pair<UserId, std::size_t>> index_;  // sorted by user id
    std::size_t vote_count_ = 0;

    const Profile* lookup(UserId user) const;
};

// Line format: `user_id,item_id,vote`. `#` starts a comment line; blank
// lines are skipped. Duplicate (user,item) pairs and off-scale votes are
// reported as ParseError with the offending line number.
RatingsTable parse_ratings(std::istream& source, const VoteScale& scale);
void write_ratings(const RatingsTable& table, std::ostream& out);

RatingsTable load_ratings_file(const std::string& path, const VoteScale& scale);
void save_ratings_file(const RatingsTable& table, const std::string& path);

/// Parameters of the seeded synthetic generator: users are assigned
/// round-robin to clusters, each cluster has a latent per-item preference,
/// and a user votes on a Bernoulli(density) subset of items with
/// vote = clamp_quantize(latent + uniform(-noise, noise)).
struct SyntheticSpec {
    std::size_t n_users = 500;
    std::size_t n_items = 300;
    std::size_t n_clusters = 5;
    double density = 0.2;
    double noise = 1.0;
    VoteScale scale{};
    std::uint64_t seed = 1;
};

RatingsTable generate_synthetic(const SyntheticSpec& spec);

/// A target user's votes split into the visible antigen profile and the
/// hidden evaluation targets. Disjoint; union is the user's full profile.
struct TargetSplit {
    UserId target_user = 0;
    Profile visible_profile;
    Profile hidden_votes;
};

// round(visible_fraction * vote_count) votes chosen uniformly (seeded) as
// visible; the rest hidden. Deterministic per seed.
TargetSplit split_target(const RatingsTable& table, UserId target_user,
                         double visible_fraction, std::uint64_t seed);

}  // namespace aisrec
