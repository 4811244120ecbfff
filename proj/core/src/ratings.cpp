#include "aisrec/ratings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "aisrec/errors.hpp"
#include "aisrec/numfmt.hpp"
#include "aisrec/rng.hpp"

namespace aisrec {

namespace {

constexpr double kGridTolerance = 1e-9;

bool on_grid(const VoteScale& scale, double vote) {
    if (scale.step <= 0.0) return true;
    const double steps = (vote - scale.min_vote) / scale.step;
    return std::abs(steps - std::round(steps)) <= kGridTolerance;
}

}  // namespace

const double* find_vote(const Profile& profile, ItemId item) {
    const auto it = std::lower_bound(
        profile.begin(), profile.end(), item,
        [](const ItemVote& iv, ItemId id) { return iv.item < id; });
    if (it == profile.end() || it->item != item) return nullptr;
    return &it->vote;
}

double profile_mean(const Profile& profile) {
    if (profile.empty()) throw std::invalid_argument("profile_mean: empty profile");
    double sum = 0.0;
    for (const auto& iv : profile) sum += iv.vote;
    return sum / static_cast<double>(profile.size());
}

void VoteScale::validate() const {
    if (!(min_vote < max_vote))
        throw std::invalid_argument("vote scale: min_vote must be below max_vote");
    if (step < 0.0) throw std::invalid_argument("vote scale: step must be >= 0");
    if (step > 0.0) {
        const double spans = (max_vote - min_vote) / step;
        if (std::abs(spans - std::round(spans)) > kGridTolerance)
            throw std::invalid_argument(
                "vote scale: span must be an integer multiple of step");
    }
}

bool VoteScale::contains(double vote) const {
    return vote >= min_vote && vote <= max_vote && on_grid(*this, vote);
}

double VoteScale::clamp_quantize(double value) const {
    if (step > 0.0) {
        value = min_vote + std::round((value - min_vote) / step) * step;
    }
    return std::clamp(value, min_vote, max_vote);
}

RatingsTable::RatingsTable(VoteScale scale, const std::vector<RawVote>& votes)
    : scale_(scale) {
    scale_.validate();
    std::unordered_map<UserId, std::size_t> slot;
    slot.reserve(votes.size() / 4 + 1);
    for (const auto& rv : votes) {
        if (!scale_.contains(rv.vote))
            throw DataError("vote " + format_double(rv.vote) + " of user " +
                            std::to_string(rv.user) + " is off the vote scale");
        auto [it, inserted] = slot.try_emplace(rv.user, users_.size());
        if (inserted) {
            users_.push_back(rv.user);
            profiles_.emplace_back();
        }
        profiles_[it->second].push_back({rv.item, rv.vote});
    }
    for (std::size_t u = 0; u < profiles_.size(); ++u) {
        auto& p = profiles_[u];
        std::sort(p.begin(), p.end(),
                  [](const ItemVote& a, const ItemVote& b) { return a.item < b.item; });
        for (std::size_t i = 1; i < p.size(); ++i) {
            if (p[i].item == p[i - 1].item)
                throw DataError("duplicate vote for user " + std::to_string(users_[u]) +
                                ", item " + std::to_string(p[i].item));
        }
        vote_count_ += p.size();
    }
    index_.reserve(users_.size());
    for (std::size_t u = 0; u < users_.size(); ++u) index_.emplace_back(users_[u], u);
    std::sort(index_.begin(), index_.end());
}

const Profile* RatingsTable::lookup(UserId user) const {
    const auto it = std::lower_bound(
        index_.begin(), index_.end(), user,
        [](const auto& entry, UserId id) { return entry.first < id; });
    if (it == index_.end() || it->first != user) return nullptr;
    return &profiles_[it->second];
}

bool RatingsTable::has_user(UserId user) const { return lookup(user) != nullptr; }

const Profile& RatingsTable::profile(UserId user) const {
    const Profile* p = lookup(user);
    if (!p) throw DataError("unknown user " + std::to_string(user));
    return *p;
}

std::optional<double> RatingsTable::vote(UserId user, ItemId item) const {
    const Profile* p = lookup(user);
    if (!p) return std::nullopt;
    const double* v = find_vote(*p, item);
    if (!v) return std::nullopt;
    return *v;
}

bool RatingsTable::operator==(const RatingsTable& other) const {
    return scale_ == other.scale_ && users_ == other.users_ &&
           profiles_ == other.profiles_;
}

RatingsTable parse_ratings(std::istream& source, const VoteScale& scale) {
    scale.validate();
    std::vector<RawVote> votes;
    std::unordered_map<UserId, std::unordered_map<ItemId, bool>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;

        std::string_view text{line};
        const auto first_comma = text.find(',');
        const auto second_comma =
            first_comma == std::string_view::npos ? first_comma
                                                  : text.find(',', first_comma + 1);
        if (second_comma == std::string_view::npos ||
            text.find(',', second_comma + 1) != std::string_view::npos)
            throw ParseError(line_no, "expected `user_id,item_id,vote`");

        const auto user = parse_int(text.substr(0, first_comma));
        const auto item = parse_int(text.substr(first_comma + 1, second_comma - first_comma - 1));
        const auto vote = parse_double(text.substr(second_comma + 1));
        if (!user) throw ParseError(line_no, "bad user id");
        if (!item) throw ParseError(line_no, "bad item id");
        if (!vote) throw ParseError(line_no, "bad vote value");
        if (!(*vote >= scale.min_vote && *vote <= scale.max_vote))
            throw ParseError(line_no, "vote off scale");
        if (!on_grid(scale, *vote)) throw ParseError(line_no, "vote off the step grid");
        if (!seen[*user].emplace(*item, true).second)
            throw ParseError(line_no, "duplicate vote for user " + std::to_string(*user) +
                                          ", item " + std::to_string(*item));
        votes.push_back({*user, *item, *vote});
    }
    return RatingsTable(scale, votes);
}

void write_ratings(const RatingsTable& table, std::ostream& out) {
    for (const UserId user : table.users()) {
        for (const auto& iv : table.profile(user)) {
            out << user << ',' << iv.item << ',' << format_double(iv.vote) << '\n';
        }
    }
}

RatingsTable load_ratings_file(const std::string& path, const VoteScale& scale) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ratings file: " + path);
    return parse_ratings(in, scale);
}

void save_ratings_file(const RatingsTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write ratings file: " + path);
    write_ratings(table, out);
    out.flush();
    if (!out) throw IoError("failed writing ratings file: " + path);
}

RatingsTable generate_synthetic(const SyntheticSpec& spec) {
    spec.scale.validate();
    if (spec.n_clusters < 1)
        throw std::invalid_argument("generate_synthetic: n_clusters must be >= 1");
    if (spec.n_users < spec.n_clusters)
        throw std::invalid_argument("generate_synthetic: n_users must be >= n_clusters");
    if (spec.n_items < 1)
        throw std::invalid_argument("generate_synthetic: n_items must be >= 1");
    if (!(spec.density > 0.0 && spec.density <= 1.0))
        throw std::invalid_argument("generate_synthetic: density must be in (0, 1]");
    if (spec.noise < 0.0)
        throw std::invalid_argument("generate_synthetic: noise must be >= 0");

    SplitMix64 rng(spec.seed);
    std::vector<std::vector<double>> latent(spec.n_clusters,
                                            std::vector<double>(spec.n_items));
    for (auto& cluster : latent)
        for (auto& preference : cluster)
            preference = rng.next_in(spec.scale.min_vote, spec.scale.max_vote);

    std::vector<RawVote> votes;
    votes.reserve(static_cast<std::size_t>(
        static_cast<double>(spec.n_users * spec.n_items) * spec.density * 1.1));
    for (std::size_t u = 0; u < spec.n_users; ++u) {
        const auto& prefs = latent[u % spec.n_clusters];
        for (std::size_t i = 0; i < spec.n_items; ++i) {
            if (rng.next_unit() >= spec.density) continue;
            double value = prefs[i];
            if (spec.noise > 0.0) value += rng.next_in(-spec.noise, spec.noise);
            votes.push_back({static_cast<UserId>(u + 1), static_cast<ItemId>(i + 1),
                             spec.scale.clamp_quantize(value)});
        }
    }
    return RatingsTable(spec.scale, votes);
}

TargetSplit split_target(const RatingsTable& table, UserId target_user,
                         double visible_fraction, std::uint64_t seed) {
    if (!(visible_fraction > 0.0 && visible_fraction <= 1.0))
        throw std::invalid_argument("split_target: visible_fraction must be in (0, 1]");
    const Profile& profile = table.profile(target_user);
    if (profile.size() < 2)
        throw DataError("split_target: user " + std::to_string(target_user) +
                        " has fewer than 2 votes");

    const auto n = profile.size();
    const auto n_visible = static_cast<std::size_t>(
        std::llround(visible_fraction * static_cast<double>(n)));
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    seeded_shuffle(order, seed);

    std::vector<bool> visible(n, false);
    for (std::size_t i = 0; i < n_visible; ++i) visible[order[i]] = true;

    TargetSplit split;
    split.target_user = target_user;
    for (std::size_t i = 0; i < n; ++i) {
        (visible[i] ? split.visible_profile : split.hidden_votes).push_back(profile[i]);
    }
    return split;
}

}  // namespace aisrec
