#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "aisrec/predictor.hpp"
#include "aisrec/rng.hpp"
#include "helpers.hpp"

using namespace aisrec;
using testutil::make_profile;

namespace {

// Antigen mean 3; two neighbours engineered to deviate by +1 and -1 on
// item 50 relative to their own profile means.
struct WorkedExample {
    RatingsTable table = testutil::make_table({
        // neighbour 11: own mean (4+2+3)/3 = 3, vote on 50 is 4 -> deviation +1
        {11, 50, 4.0},
        {11, 60, 2.0},
        {11, 61, 3.0},
        // neighbour 12: own mean (2+3+4)/3 = 3, vote on 50 is 2 -> deviation -1
        {12, 50, 2.0},
        {12, 62, 3.0},
        {12, 63, 4.0},
        // neighbour 13 never votes on the candidate items
        {13, 70, 5.0},
        {13, 71, 1.0},
    });
    Profile antigen = make_profile({{100, 3.0}, {101, 3.0}});
};

}  // namespace

TEST_CASE("predict: weighted deviations around the antigen mean") {
    const WorkedExample ex;
    Neighbourhood nb{{{11, 0.5}, {12, 0.25}}, Provenance::Fixed};
    const auto p = predict(nb, ex.table, ex.antigen, 50, std::nullopt);
    REQUIRE(p.has_value());
    CHECK(p->score == doctest::Approx(3.0 + 0.25 / 0.75).epsilon(1e-12));
    CHECK(p->contributing_neighbours == 2);
    CHECK(p->item == 50);
}

TEST_CASE("predict: single neighbour voting at its own mean returns the antigen mean") {
    const WorkedExample ex;
    const RatingsTable table = testutil::make_table(
        {{11, 50, 3.0}, {11, 60, 2.0}, {11, 61, 4.0}});  // own mean 3, vote 3
    Neighbourhood nb{{{11, 1.0}}, Provenance::Fixed};
    const auto p = predict(nb, table, ex.antigen, 50, std::nullopt);
    REQUIRE(p.has_value());
    CHECK(p->score == doctest::Approx(3.0));
}

TEST_CASE("predict: no votes and no default vote means no prediction") {
    const WorkedExample ex;
    Neighbourhood nb{{{13, 0.9}}, Provenance::Fixed};
    CHECK_FALSE(predict(nb, ex.table, ex.antigen, 50, std::nullopt).has_value());
}

TEST_CASE("predict: default vote pulls silent neighbours in") {
    const WorkedExample ex;
    Neighbourhood nb{{{13, 1.0}}, Provenance::Fixed};
    // neighbour 13 own mean is 3; a default vote of 2 deviates by -1
    const auto p = predict(nb, ex.table, ex.antigen, 50, 2.0);
    REQUIRE(p.has_value());
    CHECK(p->contributing_neighbours == 1);
    CHECK(p->score == doctest::Approx(3.0 - 1.0));
}

TEST_CASE("predict: zero weight mass means no prediction") {
    const WorkedExample ex;
    Neighbourhood nb{{{11, 0.0}, {12, 0.0}}, Provenance::Ais};
    CHECK_FALSE(predict(nb, ex.table, ex.antigen, 50, std::nullopt).has_value());
}

TEST_CASE("predict: empty neighbourhood or empty antigen gives no prediction") {
    const WorkedExample ex;
    Neighbourhood empty{{}, Provenance::Ais};
    CHECK_FALSE(predict(empty, ex.table, ex.antigen, 50, std::nullopt).has_value());
    Neighbourhood nb{{{11, 0.5}}, Provenance::Fixed};
    CHECK_FALSE(predict(nb, ex.table, {}, 50, std::nullopt).has_value());
}

TEST_CASE("predict: an antigen item is rejected") {
    const WorkedExample ex;
    Neighbourhood nb{{{11, 0.5}}, Provenance::Fixed};
    CHECK_THROWS_AS(predict(nb, ex.table, ex.antigen, 100, std::nullopt),
                    std::invalid_argument);
}

TEST_CASE("predict: scores are clamped to the vote scale") {
    // A neighbour deviating by +4.5 from its mean with full weight.
    const RatingsTable table = testutil::make_table(
        {{21, 50, 5.0}, {21, 60, 0.0}, {21, 61, 1.0}});  // mean 2, deviation +3
    const Profile antigen = make_profile({{100, 5.0}, {101, 4.0}});  // mean 4.5
    Neighbourhood nb{{{21, 1.0}}, Provenance::Fixed};
    const auto p = predict(nb, table, antigen, 50, std::nullopt);
    REQUIRE(p.has_value());
    CHECK(p->score == 5.0);  // 4.5 + 3 clamped to the maximum
}

TEST_CASE("recommend: ordering, ties and per-item agreement") {
    const WorkedExample ex;
    Neighbourhood nb{{{11, 0.5}, {12, 0.25}}, Provenance::Fixed};

    SUBCASE("empty candidate set") {
        CHECK(recommend(nb, ex.table, ex.antigen, {}, std::nullopt).empty());
    }
    SUBCASE("unpredictable items are omitted") {
        const std::vector<ItemId> items{50, 777};
        const auto list = recommend(nb, ex.table, ex.antigen, items, std::nullopt);
        REQUIRE(list.size() == 1);
        CHECK(list[0].item == 50);
    }
    SUBCASE("each entry equals its individual prediction") {
        const std::vector<ItemId> items{50, 60, 61, 62, 63};
        const auto list = recommend(nb, ex.table, ex.antigen, items, std::nullopt);
        for (const auto& entry : list) {
            const auto p = predict(nb, ex.table, ex.antigen, entry.item, std::nullopt);
            REQUIRE(p.has_value());
            CHECK(entry.score == p->score);
            CHECK(entry.contributing_neighbours == p->contributing_neighbours);
        }
        for (std::size_t i = 1; i < list.size(); ++i) {
            const bool ordered = list[i - 1].score > list[i].score ||
                                 (list[i - 1].score == list[i].score &&
                                  list[i - 1].item < list[i].item);
            CHECK(ordered);
        }
    }
    SUBCASE("equal scores order by ascending item id") {
        // Two items with identical votes from the single neighbour.
        const RatingsTable table = testutil::make_table(
            {{31, 50, 4.0}, {31, 51, 4.0}, {31, 60, 2.0}});
        Neighbourhood one{{{31, 1.0}}, Provenance::Fixed};
        const std::vector<ItemId> items{51, 50};
        const auto list = recommend(one, table, ex.antigen, items, std::nullopt);
        REQUIRE(list.size() == 2);
        CHECK(list[0].score == list[1].score);
        CHECK(list[0].item == 50);
        CHECK(list[1].item == 51);
    }
}

namespace {

struct RandomCase {
    RatingsTable table;
    Profile antigen;
    Neighbourhood nb;
    std::vector<ItemId> candidates;
};

RandomCase random_case(SplitMix64& rng) {
    const std::size_t n_neighbours = 1 + rng.next_below(8);
    const std::size_t n_items = 4 + rng.next_below(10);
    std::vector<RawVote> votes;
    for (std::size_t u = 1; u <= n_neighbours; ++u) {
        std::size_t cast = 0;
        for (std::size_t i = 1; i <= n_items; ++i) {
            if (rng.next_unit() < 0.6) {
                votes.push_back({static_cast<UserId>(u), static_cast<ItemId>(i),
                                 static_cast<double>(rng.next_below(6))});
                ++cast;
            }
        }
        if (cast == 0)
            votes.push_back({static_cast<UserId>(u), 1,
                             static_cast<double>(rng.next_below(6))});
    }
    RandomCase c{testutil::make_table(votes),
                 make_profile({{1000, static_cast<double>(rng.next_below(6))},
                               {1001, static_cast<double>(rng.next_below(6))}}),
                 {{}, Provenance::Fixed},
                 {}};
    for (std::size_t u = 1; u <= n_neighbours; ++u)
        c.nb.members.push_back(
            {static_cast<UserId>(u), rng.next_in(-1.0, 1.0)});
    for (std::size_t i = 1; i <= n_items; ++i)
        c.candidates.push_back(static_cast<ItemId>(i));
    return c;
}

}  // namespace

TEST_CASE("predict properties: scaling, clamping, no-prediction contract") {
    SplitMix64 rng(1234);
    std::size_t cases = 0;
    while (cases < 1000) {
        const RandomCase c = random_case(rng);
        const std::optional<double> default_vote =
            rng.next_below(4) == 0 ? std::optional<double>(2.0) : std::nullopt;
        for (const ItemId item : c.candidates) {
            const auto base = predict(c.nb, c.table, c.antigen, item, default_vote);
            ++cases;

            // Scaling all weights by a power of two changes nothing, exactly.
            Neighbourhood scaled = c.nb;
            for (auto& m : scaled.members) m.weight *= 4.0;
            const auto same = predict(scaled, c.table, c.antigen, item, default_vote);
            CHECK(base.has_value() == same.has_value());
            if (base) {
                CHECK(base->score == same->score);
                CHECK(base->score >= c.table.scale().min_vote);
                CHECK(base->score <= c.table.scale().max_vote);
                CHECK(base->contributing_neighbours >= 1);
            }

            // Arbitrary positive scaling agrees to rounding error.
            Neighbourhood stretched = c.nb;
            const double factor = 0.3 + 5.0 * rng.next_unit();
            for (auto& m : stretched.members) m.weight *= factor;
            const auto close = predict(stretched, c.table, c.antigen, item, default_vote);
            CHECK(base.has_value() == close.has_value());
            if (base) CHECK(close->score == doctest::Approx(base->score).epsilon(1e-9));

            // No-prediction contract: without a default vote, an item nobody
            // voted on yields nothing.
            if (!default_vote && !base) {
                double weight_mass = 0.0;
                std::size_t voters = 0;
                for (const auto& m : c.nb.members) {
                    if (c.table.vote(m.user, item)) {
                        ++voters;
                        weight_mass += std::abs(m.weight);
                    }
                }
                CHECK((voters == 0 || weight_mass == 0.0));
            }
        }
    }
}

TEST_CASE("predict property: raising a positive-weight vote never lowers the score") {
    SplitMix64 rng(4321);
    for (int round = 0; round < 300; ++round) {
        const RandomCase c = random_case(rng);
        const ItemId item = c.candidates[rng.next_below(c.candidates.size())];
        // Pick a voting neighbour with positive weight, if any.
        const Member* chosen = nullptr;
        for (const auto& m : c.nb.members)
            if (m.weight > 0.0 && c.table.vote(m.user, item)) chosen = &m;
        if (!chosen) continue;
        const auto base = predict(c.nb, c.table, c.antigen, item, std::nullopt);
        if (!base) continue;

        // Rebuild the table with that neighbour's vote on the item raised.
        // Their own mean rises by bump/n, so the deviation still gains
        // bump*(1 - 1/n) >= 0 and the score cannot drop.
        const double bump = 1.0;
        std::vector<RawVote> votes;
        for (const UserId user : c.table.users()) {
            for (const auto& iv : c.table.profile(user)) {
                double vote = iv.vote;
                if (user == chosen->user && iv.item == item) vote += bump;
                votes.push_back({user, iv.item, vote});
            }
        }
        const RatingsTable raised(VoteScale{0.0, 6.0, 0.0}, votes);
        const auto after = predict(c.nb, raised, c.antigen, item, std::nullopt);
        REQUIRE(after.has_value());
        CHECK(after->score >= base->score - 1e-9);
    }
}
