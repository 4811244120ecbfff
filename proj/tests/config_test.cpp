#include <doctest.h>

#include "aisrec/config.hpp"
#include "aisrec/errors.hpp"

using namespace aisrec;

TEST_CASE("config: empty text keeps the defaults") {
    const ExperimentConfig cfg = parse_config_text("");
    CHECK(cfg.ais.k1 == 0.3);
    CHECK(cfg.ais.k2 == 0.2);
    CHECK(cfg.ais.k3 == 0.1);
    CHECK(cfg.ais.capacity == 100);
    CHECK(cfg.ais.stability_window == 10);
    CHECK(cfg.sp_n == 100);
    CHECK(cfg.overlap_threshold == 50);
    CHECK(cfg.visible_fraction == 0.5);
    CHECK_FALSE(cfg.default_vote.has_value());
    CHECK(cfg.n_trials == 100);
    CHECK(cfg.candidate_order == CandidateOrder::DatasetOrder);
    CHECK_FALSE(cfg.include_randomized_control);
    CHECK(cfg.scale.min_vote == 0.0);
    CHECK(cfg.scale.max_vote == 5.0);
    CHECK(cfg.scale.step == 1.0);
}

TEST_CASE("config: every key parses") {
    const ExperimentConfig cfg = parse_config_text(
        "# dynamics\n"
        "k1 = 0.4\n"
        "k2 = 0.1\n"
        "k3 = 0.05\n"
        "capacity = 40\n"
        "stability_window = 5\n"
        "init_concentration = 2.0\n"
        "death_threshold = 0.1\n"
        "max_concentration = 8\n"
        "step_size = 0.5\n"
        "clamp_negative_m_ij = true\n"
        "\n"
        "overlap_threshold = 12\n"
        "sp_n = 40\n"
        "visible_fraction = 0.75\n"
        "default_votes = auto\n"
        "n_trials = 7\n"
        "min_target_votes = 6\n"
        "candidate_order = shuffle\n"
        "master_seed = 99\n"
        "include_randomized_control = true\n"
        "fixed_step_cap = 123\n"
        "wilcoxon_exact_cutoff = 15\n"
        "vote_min = 1\n"
        "vote_max = 5\n"
        "vote_step = 0\n");
    CHECK(cfg.ais.k1 == 0.4);
    CHECK(cfg.ais.capacity == 40);
    CHECK(cfg.ais.clamp_negative_m_ij);
    CHECK(cfg.overlap_threshold == 12);
    CHECK(cfg.visible_fraction == 0.75);
    CHECK(cfg.n_trials == 7);
    CHECK(cfg.candidate_order == CandidateOrder::SeededShuffle);
    CHECK(cfg.master_seed == 99);
    CHECK(cfg.include_randomized_control);
    CHECK(cfg.fixed_step_cap == 123);
    CHECK(cfg.wilcoxon_exact_cutoff == 15);
    CHECK(cfg.scale.min_vote == 1.0);
    CHECK(cfg.scale.step == 0.0);
    // auto default vote: midpoint minus a tenth of the range, here [1,5].
    REQUIRE(cfg.default_vote.has_value());
    CHECK(*cfg.default_vote == doctest::Approx(2.6));
}

TEST_CASE("config: default_votes variants") {
    CHECK_FALSE(parse_config_text("default_votes = none\n").default_vote.has_value());
    const auto fixed = parse_config_text("default_votes = 1.5\n");
    REQUIRE(fixed.default_vote.has_value());
    CHECK(*fixed.default_vote == 1.5);
    // auto on the default [0,5] scale: 2.5 - 0.5.
    const auto automatic = parse_config_text("default_votes = auto\n");
    CHECK(*automatic.default_vote == doctest::Approx(2.0));
}

TEST_CASE("config: unknown keys and bad values are rejected with line numbers") {
    try {
        parse_config_text("k1 = 0.2\nnot_a_key = 5\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CHECK(what.find("line 2") != std::string::npos);
        CHECK(what.find("not_a_key") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("k1 = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("k1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("candidate_order = random\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("clamp_negative_m_ij = yes\n"), ConfigError);
}

TEST_CASE("config: semantic validation failures become ConfigError") {
    CHECK_THROWS_AS(parse_config_text("visible_fraction = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("death_threshold = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("capacity = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("vote_min = 9\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("default_votes = 99\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("n_trials = 0\n"), ConfigError);
}
