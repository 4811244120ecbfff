#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aisrec/matching.hpp"
#include "aisrec/neighbourhood.hpp"
#include "aisrec/ratings.hpp"

namespace aisrec {

/// Rate constants and operating limits of the concentration dynamics.
/// k1 stimulates an antibody in proportion to its antigen match, k2
/// suppresses it in proportion to its similarity with the rest of the pool,
/// and k3 is the unconditional death rate.
struct AisParams {
    double k1 = 0.3;
    double k2 = 0.2;
    double k3 = 0.1;
    std::size_t capacity = 100;
    std::size_t stability_window = 10;
    double init_concentration = 1.0;
    double death_threshold = 0.05;
    double max_concentration = 10.0;
    double step_size = 1.0;
    // The literal dynamics let a negative antibody-antibody match *boost* a
    // concentration; this substitutes max(m_ij, 0) in the suppression term.
    bool clamp_negative_m_ij = false;

    void validate() const;  // throws std::invalid_argument
};

struct Antibody {
    UserId user;
    double match_to_antigen;  // m_i
    double concentration;     // x_i
};

/// The antibody pool matched against a single antigen (the target user's
/// visible profile, held at concentration y = 1). One logical thread owns
/// an instance; distinct instances may run in parallel.
class ImmuneSystem {
  public:
    ImmuneSystem(AisParams params, Profile antigen,
                 std::optional<UserId> target_user = std::nullopt);

    // Resumes from an explicit pool state. The matrix must list the same
    // users in pool order; concentrations must lie in [0, max_concentration].
    ImmuneSystem(AisParams params, Profile antigen, std::vector<Antibody> pool,
                 MatchMatrix matrix, std::optional<UserId> target_user = std::nullopt);

    // Appends a candidate at the initial concentration, with its antigen
    // match and one new row/column of antibody-antibody matches.
    // Throws std::invalid_argument when the pool is full, the candidate is
    // already pooled, or the candidate is the target user.
    void add_antibody(UserId candidate, const RatingsTable& table,
                      std::size_t overlap_threshold);

    // One synchronous Euler step of the dynamics: all deltas are computed
    // from pre-step concentrations, then applied with clamping to
    // [0, max_concentration]; antibodies below the death threshold are then
    // removed and the stability counter updated.
    void iterate();

    // Full pool whose membership has not changed for stability_window
    // consecutive iterations.
    bool stabilized() const;

    // weight_i = m_i * x_i for each pooled antibody, in pool order.
    Neighbourhood neighbour_weights(Provenance provenance = Provenance::Ais) const;

    // Replaces every concentration with a seeded uniform draw in
    // (death_threshold, max_concentration]; membership is unchanged.
    void randomize_concentrations(std::uint64_t seed);

    // Settles concentrations over a frozen membership: same Euler step but
    // nothing is removed (concentrations may sit below the death threshold).
    // Stops once the set of antibodies at or above the death threshold has
    // been unchanged for stability_window consecutive steps, or at step_cap.
    // Returns the number of steps run.
    std::size_t run_fixed_dynamics(std::size_t step_cap);

    const std::vector<Antibody>& pool() const { return pool_; }
    const MatchMatrix& matrix() const { return matrix_; }
    const AisParams& params() const { return params_; }
    const Profile& antigen() const { return antigen_; }
    double antigen_concentration() const { return antigen_concentration_; }
    std::size_t stable_for() const { return stable_for_; }
    std::uint64_t reviewers_examined() const { return reviewers_examined_; }
    bool at_capacity() const { return pool_.size() == params_.capacity; }

  private:
    std::vector<double> concentration_deltas() const;
    void apply_deltas(std::span<const double> deltas);
    bool cull_dead();
    std::vector<bool> alive_mask() const;
    void rebuild_id_order();

    AisParams params_;
    Profile antigen_;
    std::optional<UserId> target_;
    double antigen_concentration_ = 1.0;  // y
    std::vector<Antibody> pool_;
    MatchMatrix matrix_;
    std::vector<std::size_t> id_order_;  // pool indices sorted by user id
    std::size_t stable_for_ = 0;
    std::uint64_t reviewers_examined_ = 0;
};

struct BuildOutcome {
    ImmuneSystem system;
    Neighbourhood neighbourhood;
    std::uint64_t reviewers_examined = 0;
};

// The main build loop: feed candidates one at a time and, whenever the pool
// is at capacity and not yet stable, iterate the dynamics. Terminates when
// the system stabilizes or the candidate stream is exhausted.
BuildOutcome build_neighbourhood(const RatingsTable& table, const Profile& antigen,
                                 const AisParams& params,
                                 std::span<const UserId> candidates,
                                 std::size_t overlap_threshold,
                                 std::optional<UserId> target_user = std::nullopt);

}  // namespace aisrec
