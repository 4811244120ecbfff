#include "aisrec/immune.hpp"

#include <algorithm>
#include <stdexcept>

#include "aisrec/rng.hpp"

namespace aisrec {

void AisParams::validate() const {
    if (k1 < 0.0 || k2 < 0.0 || k3 < 0.0)
        throw std::invalid_argument("ais params: rates must be >= 0");
    if (capacity < 1) throw std::invalid_argument("ais params: capacity must be >= 1");
    if (stability_window < 1)
        throw std::invalid_argument("ais params: stability_window must be >= 1");
    if (!(death_threshold > 0.0))
        throw std::invalid_argument("ais params: death_threshold must be > 0");
    if (!(death_threshold < init_concentration))
        throw std::invalid_argument(
            "ais params: death_threshold must be below init_concentration");
    if (!(init_concentration <= max_concentration))
        throw std::invalid_argument(
            "ais params: init_concentration must not exceed max_concentration");
    if (!(step_size > 0.0)) throw std::invalid_argument("ais params: step_size must be > 0");
}

ImmuneSystem::ImmuneSystem(AisParams params, Profile antigen,
                           std::optional<UserId> target_user)
    : params_(params), antigen_(std::move(antigen)), target_(target_user) {
    params_.validate();
}

ImmuneSystem::ImmuneSystem(AisParams params, Profile antigen, std::vector<Antibody> pool,
                           MatchMatrix matrix, std::optional<UserId> target_user)
    : params_(params),
      antigen_(std::move(antigen)),
      target_(target_user),
      pool_(std::move(pool)),
      matrix_(std::move(matrix)) {
    params_.validate();
    if (pool_.size() > params_.capacity)
        throw std::invalid_argument("immune system: pool exceeds capacity");
    if (matrix_.size() != pool_.size())
        throw std::invalid_argument("immune system: matrix size does not match pool");
    for (std::size_t i = 0; i < pool_.size(); ++i) {
        if (matrix_.users()[i] != pool_[i].user)
            throw std::invalid_argument("immune system: matrix user order mismatch");
        if (target_ && pool_[i].user == *target_)
            throw std::invalid_argument("immune system: target user in pool");
        if (!(pool_[i].concentration >= 0.0 &&
              pool_[i].concentration <= params_.max_concentration))
            throw std::invalid_argument("immune system: concentration out of range");
    }
    reviewers_examined_ = pool_.size();
    rebuild_id_order();
}

void ImmuneSystem::rebuild_id_order() {
    id_order_.resize(pool_.size());
    for (std::size_t i = 0; i < pool_.size(); ++i) id_order_[i] = i;
    std::sort(id_order_.begin(), id_order_.end(), [this](std::size_t a, std::size_t b) {
        return pool_[a].user < pool_[b].user;
    });
}

void ImmuneSystem::add_antibody(UserId candidate, const RatingsTable& table,
                                std::size_t overlap_threshold) {
    if (at_capacity()) throw std::invalid_argument("add_antibody: pool is full");
    if (target_ && candidate == *target_)
        throw std::invalid_argument("add_antibody: candidate is the target user");
    for (const auto& ab : pool_)
        if (ab.user == candidate)
            throw std::invalid_argument("add_antibody: candidate already pooled");

    const Profile& profile = table.profile(candidate);
    const double m =
        significance_weighted_match(antigen_, profile, overlap_threshold).weighted;
    matrix_.append_user(candidate);
    const std::size_t row = pool_.size();
    for (std::size_t j = 0; j < row; ++j) {
        const Profile& other = table.profile(pool_[j].user);
        matrix_.set(row, j,
                    significance_weighted_match(profile, other, overlap_threshold).weighted);
    }
    pool_.push_back({candidate, m, params_.init_concentration});
    ++reviewers_examined_;
    stable_for_ = 0;
    rebuild_id_order();
}

std::vector<double> ImmuneSystem::concentration_deltas() const {
    const std::size_t n = pool_.size();
    std::vector<double> deltas(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Suppression terms accumulate in user-id order so that pool order
        // never affects rounding; iterate stays permutation-equivariant.
        double suppression = 0.0;
        for (const std::size_t j : id_order_) {
            if (j == i) continue;
            double m = matrix_.at(i, j);
            if (params_.clamp_negative_m_ij && m < 0.0) m = 0.0;
            suppression += m * pool_[j].concentration;
        }
        const Antibody& ab = pool_[i];
        deltas[i] = params_.k1 * ab.match_to_antigen * ab.concentration *
                        antigen_concentration_ -
                    (params_.k2 / static_cast<double>(n)) * suppression * ab.concentration -
                    params_.k3 * ab.concentration;
    }
    return deltas;
}

void ImmuneSystem::apply_deltas(std::span<const double> deltas) {
    for (std::size_t i = 0; i < pool_.size(); ++i) {
        pool_[i].concentration =
            std::clamp(pool_[i].concentration + params_.step_size * deltas[i], 0.0,
                       params_.max_concentration);
    }
}

bool ImmuneSystem::cull_dead() {
    std::vector<std::size_t> kept;
    kept.reserve(pool_.size());
    for (std::size_t i = 0; i < pool_.size(); ++i)
        if (pool_[i].concentration >= params_.death_threshold) kept.push_back(i);
    if (kept.size() == pool_.size()) return false;

    std::vector<Antibody> survivors;
    survivors.reserve(kept.size());
    for (const std::size_t i : kept) survivors.push_back(pool_[i]);
    pool_ = std::move(survivors);
    matrix_.retain(kept);
    rebuild_id_order();
    return true;
}

void ImmuneSystem::iterate() {
    if (pool_.empty()) throw std::invalid_argument("iterate: empty pool");
    apply_deltas(concentration_deltas());
    const bool membership_changed = cull_dead();
    if (!membership_changed && at_capacity())
        ++stable_for_;
    else
        stable_for_ = 0;
}

bool ImmuneSystem::stabilized() const {
    return at_capacity() && stable_for_ >= params_.stability_window;
}

Neighbourhood ImmuneSystem::neighbour_weights(Provenance provenance) const {
    Neighbourhood nb;
    nb.provenance = provenance;
    nb.members.reserve(pool_.size());
    for (const auto& ab : pool_)
        nb.members.push_back({ab.user, ab.match_to_antigen * ab.concentration});
    return nb;
}

void ImmuneSystem::randomize_concentrations(std::uint64_t seed) {
    if (pool_.empty())
        throw std::invalid_argument("randomize_concentrations: empty pool");
    SplitMix64 rng(seed);
    for (auto& ab : pool_) {
        // Uniform on (death_threshold, max_concentration]: next_unit() < 1.
        ab.concentration = params_.max_concentration -
                           rng.next_unit() *
                               (params_.max_concentration - params_.death_threshold);
    }
}

std::vector<bool> ImmuneSystem::alive_mask() const {
    std::vector<bool> alive(pool_.size());
    for (std::size_t i = 0; i < pool_.size(); ++i)
        alive[i] = pool_[i].concentration >= params_.death_threshold;
    return alive;
}

std::size_t ImmuneSystem::run_fixed_dynamics(std::size_t step_cap) {
    if (pool_.empty()) return 0;
    std::size_t steps = 0;
    std::size_t quiet = 0;
    auto alive = alive_mask();
    while (steps < step_cap && quiet < params_.stability_window) {
        apply_deltas(concentration_deltas());
        ++steps;
        auto now = alive_mask();
        if (now == alive) {
            ++quiet;
        } else {
            quiet = 0;
            alive = std::move(now);
        }
    }
    return steps;
}

BuildOutcome build_neighbourhood(const RatingsTable& table, const Profile& antigen,
                                 const AisParams& params,
                                 std::span<const UserId> candidates,
                                 std::size_t overlap_threshold,
                                 std::optional<UserId> target_user) {
    ImmuneSystem system(params, antigen, target_user);
    std::size_t next = 0;
    while (!system.stabilized() && next < candidates.size()) {
        system.add_antibody(candidates[next++], table, overlap_threshold);
        while (system.at_capacity() && !system.stabilized()) system.iterate();
    }
    Neighbourhood nb = system.neighbour_weights();
    const std::uint64_t examined = system.reviewers_examined();
    return {std::move(system), std::move(nb), examined};
}

}  // namespace aisrec
