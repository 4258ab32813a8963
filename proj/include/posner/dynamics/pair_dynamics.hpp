#pragma once

#include <Eigen/Dense>

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "posner/dynamics/propagator.hpp"

namespace posner::dynamics {

// Two-qubit reduced state of one site in molecule A and one in molecule B.
// Product basis |ab>, a slowest, local index 0 = spin up.
class PairState {
 public:
  // Throws std::invalid_argument unless rho is Hermitian (1e-9), has unit
  // trace (1e-9) and no eigenvalue below -1e-9.
  PairState(const Eigen::Matrix4cd& rho, std::size_t site_a, std::size_t site_b);

  const Eigen::Matrix4cd& rho() const noexcept { return rho_; }
  std::size_t site_a() const noexcept { return site_a_; }
  std::size_t site_b() const noexcept { return site_b_; }

 private:
  Eigen::Matrix4cd rho_;
  std::size_t site_a_;
  std::size_t site_b_;
};

struct SitePair {
  std::size_t a = 0;
  std::size_t b = 0;
  friend bool operator==(const SitePair&, const SitePair&) = default;
};

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 500.0;
  std::size_t n_points = 2001;

  // Throws std::invalid_argument for n_points < 2, non-finite ends or t_end <= t_start.
  void validate() const;
  std::vector<double> times() const;
};

// State of every non-entangled site at t = 0.
enum class RestState { mixed, up };

std::string_view to_string(RestState r);
RestState parse_rest_state(std::string_view text);

// Singlet (|ud> - |du>)/sqrt(2) as a projector, and its amplitude matrix c(a, b).
Eigen::Matrix4cd singlet_projector();
Eigen::Matrix2cd singlet_amplitudes();

// G(mu, alpha) = Tr[U (sigma_mu on `entangled` (x) rho_rest) U^dagger sigma_alpha on `observed`]
// for mu, alpha in {0, x, y, z} with sigma_0 = identity. One matrix per time.
std::vector<Eigen::Matrix4d> molecule_correlations(const EigenPropagator& prop, std::size_t entangled,
                                                   std::size_t observed, RestState rest,
                                                   std::span<const double> times);

// Pair states from the per-molecule tables of molecule_correlations:
// <s_alpha s_beta> = (1/4) sum c0(mu, nu) GA(mu, alpha) GB(nu, beta), c0 the Pauli
// coefficients of rho_pair0.
std::vector<PairState> assemble_pair_states(std::span<const Eigen::Matrix4d> ga,
                                            std::span<const Eigen::Matrix4d> gb, SitePair observe,
                                            const Eigen::Matrix4cd& rho_pair0 = singlet_projector());

// Reduced state of `observe` when `entangled` starts in rho_pair0 and the rest
// of both molecules in `rest`. Built from per-molecule traces only.
std::vector<PairState> pair_reduced_density_series(const EigenPropagator& a, const EigenPropagator& b,
                                                   SitePair entangled, SitePair observe,
                                                   std::span<const double> times,
                                                   RestState rest = RestState::mixed,
                                                   const Eigen::Matrix4cd& rho_pair0 = singlet_projector());

PairState pair_reduced_density(const EigenPropagator& a, const EigenPropagator& b, SitePair entangled,
                               SitePair observe, double t, RestState rest = RestState::mixed,
                               const Eigen::Matrix4cd& rho_pair0 = singlet_projector());

struct Populations {
  double singlet = 0.0;
  double t0 = 0.0;
  double t_plus = 0.0;
  double t_minus = 0.0;
};

Populations singlet_triplet_populations(const PairState& pair);

}  // namespace posner::dynamics
