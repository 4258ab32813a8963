#pragma once

#include <span>
#include <vector>

#include "posner/dynamics/pair_dynamics.hpp"

namespace posner::dynamics {

// Reference evolution in the joint space of both molecules. The initial pure
// pair state psi = sum c(a, b) |a>|b> on the entangled sites is combined with
// the rest state of each molecule as an ensemble of product-basis states, each
// joint vector is evolved with U_A (x) U_B and the observed pair is traced out.
// Throws NumericGuardError when dim_A * dim_B exceeds 4096.
std::vector<PairState> brute_force_pair_series(const EigenPropagator& a, const EigenPropagator& b,
                                               SitePair entangled, SitePair observe,
                                               std::span<const double> times,
                                               RestState rest = RestState::mixed,
                                               const Eigen::Matrix2cd& amplitudes = singlet_amplitudes());

PairState brute_force_pair(const EigenPropagator& a, const EigenPropagator& b, SitePair entangled,
                           SitePair observe, double t, RestState rest = RestState::mixed,
                           const Eigen::Matrix2cd& amplitudes = singlet_amplitudes());

}  // namespace posner::dynamics
