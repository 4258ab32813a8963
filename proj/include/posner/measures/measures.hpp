#pragma once

#include <Eigen/Dense>

#include "posner/dynamics/pair_dynamics.hpp"
#include "posner/spin/operator.hpp"

namespace posner::measures {

struct CoherenceValue {
  double value = 0.0;  // bits
  std::size_t dim = 0;
};

struct ConcurrenceValue {
  double value = 0.0;
};

// Entropy in bits, eigenvalues clamped per clamped_spectrum.
double von_neumann_entropy(const spin::Matrix& rho);
double von_neumann_entropy(const spin::Operator& rho);

// log2(d) - S(rho).
CoherenceValue coherence_bi(const spin::Matrix& rho);
CoherenceValue coherence_bi(const spin::Operator& rho);

// Wootters concurrence. Evaluated as the singular values of
// Phi^T (sy (x) sy) Phi with rho = Phi Phi^dagger, which are the square roots of
// the eigenvalues of rho (sy sy) rho* (sy sy) without the precision loss of a
// non-symmetric eigensolver.
ConcurrenceValue concurrence(const Eigen::Matrix4cd& rho);
ConcurrenceValue concurrence(const dynamics::PairState& pair);
// Throws std::invalid_argument unless the operator lives on two spin-1/2 sites.
ConcurrenceValue concurrence(const spin::Operator& rho);

// Eigenvalues of rho (sy sy) rho* (sy sy) from a general eigensolver, real
// parts, sorted descending. Imaginary parts above 1e-10 raise NumericGuardError.
Eigen::Vector4d wootters_eigenvalues(const Eigen::Matrix4cd& rho);

}  // namespace posner::measures
