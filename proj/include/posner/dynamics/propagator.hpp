#pragma once

#include <memory>
#include <span>
#include <vector>

#include "posner/spin/eigen.hpp"
#include "posner/spin/operator.hpp"

namespace posner::dynamics {

using spin::Complex;
using spin::Matrix;
using spin::Operator;
using spin::SpinSystem;

// Pair of operators whose Heisenberg-picture overlap Tr[U x U^dagger y] is wanted.
struct Correlator {
  Matrix x;
  Matrix y;
};

// U(t) = V exp(-i lambda t) V^dagger from a cached decomposition of H.
class EigenPropagator {
 public:
  // Throws std::invalid_argument unless the Hamiltonian is tagged Hermitian.
  explicit EigenPropagator(const Operator& hamiltonian);

  const SpinSystem& system() const noexcept { return system_; }
  const spin::EigenDecomposition& decomposition() const noexcept { return *decomp_; }
  std::shared_ptr<const spin::EigenDecomposition> shared_decomposition() const { return decomp_; }
  std::size_t dim() const noexcept { return decomp_->dim(); }

  Matrix unitary(double t) const;

  // out(i, j) = Tr[U(t_i) x_j U(t_i)^dagger y_j]. Evaluated block by block in
  // the eigenbasis, in fixed chunks of time points so results do not depend
  // on how callers split the grid.
  Eigen::MatrixXcd correlations(std::span<const Correlator> pairs, std::span<const double> times) const;

 private:
  SpinSystem system_;
  std::shared_ptr<const spin::EigenDecomposition> decomp_;
};

// U rho0 U^dagger. rho0 must be a Hermitian unit-trace operator on the
// propagator's system; std::invalid_argument otherwise.
Operator evolve_state(const EigenPropagator& prop, const Operator& rho0, double t);

}  // namespace posner::dynamics
