#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "posner/spin/spin_system.hpp"

namespace posner::spin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

enum class Hermiticity { general, hermitian };

// Dense operator on the Hilbert space of a SpinSystem.
class Operator {
 public:
  // With Hermiticity::hermitian the data is checked against
  // |M - M^dagger|_max <= 1e-12 |M|_max; std::invalid_argument otherwise.
  Operator(SpinSystem system, Matrix data, Hermiticity tag = Hermiticity::general);

  static Operator identity(const SpinSystem& system);

  const SpinSystem& system() const noexcept { return system_; }
  const Matrix& matrix() const noexcept { return data_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(data_.rows()); }
  bool is_hermitian() const noexcept { return hermitian_; }
  Complex trace() const { return data_.trace(); }

 private:
  SpinSystem system_;
  Matrix data_;
  bool hermitian_ = false;
};

// Max-abs entry; the norm used by every tolerance in the engine.
double max_norm(const Matrix& m);
bool is_hermitian(const Matrix& m, double rel_tol = 1e-12);

struct SpinMatrices {
  Matrix x;
  Matrix y;
  Matrix z;
};

// Angular-momentum matrices in the |s,m> basis, m = s ... -s, hbar = 1.
SpinMatrices spin_matrices(Spin s);

struct SpinOperators {
  Operator x;
  Operator y;
  Operator z;
};

// Same matrices, carried as Operators on the one-site system {site}.
SpinOperators spin_operators(const SpinSite& site);

// op on site k, identity elsewhere. Throws std::out_of_range for a bad site
// index and std::invalid_argument for a dimension mismatch.
Operator embed(const Matrix& local, std::size_t site, const SpinSystem& system);
Operator embed(const Operator& local, std::size_t site, const SpinSystem& system);

// Tensor product of local factors on distinct sites, identity elsewhere.
Matrix embed_product(const SpinSystem& system,
                     std::span<const std::pair<std::size_t, Matrix>> factors);

// Reduced operator over `keep` (sorted into original site order). rho must be
// Hermitian with unit trace to 1e-10.
Operator partial_trace(const Operator& rho, std::span<const std::size_t> keep);

// Sub-system made of the given sites, in ascending site order.
SpinSystem subsystem(const SpinSystem& system, std::span<const std::size_t> keep);

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace posner::spin
