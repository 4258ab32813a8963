#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "posner/spin/operator.hpp"

namespace posner::spin {

// Spectral decomposition of a Hermitian matrix. The matrix is split into the
// connected components of its nonzero pattern (the conserved-Mz sectors for
// spin Hamiltonians) and each block is diagonalized separately; eigenvalues
// are then merged into one ascending list.
class EigenDecomposition {
 public:
  struct Block {
    std::vector<Eigen::Index> basis;  // product-basis indices spanned by the block
    std::vector<Eigen::Index> modes;  // positions of its eigenvalues in eigenvalues()
    Matrix vectors;                   // basis.size() x basis.size(), columns follow `modes`
  };

  explicit EigenDecomposition(const Matrix& hermitian);

  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  const Matrix& eigenvectors() const noexcept { return vectors_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(values_.size()); }

  // V^dagger M V and V M V^dagger, exploiting the block structure of V.
  Matrix to_eigenbasis(const Matrix& m) const;
  Matrix from_eigenbasis(const Matrix& m) const;

  // V f(diag(lambda)) V^dagger.
  Matrix apply(const std::function<Complex(double)>& f) const;

 private:
  Eigen::VectorXd values_;
  Matrix vectors_;
  std::vector<Block> blocks_;
};

// Throws std::invalid_argument unless the operator carries the Hermitian tag.
EigenDecomposition eigh(const Operator& op);

// Eigenvalues of a density matrix with round-off negatives clamped to zero and
// the sum renormalized when it is within 1e-8 of one. A larger deviation throws
// NumericGuardError.
Eigen::VectorXd clamped_spectrum(const Matrix& rho);

}  // namespace posner::spin
