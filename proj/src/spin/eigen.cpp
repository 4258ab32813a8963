#include "posner/spin/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "posner/error.hpp"

namespace posner::spin {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

// Components of the graph with an edge wherever m(i, j) != 0, each listed in
// ascending index order and ordered by their smallest index.
std::vector<std::vector<Eigen::Index>> components(const Matrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (m(i, j) != Complex(0.0, 0.0) || m(j, i) != Complex(0.0, 0.0)) {
        const auto a = find_root(parent, static_cast<std::size_t>(i));
        const auto b = find_root(parent, static_cast<std::size_t>(j));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = find_root(parent, i);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(static_cast<Eigen::Index>(i));
  }
  return out;
}

bool all_zero(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

}  // namespace

EigenDecomposition::EigenDecomposition(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eigh: matrix is not square");
  const Eigen::Index n = h.rows();

  struct Mode {
    double value;
    std::size_t block;
    Eigen::Index local;
  };
  std::vector<Mode> modes;
  modes.reserve(static_cast<std::size_t>(n));

  for (auto& idx : components(h)) {
    Block b;
    const Matrix sub = h(idx, idx);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sub);
    if (es.info() != Eigen::Success) throw NumericGuardError("eigh: eigensolver did not converge");
    b.basis = std::move(idx);
    b.vectors = es.eigenvectors();
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      modes.push_back({es.eigenvalues()(k), blocks_.size(), k});
    }
    b.modes.resize(b.basis.size());
    blocks_.push_back(std::move(b));
  }

  std::stable_sort(modes.begin(), modes.end(),
                   [](const Mode& a, const Mode& b) { return a.value < b.value; });

  values_.resize(n);
  vectors_ = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& md = modes[static_cast<std::size_t>(k)];
    values_(k) = md.value;
    blocks_[md.block].modes[static_cast<std::size_t>(md.local)] = k;
  }
  for (const auto& b : blocks_) vectors_(b.basis, b.modes) = b.vectors;
}

Matrix EigenDecomposition::to_eigenbasis(const Matrix& m) const {
  const auto n = static_cast<Eigen::Index>(dim());
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument("to_eigenbasis: dimension mismatch");
  Matrix out = Matrix::Zero(n, n);
  for (const auto& a : blocks_) {
    for (const auto& b : blocks_) {
      const Matrix sub = m(a.basis, b.basis);
      if (all_zero(sub)) continue;
      out(a.modes, b.modes) = a.vectors.adjoint() * sub * b.vectors;
    }
  }
  return out;
}

Matrix EigenDecomposition::from_eigenbasis(const Matrix& m) const {
  const auto n = static_cast<Eigen::Index>(dim());
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument("from_eigenbasis: dimension mismatch");
  Matrix out = Matrix::Zero(n, n);
  for (const auto& a : blocks_) {
    for (const auto& b : blocks_) {
      const Matrix sub = m(a.modes, b.modes);
      if (all_zero(sub)) continue;
      out(a.basis, b.basis) = a.vectors * sub * b.vectors.adjoint();
    }
  }
  return out;
}

Matrix EigenDecomposition::apply(const std::function<Complex(double)>& f) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Matrix out = Matrix::Zero(n, n);
  for (const auto& b : blocks_) {
    Eigen::VectorXcd fv(static_cast<Eigen::Index>(b.modes.size()));
    for (std::size_t k = 0; k < b.modes.size(); ++k) {
      fv(static_cast<Eigen::Index>(k)) = f(values_(b.modes[k]));
    }
    out(b.basis, b.basis) = b.vectors * fv.asDiagonal() * b.vectors.adjoint();
  }
  return out;
}

EigenDecomposition eigh(const Operator& op) {
  if (!op.is_hermitian()) throw std::invalid_argument("eigh: operator is not tagged Hermitian");
  return EigenDecomposition(op.matrix());
}

Eigen::VectorXd clamped_spectrum(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix is not square");
  if (!is_hermitian(rho, 1e-9)) throw std::invalid_argument("density matrix is not Hermitian");
  const Matrix sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericGuardError("eigensolver did not converge");
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  const double total = lam.sum();
  if (!std::isfinite(total) || std::abs(total - 1.0) > 1e-8) {
    throw NumericGuardError("density-matrix trace after clamping deviates from 1 by " +
                            std::to_string(total - 1.0));
  }
  return lam / total;
}

}  // namespace posner::spin
