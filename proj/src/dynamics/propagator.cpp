#include "posner/dynamics/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace posner::dynamics {

namespace {

constexpr Eigen::Index kChunk = 64;

struct Term {
  std::size_t a;
  std::size_t b;
  Matrix w;  // X~_ab elementwise times (Y~_ba)^T
};

bool any_nonzero(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != Complex(0.0, 0.0)) return true;
    }
  }
  return false;
}

std::vector<Term> kernel(const spin::EigenDecomposition& dec, const Correlator& c) {
  const auto& blocks = dec.blocks();
  std::vector<Term> out;
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& ba = blocks[a];
      const auto& bb = blocks[b];
      const Matrix xs = c.x(ba.basis, bb.basis);
      if (!any_nonzero(xs)) continue;
      const Matrix ys = c.y(bb.basis, ba.basis);
      if (!any_nonzero(ys)) continue;
      const Matrix xt = ba.vectors.adjoint() * xs * bb.vectors;
      const Matrix yt = bb.vectors.adjoint() * ys * ba.vectors;
      out.push_back({a, b, xt.cwiseProduct(yt.transpose())});
    }
  }
  return out;
}

}  // namespace

EigenPropagator::EigenPropagator(const Operator& hamiltonian)
    : system_(hamiltonian.system()),
      decomp_(std::make_shared<const spin::EigenDecomposition>(spin::eigh(hamiltonian))) {}

Matrix EigenPropagator::unitary(double t) const {
  return decomp_->apply([t](double lam) { return std::polar(1.0, -lam * t); });
}

Eigen::MatrixXcd EigenPropagator::correlations(std::span<const Correlator> pairs,
                                               std::span<const double> times) const {
  const auto n = static_cast<Eigen::Index>(dim());
  for (const auto& c : pairs) {
    if (c.x.rows() != n || c.x.cols() != n || c.y.rows() != n || c.y.cols() != n) {
      throw std::invalid_argument("correlator dimension does not match propagator");
    }
  }
  const auto& dec = *decomp_;
  const auto& blocks = dec.blocks();
  const auto& lam = dec.eigenvalues();

  std::vector<std::vector<Term>> kernels;
  kernels.reserve(pairs.size());
  for (const auto& c : pairs) kernels.push_back(kernel(dec, c));

  const auto nt = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nt, static_cast<Eigen::Index>(pairs.size()));
  std::vector<Matrix> phase(blocks.size());

  for (Eigen::Index c0 = 0; c0 < nt; c0 += kChunk) {
    const Eigen::Index tc = std::min(kChunk, nt - c0);
    for (std::size_t a = 0; a < blocks.size(); ++a) {
      const auto& modes = blocks[a].modes;
      auto& p = phase[a];
      p.resize(static_cast<Eigen::Index>(modes.size()), tc);
      for (Eigen::Index t = 0; t < tc; ++t) {
        const double tt = times[static_cast<std::size_t>(c0 + t)];
        for (std::size_t m = 0; m < modes.size(); ++m) {
          p(static_cast<Eigen::Index>(m), t) = std::polar(1.0, lam(modes[m]) * tt);
        }
      }
    }
    for (std::size_t j = 0; j < kernels.size(); ++j) {
      for (const auto& term : kernels[j]) {
        const Matrix tmp = term.w * phase[term.b];
        const Eigen::RowVectorXcd s = phase[term.a].conjugate().cwiseProduct(tmp).colwise().sum();
        out.block(c0, static_cast<Eigen::Index>(j), tc, 1) += s.transpose();
      }
    }
  }
  return out;
}

Operator evolve_state(const EigenPropagator& prop, const Operator& rho0, double t) {
  if (!(rho0.system() == prop.system())) {
    throw std::invalid_argument("evolve_state: density matrix lives on a different system");
  }
  if (!rho0.is_hermitian() && !spin::is_hermitian(rho0.matrix())) {
    throw std::invalid_argument("evolve_state: density matrix is not Hermitian");
  }
  if (std::abs(rho0.trace() - Complex(1.0, 0.0)) > 1e-10) {
    throw std::invalid_argument("evolve_state: density matrix trace deviates from 1");
  }
  if (t == 0.0) return Operator(rho0.system(), rho0.matrix(), spin::Hermiticity::hermitian);
  const Matrix u = prop.unitary(t);
  Matrix r = u * rho0.matrix() * u.adjoint();
  r = 0.5 * (r + r.adjoint()).eval();
  return Operator(rho0.system(), std::move(r), spin::Hermiticity::hermitian);
}

}  // namespace posner::dynamics
