#include "posner/measures/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "posner/error.hpp"
#include "posner/spin/eigen.hpp"

namespace posner::measures {

namespace {

Eigen::Matrix4cd sigma_yy() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

}  // namespace

double von_neumann_entropy(const spin::Matrix& rho) {
  const Eigen::VectorXd lam = spin::clamped_spectrum(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > 0.0) s -= lam(i) * std::log2(lam(i));
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const spin::Operator& rho) { return von_neumann_entropy(rho.matrix()); }

CoherenceValue coherence_bi(const spin::Matrix& rho) {
  const auto d = static_cast<std::size_t>(rho.rows());
  const double top = std::log2(static_cast<double>(d));
  const double c = top - von_neumann_entropy(rho);
  return {std::clamp(c, 0.0, top), d};
}

CoherenceValue coherence_bi(const spin::Operator& rho) { return coherence_bi(rho.matrix()); }

ConcurrenceValue concurrence(const Eigen::Matrix4cd& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("concurrence: density matrix is not Hermitian");
  }
  const Eigen::Matrix4cd sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(sym);
  Eigen::Vector4d p = es.eigenvalues().cwiseMax(0.0);
  const double total = p.sum();
  if (std::abs(total - 1.0) > 1e-8) {
    throw NumericGuardError("concurrence: trace deviates from 1 by " + std::to_string(total - 1.0));
  }
  p /= total;
  const Eigen::Matrix4cd phi = es.eigenvectors() * p.cwiseSqrt().asDiagonal();
  const Eigen::Matrix4cd tau = phi.transpose() * sigma_yy() * phi;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
  const Eigen::Vector4d s = svd.singularValues();  // descending
  return {std::clamp(s(0) - s(1) - s(2) - s(3), 0.0, 1.0)};
}

ConcurrenceValue concurrence(const dynamics::PairState& pair) { return concurrence(pair.rho()); }

ConcurrenceValue concurrence(const spin::Operator& rho) {
  const auto& sys = rho.system();
  if (sys.size() != 2 || !sys.site(0).spin.is_half() || !sys.site(1).spin.is_half()) {
    throw std::invalid_argument("concurrence requires a state of two spin-1/2 sites");
  }
  return concurrence(Eigen::Matrix4cd(rho.matrix()));
}

Eigen::Vector4d wootters_eigenvalues(const Eigen::Matrix4cd& rho) {
  const Eigen::Matrix4cd yy = sigma_yy();
  const Eigen::Matrix4cd r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r, false);
  Eigen::Vector4d lam;
  for (int i = 0; i < 4; ++i) {
    const auto v = es.eigenvalues()(i);
    if (std::abs(v.imag()) > 1e-10) {
      throw NumericGuardError("concurrence: eigenvalue with imaginary part " + std::to_string(v.imag()));
    }
    lam(i) = v.real();
  }
  std::sort(lam.data(), lam.data() + 4, std::greater<>());
  return lam;
}

}  // namespace posner::measures
