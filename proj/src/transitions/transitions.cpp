#include "posner/transitions/transitions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

namespace posner::transitions {

namespace {

struct Gap {
  double g;
  Eigen::Index m;
  Eigen::Index n;
};

}  // namespace

TransitionOperator::TransitionOperator(double omega, std::size_t site, std::vector<Entry> entries,
                                       std::shared_ptr<const spin::EigenDecomposition> basis,
                                       std::shared_ptr<const spin::SpinSystem> system)
    : omega_(omega), site_(site), entries_(std::move(entries)), basis_(std::move(basis)),
      system_(std::move(system)) {
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e.value);
  norm_ = std::sqrt(s);
}

Matrix TransitionOperator::eigenbasis_matrix() const {
  const auto n = static_cast<Eigen::Index>(basis_->dim());
  Matrix w = Matrix::Zero(n, n);
  for (const auto& e : entries_) w(e.row, e.col) = e.value;
  return w;
}

Matrix TransitionOperator::materialize() const { return basis_->from_eigenbasis(eigenbasis_matrix()); }

Operator TransitionOperator::op() const { return Operator(*system_, materialize()); }

double TransitionOperator::relation_residual() const {
  const auto& lam = basis_->eigenvalues();
  double s = 0.0;
  for (const auto& e : entries_) {
    s += std::norm((lam(e.row) - lam(e.col) + omega_) * e.value);
  }
  return std::sqrt(s);
}

std::vector<TransitionOperator> decompose(std::shared_ptr<const spin::EigenDecomposition> basis,
                                          const Operator& v, double tol, std::size_t site) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw std::invalid_argument("degeneracy tolerance must be >= 0");
  const auto d = static_cast<Eigen::Index>(basis->dim());
  if (static_cast<Eigen::Index>(v.dim()) != d) {
    throw std::invalid_argument("coupling operator dimension does not match the Hamiltonian");
  }
  if (!v.is_hermitian() && !spin::is_hermitian(v.matrix())) {
    throw std::invalid_argument("coupling operator must be Hermitian");
  }
  const Matrix vt = basis->to_eigenbasis(v.matrix());
  const auto& lam = basis->eigenvalues();

  std::vector<Gap> gaps;
  gaps.reserve(static_cast<std::size_t>(d * (d + 1) / 2));
  for (Eigen::Index m = 0; m < d; ++m) {
    for (Eigen::Index n = m; n < d; ++n) gaps.push_back({lam(n) - lam(m), m, n});
  }
  std::sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) {
    return std::tie(a.g, a.m, a.n) < std::tie(b.g, b.m, b.n);
  });

  auto system = std::make_shared<const spin::SpinSystem>(v.system());
  std::vector<TransitionOperator> out;
  std::size_t i = 0;
  while (i < gaps.size()) {
    std::size_t j = i;
    while (j < gaps.size() && gaps[j].g - gaps[i].g <= tol) ++j;
    const bool zero = i == 0;
    std::vector<TransitionOperator::Entry> entries;
    for (std::size_t k = i; k < j; ++k) {
      const auto [g, m, n] = gaps[k];
      if (vt(m, n) != Complex(0.0, 0.0)) entries.push_back({m, n, vt(m, n)});
      if (zero && m != n && vt(n, m) != Complex(0.0, 0.0)) entries.push_back({n, m, vt(n, m)});
    }
    const double omega = zero ? 0.0 : 0.5 * (gaps[i].g + gaps[j - 1].g);
    out.emplace_back(omega, site, std::move(entries), basis, system);
    i = j;
  }
  return out;
}

std::vector<TransitionOperator> decompose(const Operator& h, const Operator& v, double tol,
                                          std::size_t site) {
  if (!(h.system() == v.system())) {
    throw std::invalid_argument("Hamiltonian and coupling operator live on different systems");
  }
  auto basis = std::make_shared<const spin::EigenDecomposition>(spin::eigh(h));
  return decompose(std::move(basis), v, tol, site);
}

Matrix reconstruct_eigenbasis(const std::vector<TransitionOperator>& parts, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix out = Matrix::Zero(n, n);
  for (const auto& p : parts) {
    for (const auto& e : p.entries()) {
      out(e.row, e.col) += e.value;
      if (p.omega() > 0.0) out(e.col, e.row) += std::conj(e.value);
    }
  }
  return out;
}

CouplingSpec CouplingSpec::uniform(std::size_t n_sites) {
  return {std::vector<double>(n_sites, 1.0), {}};
}

Operator coupling_operator(const spin::SpinSystem& system, std::size_t site, double alpha) {
  if (site >= system.size()) throw std::out_of_range("site index " + std::to_string(site) + " out of range");
  const auto s = spin::spin_matrices(system.site(site).spin);
  Matrix local = alpha * s.x + s.z;
  return spin::embed(local, site, system);
}

std::vector<SpectrumRow> frequency_spectrum(const Operator& h, const CouplingSpec& spec, double tol,
                                            double norm_floor) {
  const auto& sys = h.system();
  if (spec.alpha.size() != sys.size()) {
    throw std::invalid_argument("coupling spec has " + std::to_string(spec.alpha.size()) +
                                " weights for a " + std::to_string(sys.size()) + "-site system");
  }
  for (double a : spec.alpha) {
    if (!std::isfinite(a) || a < 0.0) throw std::invalid_argument("coupling weights must be finite and >= 0");
  }
  std::vector<std::size_t> sites = spec.sites;
  if (sites.empty()) {
    for (std::size_t k = 0; k < sys.size(); ++k) sites.push_back(k);
  }
  for (auto k : sites) {
    if (k >= sys.size()) throw std::out_of_range("site index " + std::to_string(k) + " out of range");
  }

  auto basis = std::make_shared<const spin::EigenDecomposition>(spin::eigh(h));
  std::vector<SpectrumRow> rows;
  for (auto k : sites) {
    const Operator v = coupling_operator(sys, k, spec.alpha[k]);
    const double floor = norm_floor * v.matrix().norm();
    for (const auto& part : decompose(basis, v, tol, k)) {
      if (part.norm() > floor) rows.push_back({k, sys.site(k).label, part.omega(), part.norm()});
    }
  }
  return rows;
}

}  // namespace posner::transitions
