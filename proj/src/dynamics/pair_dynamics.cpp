#include "posner/dynamics/pair_dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace posner::dynamics {

namespace {

std::array<Eigen::Matrix2cd, 4> paulis() {
  const Complex i(0.0, 1.0);
  std::array<Eigen::Matrix2cd, 4> s;
  s[0] << 1, 0, 0, 1;
  s[1] << 0, 1, 1, 0;
  s[2] << 0, -i, i, 0;
  s[3] << 1, 0, 0, -1;
  return s;
}

void require_half(const SpinSystem& sys, std::size_t site, const char* role) {
  if (site >= sys.size()) {
    throw std::out_of_range(std::string(role) + " site index " + std::to_string(site) + " out of range");
  }
  if (!sys.site(site).spin.is_half()) {
    throw std::invalid_argument(std::string(role) + " site '" + sys.site(site).label +
                                "' is not spin-1/2");
  }
}

Matrix rest_factor(const spin::Spin& s, RestState rest) {
  const auto d = static_cast<Eigen::Index>(s.dim());
  if (rest == RestState::mixed) return Matrix::Identity(d, d) / static_cast<double>(d);
  Matrix up = Matrix::Zero(d, d);
  up(0, 0) = 1.0;
  return up;
}

void check_pair_density(const Eigen::Matrix4cd& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("pair density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-9) {
    throw std::invalid_argument("pair density matrix trace deviates from 1");
  }
}

}  // namespace

PairState::PairState(const Eigen::Matrix4cd& rho, std::size_t site_a, std::size_t site_b)
    : rho_(rho), site_a_(site_a), site_b_(site_b) {
  check_pair_density(rho_);
  const Eigen::Matrix4cd sym = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(sym, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) {
    throw std::invalid_argument("pair density matrix has eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()));
  }
}

void TimeGrid::validate() const {
  if (n_points < 2) throw std::invalid_argument("time grid needs at least 2 points");
  if (!std::isfinite(t_start) || !std::isfinite(t_end)) {
    throw std::invalid_argument("time grid ends must be finite");
  }
  if (!(t_end > t_start)) throw std::invalid_argument("time grid end must exceed start");
}

std::vector<double> TimeGrid::times() const {
  validate();
  std::vector<double> t(n_points);
  const double step = (t_end - t_start) / static_cast<double>(n_points - 1);
  for (std::size_t k = 0; k < n_points; ++k) t[k] = t_start + step * static_cast<double>(k);
  t.back() = t_end;
  return t;
}

std::string_view to_string(RestState r) { return r == RestState::mixed ? "mixed" : "up"; }

RestState parse_rest_state(std::string_view text) {
  if (text == "mixed") return RestState::mixed;
  if (text == "up") return RestState::up;
  throw std::invalid_argument("unknown rest state '" + std::string(text) + "' (expected mixed, up)");
}

Eigen::Matrix2cd singlet_amplitudes() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd c;
  c << 0, r, -r, 0;
  return c;
}

Eigen::Matrix4cd singlet_projector() {
  const Eigen::Matrix2cd c = singlet_amplitudes();
  Eigen::Vector4cd v;
  v << c(0, 0), c(0, 1), c(1, 0), c(1, 1);
  return v * v.adjoint();
}

std::vector<Eigen::Matrix4d> molecule_correlations(const EigenPropagator& prop, std::size_t entangled,
                                                   std::size_t observed, RestState rest,
                                                   std::span<const double> times) {
  const auto& sys = prop.system();
  require_half(sys, entangled, "entangled");
  require_half(sys, observed, "observed");
  const auto sigma = paulis();

  std::vector<std::pair<std::size_t, Matrix>> factors;
  for (std::size_t k = 0; k < sys.size(); ++k) {
    if (k != entangled) factors.emplace_back(k, rest_factor(sys.site(k).spin, rest));
  }
  factors.emplace_back(entangled, Matrix());

  std::vector<Matrix> y(3);
  for (int a = 1; a < 4; ++a) {
    const std::pair<std::size_t, Matrix> f{observed, Matrix(sigma[static_cast<std::size_t>(a)])};
    y[static_cast<std::size_t>(a - 1)] = spin::embed_product(sys, std::span(&f, 1));
  }

  std::vector<Correlator> pairs;
  pairs.reserve(12);
  for (int mu = 0; mu < 4; ++mu) {
    factors.back().second = sigma[static_cast<std::size_t>(mu)];
    const Matrix x = spin::embed_product(sys, factors);
    for (int a = 0; a < 3; ++a) pairs.push_back({x, y[static_cast<std::size_t>(a)]});
  }

  const Eigen::MatrixXcd c = prop.correlations(pairs, times);
  std::vector<Eigen::Matrix4d> out(times.size(), Eigen::Matrix4d::Zero());
  for (std::size_t t = 0; t < times.size(); ++t) {
    auto& g = out[t];
    g(0, 0) = 2.0;
    for (int mu = 0; mu < 4; ++mu) {
      for (int a = 0; a < 3; ++a) {
        g(mu, a + 1) = c(static_cast<Eigen::Index>(t), mu * 3 + a).real();
      }
    }
  }
  return out;
}

std::vector<PairState> assemble_pair_states(std::span<const Eigen::Matrix4d> ga,
                                            std::span<const Eigen::Matrix4d> gb, SitePair observe,
                                            const Eigen::Matrix4cd& rho_pair0) {
  check_pair_density(rho_pair0);
  if (ga.size() != gb.size()) throw std::invalid_argument("correlation tables differ in length");
  const auto sigma = paulis();
  std::array<Eigen::Matrix4cd, 16> basis;
  Eigen::Matrix4d c0;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      Eigen::Matrix4cd k;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          k.block<2, 2>(2 * i, 2 * j) = sigma[static_cast<std::size_t>(m)](i, j) *
                                        sigma[static_cast<std::size_t>(n)];
        }
      }
      basis[static_cast<std::size_t>(4 * m + n)] = k;
      c0(m, n) = (rho_pair0 * k).trace().real();
    }
  }

  std::vector<PairState> out;
  out.reserve(ga.size());
  for (std::size_t t = 0; t < ga.size(); ++t) {
    const Eigen::Matrix4d e = 0.25 * ga[t].transpose() * c0 * gb[t];
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int al = 0; al < 4; ++al) {
      for (int be = 0; be < 4; ++be) rho += (0.25 * e(al, be)) * basis[static_cast<std::size_t>(4 * al + be)];
    }
    out.emplace_back(rho, observe.a, observe.b);
  }
  return out;
}

std::vector<PairState> pair_reduced_density_series(const EigenPropagator& a, const EigenPropagator& b,
                                                   SitePair entangled, SitePair observe,
                                                   std::span<const double> times, RestState rest,
                                                   const Eigen::Matrix4cd& rho_pair0) {
  check_pair_density(rho_pair0);
  const auto ga = molecule_correlations(a, entangled.a, observe.a, rest, times);
  const auto gb = molecule_correlations(b, entangled.b, observe.b, rest, times);
  return assemble_pair_states(ga, gb, observe, rho_pair0);
}

PairState pair_reduced_density(const EigenPropagator& a, const EigenPropagator& b, SitePair entangled,
                               SitePair observe, double t, RestState rest,
                               const Eigen::Matrix4cd& rho_pair0) {
  const double ts[] = {t};
  return pair_reduced_density_series(a, b, entangled, observe, ts, rest, rho_pair0).front();
}

Populations singlet_triplet_populations(const PairState& pair) {
  const auto& r = pair.rho();
  const double mid = r(1, 1).real() + r(2, 2).real();
  const double cross = r(1, 2).real() + r(2, 1).real();
  return {0.5 * (mid - cross), 0.5 * (mid + cross), r(0, 0).real(), r(3, 3).real()};
}

}  // namespace posner::dynamics
