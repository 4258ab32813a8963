#include "posner/hamiltonian/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace posner::hamiltonian {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_field(const FieldSpec& field) {
  if (!std::isfinite(field.B0) || field.B0 < 0.0) {
    throw std::invalid_argument("field B0 must be finite and non-negative, got " +
                                std::to_string(field.B0));
  }
}

}  // namespace

CouplingMatrix::CouplingMatrix(Eigen::MatrixXd j) : j_(std::move(j)) {
  if (j_.rows() != j_.cols()) throw std::invalid_argument("coupling matrix is not square");
  if (!j_.allFinite()) throw std::invalid_argument("coupling matrix has non-finite entries");
  const double scale = j_.size() == 0 ? 0.0 : j_.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < j_.rows(); ++i) {
    for (Eigen::Index k = i + 1; k < j_.cols(); ++k) {
      if (std::abs(j_(i, k) - j_(k, i)) > 1e-12 * scale) {
        throw std::invalid_argument("coupling matrix is not symmetric at (" + std::to_string(i) +
                                    ", " + std::to_string(k) + ")");
      }
    }
  }
}

void CouplingMatrix::set(std::size_t i, std::size_t k, double value) {
  if (i >= size() || k >= size()) throw std::out_of_range("coupling index out of range");
  if (!std::isfinite(value)) throw std::invalid_argument("coupling value must be finite");
  j_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = value;
  j_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = value;
}

Operator zeeman_hamiltonian(const SpinSystem& system, const FieldSpec& field) {
  check_field(field);
  const auto d = system.dim();
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < system.size(); ++k) {
    const auto& s = system.site(k);
    const double w = kTwoPi * s.gamma_bar * 1e6 * field.B0;
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < d; ++i) {
      const double m = s.spin.value() - static_cast<double>(system.digit(i, k));
      diag(static_cast<Eigen::Index>(i)) += w * m;
    }
  }
  spin::Matrix h = diag.cast<spin::Complex>().asDiagonal();
  return Operator(system, std::move(h), spin::Hermiticity::hermitian);
}

Operator build_hamiltonian(const SpinSystem& system, const FieldSpec& field,
                           const CouplingMatrix& couplings) {
  if (couplings.size() != system.size()) {
    throw std::invalid_argument("coupling matrix is " + std::to_string(couplings.size()) + "x" +
                                std::to_string(couplings.size()) + " but the system has " +
                                std::to_string(system.size()) + " sites");
  }
  spin::Matrix h = zeeman_hamiltonian(system, field).matrix();

  std::vector<spin::SpinMatrices> local;
  local.reserve(system.size());
  for (const auto& s : system.sites()) local.push_back(spin::spin_matrices(s.spin));

  for (std::size_t i = 0; i < system.size(); ++i) {
    for (std::size_t k = i + 1; k < system.size(); ++k) {
      const double j = couplings(i, k);
      if (j == 0.0) continue;
      const double w = kTwoPi * j;
      const std::pair<std::size_t, spin::Matrix> xx[] = {{i, local[i].x}, {k, local[k].x}};
      const std::pair<std::size_t, spin::Matrix> yy[] = {{i, local[i].y}, {k, local[k].y}};
      const std::pair<std::size_t, spin::Matrix> zz[] = {{i, local[i].z}, {k, local[k].z}};
      h += w * spin::embed_product(system, xx);
      h += w * spin::embed_product(system, yy);
      h += w * spin::embed_product(system, zz);
    }
  }
  // Round-off in the y-y products leaves ~1e-16 anti-Hermitian residue.
  h = 0.5 * (h + h.adjoint()).eval();
  return Operator(system, std::move(h), spin::Hermiticity::hermitian);
}

std::string_view to_string(Doping d) {
  switch (d) {
    case Doping::none: return "none";
    case Doping::Li6: return "Li6";
    case Doping::Li7: return "Li7";
  }
  return "none";
}

Doping parse_doping(std::string_view text) {
  if (text == "none") return Doping::none;
  if (text == "Li6") return Doping::Li6;
  if (text == "Li7") return Doping::Li7;
  throw std::invalid_argument("unknown doping '" + std::string(text) + "' (expected none, Li6, Li7)");
}

SpinSystem posner_system(Doping doping) {
  std::vector<spin::SpinSite> sites;
  for (int k = 0; k < 6; ++k) {
    sites.push_back({"P" + std::to_string(k), spin::Spin::half(), species::kPhosphorus31});
  }
  if (doping != Doping::none) {
    const bool li7 = doping == Doping::Li7;
    const auto s = li7 ? spin::Spin::three_halves() : spin::Spin::one();
    const double g = li7 ? species::kLithium7 : species::kLithium6;
    sites.push_back({"L6", s, g});
    sites.push_back({"L7", s, g});
  }
  return SpinSystem(std::move(sites));
}

SpinSystem phosphate_hydrogen_system() {
  return SpinSystem({{"P0", spin::Spin::half(), species::kPhosphorus31},
                     {"H0", spin::Spin::half(), species::kHydrogen1}});
}

}  // namespace posner::hamiltonian
