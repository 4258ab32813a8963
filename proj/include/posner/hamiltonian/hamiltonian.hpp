#pragma once

#include <Eigen/Dense>

#include <string_view>

#include "posner/spin/operator.hpp"
#include "posner/spin/spin_system.hpp"

namespace posner::hamiltonian {

using spin::Operator;
using spin::SpinSystem;

// gamma / 2pi in MHz/T
namespace species {
inline constexpr double kPhosphorus31 = 17.24;
inline constexpr double kLithium7 = 16.55;
inline constexpr double kLithium6 = 6.27;
inline constexpr double kHydrogen1 = 42.577;
}  // namespace species

// Symmetric scalar couplings in Hz. The diagonal is ignored.
class CouplingMatrix {
 public:
  // Throws std::invalid_argument for a non-square, non-finite or asymmetric matrix.
  explicit CouplingMatrix(Eigen::MatrixXd j);
  static CouplingMatrix zero(std::size_t n) {
    return CouplingMatrix(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(j_.rows()); }
  double operator()(std::size_t i, std::size_t k) const {
    return j_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  }
  const Eigen::MatrixXd& matrix() const noexcept { return j_; }

  CouplingMatrix scaled(double c) const { return CouplingMatrix(c * j_); }
  // Sets J_ik and J_ki together.
  void set(std::size_t i, std::size_t k, double value);

 private:
  Eigen::MatrixXd j_;
};

struct FieldSpec {
  double B0 = 0.0;  // tesla along +z
};

// Zeeman plus isotropic J terms in rad/s. Throws std::invalid_argument when the
// coupling size differs from the site count or B0 is negative or not finite.
Operator build_hamiltonian(const SpinSystem& system, const FieldSpec& field,
                           const CouplingMatrix& couplings);

// The Zeeman term alone (diagonal in the product basis).
Operator zeeman_hamiltonian(const SpinSystem& system, const FieldSpec& field);

enum class Doping { none, Li6, Li7 };

std::string_view to_string(Doping d);
// Throws std::invalid_argument for anything but none, Li6, Li7.
Doping parse_doping(std::string_view text);

// Six phosphorus sites P0..P5, plus lithium sites L6, L7 when doped.
SpinSystem posner_system(Doping doping);

// One phosphorus P0 bound to one hydrogen H0.
SpinSystem phosphate_hydrogen_system();

}  // namespace posner::hamiltonian
