#include "posner/relaxation/scalar_relaxation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "posner/hamiltonian/hamiltonian.hpp"

namespace posner::relaxation {

double larmor(double gamma_bar, double B0) {
  if (!std::isfinite(B0) || B0 < 0.0) {
    throw std::invalid_argument("B0 must be finite and non-negative, got " + std::to_string(B0));
  }
  return 2.0 * std::numbers::pi * gamma_bar * 1e6 * B0;
}

ScalarRelaxResult scalar_relaxation(const ScalarRelaxInput& in) {
  if (!(in.J > 0.0) || !std::isfinite(in.J)) throw std::invalid_argument("J must be positive");
  if (!(in.tau_sc > 0.0) || !std::isfinite(in.tau_sc)) {
    throw std::invalid_argument("tau_sc must be positive");
  }
  const double twice = 2.0 * in.I_quad;
  if (!(in.I_quad >= 1.0) || std::abs(twice - std::round(twice)) > 1e-12) {
    throw std::invalid_argument("I_quad must be a half-integer >= 1, got " + std::to_string(in.I_quad));
  }
  if (!std::isfinite(in.omega_A) || !std::isfinite(in.omega_B)) {
    throw std::invalid_argument("Larmor frequencies must be finite");
  }
  const double pi = std::numbers::pi;
  const double dw = in.omega_B - in.omega_A;
  const double num = (8.0 * pi * pi * in.J * in.J / 3.0) * in.I_quad * (in.I_quad + 1.0) * in.tau_sc;
  const double rate = num / (1.0 + dw * dw * in.tau_sc * in.tau_sc);
  return {rate, 1.0 / rate};
}

IsotopeComparison isotope_comparison(double B0, double J7, double tau6, double tau7) {
  namespace sp = hamiltonian::species;
  const double wp = larmor(sp::kPhosphorus31, B0);
  IsotopeComparison out;
  out.li7_input = {J7, 1.5, tau7, wp, larmor(sp::kLithium7, B0)};
  out.li6_input = {J7 / kLithiumGammaRatio, 1.0, tau6, wp, larmor(sp::kLithium6, B0)};
  out.li7 = scalar_relaxation(out.li7_input);
  out.li6 = scalar_relaxation(out.li6_input);
  out.ratio = out.li6.lifetime / out.li7.lifetime;
  return out;
}

}  // namespace posner::relaxation
