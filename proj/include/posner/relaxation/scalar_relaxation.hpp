#pragma once

namespace posner::relaxation {

// 2 pi gamma_bar 1e6 B0 in rad/s, gamma_bar in MHz/T. Throws
// std::invalid_argument for negative or non-finite B0.
double larmor(double gamma_bar, double B0);

struct ScalarRelaxInput {
  double J = 0.0;        // Hz
  double I_quad = 1.0;   // spin of the fast-relaxing partner
  double tau_sc = 0.0;   // s
  double omega_A = 0.0;  // rad/s
  double omega_B = 0.0;  // rad/s
};

struct ScalarRelaxResult {
  double rate = 0.0;      // 1/s
  double lifetime = 0.0;  // s
};

// R = (8 pi^2 J^2 / 3) I(I+1) tau / (1 + (omega_B - omega_A)^2 tau^2).
// Throws std::invalid_argument for J <= 0, tau <= 0, or I_quad that is not a
// half-integer >= 1.
ScalarRelaxResult scalar_relaxation(const ScalarRelaxInput& in);

struct IsotopeComparison {
  ScalarRelaxInput li6_input;
  ScalarRelaxInput li7_input;
  ScalarRelaxResult li6;
  ScalarRelaxResult li7;
  double ratio = 0.0;  // li6 lifetime / li7 lifetime
};

inline constexpr double kLithiumGammaRatio = 2.6;

// Phosphorus relaxation by a bound 6Li (J7 / 2.6, I = 1, tau6) versus 7Li
// (J7, I = 3/2, tau7) at field B0.
IsotopeComparison isotope_comparison(double B0, double J7, double tau6, double tau7);

}  // namespace posner::relaxation
