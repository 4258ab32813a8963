#include "posner/hamiltonian/couplings.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace posner::hamiltonian {

namespace {

constexpr double kOpposite = 1.0;
constexpr double kAdjacent = 0.1;

// Row-major i<k order over the six phosphorus sites.
constexpr std::array<double, 15> kWeak = {0.52, 0.37, 0.61, 0.44, 0.58, 0.33, 0.49, 0.66,
                                          0.41, 0.55, 0.35, 0.63, 0.47, 0.39, 0.57};

// Phosphorus-lithium couplings for Li-7. Irregular values keep every lithium
// configuration from cancelling the local field seen by P0.
constexpr std::array<double, 6> kLi7a = {0.62, 0.47, 0.39, 0.23, 0.31, 0.53};
constexpr std::array<double, 6> kLi7b = {0.27, 0.36, 0.51, 0.66, 0.43, 0.41};
constexpr double kLiLi7 = 0.1;
constexpr double kGammaRatio = 2.6;

bool opposite(int i, int k) { return k - i == 3; }

}  // namespace

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::symmetric: return "symmetric";
    case Topology::weak_asymmetry: return "weak_asymmetry";
    case Topology::strong_asymmetry: return "strong_asymmetry";
  }
  return "symmetric";
}

Topology parse_topology(std::string_view text) {
  if (text == "symmetric") return Topology::symmetric;
  if (text == "weak_asymmetry") return Topology::weak_asymmetry;
  if (text == "strong_asymmetry") return Topology::strong_asymmetry;
  throw std::invalid_argument("unknown coupling preset '" + std::string(text) +
                              "' (expected symmetric, weak_asymmetry, strong_asymmetry)");
}

CouplingMatrix posner_couplings(Topology topology, Doping doping, double scale) {
  const std::size_t n = doping == Doping::none ? 6 : 8;
  auto j = CouplingMatrix::zero(n);
  std::size_t w = 0;
  for (int i = 0; i < 6; ++i) {
    for (int k = i + 1; k < 6; ++k) {
      double v = opposite(i, k) ? kOpposite : kAdjacent;
      if (topology == Topology::weak_asymmetry) v = kWeak[w];
      if (topology == Topology::strong_asymmetry && (i == 3 || k == 3) && !opposite(i, k)) v *= 100.0;
      j.set(static_cast<std::size_t>(i), static_cast<std::size_t>(k), v);
      ++w;
    }
  }
  if (doping != Doping::none) {
    const double f = doping == Doping::Li7 ? 1.0 : 1.0 / kGammaRatio;
    for (std::size_t p = 0; p < 6; ++p) {
      j.set(p, 6, f * kLi7a[p]);
      j.set(p, 7, f * kLi7b[p]);
    }
    j.set(6, 7, f * f * kLiLi7);
  }
  return j.scaled(scale);
}

CouplingMatrix phosphate_hydrogen_couplings(double j_ph) {
  auto j = CouplingMatrix::zero(2);
  j.set(0, 1, j_ph);
  return j;
}

}  // namespace posner::hamiltonian
