#pragma once

#include <string_view>

#include "posner/hamiltonian/hamiltonian.hpp"

namespace posner::hamiltonian {

// Illustrative J topologies for one Posner molecule. No measured values are
// available, so these are calibrated choices (all in Hz, before `scale`).
enum class Topology { symmetric, weak_asymmetry, strong_asymmetry };

std::string_view to_string(Topology t);
Topology parse_topology(std::string_view text);

// Couplings for posner_system(doping) with every entry multiplied by `scale`.
//  symmetric         opposite-face pairs (0,3) (1,4) (2,5) at 1 Hz, the rest at 0.1 Hz
//  weak_asymmetry    fifteen distinct couplings between 0.33 and 0.66 Hz
//  strong_asymmetry  symmetric, with P3 coupled 100x more strongly to P1 P2 P4 P5
// Lithium couplings (when doped) use irregular per-phosphorus values for Li-7,
// and Li-7 values / 2.6 for Li-6 (the gamma ratio); the Li-Li term is scaled by 2.6^2.
CouplingMatrix posner_couplings(Topology topology, Doping doping, double scale = 1.0);

// Two-site P0-H0 coupling matrix.
CouplingMatrix phosphate_hydrogen_couplings(double j_ph);

}  // namespace posner::hamiltonian
