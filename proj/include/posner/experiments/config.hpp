#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "posner/dynamics/pair_dynamics.hpp"
#include "posner/hamiltonian/couplings.hpp"

namespace posner::experiments {

enum class SystemKind { posner, phosphate_hydrogen };

enum class Output { concurrence, coherence, populations, transition_spectrum, relaxation_table };

struct LabelPair {
  std::string a;
  std::string b;
  friend bool operator==(const LabelPair&, const LabelPair&) = default;
};

struct CouplingOverride {
  std::string a;
  std::string b;
  double hz = 0.0;
};

// One experiment. Every field has a text key; see apply_setting.
struct ExperimentConfig {
  std::string name = "experiment";
  SystemKind kind = SystemKind::posner;
  hamiltonian::Doping doping = hamiltonian::Doping::none;
  double B0 = 50e-6;
  hamiltonian::Topology topology = hamiltonian::Topology::symmetric;
  double J_scale = 1.0;
  double J_PH = 0.5;
  std::vector<CouplingOverride> j_overrides;

  LabelPair entangled{"P0", "P0"};
  std::vector<LabelPair> observe{{"P0", "P0"}};
  dynamics::TimeGrid grid{};
  dynamics::RestState rest = dynamics::RestState::mixed;
  std::vector<Output> outputs{Output::concurrence, Output::coherence};

  std::vector<double> spectrum_alpha;  // empty: 1 on every site
  std::vector<std::string> spectrum_sites;
  double spectrum_tolerance = 1e-9;
  double spectrum_norm_floor = 1e-6;

  double relax_J7 = 1.0;
  double relax_tau6 = 300.0;
  double relax_tau7 = 10.0;

  bool brute_force = false;

  bool wants(Output o) const;
};

std::string_view to_string(SystemKind k);
std::string_view to_string(Output o);

// Sets one key. Throws ConfigError naming the key for unknown keys or values
// that do not parse.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Parses `key = value` lines; '#' starts a comment. Later lines override
// earlier ones. Throws ConfigError with the line number on malformed input.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});

// Splits "key=value" as given on the command line.
std::pair<std::string, std::string> split_override(std::string_view text);

// Every field rendered as `key = value` in a fixed order. Equal configs give
// equal text, whatever route produced them.
std::string canonical_text(const ExperimentConfig& cfg);

}  // namespace posner::experiments
