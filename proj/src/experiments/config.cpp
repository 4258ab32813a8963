#include "posner/experiments/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "posner/error.hpp"

namespace posner::experiments {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "': " +
                    std::string(why));
}

double parse_double(std::string_view key, std::string_view value) {
  double v = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (value.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    bad_value(key, value, "expected a finite number");
  }
  return v;
}

double parse_positive(std::string_view key, std::string_view value) {
  const double v = parse_double(key, value);
  if (!(v > 0.0)) bad_value(key, value, "expected a positive number");
  return v;
}

double parse_non_negative(std::string_view key, std::string_view value) {
  const double v = parse_double(key, value);
  if (v < 0.0) bad_value(key, value, "expected a non-negative number");
  return v;
}

std::size_t parse_count(std::string_view key, std::string_view value) {
  std::size_t v = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (value.empty() || ec != std::errc() || ptr != end) bad_value(key, value, "expected a whole number");
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  bad_value(key, value, "expected true or false");
}

LabelPair parse_pair(std::string_view key, std::string_view value) {
  const auto parts = split(value, ',');
  if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
    bad_value(key, value, "expected two site labels 'A,B'");
  }
  return {std::string(parts[0]), std::string(parts[1])};
}

Output parse_output(std::string_view key, std::string_view v) {
  if (v == "concurrence") return Output::concurrence;
  if (v == "coherence") return Output::coherence;
  if (v == "populations") return Output::populations;
  if (v == "transition_spectrum") return Output::transition_spectrum;
  if (v == "relaxation_table") return Output::relaxation_table;
  bad_value(key, v,
            "expected concurrence, coherence, populations, transition_spectrum or relaxation_table");
}

template <class F>
auto wrap(std::string_view key, std::string_view value, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    bad_value(key, value, e.what());
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_pairs(const std::vector<LabelPair>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) s += "; ";
    s += ps[i].a + "," + ps[i].b;
  }
  return s;
}

}  // namespace

bool ExperimentConfig::wants(Output o) const {
  return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

std::string_view to_string(SystemKind k) {
  return k == SystemKind::posner ? "posner" : "phosphate_hydrogen";
}

std::string_view to_string(Output o) {
  switch (o) {
    case Output::concurrence: return "concurrence";
    case Output::coherence: return "coherence";
    case Output::populations: return "populations";
    case Output::transition_spectrum: return "transition_spectrum";
    case Output::relaxation_table: return "relaxation_table";
  }
  return "concurrence";
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "name") {
    if (value.empty() || value.find_first_of("/\\ \t") != std::string_view::npos) {
      bad_value(key, value, "expected a non-empty name without spaces or slashes");
    }
    cfg.name = std::string(value);
  } else if (key == "system.kind") {
    if (value == "posner") cfg.kind = SystemKind::posner;
    else if (value == "phosphate_hydrogen") cfg.kind = SystemKind::phosphate_hydrogen;
    else bad_value(key, value, "expected posner or phosphate_hydrogen");
  } else if (key == "system.doping") {
    cfg.doping = wrap(key, value, [&] { return hamiltonian::parse_doping(value); });
  } else if (key == "field.B0") {
    cfg.B0 = parse_non_negative(key, value);
  } else if (key == "couplings.preset") {
    cfg.topology = wrap(key, value, [&] { return hamiltonian::parse_topology(value); });
  } else if (key == "couplings.scale") {
    cfg.J_scale = parse_positive(key, value);
  } else if (key == "couplings.J_PH") {
    cfg.J_PH = parse_double(key, value);
  } else if (key.starts_with("couplings.J.")) {
    const auto labels = split(key.substr(12), '.');
    if (labels.size() != 2 || labels[0].empty() || labels[1].empty() || labels[0] == labels[1]) {
      throw ConfigError("invalid coupling key '" + std::string(key) +
                        "': expected couplings.J.<site>.<site> with two distinct sites");
    }
    CouplingOverride o{std::string(labels[0]), std::string(labels[1]), parse_double(key, value)};
    if (o.b < o.a) std::swap(o.a, o.b);
    auto it = std::find_if(cfg.j_overrides.begin(), cfg.j_overrides.end(),
                           [&](const CouplingOverride& x) { return x.a == o.a && x.b == o.b; });
    if (it != cfg.j_overrides.end()) *it = o;
    else cfg.j_overrides.push_back(o);
  } else if (key == "pair.entangled") {
    cfg.entangled = parse_pair(key, value);
  } else if (key == "pair.observe") {
    std::vector<LabelPair> obs;
    for (auto part : split(value, ';')) obs.push_back(parse_pair(key, part));
    cfg.observe = std::move(obs);
  } else if (key == "time.start") {
    cfg.grid.t_start = parse_double(key, value);
  } else if (key == "time.end") {
    cfg.grid.t_end = parse_double(key, value);
  } else if (key == "time.points") {
    cfg.grid.n_points = parse_count(key, value);
    if (cfg.grid.n_points < 2) bad_value(key, value, "need at least 2 points");
  } else if (key == "initial.rest") {
    cfg.rest = wrap(key, value, [&] { return dynamics::parse_rest_state(value); });
  } else if (key == "outputs") {
    std::vector<Output> outs;
    if (value.empty()) bad_value(key, value, "expected at least one output");
    for (auto part : split(value, ',')) {
      const auto o = parse_output(key, part);
      if (std::find(outs.begin(), outs.end(), o) == outs.end()) outs.push_back(o);
    }
    cfg.outputs = std::move(outs);
  } else if (key == "spectrum.alpha") {
    std::vector<double> alpha;
    if (!value.empty()) {
      for (auto part : split(value, ',')) alpha.push_back(parse_non_negative(key, part));
    }
    cfg.spectrum_alpha = std::move(alpha);
  } else if (key == "spectrum.sites") {
    std::vector<std::string> sites;
    if (!value.empty()) {
      for (auto part : split(value, ',')) sites.emplace_back(part);
    }
    cfg.spectrum_sites = std::move(sites);
  } else if (key == "spectrum.tolerance") {
    cfg.spectrum_tolerance = parse_non_negative(key, value);
  } else if (key == "spectrum.norm_floor") {
    cfg.spectrum_norm_floor = parse_non_negative(key, value);
  } else if (key == "relaxation.J7") {
    cfg.relax_J7 = parse_positive(key, value);
  } else if (key == "relaxation.tau6") {
    cfg.relax_tau6 = parse_positive(key, value);
  } else if (key == "relaxation.tau7") {
    cfg.relax_tau7 = parse_positive(key, value);
  } else if (key == "oracle.brute_force") {
    cfg.brute_force = parse_bool(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
      }
      const auto key = trim(line.substr(0, eq));
      if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
      try {
        apply_setting(base, key, line.substr(eq + 1));
      } catch (const ConfigError& e) {
        throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return base;
}

std::pair<std::string, std::string> split_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || trim(text.substr(0, eq)).empty()) {
    throw ConfigError("override '" + std::string(text) + "' is not of the form key=value");
  }
  return {std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1)))};
}

std::string canonical_text(const ExperimentConfig& cfg) {
  std::ostringstream o;
  o << "name = " << cfg.name << '\n';
  o << "system.kind = " << to_string(cfg.kind) << '\n';
  o << "system.doping = " << hamiltonian::to_string(cfg.doping) << '\n';
  o << "field.B0 = " << fmt(cfg.B0) << '\n';
  o << "couplings.preset = " << hamiltonian::to_string(cfg.topology) << '\n';
  o << "couplings.scale = " << fmt(cfg.J_scale) << '\n';
  o << "couplings.J_PH = " << fmt(cfg.J_PH) << '\n';
  auto overrides = cfg.j_overrides;
  std::sort(overrides.begin(), overrides.end(), [](const auto& x, const auto& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  for (const auto& ov : overrides) o << "couplings.J." << ov.a << '.' << ov.b << " = " << fmt(ov.hz) << '\n';
  o << "pair.entangled = " << cfg.entangled.a << ',' << cfg.entangled.b << '\n';
  o << "pair.observe = " << join_pairs(cfg.observe) << '\n';
  o << "time.start = " << fmt(cfg.grid.t_start) << '\n';
  o << "time.end = " << fmt(cfg.grid.t_end) << '\n';
  o << "time.points = " << cfg.grid.n_points << '\n';
  o << "initial.rest = " << dynamics::to_string(cfg.rest) << '\n';
  o << "outputs = ";
  for (std::size_t i = 0; i < cfg.outputs.size(); ++i) o << (i ? ", " : "") << to_string(cfg.outputs[i]);
  o << '\n';
  o << "spectrum.alpha = ";
  for (std::size_t i = 0; i < cfg.spectrum_alpha.size(); ++i) o << (i ? ", " : "") << fmt(cfg.spectrum_alpha[i]);
  o << '\n';
  o << "spectrum.sites = ";
  for (std::size_t i = 0; i < cfg.spectrum_sites.size(); ++i) o << (i ? ", " : "") << cfg.spectrum_sites[i];
  o << '\n';
  o << "spectrum.tolerance = " << fmt(cfg.spectrum_tolerance) << '\n';
  o << "spectrum.norm_floor = " << fmt(cfg.spectrum_norm_floor) << '\n';
  o << "relaxation.J7 = " << fmt(cfg.relax_J7) << '\n';
  o << "relaxation.tau6 = " << fmt(cfg.relax_tau6) << '\n';
  o << "relaxation.tau7 = " << fmt(cfg.relax_tau7) << '\n';
  o << "oracle.brute_force = " << (cfg.brute_force ? "true" : "false") << '\n';
  return o.str();
}

}  // namespace posner::experiments
