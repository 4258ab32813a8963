#include "posner/experiments/presets.hpp"

#include <cstdio>

#include "posner/error.hpp"

namespace posner::experiments {

namespace {

// No measured coupling set exists for these molecules, so every J below is an
// illustrative choice (Hz). The symmetric topology puts 1 Hz on the three
// opposite-face pairs (0,3) (1,4) (2,5) and 0.1 Hz elsewhere; that is the
// arrangement under which P0 passes its correlations to P3 and never to P4.
// Lithium couplings are irregular so that no lithium spin configuration
// cancels the field on P0; see hamiltonian/couplings.cpp.

const char* const kPosnerBase = R"(system.kind = posner
system.doping = none
field.B0 = 5e-05
couplings.preset = symmetric
couplings.scale = 1
pair.entangled = P0,P0
time.start = 0
time.end = 500
time.points = 2001
initial.rest = mixed
)";

// 0.5 Hz P-H coupling, a typical two-bond scale.
const char* const kHydrogenBase = R"(system.kind = phosphate_hydrogen
couplings.J_PH = 0.5
pair.entangled = P0,P0
pair.observe = P0,P0
time.start = 0
time.end = 500
time.points = 2001
initial.rest = mixed
)";

Preset leaf(std::string name, std::string summary, const char* base, std::string extra) {
  return {name, std::move(summary), std::string(base) + "name = " + name + "\n" + extra, std::nullopt, {}};
}

Preset group(std::string name, std::string summary, std::vector<std::string> members) {
  return {std::move(name), std::move(summary), "", std::nullopt, std::move(members)};
}

// B0 at which the phosphorus Zeeman frequency equals 2 pi J_PH (0.5 Hz / 17.24 MHz/T).
const char* const kLowField = "field.B0 = 2.9002320185614849e-08\n";

std::vector<Preset> build() {
  std::vector<Preset> p;

  Preset sweep = leaf("fig2_jsweep", "coherence and concurrence of P0-P0 for J scaled by 1, 10, 100",
                      kPosnerBase, "pair.observe = P0,P0\noutputs = coherence, concurrence\n");
  sweep.sweep = SweepSpec{SweepParam::J_scale, {1.0, 10.0, 100.0}};
  p.push_back(std::move(sweep));

  const char* const asym[][2] = {{"symmetric", "symmetric"},
                                 {"weak", "weak_asymmetry"},
                                 {"strong", "strong_asymmetry"}};
  for (const auto* fig : {"fig3", "fig4"}) {
    const bool coh = std::string(fig) == "fig3";
    std::vector<std::string> members;
    for (const auto& a : asym) {
      const std::string name = std::string(fig) + "_" + a[0];
      members.push_back(name);
      p.push_back(leaf(name, std::string(coh ? "coherence" : "concurrence") + " of P0-P0, " + a[1] + " couplings",
                       kPosnerBase,
                       std::string("couplings.preset = ") + a[1] + "\npair.observe = P0,P0\noutputs = " +
                           (coh ? "coherence" : "concurrence") + "\n"));
    }
    p.push_back(group(std::string(fig) + "_asymmetry",
                      std::string(coh ? "coherence" : "concurrence") + " for symmetric, weak and strong asymmetry",
                      members));
  }

  p.push_back(leaf("fig5_transfer", "transfer from P0-P0 to P3-P3 and P4-P4, symmetric couplings", kPosnerBase,
                   "pair.observe = P0,P0; P3,P3; P4,P4\noutputs = concurrence, coherence\n"));

  p.push_back(leaf("fig6_symmetric", "transfer to P3-P3 and P4-P4, symmetric couplings", kPosnerBase,
                   "pair.observe = P3,P3; P4,P4\noutputs = concurrence\n"));
  p.push_back(leaf("fig6_weak", "transfer to P3-P3 and P4-P4, weak asymmetry", kPosnerBase,
                   "couplings.preset = weak_asymmetry\npair.observe = P3,P3; P4,P4\noutputs = concurrence\n"));
  p.push_back(group("fig6_transfer_symmetry", "transfer under symmetric and weakly asymmetric couplings",
                    {"fig6_symmetric", "fig6_weak"}));

  const char* const doping[][2] = {{"pure", "none"}, {"li6", "Li6"}, {"li7", "Li7"}};
  std::vector<std::string> fig7;
  std::vector<std::string> fig8;
  std::vector<std::string> spectrum;
  for (const auto& d : doping) {
    const std::string dop = std::string("system.doping = ") + d[1] + "\n";
    fig7.push_back(std::string("fig7_") + d[0]);
    p.push_back(leaf(fig7.back(), std::string("coherence and concurrence, doping ") + d[1], kPosnerBase,
                     dop + "pair.observe = P0,P0; P3,P3; P4,P4\noutputs = coherence, concurrence\n"));
    fig8.push_back(std::string("fig8_") + d[0]);
    p.push_back(leaf(fig8.back(), std::string("singlet and triplet populations, doping ") + d[1], kPosnerBase,
                     dop + "pair.observe = P0,P0\noutputs = populations, concurrence\n"));
    spectrum.push_back(std::string("transition_spectrum_") + d[0]);
    p.push_back(leaf(spectrum.back(), std::string("transition frequencies of alpha S_x + S_z, doping ") + d[1],
                     kPosnerBase, dop + "outputs = transition_spectrum\n"));
  }
  p.push_back(group("fig7_doping", "pure, Li-6 and Li-7 doped molecules", fig7));
  p.push_back(group("fig8_st_dynamics", "singlet and triplet populations, pure and doped", fig8));
  p.push_back(group("transition_spectrum", "transition frequencies, pure and doped", spectrum));

  for (const auto* fig : {"fig9", "fig10"}) {
    const bool pops = std::string(fig) == "fig9";
    const std::string outs = pops ? "outputs = populations, concurrence\n" : "outputs = concurrence\n";
    const std::string hi = std::string(fig) + "_high_field";
    const std::string lo = std::string(fig) + "_low_field";
    p.push_back(leaf(hi, "phosphate-hydrogen pair at 50 uT", kHydrogenBase, "field.B0 = 5e-05\n" + outs));
    p.push_back(leaf(lo, "phosphate-hydrogen pair with Zeeman equal to 2 pi J", kHydrogenBase, kLowField + outs));
    p.push_back(group(std::string(fig) + "_hydrogen_subspace", "high and low field phosphate-hydrogen pair",
                      {hi, lo}));
  }

  // Solvated-ion lithium lifetimes of about 5 min (Li-6) and 10 s (Li-7), J(P-Li7) = 1 Hz.
  p.push_back(leaf("relaxation_table", "scalar relaxation of phosphorus by Li-6 and Li-7", kPosnerBase,
                   "outputs = relaxation_table\nrelaxation.J7 = 1\nrelaxation.tau6 = 300\nrelaxation.tau7 = 10\n"));
  return p;
}

}  // namespace

std::string_view to_string(SweepParam p) { return p == SweepParam::J_scale ? "J_scale" : "B0"; }

SweepParam parse_sweep_param(std::string_view text) {
  if (text == "J_scale") return SweepParam::J_scale;
  if (text == "B0") return SweepParam::B0;
  throw ConfigError("unknown sweep parameter '" + std::string(text) + "' (expected J_scale or B0)");
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw UnknownPresetError(std::string(name));
}

ExperimentConfig sweep_point(const ExperimentConfig& base, SweepParam param, double value) {
  ExperimentConfig c = base;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  if (param == SweepParam::J_scale) apply_setting(c, "couplings.scale", buf);
  else apply_setting(c, "field.B0", buf);
  std::snprintf(buf, sizeof buf, "%g", value);
  c.name = base.name + "__" + std::string(to_string(param)) + "_" + buf;
  return c;
}

std::vector<RunPlan> expand_preset(std::string_view name,
                                   const std::vector<std::pair<std::string, std::string>>& overrides) {
  const Preset& p = find_preset(name);
  std::vector<RunPlan> out;
  if (!p.members.empty()) {
    for (const auto& m : p.members) {
      auto sub = expand_preset(m, overrides);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  ExperimentConfig cfg = parse_config(p.config_text);
  for (const auto& [k, v] : overrides) apply_setting(cfg, k, v);
  if (p.sweep) {
    for (double v : p.sweep->values) out.push_back({p.name, sweep_point(cfg, p.sweep->param, v)});
  } else {
    out.push_back({p.name, cfg});
  }
  return out;
}

}  // namespace posner::experiments
