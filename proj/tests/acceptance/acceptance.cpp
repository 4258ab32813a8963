// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "../support/oracles.hpp"
#include "posner/cli/cli.hpp"
#include "posner/dynamics/brute_force.hpp"
#include "posner/dynamics/pair_dynamics.hpp"
#include "posner/dynamics/propagator.hpp"
#include "posner/experiments/presets.hpp"
#include "posner/experiments/runner.hpp"
#include "posner/hamiltonian/couplings.hpp"
#include "posner/hamiltonian/hamiltonian.hpp"
#include "posner/measures/measures.hpp"
#include "posner/relaxation/scalar_relaxation.hpp"
#include "posner/spin/eigen.hpp"
#include "posner/transitions/transitions.hpp"

namespace fs = std::filesystem;
namespace ex = posner::experiments;
namespace hm = posner::hamiltonian;
namespace dy = posner::dynamics;
namespace tr = posner::transitions;
using posner::spin::Hermiticity;
using posner::spin::Matrix;
using posner::spin::max_norm;
using posner::spin::Operator;
using posner::spin::Spin;
using posner::spin::SpinSystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

ex::RunResult run_preset(const std::string& name) {
  const auto plans = ex::expand_preset(name);
  return ex::run(plans.at(0).config, plans.at(0).preset);
}

// --- criteria ---------------------------------------------------------------

Verdict larmor_anchors() {
  const struct {
    const char* label;
    double gamma;
    double quoted;
  } anchors[] = {{"Li6", hm::species::kLithium6, 1970.0},
                 {"Li7", hm::species::kLithium7, 5200.0},
                 {"P31", hm::species::kPhosphorus31, 5420.0}};
  bool ok = true;
  std::string d;
  for (const auto& a : anchors) {
    const double w = posner::relaxation::larmor(a.gamma, 50e-6);
    // and from the Hamiltonian of a lone spin
    const SpinSystem one({{a.label, Spin::half(), a.gamma}});
    const auto e = posner::spin::eigh(hm::build_hamiltonian(one, {50e-6}, hm::CouplingMatrix::zero(1)));
    const double split = e.eigenvalues()(1) - e.eigenvalues()(0);
    const double rel = std::abs(w - a.quoted) / a.quoted;
    ok = ok && rel <= 5e-3 && std::abs(split - w) <= 1e-9 * w;
    d += fmt("%s=%.4f (%.3f%%) ", a.label, w, 100.0 * rel);
  }
  return {ok, d};
}

Verdict oracle_equivalence() {
  std::vector<double> times;
  for (int i = 0; i < 51; ++i) times.push_back(10.0 * i);
  double worst = 0.0;

  // two spins per molecule
  const SpinSystem toy({{"P0", Spin::half(), 17.24}, {"X1", Spin::half(), 6.27}});
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
  j(0, 1) = j(1, 0) = 0.8;
  const dy::EigenPropagator toy_prop(hm::build_hamiltonian(toy, {2e-6}, hm::CouplingMatrix(j)));
  for (dy::SitePair obs : {dy::SitePair{0, 0}, dy::SitePair{1, 1}, dy::SitePair{0, 1}}) {
    const auto f = dy::pair_reduced_density_series(toy_prop, toy_prop, {0, 0}, obs, times);
    const auto b = dy::brute_force_pair_series(toy_prop, toy_prop, {0, 0}, obs, times);
    for (std::size_t i = 0; i < times.size(); ++i) worst = std::max(worst, max_norm(f[i].rho() - b[i].rho()));
  }
  const double toy_worst = worst;

  // full pure molecule, joint dimension 4096
  const auto sys = hm::posner_system(hm::Doping::none);
  const dy::EigenPropagator prop(
      hm::build_hamiltonian(sys, {50e-6}, hm::posner_couplings(hm::Topology::symmetric, hm::Doping::none)));
  for (dy::SitePair obs : {dy::SitePair{0, 0}, dy::SitePair{3, 3}, dy::SitePair{4, 4}, dy::SitePair{0, 3}}) {
    const auto f = dy::pair_reduced_density_series(prop, prop, {0, 0}, obs, times);
    const auto b = dy::brute_force_pair_series(prop, prop, {0, 0}, obs, times);
    for (std::size_t i = 0; i < times.size(); ++i) worst = std::max(worst, max_norm(f[i].rho() - b[i].rho()));
  }
  return {worst <= 1e-9, fmt("toy max diff %.2e, Posner max diff %.2e over %zu times", toy_worst, worst, times.size())};
}

Verdict werner_closed_forms() {
  double worst = 0.0;
  for (double p : {0.0, 0.25, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const Eigen::Matrix4cd rho = oracle::werner(p);
    worst = std::max(worst, std::abs(posner::measures::concurrence(rho).value - oracle::werner_concurrence(p)));
    worst = std::max(worst, std::abs(posner::measures::coherence_bi(Matrix(rho)).value - oracle::werner_coherence(p)));
  }
  return {worst <= 1e-10, fmt("max deviation %.2e", worst)};
}

Verdict singlet_invariance() {
  const auto sys = hm::posner_system(hm::Doping::none);
  const dy::EigenPropagator prop(hm::build_hamiltonian(sys, {50e-6}, hm::CouplingMatrix::zero(6)));
  const auto times = dy::TimeGrid{}.times();
  double worst = 0.0;
  for (dy::SitePair obs : {dy::SitePair{0, 0}}) {
    for (const auto& p : dy::pair_reduced_density_series(prop, prop, {0, 0}, obs, times)) {
      worst = std::max(worst, std::abs(1.0 - posner::measures::concurrence(p).value));
    }
  }
  return {worst <= 1e-9, fmt("max |1 - C| %.2e over %zu times", worst, times.size())};
}

Verdict jsweep_monotonic() {
  const auto plans = ex::expand_preset("fig2_jsweep");
  const auto results = ex::run_all(plans, 3);
  std::vector<double> max_all;
  std::string d;
  for (const auto& r : results) {
    const auto& c = r.series->column("concurrence_P0_P0").values;
    const auto& t = r.series->times;
    double tail = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= 10.0) tail = std::max(tail, c[i]);
    }
    max_all.push_back(max_of(c));
    d += fmt("scale %g: max %.4f (t>=10 s %.4f, mean %.4f) ", r.config.J_scale, max_of(c), tail, mean_of(c));
  }
  bool ok = true;
  for (std::size_t i = 1; i < max_all.size(); ++i) ok = ok && max_all[i] >= max_all[i - 1];
  return {ok, d};
}

Verdict transfer_selectivity() {
  const auto r = run_preset("fig5_transfer");
  const double p3 = max_of(r.series->column("concurrence_P3_P3").values);
  const double p4 = max_of(r.series->column("concurrence_P4_P4").values);
  return {p3 > 0.01 && p4 < 1e-6, fmt("max C(P3,P3) %.4f, max C(P4,P4) %.2e", p3, p4)};
}

Verdict doping_suppression() {
  constexpr double kWindow = 25.0;
  std::map<std::string, double> tail;
  for (const char* name : {"fig7_pure", "fig7_li6", "fig7_li7"}) {
    const auto r = run_preset(name);
    const auto& c = r.series->column("concurrence_P0_P0").values;
    double m = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (r.series->times[i] > kWindow) m = std::max(m, c[i]);
    }
    tail[name] = m;
  }
  const bool ok = tail["fig7_li6"] < 1e-3 && tail["fig7_li7"] < 1e-3 && tail["fig7_pure"] > 0.01;
  return {ok, fmt("max C(P0,P0) for t > %g s: pure %.4f, Li6 %.2e, Li7 %.2e", kWindow, tail["fig7_pure"],
                  tail["fig7_li6"], tail["fig7_li7"])};
}

Verdict hydrogen_subspace() {
  struct Case {
    double ratio;
    double dev;
    double mean_c;
  };
  auto one = [](const std::string& name) {
    const auto r = run_preset(name);
    const double ratio = posner::relaxation::larmor(hm::species::kPhosphorus31, r.config.B0) / (2.0 * M_PI * r.config.J_PH);
    double dev = 0.0;
    for (const char* col : {"pTplus_P0_P0", "pTminus_P0_P0"}) {
      const auto& v = r.series->column(col).values;
      for (double x : v) dev = std::max(dev, std::abs(x - v.front()));
    }
    return Case{ratio, dev, mean_of(r.series->column("concurrence_P0_P0").values)};
  };
  const Case hi = one("fig9_high_field");
  const Case lo = one("fig9_low_field");
  const bool ok = hi.ratio >= 1e3 && std::abs(lo.ratio - 1.0) < 1e-6 && hi.dev < 1e-3 && lo.dev > 0.05 &&
                  hi.mean_c > lo.mean_c;
  return {ok, fmt("high: ratio %.0f, max dT %.2e, mean C %.4f; low: ratio %.3f, max dT %.4f, mean C %.4f", hi.ratio,
                  hi.dev, hi.mean_c, lo.ratio, lo.dev, lo.mean_c)};
}

// Library frequencies and oracle gaps must match as sets, each within tol of the other.
bool same_frequency_set(std::vector<double> lib, std::vector<double> ref, double tol) {
  std::sort(lib.begin(), lib.end());
  std::sort(ref.begin(), ref.end());
  auto covered = [tol](const std::vector<double>& xs, const std::vector<double>& by) {
    for (double x : xs) {
      const auto it = std::lower_bound(by.begin(), by.end(), x - tol);
      if (it == by.end() || *it > x + tol) return false;
    }
    return true;
  };
  return covered(lib, ref) && covered(ref, lib);
}

struct IdentityStats {
  double residual = 0.0;      // max ||[H,V_w] + w V_w||_F / ||V_w||_F, eigenbasis, every component
  double lab_residual = 0.0;  // max ||[H,V_w] + w V_w||_max / ||V_w||_max, lab frame, sampled
  double completeness = 0.0;
  bool gaps = true;
  std::size_t operators = 0;
  std::size_t lab_checked = 0;
};

double lab_relation(const Eigen::SparseMatrix<std::complex<double>>& h, const tr::TransitionOperator& p) {
  const Matrix m = p.materialize();
  const Matrix r = h * m - m * h + p.omega() * m;
  return max_norm(r) / max_norm(m);
}

// lab_sample = 0 checks every nonzero component in the lab frame; otherwise the
// worst `lab_sample` by eigenbasis residual plus `lab_sample` seeded picks.
void check_decomposition(const Operator& h, const Operator& v, std::size_t site,
                         std::shared_ptr<const posner::spin::EigenDecomposition> basis,
                         const std::vector<double>& ref_gaps, std::size_t lab_sample, std::mt19937& rng,
                         IdentityStats& st) {
  const auto parts = tr::decompose(basis, v, tr::kDefaultDegeneracyTol, site);
  const Eigen::SparseMatrix<std::complex<double>> hs = h.matrix().sparseView();
  std::vector<double> omegas;
  std::vector<std::pair<double, std::size_t>> weighted;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    omegas.push_back(p.omega());
    if (p.norm() == 0.0) continue;
    const double r = p.relation_residual() / p.norm();
    st.residual = std::max(st.residual, r);
    weighted.emplace_back(r, i);
  }
  std::vector<std::size_t> pick;
  if (lab_sample == 0 || weighted.size() <= 2 * lab_sample) {
    for (const auto& w : weighted) pick.push_back(w.second);
  } else {
    std::sort(weighted.begin(), weighted.end(), std::greater<>());
    for (std::size_t i = 0; i < lab_sample; ++i) pick.push_back(weighted[i].second);
    std::uniform_int_distribution<std::size_t> u(lab_sample, weighted.size() - 1);
    for (std::size_t i = 0; i < lab_sample; ++i) pick.push_back(weighted[u(rng)].second);
  }
  for (std::size_t i : pick) st.lab_residual = std::max(st.lab_residual, lab_relation(hs, parts[i]));
  st.lab_checked += pick.size();
  st.operators += parts.size();
  const Matrix rec = tr::reconstruct_eigenbasis(parts, h.dim());
  st.completeness = std::max(st.completeness, max_norm(rec - basis->to_eigenbasis(v.matrix())));
  st.gaps = st.gaps && same_frequency_set(omegas, ref_gaps, 1e-8 * std::max(1.0, max_norm(h.matrix())));
}

Verdict eigenoperator_identities() {
  IdentityStats st;
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    std::vector<posner::spin::SpinSite> sites;
    for (int k = 0; k < n; ++k) sites.push_back({"q" + std::to_string(k), Spin::half(), 1.0});
    const SpinSystem sys(sites);
    const int d = 1 << n;
    const Operator h(sys, oracle::random_hermitian(d, rng, 50.0), Hermiticity::hermitian);
    const Operator v(sys, oracle::random_hermitian(d, rng), Hermiticity::hermitian);
    auto basis = std::make_shared<const posner::spin::EigenDecomposition>(posner::spin::eigh(h));
    check_decomposition(h, v, 0, basis, oracle::eigen_gaps(h.matrix()), 0, rng, st);
  }

  // every distinct Hamiltonian among the presets, every site
  std::set<std::string> seen;
  std::size_t hamiltonians = 0;
  for (const auto& preset : ex::presets()) {
    for (const auto& plan : ex::expand_preset(preset.name)) {
      const auto& c = plan.config;
      const bool posner = c.kind == ex::SystemKind::posner;
      const std::string key = fmt("%d/%d/%d/%.17g/%.17g/%.17g", posner, static_cast<int>(c.doping),
                                  static_cast<int>(c.topology), c.J_scale, c.B0, c.J_PH);
      if (!seen.insert(key).second) continue;
      const SpinSystem sys = posner ? hm::posner_system(c.doping) : hm::phosphate_hydrogen_system();
      const auto j = posner ? hm::posner_couplings(c.topology, c.doping, c.J_scale) : hm::phosphate_hydrogen_couplings(c.J_PH);
      const Operator h = hm::build_hamiltonian(sys, {c.B0}, j);
      auto basis = std::make_shared<const posner::spin::EigenDecomposition>(posner::spin::eigh(h));
      const auto gaps = oracle::eigen_gaps(h.matrix());
      const std::size_t sample = sys.dim() <= 64 ? 0 : 4;
      for (std::size_t k = 0; k < sys.size(); ++k) {
        check_decomposition(h, tr::coupling_operator(sys, k, 1.0), k, basis, gaps, sample, rng, st);
      }
      ++hamiltonians;
    }
  }
  const bool ok = st.residual <= 1e-8 && st.lab_residual <= 1e-8 && st.completeness <= 1e-9 && st.gaps;
  return {ok, fmt("%zu preset Hamiltonians, %zu operators; residual/norm %.2e (Frobenius, eigenbasis, all), "
                  "%.2e (max-norm, lab frame, %zu checked); completeness %.2e; gap sets %s",
                  hamiltonians, st.operators, st.residual, st.lab_residual, st.lab_checked, st.completeness,
                  st.gaps ? "equal" : "DIFFER")};
}

Verdict scalar_relaxation() {
  const posner::relaxation::ScalarRelaxInput in{1.3, 1.5, 0.7, 5416.0, 5416.0};
  const double j = 2.0 * M_PI * 1.3;
  const double expect = (2.0 / 3.0) * j * j * 1.5 * 2.5 * 0.7;
  const double rel = std::abs(posner::relaxation::scalar_relaxation(in).rate - expect) / expect;
  const auto cmp = posner::relaxation::isotope_comparison(50e-6, 1.0, 300.0, 10.0);
  return {rel <= 1e-14 && cmp.ratio >= 1e4,
          fmt("resonance rel. error %.1e; lifetimes Li6 %.4g s, Li7 %.4g s, ratio %.4g", rel, cmp.li6.lifetime,
              cmp.li7.lifetime, cmp.ratio)};
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream f(e.path(), std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    out[e.path().filename().string()] = s.str();
  }
  return out;
}

Verdict determinism() {
  const fs::path root = fs::temp_directory_path() / "posner_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::string> presets = {"fig2_jsweep", "fig5_transfer", "fig9_hydrogen_subspace", "transition_spectrum_pure"};
  auto produce = [&](const std::string& tag, const std::string& jobs) {
    const fs::path dir = root / tag;
    for (const auto& p : presets) {
      std::ostringstream out;
      std::ostringstream err;
      if (posner::cli::cli_main({"run", "--preset", p, "--jobs", jobs, "--out", dir.string()}, out, err) != 0) {
        return std::map<std::string, std::string>{{"error", err.str()}};
      }
    }
    return read_dir(dir);
  };
  const auto serial = produce("serial", "1");
  const auto parallel = produce("parallel", "4");
  const auto rerun = produce("rerun", "4");
  fs::remove_all(root);
  std::size_t csv = 0;
  for (const auto& [name, _] : serial) csv += name.ends_with(".csv");
  const bool ok = !serial.contains("error") && serial == parallel && serial == rerun && csv > 0;
  return {ok, fmt("%zu files (%zu CSV), jobs 1 vs 4 and rerun %s", serial.size(), csv,
                  ok ? "byte-identical" : "DIFFER")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"larmor_anchors", larmor_anchors},
      {"oracle_equivalence", oracle_equivalence},
      {"measure_closed_forms", werner_closed_forms},
      {"singlet_invariance", singlet_invariance},
      {"jsweep_monotonicity", jsweep_monotonic},
      {"transfer_selectivity", transfer_selectivity},
      {"doping_suppression", doping_suppression},
      {"hydrogen_high_field", hydrogen_subspace},
      {"eigenoperator_identities", eigenoperator_identities},
      {"scalar_relaxation", scalar_relaxation},
      {"determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
