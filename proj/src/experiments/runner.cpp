#include "posner/experiments/runner.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <stdexcept>
#include <thread>

#include "posner/dynamics/brute_force.hpp"
#include "posner/error.hpp"
#include "posner/hamiltonian/couplings.hpp"
#include "posner/measures/measures.hpp"

namespace posner::experiments {

namespace {

using hamiltonian::CouplingMatrix;
using spin::SpinSystem;

struct Model {
  SpinSystem system;
  spin::Operator hamiltonian;
};

std::size_t resolve(const SpinSystem& sys, const std::string& label, const char* where) {
  if (auto k = sys.find(label)) return *k;
  throw ConfigError("unknown site label '" + label + "' in " + where);
}

Model build_model(const ExperimentConfig& cfg) {
  SpinSystem sys = cfg.kind == SystemKind::posner ? hamiltonian::posner_system(cfg.doping)
                                                  : hamiltonian::phosphate_hydrogen_system();
  CouplingMatrix j = cfg.kind == SystemKind::posner
                         ? hamiltonian::posner_couplings(cfg.topology, cfg.doping, 1.0)
                         : hamiltonian::phosphate_hydrogen_couplings(cfg.J_PH);
  for (const auto& o : cfg.j_overrides) {
    const std::string key = "couplings.J." + o.a + "." + o.b;
    j.set(resolve(sys, o.a, key.c_str()), resolve(sys, o.b, key.c_str()), o.hz);
  }
  auto h = hamiltonian::build_hamiltonian(sys, {cfg.B0}, j.scaled(cfg.J_scale));
  return {std::move(sys), std::move(h)};
}

void add_series(TimeSeries& ts, const ExperimentConfig& cfg, const Model& model) {
  const auto& sys = model.system;
  const auto times = cfg.grid.times();
  ts.times = times;

  const dynamics::SitePair ent{resolve(sys, cfg.entangled.a, "pair.entangled"),
                               resolve(sys, cfg.entangled.b, "pair.entangled")};
  for (std::size_t k : {ent.a, ent.b}) {
    if (!sys.site(k).spin.is_half()) throw ConfigError("entangled site '" + sys.site(k).label + "' is not spin-1/2");
  }
  // Both molecules are copies of the same system, so one propagator serves both.
  const dynamics::EigenPropagator prop(model.hamiltonian);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Eigen::Matrix4d>> cache;
  auto table = [&](std::size_t e, std::size_t o) -> const std::vector<Eigen::Matrix4d>& {
    auto it = cache.find({e, o});
    if (it == cache.end()) {
      it = cache.emplace(std::make_pair(e, o), dynamics::molecule_correlations(prop, e, o, cfg.rest, times)).first;
    }
    return it->second;
  };

  for (const auto& lp : cfg.observe) {
    const dynamics::SitePair obs{resolve(sys, lp.a, "pair.observe"), resolve(sys, lp.b, "pair.observe")};
    for (std::size_t k : {obs.a, obs.b}) {
      if (!sys.site(k).spin.is_half()) {
        throw ConfigError("observed site '" + sys.site(k).label + "' is not spin-1/2");
      }
    }
    const auto states = dynamics::assemble_pair_states(table(ent.a, obs.a), table(ent.b, obs.b), obs);
    const auto n = states.size();

    if (cfg.wants(Output::concurrence)) {
      Column c{column_name("concurrence", lp), std::vector<double>(n)};
      for (std::size_t i = 0; i < n; ++i) c.values[i] = measures::concurrence(states[i]).value;
      ts.columns.push_back(std::move(c));
    }
    if (cfg.wants(Output::coherence)) {
      Column c{column_name("coherence", lp), std::vector<double>(n)};
      for (std::size_t i = 0; i < n; ++i) c.values[i] = measures::coherence_bi(spin::Matrix(states[i].rho())).value;
      ts.columns.push_back(std::move(c));
    }
    if (cfg.wants(Output::populations)) {
      Column s{column_name("pS", lp), std::vector<double>(n)};
      Column t0{column_name("pT0", lp), std::vector<double>(n)};
      Column tp{column_name("pTplus", lp), std::vector<double>(n)};
      Column tm{column_name("pTminus", lp), std::vector<double>(n)};
      for (std::size_t i = 0; i < n; ++i) {
        const auto p = dynamics::singlet_triplet_populations(states[i]);
        s.values[i] = p.singlet;
        t0.values[i] = p.t0;
        tp.values[i] = p.t_plus;
        tm.values[i] = p.t_minus;
      }
      ts.columns.push_back(std::move(s));
      ts.columns.push_back(std::move(t0));
      ts.columns.push_back(std::move(tp));
      ts.columns.push_back(std::move(tm));
    }
    if (cfg.brute_force) {
      const auto ref = dynamics::brute_force_pair_series(prop, prop, ent, obs, times, cfg.rest);
      Column c{column_name("oracle_maxdiff", lp), std::vector<double>(n)};
      for (std::size_t i = 0; i < n; ++i) {
        c.values[i] = (states[i].rho() - ref[i].rho()).cwiseAbs().maxCoeff();
      }
      ts.columns.push_back(std::move(c));
    }
  }
}

std::vector<transitions::SpectrumRow> compute_spectrum(const ExperimentConfig& cfg, const Model& model) {
  const auto& sys = model.system;
  transitions::CouplingSpec spec = transitions::CouplingSpec::uniform(sys.size());
  if (cfg.spectrum_alpha.size() == 1) {
    spec.alpha.assign(sys.size(), cfg.spectrum_alpha.front());
  } else if (!cfg.spectrum_alpha.empty()) {
    if (cfg.spectrum_alpha.size() != sys.size()) {
      throw ConfigError("spectrum.alpha has " + std::to_string(cfg.spectrum_alpha.size()) +
                        " values for a " + std::to_string(sys.size()) + "-site system");
    }
    spec.alpha = cfg.spectrum_alpha;
  }
  for (const auto& label : cfg.spectrum_sites) spec.sites.push_back(resolve(sys, label, "spectrum.sites"));
  return transitions::frequency_spectrum(model.hamiltonian, spec, cfg.spectrum_tolerance, cfg.spectrum_norm_floor);
}

}  // namespace

void TimeSeries::validate() const {
  for (const auto& c : columns) {
    if (c.values.size() != times.size()) throw std::logic_error("column '" + c.name + "' has the wrong length");
    for (double v : c.values) {
      if (!std::isfinite(v)) throw NumericGuardError("non-finite value in column '" + c.name + "'");
    }
  }
  for (double t : times) {
    if (!std::isfinite(t)) throw NumericGuardError("non-finite time value");
  }
}

const Column& TimeSeries::column(std::string_view name) const {
  for (const auto& c : columns) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no column '" + std::string(name) + "'");
}

std::string column_name(std::string_view quantity, const LabelPair& pair) {
  return std::string(quantity) + "_" + pair.a + "_" + pair.b;
}

RunResult run(const ExperimentConfig& cfg, const std::string& preset) {
  RunResult r;
  r.name = cfg.name;
  r.preset = preset;
  r.config = cfg;
  try {
    cfg.grid.validate();
    const bool series = cfg.wants(Output::concurrence) || cfg.wants(Output::coherence) ||
                        cfg.wants(Output::populations);
    if (series || cfg.wants(Output::transition_spectrum)) {
      const Model model = build_model(cfg);
      if (series) {
        TimeSeries ts;
        add_series(ts, cfg, model);
        ts.validate();
        r.series = std::move(ts);
      }
      if (cfg.wants(Output::transition_spectrum)) r.spectrum = compute_spectrum(cfg, model);
    }
    if (cfg.wants(Output::relaxation_table)) {
      r.relaxation = relaxation::isotope_comparison(cfg.B0, cfg.relax_J7, cfg.relax_tau6, cfg.relax_tau7);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(cfg.name + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(cfg.name + ": " + e.what());
  }
  return r;
}

std::vector<RunResult> run_all(std::span<const RunPlan> plans, unsigned jobs) {
  const std::size_t n = plans.size();
  std::vector<std::optional<RunResult>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i] = run(plans[i].config, plans[i].preset);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<RunResult> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<RunResult> sweep(const ExperimentConfig& base, SweepParam param, std::span<const double> values,
                             unsigned jobs) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  std::vector<RunPlan> plans;
  for (double v : values) plans.push_back({"", sweep_point(base, param, v)});
  return run_all(plans, jobs);
}

}  // namespace posner::experiments
