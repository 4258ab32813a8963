#include "posner/cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "posner/error.hpp"
#include "posner/experiments/output.hpp"
#include "posner/experiments/presets.hpp"
#include "posner/experiments/runner.hpp"

namespace posner::cli {

namespace {

namespace ex = posner::experiments;

struct Source {
  std::string preset;
  std::string config;
  std::vector<std::string> overrides;
  std::string out_dir;
  unsigned jobs = 0;
};

void add_source(CLI::App* cmd, Source& s) {
  auto* p = cmd->add_option("--preset", s.preset, "Named preset (see list-presets)");
  auto* c = cmd->add_option("--config", s.config, "Config file of key = value lines");
  p->excludes(c);
  c->excludes(p);
  cmd->add_option("--set", s.overrides, "Override a config key, key=value (repeatable)");
  cmd->add_option("--out", s.out_dir, "Output directory (default $POSNER_OUT_DIR or ./out)");
  cmd->add_option("--jobs", s.jobs, "Parallel runs (default: hardware threads)");
}

std::string default_out_dir() {
  if (const char* env = std::getenv("POSNER_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "out";
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<ex::RunPlan> plans_for(const Source& s, const std::vector<std::pair<std::string, std::string>>& extra = {}) {
  std::vector<std::pair<std::string, std::string>> overrides;
  for (const auto& o : s.overrides) overrides.push_back(ex::split_override(o));
  overrides.insert(overrides.end(), extra.begin(), extra.end());
  if (!s.preset.empty()) return ex::expand_preset(s.preset, overrides);
  if (s.config.empty()) throw CLI::ValidationError("one of --preset or --config is required");
  ex::ExperimentConfig cfg = ex::parse_config(read_file(s.config));
  for (const auto& [k, v] : overrides) ex::apply_setting(cfg, k, v);
  return {{"", cfg}};
}

void write_all(const std::vector<ex::RunResult>& results, const std::string& out_dir, std::ostream& out) {
  const std::filesystem::path dir = out_dir.empty() ? default_out_dir() : out_dir;
  for (const auto& r : results) {
    for (const auto& p : ex::write_outputs(dir, r)) out << "wrote " << p.string() << '\n';
  }
}

std::string escape(std::string_view s) {
  std::string o;
  for (char c : s) {
    if (c == '"' || c == '\\') o += '\\';
    o += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return o;
}

int fail(std::ostream& err, const char* kind, std::string_view msg, int code) {
  err << "error kind=" << kind << " msg=\"" << escape(msg) << "\"\n";
  return code;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nuclear spin dynamics of entangled phosphorus pairs", "posner"};
  app.require_subcommand(1);

  Source run_src;
  bool oracle = false;
  auto* run_cmd = app.add_subcommand("run", "Run a preset or config file");
  add_source(run_cmd, run_src);
  run_cmd->add_flag("--oracle", oracle, "Also evaluate the brute-force joint-space oracle");

  Source sweep_src;
  std::string sweep_param;
  std::vector<double> sweep_values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a preset or config over a list of parameter values");
  add_source(sweep_cmd, sweep_src);
  sweep_cmd->add_option("--param", sweep_param, "J_scale or B0")->required();
  sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required()->delimiter(',');

  auto* list_cmd = app.add_subcommand("list-presets", "List the named presets");

  double relax_B0 = 50e-6;
  double relax_J7 = 1.0;
  double relax_tau6 = 300.0;
  double relax_tau7 = 10.0;
  std::string relax_out;
  auto* relax_cmd = app.add_subcommand("relaxation", "Scalar relaxation of phosphorus by Li-6 and Li-7");
  relax_cmd->add_option("--B0", relax_B0, "Field in tesla");
  relax_cmd->add_option("--J7", relax_J7, "P-Li7 coupling in Hz (Li-6 uses J7 / 2.6)");
  relax_cmd->add_option("--tau6", relax_tau6, "Li-6 correlation time in s");
  relax_cmd->add_option("--tau7", relax_tau7, "Li-7 correlation time in s");
  relax_cmd->add_option("--out", relax_out, "Also write relaxation.csv and a manifest here");

  Source spec_src;
  auto* spec_cmd = app.add_subcommand("spectrum", "Transition-frequency spectrum of a preset or config");
  add_source(spec_cmd, spec_src);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, "usage", e.what(), kExitUsage);
  }

  try {
    if (*list_cmd) {
      for (const auto& p : ex::presets()) out << p.name << '\t' << p.summary << '\n';
      return kExitOk;
    }
    if (*relax_cmd) {
      ex::ExperimentConfig cfg;
      cfg.name = "relaxation";
      cfg.outputs = {ex::Output::relaxation_table};
      cfg.B0 = relax_B0;
      cfg.relax_J7 = relax_J7;
      cfg.relax_tau6 = relax_tau6;
      cfg.relax_tau7 = relax_tau7;
      const auto r = ex::run(cfg, "");
      out << ex::relaxation_csv(*r.relaxation);
      if (!relax_out.empty()) write_all({r}, relax_out, out);
      return kExitOk;
    }
    if (*run_cmd) {
      std::vector<std::pair<std::string, std::string>> extra;
      if (oracle) extra.emplace_back("oracle.brute_force", "true");
      const auto plans = plans_for(run_src, extra);
      write_all(ex::run_all(plans, resolve_jobs(run_src.jobs)), run_src.out_dir, out);
      return kExitOk;
    }
    if (*sweep_cmd) {
      const auto param = ex::parse_sweep_param(sweep_param);
      std::vector<ex::RunPlan> plans;
      for (const auto& base : plans_for(sweep_src)) {
        for (double v : sweep_values) plans.push_back({base.preset, ex::sweep_point(base.config, param, v)});
      }
      write_all(ex::run_all(plans, resolve_jobs(sweep_src.jobs)), sweep_src.out_dir, out);
      return kExitOk;
    }
    if (*spec_cmd) {
      const auto plans = plans_for(spec_src, {{"outputs", "transition_spectrum"}});
      write_all(ex::run_all(plans, resolve_jobs(spec_src.jobs)), spec_src.out_dir, out);
      return kExitOk;
    }
  } catch (const UnknownPresetError& e) {
    return fail(err, "preset", e.what(), kExitUnknownPreset);
  } catch (const ConfigError& e) {
    return fail(err, "config", e.what(), kExitConfig);
  } catch (const NumericGuardError& e) {
    return fail(err, "numeric", e.what(), kExitNumeric);
  } catch (const CLI::Error& e) {
    return fail(err, "usage", e.what(), kExitUsage);
  } catch (const std::exception& e) {
    return fail(err, "io", e.what(), kExitUsage);
  }
  return fail(err, "usage", "no subcommand", kExitUsage);
}

}  // namespace posner::cli
