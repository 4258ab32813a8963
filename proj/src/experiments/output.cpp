#include "posner/experiments/output.hpp"

#include <openssl/evp.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "posner/error.hpp"

namespace posner::experiments {

namespace {

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string series_csv(const TimeSeries& ts) {
  ts.validate();
  std::string out = "t_s";
  for (const auto& c : ts.columns) out += "," + c.name;
  out += '\n';
  for (std::size_t i = 0; i < ts.times.size(); ++i) {
    out += format_double(ts.times[i]);
    for (const auto& c : ts.columns) {
      out += ',';
      out += format_double(c.values[i]);
    }
    out += '\n';
  }
  return out;
}

std::string spectrum_csv(const std::vector<transitions::SpectrumRow>& rows) {
  std::string out = "site,label,omega_rad_s,norm\n";
  for (const auto& r : rows) {
    out += std::to_string(r.site) + "," + r.label + "," + format_double(r.omega) + "," + format_double(r.norm) + "\n";
  }
  return out;
}

std::string relaxation_csv(const relaxation::IsotopeComparison& cmp) {
  std::string out = "isotope,J_Hz,I_quad,tau_s,omega_P_rad_s,omega_Li_rad_s,rate_per_s,lifetime_s,lifetime_ratio_li6_li7\n";
  auto row = [&](const char* name, const relaxation::ScalarRelaxInput& in, const relaxation::ScalarRelaxResult& r) {
    out += std::string(name) + "," + format_double(in.J) + "," + format_double(in.I_quad) + "," +
           format_double(in.tau_sc) + "," + format_double(in.omega_A) + "," + format_double(in.omega_B) + "," +
           format_double(r.rate) + "," + format_double(r.lifetime) + "," + format_double(cmp.ratio) + "\n";
  };
  row("Li6", cmp.li6_input, cmp.li6);
  row("Li7", cmp.li7_input, cmp.li7);
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

std::string manifest_json(const RunResult& r, const std::vector<std::string>& files) {
  const std::string text = canonical_text(r.config);
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["preset"] = r.preset;
  j["engine_version"] = POSNER_VERSION;
  j["config_sha256"] = sha256_hex(text);
  j["config"] = text;
  j["files"] = files;
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_outputs(const std::filesystem::path& dir, const RunResult& r) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  std::vector<std::string> names;
  auto emit = [&](const std::string& file, const std::string& data) {
    write_file(dir / file, data);
    written.push_back(dir / file);
    names.push_back(file);
  };
  if (r.series) emit(r.name + ".csv", series_csv(*r.series));
  if (r.config.wants(Output::transition_spectrum)) emit(r.name + "_spectrum.csv", spectrum_csv(r.spectrum));
  if (r.relaxation) emit(r.name + "_relaxation.csv", relaxation_csv(*r.relaxation));
  const std::string manifest = r.name + ".manifest.json";
  write_file(dir / manifest, manifest_json(r, names));
  written.push_back(dir / manifest);
  return written;
}

}  // namespace posner::experiments
