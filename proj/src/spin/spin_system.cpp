#include "posner/spin/spin_system.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "posner/error.hpp"

namespace posner::spin {

Spin Spin::from_double(double s) {
  if (!std::isfinite(s) || s < 0.0) {
    throw std::invalid_argument("spin magnitude must be a non-negative half-integer, got " +
                                std::to_string(s));
  }
  const double twice = 2.0 * s;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-12) {
    throw std::invalid_argument("spin magnitude must be a half-integer, got " + std::to_string(s));
  }
  return from_twice(static_cast<int>(rounded));
}

Spin Spin::from_twice(int two_s) {
  if (two_s < 0) {
    throw std::invalid_argument("spin magnitude must be non-negative");
  }
  return Spin(two_s);
}

SpinSystem::SpinSystem(std::vector<SpinSite> sites) : sites_(std::move(sites)) {
  std::set<std::string> seen;
  for (const auto& s : sites_) {
    if (!std::isfinite(s.gamma_bar)) {
      throw std::invalid_argument("site '" + s.label + "': gyromagnetic ratio must be finite");
    }
    if (!seen.insert(s.label).second) {
      throw std::invalid_argument("duplicate site label '" + s.label + "'");
    }
  }
  dim_ = 1;
  for (const auto& s : sites_) {
    dim_ *= s.spin.dim();
    if (dim_ > kMaxSystemDim) {
      throw NumericGuardError("spin system dimension exceeds " + std::to_string(kMaxSystemDim));
    }
  }
  strides_.assign(sites_.size(), 1);
  for (std::size_t k = sites_.size(); k-- > 1;) {
    strides_[k - 1] = strides_[k] * sites_[k].spin.dim();
  }
}

std::optional<std::size_t> SpinSystem::find(std::string_view label) const {
  for (std::size_t k = 0; k < sites_.size(); ++k) {
    if (sites_[k].label == label) return k;
  }
  return std::nullopt;
}

std::size_t SpinSystem::index_of(std::string_view label) const {
  if (auto k = find(label)) return *k;
  throw std::invalid_argument("unknown site label '" + std::string(label) + "'");
}

}  // namespace posner::spin
