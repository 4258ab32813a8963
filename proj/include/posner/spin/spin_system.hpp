#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace posner::spin {

// Spin magnitude stored as 2s so half-integers stay exact.
class Spin {
 public:
  // Throws std::invalid_argument for negative or non-half-integer s.
  static Spin from_double(double s);
  static Spin from_twice(int two_s);

  static Spin half() { return Spin(1); }
  static Spin one() { return Spin(2); }
  static Spin three_halves() { return Spin(3); }

  double value() const noexcept { return two_s_ / 2.0; }
  int twice() const noexcept { return two_s_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(two_s_) + 1; }
  bool is_half() const noexcept { return two_s_ == 1; }

  friend bool operator==(Spin, Spin) = default;

 private:
  explicit Spin(int two_s) : two_s_(two_s) {}
  int two_s_;
};

struct SpinSite {
  std::string label;
  Spin spin = Spin::half();
  double gamma_bar = 0.0;  // gamma / 2pi in MHz/T

  friend bool operator==(const SpinSite&, const SpinSite&) = default;
};

inline constexpr std::size_t kMaxSystemDim = 4096;

// Ordered list of sites spanning a tensor-product space. Site 0 is the
// slowest-varying index of the product basis.
class SpinSystem {
 public:
  SpinSystem() = default;
  // Throws std::invalid_argument on duplicate labels or non-finite gamma,
  // NumericGuardError when the product dimension exceeds kMaxSystemDim.
  explicit SpinSystem(std::vector<SpinSite> sites);

  const std::vector<SpinSite>& sites() const noexcept { return sites_; }
  const SpinSite& site(std::size_t k) const { return sites_.at(k); }
  std::size_t size() const noexcept { return sites_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t site_dim(std::size_t k) const { return sites_.at(k).spin.dim(); }

  // Distance in the flat index between consecutive values of site k.
  std::size_t stride(std::size_t k) const { return strides_.at(k); }
  // Local state index (0 = m = +s) of site k inside flat basis index i.
  std::size_t digit(std::size_t i, std::size_t k) const {
    return (i / strides_[k]) % sites_[k].spin.dim();
  }

  std::optional<std::size_t> find(std::string_view label) const;
  // Throws std::invalid_argument naming the label.
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const SpinSystem& a, const SpinSystem& b) {
    return a.sites_ == b.sites_;
  }

 private:
  std::vector<SpinSite> sites_;
  std::vector<std::size_t> strides_;
  std::size_t dim_ = 1;
};

}  // namespace posner::spin
