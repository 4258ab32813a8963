#include "posner/dynamics/brute_force.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "posner/error.hpp"

namespace posner::dynamics {

namespace {

struct RestMember {
  Eigen::Index index;  // flat index with the entangled site at local state 0
  double weight;
};

std::vector<RestMember> rest_members(const SpinSystem& sys, std::size_t entangled, RestState rest) {
  if (rest == RestState::up) return {{0, 1.0}};
  const double w = 2.0 / static_cast<double>(sys.dim());
  std::vector<RestMember> out;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    if (sys.digit(i, entangled) == 0) out.push_back({static_cast<Eigen::Index>(i), w});
  }
  return out;
}

std::array<std::vector<Eigen::Index>, 2> split_by_digit(const SpinSystem& sys, std::size_t site) {
  std::array<std::vector<Eigen::Index>, 2> out;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    out[sys.digit(i, site)].push_back(static_cast<Eigen::Index>(i));
  }
  return out;
}

void check_site(const SpinSystem& sys, std::size_t site) {
  if (site >= sys.size()) throw std::out_of_range("site index " + std::to_string(site) + " out of range");
  if (!sys.site(site).spin.is_half()) {
    throw std::invalid_argument("site '" + sys.site(site).label + "' is not spin-1/2");
  }
}

}  // namespace

std::vector<PairState> brute_force_pair_series(const EigenPropagator& a, const EigenPropagator& b,
                                               SitePair entangled, SitePair observe,
                                               std::span<const double> times, RestState rest,
                                               const Eigen::Matrix2cd& amplitudes) {
  const auto& sa = a.system();
  const auto& sb = b.system();
  if (sa.dim() * sb.dim() > spin::kMaxSystemDim) {
    throw NumericGuardError("brute-force joint dimension " + std::to_string(sa.dim() * sb.dim()) +
                            " exceeds " + std::to_string(spin::kMaxSystemDim));
  }
  check_site(sa, entangled.a);
  check_site(sb, entangled.b);
  check_site(sa, observe.a);
  check_site(sb, observe.b);
  if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-12) {
    throw std::invalid_argument("pair amplitudes must be normalized");
  }

  const auto ma = rest_members(sa, entangled.a, rest);
  const auto mb = rest_members(sb, entangled.b, rest);
  const auto stride_a = static_cast<Eigen::Index>(sa.stride(entangled.a));
  const auto stride_b = static_cast<Eigen::Index>(sb.stride(entangled.b));
  const auto rows = split_by_digit(sa, observe.a);
  const auto cols = split_by_digit(sb, observe.b);

  std::vector<PairState> out;
  out.reserve(times.size());
  for (double t : times) {
    const Matrix ua = a.unitary(t);
    const Matrix ub = b.unitary(t);
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (const auto& ra : ma) {
      Eigen::MatrixXcd ca(ua.rows(), 2);
      ca.col(0) = ua.col(ra.index);
      ca.col(1) = ua.col(ra.index + stride_a);
      const Eigen::MatrixXcd left = ca * amplitudes;
      for (const auto& rb : mb) {
        Eigen::MatrixXcd cb(ub.rows(), 2);
        cb.col(0) = ub.col(rb.index);
        cb.col(1) = ub.col(rb.index + stride_b);
        // Joint state vector reshaped to dim_A x dim_B: (U_A (x) U_B) psi.
        const Eigen::MatrixXcd psi = left * cb.transpose();
        std::array<Eigen::MatrixXcd, 4> blk;
        for (int x = 0; x < 2; ++x) {
          for (int y = 0; y < 2; ++y) blk[static_cast<std::size_t>(2 * x + y)] = psi(rows[static_cast<std::size_t>(x)], cols[static_cast<std::size_t>(y)]);
        }
        const double w = ra.weight * rb.weight;
        for (int p = 0; p < 4; ++p) {
          for (int q = 0; q < 4; ++q) {
            rho(p, q) += w * (blk[static_cast<std::size_t>(p)].cwiseProduct(blk[static_cast<std::size_t>(q)].conjugate())).sum();
          }
        }
      }
    }
    out.emplace_back(rho, observe.a, observe.b);
  }
  return out;
}

PairState brute_force_pair(const EigenPropagator& a, const EigenPropagator& b, SitePair entangled,
                           SitePair observe, double t, RestState rest, const Eigen::Matrix2cd& amplitudes) {
  const double ts[] = {t};
  return brute_force_pair_series(a, b, entangled, observe, ts, rest, amplitudes).front();
}

}  // namespace posner::dynamics
