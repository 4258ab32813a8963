#include "posner/spin/operator.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace posner::spin {

double max_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_norm(m);
  return max_norm(m - m.adjoint()) <= rel_tol * scale;
}

Operator::Operator(SpinSystem system, Matrix data, Hermiticity tag)
    : system_(std::move(system)), data_(std::move(data)), hermitian_(tag == Hermiticity::hermitian) {
  const auto d = static_cast<Eigen::Index>(system_.dim());
  if (data_.rows() != d || data_.cols() != d) {
    throw std::invalid_argument("operator shape " + std::to_string(data_.rows()) + "x" +
                                std::to_string(data_.cols()) + " does not match system dimension " +
                                std::to_string(d));
  }
  if (hermitian_ && !spin::is_hermitian(data_)) {
    throw std::invalid_argument("operator tagged Hermitian is not Hermitian");
  }
}

Operator Operator::identity(const SpinSystem& system) {
  const auto d = static_cast<Eigen::Index>(system.dim());
  return Operator(system, Matrix::Identity(d, d), Hermiticity::hermitian);
}

SpinMatrices spin_matrices(Spin s) {
  const auto d = static_cast<Eigen::Index>(s.dim());
  const double sv = s.value();
  Matrix up = Matrix::Zero(d, d);
  Matrix z = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double m = sv - static_cast<double>(j);
    z(j, j) = m;
    if (j > 0) up(j - 1, j) = std::sqrt(sv * (sv + 1.0) - m * (m + 1.0));
  }
  const Matrix down = up.adjoint();
  SpinMatrices out;
  out.x = 0.5 * (up + down);
  out.y = Complex(0.0, -0.5) * (up - down);
  out.z = std::move(z);
  return out;
}

SpinOperators spin_operators(const SpinSite& site) {
  SpinSystem system({site});
  auto m = spin_matrices(site.spin);
  return {Operator(system, std::move(m.x), Hermiticity::hermitian),
          Operator(system, std::move(m.y), Hermiticity::hermitian),
          Operator(system, std::move(m.z), Hermiticity::hermitian)};
}

Matrix embed_product(const SpinSystem& system,
                     std::span<const std::pair<std::size_t, Matrix>> factors) {
  std::vector<const Matrix*> slot(system.size(), nullptr);
  for (const auto& [site, local] : factors) {
    if (site >= system.size()) {
      throw std::out_of_range("site index " + std::to_string(site) + " out of range for " +
                              std::to_string(system.size()) + "-site system");
    }
    const auto d = static_cast<Eigen::Index>(system.site_dim(site));
    if (local.rows() != d || local.cols() != d) {
      throw std::invalid_argument("local operator dimension " + std::to_string(local.rows()) +
                                  " does not match site '" + system.site(site).label +
                                  "' dimension " + std::to_string(d));
    }
    if (slot[site] != nullptr) {
      throw std::invalid_argument("site " + std::to_string(site) + " appears twice in product");
    }
    slot[site] = &local;
  }

  Matrix out = Matrix::Ones(1, 1);
  for (std::size_t k = 0; k < system.size(); ++k) {
    const auto d = static_cast<Eigen::Index>(system.site_dim(k));
    if (slot[k] != nullptr) {
      out = Matrix(Eigen::kroneckerProduct(out, *slot[k]));
    } else {
      out = Matrix(Eigen::kroneckerProduct(out, Matrix::Identity(d, d)));
    }
  }
  return out;
}

Operator embed(const Matrix& local, std::size_t site, const SpinSystem& system) {
  const std::pair<std::size_t, Matrix> factor{site, local};
  Matrix full = embed_product(system, std::span(&factor, 1));
  const bool herm = is_hermitian(local);
  return Operator(system, std::move(full), herm ? Hermiticity::hermitian : Hermiticity::general);
}

Operator embed(const Operator& local, std::size_t site, const SpinSystem& system) {
  return embed(local.matrix(), site, system);
}

namespace {

std::vector<std::size_t> checked_keep(const SpinSystem& system, std::span<const std::size_t> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep list is empty");
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("partial_trace: duplicate site index in keep list");
  }
  if (sorted.back() >= system.size()) {
    throw std::out_of_range("partial_trace: site index " + std::to_string(sorted.back()) +
                            " out of range");
  }
  return sorted;
}

}  // namespace

SpinSystem subsystem(const SpinSystem& system, std::span<const std::size_t> keep) {
  const auto sorted = checked_keep(system, keep);
  std::vector<SpinSite> sites;
  sites.reserve(sorted.size());
  for (auto k : sorted) sites.push_back(system.site(k));
  return SpinSystem(std::move(sites));
}

Operator partial_trace(const Operator& rho, std::span<const std::size_t> keep) {
  const SpinSystem& sys = rho.system();
  const auto sorted = checked_keep(sys, keep);
  if (!rho.is_hermitian() && !is_hermitian(rho.matrix())) {
    throw std::invalid_argument("partial_trace: input is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-10) {
    throw std::invalid_argument("partial_trace: input trace deviates from 1 by more than 1e-10");
  }

  SpinSystem reduced = subsystem(sys, sorted);
  std::vector<bool> kept(sys.size(), false);
  for (auto k : sorted) kept[k] = true;

  // Split every flat index into (kept index, traced index).
  const std::size_t d = sys.dim();
  const std::size_t dk = reduced.dim();
  const std::size_t dr = d / dk;
  std::vector<std::size_t> table(d);  // table[r * dk + k] = flat index
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t ki = 0;
    std::size_t ri = 0;
    for (std::size_t s = 0; s < sys.size(); ++s) {
      const std::size_t digit = sys.digit(i, s);
      if (kept[s]) {
        ki = ki * sys.site_dim(s) + digit;
      } else {
        ri = ri * sys.site_dim(s) + digit;
      }
    }
    table[ri * dk + ki] = i;
  }

  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t r = 0; r < dr; ++r) {
    const std::size_t* row = &table[r * dk];
    for (std::size_t a = 0; a < dk; ++a) {
      for (std::size_t b = 0; b < dk; ++b) {
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
            m(static_cast<Eigen::Index>(row[a]), static_cast<Eigen::Index>(row[b]));
      }
    }
  }
  return Operator(std::move(reduced), std::move(out), Hermiticity::hermitian);
}

}  // namespace posner::spin
