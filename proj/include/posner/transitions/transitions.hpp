#pragma once

#include <memory>
#include <string>
#include <vector>

#include "posner/spin/eigen.hpp"
#include "posner/spin/operator.hpp"

namespace posner::transitions {

using spin::Complex;
using spin::Matrix;
using spin::Operator;

inline constexpr double kDefaultDegeneracyTol = 1e-9;  // rad/s

// Component V_omega of a coupling operator with [H, V_omega] = -omega V_omega.
// Stored as its nonzero-pattern entries in the eigenbasis of H.
class TransitionOperator {
 public:
  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    Complex value;
  };

  TransitionOperator(double omega, std::size_t site, std::vector<Entry> entries,
                     std::shared_ptr<const spin::EigenDecomposition> basis,
                     std::shared_ptr<const spin::SpinSystem> system);

  double omega() const noexcept { return omega_; }
  std::size_t site() const noexcept { return site_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  // Frobenius norm (the same in either basis).
  double norm() const noexcept { return norm_; }

  Matrix eigenbasis_matrix() const;
  // Lab-frame matrix V W V^dagger.
  Matrix materialize() const;
  Operator op() const;

  // Frobenius norm of [H, V_omega] + omega V_omega, evaluated in the eigenbasis.
  double relation_residual() const;

 private:
  double omega_;
  std::size_t site_;
  std::vector<Entry> entries_;
  std::shared_ptr<const spin::EigenDecomposition> basis_;
  std::shared_ptr<const spin::SpinSystem> system_;
  double norm_ = 0.0;
};

// Splits V by eigenvalue gap of H. Gaps are sorted and grouped greedily so no
// group spans more than tol; the group containing zero sits at omega = 0 and
// keeps both triangles and the diagonal, every other group sits at the
// midpoint of its gaps and keeps the lowering entries only. Every gap gets an
// entry, even when V has no weight there. Throws std::invalid_argument for a
// non-Hermitian H or V, or a mismatched system.
std::vector<TransitionOperator> decompose(const Operator& h, const Operator& v,
                                          double tol = kDefaultDegeneracyTol, std::size_t site = 0);
std::vector<TransitionOperator> decompose(std::shared_ptr<const spin::EigenDecomposition> basis,
                                          const Operator& v, double tol = kDefaultDegeneracyTol,
                                          std::size_t site = 0);

// V_0 + sum over omega > 0 of (V_omega + V_omega^dagger), in the eigenbasis.
Matrix reconstruct_eigenbasis(const std::vector<TransitionOperator>& parts, std::size_t dim);

struct CouplingSpec {
  std::vector<double> alpha;       // weight of S_x per site, >= 0
  std::vector<std::size_t> sites;  // sites to decompose; empty means all

  // alpha = 1 on every site.
  static CouplingSpec uniform(std::size_t n_sites);
};

// alpha_k S^k_x + S^k_z on site k.
Operator coupling_operator(const spin::SpinSystem& system, std::size_t site, double alpha);

struct SpectrumRow {
  std::size_t site;
  std::string label;
  double omega;
  double norm;
};

// Per-site frequencies and operator norms, keeping components whose norm is
// above norm_floor * |V^k|_F. Rows are ordered by site, then frequency.
std::vector<SpectrumRow> frequency_spectrum(const Operator& h, const CouplingSpec& spec,
                                            double tol = kDefaultDegeneracyTol, double norm_floor = 1e-6);

}  // namespace posner::transitions
