#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "../support/oracles.hpp"
#include "posner/hamiltonian/couplings.hpp"
#include "posner/hamiltonian/hamiltonian.hpp"
#include "posner/spin/eigen.hpp"
#include "posner/transitions/transitions.hpp"

using namespace posner::transitions;
using posner::spin::Hermiticity;
using posner::spin::max_norm;
using posner::spin::Spin;
using posner::spin::SpinSystem;

namespace {

SpinSystem halves(int n) {
  std::vector<posner::spin::SpinSite> s;
  for (int k = 0; k < n; ++k) s.push_back({"q" + std::to_string(k), Spin::half(), 1.0});
  return SpinSystem(s);
}

Matrix lab_sum(const std::vector<TransitionOperator>& parts) {
  Matrix out = Matrix::Zero(parts.front().materialize().rows(), parts.front().materialize().cols());
  for (const auto& p : parts) {
    const Matrix m = p.materialize();
    out += m;
    if (p.omega() != 0.0) out += m.adjoint();
  }
  return out;
}

}  // namespace

TEST_SUITE("transitions") {
  TEST_CASE("two-level system splits Sx into a zero-weight static part and a lowering part") {
    const double w = 3.0;
    const auto sys = halves(1);
    const Operator h(sys, w * 0.5 * oracle::pauli(3), Hermiticity::hermitian);
    const Operator v(sys, 0.5 * oracle::pauli(1), Hermiticity::hermitian);
    const auto parts = decompose(h, v);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].omega() == 0.0);
    CHECK(parts[0].norm() <= 1e-15);
    CHECK(parts[1].omega() == doctest::Approx(w));
    Matrix lower = Matrix::Zero(2, 2);
    lower(1, 0) = 0.5;  // |down><up| / 2
    CHECK(max_norm(parts[1].materialize() - lower) <= 1e-14);
    CHECK(parts[1].relation_residual() <= 1e-13);
  }

  TEST_CASE("zero Hamiltonian leaves a single static component equal to V") {
    std::mt19937 rng(41);
    const auto sys = halves(2);
    const Operator h(sys, Matrix::Zero(4, 4), Hermiticity::hermitian);
    const Operator v(sys, oracle::random_hermitian(4, rng), Hermiticity::hermitian);
    const auto parts = decompose(h, v);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].omega() == 0.0);
    CHECK(max_norm(parts[0].materialize() - v.matrix()) <= 1e-13);
  }

  TEST_CASE("random Hamiltonians: gap set, completeness and eigenoperator relation") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 6; ++trial) {
      const auto sys = halves(3);
      const Matrix hm = oracle::random_hermitian(8, rng, 100.0);
      const Operator h(sys, hm, Hermiticity::hermitian);
      const Operator v(sys, oracle::random_hermitian(8, rng), Hermiticity::hermitian);
      const auto parts = decompose(h, v);

      auto gaps = oracle::eigen_gaps(hm);
      std::vector<double> distinct;
      for (double g : gaps) {
        if (distinct.empty() || g - distinct.back() > 1e-9 * hm.norm()) distinct.push_back(g);
      }
      REQUIRE(parts.size() == distinct.size());
      for (std::size_t i = 0; i < parts.size(); ++i) {
        CHECK(std::abs(parts[i].omega() - distinct[i]) <= 1e-9 * hm.norm());
        CHECK(parts[i].relation_residual() <= 1e-8 * std::max(1.0, parts[i].norm()) * hm.norm());
        const Matrix vm = parts[i].materialize();
        const Matrix rel = posner::spin::commutator(hm, vm) + parts[i].omega() * vm;
        CHECK(rel.norm() <= 1e-8 * hm.norm());
      }
      CHECK(max_norm(lab_sum(parts) - v.matrix()) <= 1e-9);
      const auto e = posner::spin::eigh(h);
      CHECK(max_norm(reconstruct_eigenbasis(parts, 8) - e.to_eigenbasis(v.matrix())) <= 1e-9);
    }
  }

  TEST_CASE("adjoint of a component is its raising partner") {
    std::mt19937 rng(43);
    const auto sys = halves(2);
    const Matrix hm = oracle::random_hermitian(4, rng, 10.0);
    const Operator h(sys, hm, Hermiticity::hermitian);
    const Operator v(sys, oracle::random_hermitian(4, rng), Hermiticity::hermitian);
    for (const auto& p : decompose(h, v)) {
      const Matrix up = p.materialize().adjoint();
      CHECK((posner::spin::commutator(hm, up) - p.omega() * up).norm() <= 1e-10 * hm.norm());
    }
  }

  TEST_CASE("Posner Hamiltonian decomposition is complete") {
    using namespace posner::hamiltonian;
    const auto sys = posner_system(Doping::none);
    const auto h = build_hamiltonian(sys, {50e-6}, posner_couplings(Topology::weak_asymmetry, Doping::none));
    const auto v = coupling_operator(sys, 2, 1.0);
    const auto parts = decompose(h, v, kDefaultDegeneracyTol, 2);
    CHECK(max_norm(lab_sum(parts) - v.matrix()) <= 1e-9);
    for (const auto& p : parts) {
      CHECK(p.site() == 2);
      CHECK(p.relation_residual() <= 1e-8 * max_norm(h.matrix()) * std::max(1.0, p.norm()));
    }
  }

  TEST_CASE("frequency spectrum of a precessing spin") {
    const auto sys = SpinSystem({{"P0", Spin::half(), 17.24}});
    const auto h = posner::hamiltonian::build_hamiltonian(sys, {50e-6}, posner::hamiltonian::CouplingMatrix::zero(1));
    const auto rows = frequency_spectrum(h, CouplingSpec::uniform(1));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].omega == 0.0);
    CHECK(rows[0].norm == doctest::Approx(std::sqrt(0.5)));
    CHECK(rows[1].omega == doctest::Approx(5416.1057).epsilon(1e-8));
    CHECK(rows[1].norm == doctest::Approx(0.5));
    CHECK(rows[1].label == "P0");
  }

  TEST_CASE("input validation") {
    const auto sys = halves(1);
    const Operator h(sys, 0.5 * oracle::pauli(3), Hermiticity::hermitian);
    Matrix nh = Matrix::Zero(2, 2);
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS(decompose(h, Operator(sys, nh)), std::invalid_argument);
    const Operator other(halves(2), Matrix::Identity(4, 4), Hermiticity::hermitian);
    CHECK_THROWS_AS(decompose(h, other), std::invalid_argument);
    CHECK_THROWS_AS(coupling_operator(sys, 1, 1.0), std::out_of_range);
  }
}
