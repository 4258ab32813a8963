#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "../support/oracles.hpp"
#include "posner/error.hpp"
#include "posner/measures/measures.hpp"

using namespace posner::measures;
using posner::spin::Spin;
using posner::spin::SpinSystem;

TEST_SUITE("measures") {
  TEST_CASE("Werner family closed forms") {
    for (double p : {0.0, 0.25, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
      const auto rho = oracle::werner(p);
      CHECK(std::abs(concurrence(rho).value - oracle::werner_concurrence(p)) <= 1e-10);
      const auto c = coherence_bi(posner::spin::Matrix(rho));
      CHECK(c.dim == 4);
      CHECK(std::abs(c.value - oracle::werner_coherence(p)) <= 1e-10);
    }
  }

  TEST_CASE("frozen Werner coherence at p = 0.8") {
    CHECK(std::abs(coherence_bi(posner::spin::Matrix(oracle::werner(0.8))).value - 1.1524153201754261) <= 1e-12);
  }

  TEST_CASE("pure states: singlet, product and maximally mixed") {
    CHECK(concurrence(oracle::singlet()).value == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::Matrix4cd up = Eigen::Matrix4cd::Zero();
    up(0, 0) = 1.0;
    CHECK(concurrence(up).value <= 1e-12);
    CHECK(von_neumann_entropy(posner::spin::Matrix(up)) <= 1e-12);
    CHECK(von_neumann_entropy(posner::spin::Matrix(Eigen::Matrix4cd::Identity() / 4.0)) == doctest::Approx(2.0));
    CHECK(coherence_bi(posner::spin::Matrix(oracle::singlet())).value == doctest::Approx(2.0));
  }

  TEST_CASE("concurrence agrees with the direct eigenvalue route on random states") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
      Eigen::Matrix4cd rho = oracle::random_density(4, rng);
      if (trial % 2 == 0) {
        // push toward the entangled region
        rho = 0.5 * rho + 0.5 * oracle::singlet();
      }
      const double c = concurrence(rho).value;
      CHECK(c >= 0.0);
      CHECK(c <= 1.0 + 1e-12);
      CHECK(std::abs(c - oracle::wootters_concurrence(rho)) <= 1e-7);
      const auto l = wootters_eigenvalues(rho);
      double w = std::sqrt(std::max(0.0, l(0)));
      for (int i = 1; i < 4; ++i) w -= std::sqrt(std::max(0.0, l(i)));
      CHECK(std::abs(std::max(0.0, w) - c) <= 1e-7);
    }
  }

  TEST_CASE("concurrence is invariant under local unitaries") {
    std::mt19937 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::Matrix4cd rho = 0.3 * oracle::random_density(4, rng) + 0.7 * oracle::singlet();
      const Eigen::Matrix4cd u = oracle::kron(oracle::random_unitary(2, rng), oracle::random_unitary(2, rng));
      CHECK(concurrence(Eigen::Matrix4cd(u * rho * u.adjoint())).value ==
            doctest::Approx(concurrence(rho).value).epsilon(1e-10));
    }
  }

  TEST_CASE("operator overload requires two spin-1/2 sites") {
    const SpinSystem two({{"a", Spin::half(), 1.0}, {"b", Spin::half(), 1.0}});
    const posner::spin::Operator rho(two, oracle::singlet(), posner::spin::Hermiticity::hermitian);
    CHECK(concurrence(rho).value == doctest::Approx(1.0));
    const SpinSystem mixed({{"a", Spin::one(), 1.0}});
    posner::spin::Matrix m = posner::spin::Matrix::Identity(3, 3) / 3.0;
    const posner::spin::Operator r3(mixed, m, posner::spin::Hermiticity::hermitian);
    CHECK_THROWS_AS(concurrence(r3), std::invalid_argument);
    CHECK(coherence_bi(r3).value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(coherence_bi(r3).dim == 3);
  }

  TEST_CASE("density matrices far from unit trace are rejected") {
    CHECK_THROWS_AS(von_neumann_entropy(posner::spin::Matrix(1.5 * oracle::singlet())), posner::NumericGuardError);
  }
}
