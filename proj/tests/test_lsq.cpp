#include <doctest.h>

#include "helpers.hpp"
#include "paaa/lsq.hpp"

using namespace paaa;

TEST_CASE("diagonal examples")
{
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = 3.0;
  m(1, 1) = 2.0;
  m(2, 2) = 1.0;
  const auto s = min_unit(m);
  CHECK((s.a - Eigen::Vector3cd(0, 0, 1)).norm() < 1e-15);
  CHECK(s.sigma_min == doctest::Approx(1.0));

  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(2, 2);
  z(0, 0) = 1.0;
  const auto t = min_unit(z);
  CHECK((t.a - Eigen::Vector2cd(0, 1)).norm() < 1e-15);
  CHECK(t.sigma_min == 0.0);
}

TEST_CASE("wide matrices have a null vector")
{
  std::mt19937_64 rng(31);
  Eigen::MatrixXcd m(2, 4);
  for (Eigen::Index i = 0; i < m.size(); ++i)
    m(i) = testing::random_complex(rng);
  const auto s = min_unit(m);
  CHECK(s.sigma_min == 0.0);
  CHECK((m * s.a).norm() < 1e-14);
  CHECK(s.a.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("optimality, normalization and phase")
{
  std::mt19937_64 rng(32);
  Eigen::MatrixXcd m(50, 8);
  for (Eigen::Index i = 0; i < m.size(); ++i)
    m(i) = testing::random_complex(rng);
  const auto s = min_unit(m);
  CHECK(std::abs(s.a.norm() - 1.0) < 1e-12);
  CHECK(std::abs(s.residual - s.sigma_min) <= 1e-10 * s.sigma_min);
  CHECK(std::abs((m * s.a).norm() - s.residual) <= 1e-12 * s.residual);
  const double mnorm = m.norm();
  for (int t = 0; t < 100; ++t)
  {
    const auto u = testing::random_unit_probe(8, rng);
    CHECK(s.residual <= (m * u).norm() + 1e-10 * mnorm);
  }
  Eigen::Index big = 0;
  s.a.cwiseAbs().maxCoeff(&big);
  CHECK(s.a(big).imag() == 0.0);
  CHECK(s.a(big).real() > 0.0);

  const auto again = min_unit(m);
  CHECK(again.a == s.a);
  const auto scaled = min_unit(4.5 * m);
  CHECK((scaled.a - s.a).norm() < 1e-12);
}

TEST_CASE("empty matrices are rejected")
{
  CHECK_THROWS_AS(min_unit(Eigen::MatrixXcd(0, 3)), std::invalid_argument);
  CHECK_THROWS_AS(min_unit(Eigen::MatrixXcd(3, 0)), std::invalid_argument);
}
