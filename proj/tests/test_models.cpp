#include <doctest.h>

#include <Eigen/Sparse>

#include "helpers.hpp"
#include "paaa/models.hpp"

using namespace paaa;
using testing::rel_diff;

namespace
{

// c^T (sI - A)^{-1} b for the block diagonal A with 2x2 rotation blocks [-1 w; -w -1]
// followed by -diag(1, ..., tail), b = c = (10, ..., 10, 1, ..., 1).
Complex resolvent_solve(const std::vector<double> &rotations, int tail, Complex s)
{
  const int n = 2 * static_cast<int>(rotations.size()) + tail;
  std::vector<Eigen::Triplet<Complex>> trip;
  Eigen::VectorXcd b(n);
  for (std::size_t r = 0; r < rotations.size(); ++r)
  {
    const int i = 2 * static_cast<int>(r);
    const double w = rotations[r];
    trip.emplace_back(i, i, s + 1.0);
    trip.emplace_back(i, i + 1, -w);
    trip.emplace_back(i + 1, i, w);
    trip.emplace_back(i + 1, i + 1, s + 1.0);
    b(i) = b(i + 1) = 10.0;
  }
  for (int m = 1; m <= tail; ++m)
  {
    const int i = 2 * static_cast<int>(rotations.size()) + m - 1;
    trip.emplace_back(i, i, s + static_cast<double>(m));
    b(i) = 1.0;
  }
  Eigen::SparseMatrix<Complex> k(n, n);
  k.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu(k);
  REQUIRE(lu.info() == Eigen::Success);
  const Eigen::VectorXcd x = lu.solve(b);
  return b.dot(x);  // b is real, so the conjugating dot is plain c^T x
}

}  // namespace

TEST_CASE("synthetic function")
{
  CHECK(models::synthetic_2var(0.0, 0.0).real() == doctest::Approx(1.0729655172413793).epsilon(1e-15));
  for (double p : {0.0, 0.3, 1.0})
  {
    const Complex full = models::synthetic_2var(0.5, p);
    const Complex others = 1.0 / (1.0 + 25.0 * (0.5 + p) * (0.5 + p)) + 0.1 / (p + 25.0);
    CHECK(std::abs(full - others - 0.5) < 1e-15);
  }
  // First term is even in s + p.
  const Complex a = models::synthetic_2var(0.3, 0.2) - 0.5 / (1.0 + 25.0 * std::pow(0.3 - 0.5, 2)) - 0.1 / 25.2;
  const Complex b = models::synthetic_2var(-0.3, -0.2) - 0.5 / (1.0 + 25.0 * std::pow(-0.3 - 0.5, 2)) - 0.1 / 24.8;
  CHECK(std::abs(a - b) < 1e-15);
  // 1 + 25 (s + p)^2 = 0 at s + p = i/5.
  CHECK_THROWS_AS(models::synthetic_2var(Complex(0, 0.2), 0.0), EvaluationError);
  CHECK_THROWS_AS(models::synthetic_2var(0.0, -25.0), EvaluationError);
}

TEST_CASE("Penzl closed forms match the resolvent solve")
{
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> logw(-1.0, 3.0), par(10.0, 100.0), zz(150.0, 250.0);
  for (int t = 0; t < 20; ++t)
  {
    const Complex s(0.0, std::pow(10.0, logw(rng)));
    const double p = par(rng), z = zz(rng);
    CHECK(rel_diff(models::penzl_2var(s, p), resolvent_solve({p, 200, 400}, 1000, s)) <= 1e-10);
    CHECK(rel_diff(models::penzl_3var(s, p, z), resolvent_solve({p, z, 2 * z}, 1000, s)) <= 1e-10);
  }
  const Complex s(0.0, 77.0);
  CHECK(models::penzl_3var(s, 40.0, 200.0) == models::penzl_2var(s, 40.0));
}

TEST_CASE("Penzl peaks follow the rotations")
{
  auto peak = [](auto f, double lo, double hi) {
    double best = 0.0, at = lo;
    for (double w = lo; w <= hi; w += 0.05)
    {
      const double m = std::abs(f(Complex(0.0, w)));
      if (m > best)
      {
        best = m;
        at = w;
      }
    }
    return at;
  };
  for (double p : {30.0, 60.0, 90.0})
  {
    const double at = peak([&](Complex s) { return models::penzl_2var(s, p); }, 10.0, 150.0);
    CHECK(std::abs(at - p) < 1.0);
  }
  const double p = 50.0, z = 170.0;
  auto h = [&](Complex s) { return models::penzl_3var(s, p, z); };
  CHECK(std::abs(peak(h, 20.0, 100.0) - p) < 1.0);
  CHECK(std::abs(peak(h, 120.0, 250.0) - z) < 1.0);
  CHECK(std::abs(peak(h, 280.0, 400.0) - 2 * z) < 1.0);
}

TEST_CASE("Penzl decays and validates")
{
  CHECK(std::abs(models::penzl_2var(1e12, 50.0)) < 1e-8);
  CHECK_THROWS_AS(models::penzl_2var(0.0, Complex(1, 1)), InvalidInput);
  CHECK_THROWS_AS(models::penzl_transfer({{-1.0}, 10}, 0.0), InvalidInput);
  CHECK_THROWS_AS(models::penzl_transfer({{1.0}, 0}, 0.0), InvalidInput);
  CHECK_THROWS_AS(models::penzl_transfer({{1.0}, 10}, -3.0), EvaluationError);
}

TEST_CASE("parametric state space")
{
  const auto a = models::random_parametric_mimo(5, 2, 3, 8), b = models::random_parametric_mimo(5, 2, 3, 8);
  const auto Ha = a(Complex(0, 1.3), 0.4), Hb = b(Complex(0, 1.3), 0.4);
  CHECK(Ha.rows() == 2);
  CHECK(Ha.cols() == 3);
  CHECK(Ha == Hb);
  CHECK(models::random_parametric_mimo(5, 2, 3, 9)(Complex(0, 1.3), 0.4) != Ha);

  const auto siso = models::random_parametric_mimo(4, 1, 1, 1);
  CHECK(siso(0.5, 0.2).size() == 1);

  // Stable: A0 negative diagonal, A1 negative semidefinite.
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.a1());
  CHECK(es.eigenvalues().maxCoeff() <= 1e-14);
  for (Eigen::Index i = 0; i < 5; ++i)
    CHECK(a.a0()(i, i) < 0.0);
  CHECK((a.a0() - Eigen::MatrixXd(a.a0().diagonal().asDiagonal())).norm() == 0.0);

  // Direct resolvent.
  const Eigen::MatrixXcd k = Complex(0, 1.3) * Eigen::MatrixXcd::Identity(5, 5) -
                             a.a0().cast<Complex>() - 0.4 * a.a1().cast<Complex>();
  const Eigen::MatrixXcd ref = a.c().cast<Complex>() * k.inverse() * a.b().cast<Complex>();
  CHECK((ref - Ha).norm() < 1e-12 * ref.norm());

  CHECK_THROWS_AS(models::random_parametric_mimo(0, 1, 1, 0), InvalidInput);
}

TEST_CASE("sampling helpers and default grids")
{
  const auto l = models::linspace(0.0, 1.0, 5);
  CHECK(l.size() == 5);
  CHECK(l.front() == Complex(0.0));
  CHECK(l.back() == Complex(1.0));
  const auto lg = models::logspace(0.1, 1000.0, 5);
  CHECK(std::abs(lg[2] - 10.0) < 1e-12);
  CHECK(models::on_imaginary_axis({2.0}).front() == Complex(0, 2));

  CHECK(models::synthetic_grid().shape() == Shape{21, 21});
  const auto p2 = models::penzl2_grid();
  CHECK(p2.shape() == Shape{100, 30});
  CHECK(std::abs(p2.axis(0).front() - Complex(0, 0.1)) < 1e-15);
  CHECK(std::abs(p2.axis(0).back() - Complex(0, 1000)) < 1e-10);
  CHECK(models::penzl3_grid().shape() == Shape{100, 10, 10});
}
