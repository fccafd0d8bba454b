#include <doctest.h>

#include "helpers.hpp"
#include "paaa/mimo.hpp"
#include "paaa/models.hpp"

using namespace paaa;
using testing::rel_diff;

namespace
{

MatrixTensorGrid random_matrix_grid(const Shape &shape, Eigen::Index rows, Eigen::Index cols,
                                    std::mt19937_64 &rng)
{
  std::vector<Axis> axes;
  for (auto n : shape)
    axes.push_back(testing::random_axis(n, rng));
  std::vector<Eigen::MatrixXcd> vals(element_count(shape));
  for (auto &m : vals)
  {
    m.resize(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i)
      m(i) = testing::random_complex(rng);
  }
  return make_matrix_grid(axes, vals, shape);
}

MatrixTensorGrid state_space_grid(std::size_t n, std::size_t outs, std::size_t ins,
                                  std::uint64_t seed)
{
  const auto sys = models::random_parametric_mimo(n, outs, ins, seed);
  return models::sample_matrix(
    {models::on_imaginary_axis(models::logspace(0.1, 100, 40)), models::linspace(0, 1, 10)},
    [&](std::span<const Complex> x) { return sys(x[0], x[1]); });
}

}  // namespace

TEST_CASE("random_unit")
{
  const auto one = random_unit(1, 3);
  CHECK(std::abs(std::abs(one(0)) - 1.0) < 1e-15);
  CHECK(random_unit(5, 9) == random_unit(5, 9));
  CHECK(random_unit(5, 9) != random_unit(5, 10));
  CHECK(std::abs(random_unit(7, 2).norm() - 1.0) < 1e-12);
  CHECK_THROWS_AS(random_unit(0, 1), InvalidInput);

  Eigen::Vector4d mass = Eigen::Vector4d::Zero();
  for (std::uint64_t seed = 0; seed < 10000; ++seed)
    mass += random_unit(4, seed).cwiseAbs2();
  mass /= 10000.0;
  for (Eigen::Index i = 0; i < 4; ++i)
    CHECK(std::abs(mass(i) - 0.25) < 0.02 * 0.25);
}

TEST_CASE("make_scalarizer seeds")
{
  const auto sc = make_scalarizer(3, 2, 17);
  CHECK(sc.seed == 17);
  CHECK(sc.w == random_unit(3, 17));
  CHECK(sc.v == random_unit(2, 18));
}

TEST_CASE("scalarize")
{
  std::mt19937_64 rng(51);
  const auto g = random_matrix_grid({3, 4}, 3, 2, rng);
  Scalarizer e11{Eigen::VectorXcd::Unit(3, 0), Eigen::VectorXcd::Unit(2, 0), 0};
  const auto s = scalarize(g, e11);
  for (std::size_t f = 0; f < g.size(); ++f)
    CHECK(s.value(f) == g.value(f)(0, 0));

  const auto sc = make_scalarizer(3, 2, 4);
  const auto a = scalarize(g, sc), b = scalarize(g, sc);
  CHECK(a.values() == b.values());
  for (std::size_t f = 0; f < g.size(); ++f)
    CHECK(rel_diff(a.value(f), (sc.w.transpose() * g.value(f) * sc.v)(0, 0)) < 1e-15);

  CHECK_THROWS_AS(scalarize(g, make_scalarizer(2, 2, 1)), InvalidInput);

  const auto g1 = random_matrix_grid({3}, 1, 1, rng);
  Scalarizer ones{Eigen::VectorXcd::Ones(1), Eigen::VectorXcd::Ones(1), 0};
  const auto s1 = scalarize(g1, ones);
  for (std::size_t f = 0; f < g1.size(); ++f)
    CHECK(s1.value(f) == g1.value(f)(0, 0));
}

TEST_CASE("1x1 matrix data reduces to the scalar fit")
{
  const auto syn = models::synthetic_grid();
  std::vector<Eigen::MatrixXcd> vals;
  for (const auto &h : syn.values())
    vals.push_back(Eigen::MatrixXcd::Constant(1, 1, h));
  const auto mg = make_matrix_grid(syn.axes(), vals, syn.shape());
  Scalarizer ones{Eigen::VectorXcd::Ones(1), Eigen::VectorXcd::Ones(1), 0};
  const auto m = mimo_fit(mg, FitOptions{}, ones);
  const auto s = fit(syn, FitOptions{});
  CHECK(m.model.weights() == s.model.weights());
  CHECK(m.model.support_points() == s.model.support_points());
  CHECK(m.scalar.trace.size() == s.trace.size());
  for (std::size_t f = 0; f < s.model.support_values().size(); ++f)
    CHECK(m.model.support_values()[f](0, 0) == s.model.support_values()[f]);
}

TEST_CASE("state-space MIMO fit interpolates matrices and commutes with scalarization")
{
  const auto mg = state_space_grid(6, 2, 1, 3);
  const auto sc = make_scalarizer(2, 1, 3);
  FitOptions opts;
  opts.tol = 1e-6;
  const auto res = mimo_fit(mg, opts, sc);
  CHECK(res.scalar.rel_error <= 1e-6);

  const auto &m = res.model;
  for (std::size_t f = 0; f < m.weights().size(); ++f)
  {
    const auto I = unravel(f, m.shape());
    const std::vector<Complex> x{m.support_points()[0][I[0]], m.support_points()[1][I[1]]};
    const auto M = eval_matrix(m, x);
    CHECK((M - m.support_values()[f]).norm() <= 1e-10 * m.support_values()[f].norm());
  }

  const auto sg = scalarize(mg, sc);
  for (std::size_t f = 0; f < mg.size(); ++f)
  {
    const auto x = sg.point(unravel(f, sg.shape()));
    const Complex lifted = (sc.w.transpose() * eval_matrix(m, x) * sc.v)(0, 0);
    CHECK(rel_diff(lifted, eval(res.scalar.model, x)) <= 1e-12);
  }
  // Off-grid too.
  const std::vector<Complex> off{Complex(0, 3.3), 0.37};
  CHECK(rel_diff((sc.w.transpose() * eval_matrix(m, off) * sc.v)(0, 0), eval(res.scalar.model, off)) <=
        1e-12);

  const auto direct = fit(sg, opts);
  REQUIRE(direct.trace.size() == res.scalar.trace.size());
  for (std::size_t i = 0; i < direct.trace.size(); ++i)
    CHECK(direct.trace[i].selected_index == res.scalar.trace[i].selected_index);
  CHECK(direct.model.weights() == res.scalar.model.weights());
}

TEST_CASE("lift of a zero-iteration fit is the matrix mean")
{
  std::vector<Eigen::MatrixXcd> vals(4, Eigen::MatrixXcd::Constant(2, 2, Complex(1.5, 0.5)));
  const auto mg = make_matrix_grid({{0.0, 1.0}, {0.0, 1.0}}, vals, {2, 2});
  const auto res = mimo_fit(mg, FitOptions{}, make_scalarizer(2, 2, 0));
  CHECK(res.scalar.trace.empty());
  const auto M = eval_matrix(res.model, std::vector<Complex>{0.3, 0.6});
  CHECK((M - vals[0]).norm() < 1e-14);
}

TEST_CASE("state-space data is recovered at its order" * doctest::may_fail())
{
  // Greedy growth can add one support point more than the rational order needs.
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
      const auto mg = state_space_grid(n, 2, 2, seed);
      FitOptions opts;
      opts.tol = 1e-6;
      const auto res = mimo_fit(mg, opts, make_scalarizer(2, 2, seed));
      const auto o = orders(res.model);
      INFO("state_dim " << n << " seed " << seed << " orders " << o[0] << "," << o[1]);
      CHECK(res.scalar.rel_error <= 1e-6);
      CHECK(o[0] <= n);
      CHECK(o[1] <= 3);
    }
}
