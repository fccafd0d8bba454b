#include "paaa/models.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "paaa/barycentric.hpp"

namespace paaa::models
{

namespace
{

constexpr Complex kI(0.0, 1.0);

std::vector<Complex> as_vector(Complex a, Complex b) { return {a, b}; }

double uniform01(std::mt19937_64 &rng)
{
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double normal(std::mt19937_64 &rng)
{
  const double r = std::sqrt(-2.0 * std::log(uniform01(rng)));
  return r * std::cos(2.0 * std::numbers::pi * uniform01(rng));
}

}  // namespace

Axis linspace(double lo, double hi, std::size_t n)
{
  if (n == 1)
    return {Complex(lo)};
  Axis ax(n);
  for (std::size_t i = 0; i < n; ++i)
    ax[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return ax;
}

Axis logspace(double lo, double hi, std::size_t n)
{
  if (!(lo > 0.0 && hi > 0.0))
    throw InvalidInput("logspace bounds must be positive");
  Axis ax = linspace(std::log10(lo), std::log10(hi), n);
  for (auto &x : ax)
    x = std::pow(10.0, x.real());
  return ax;
}

Axis on_imaginary_axis(Axis omega)
{
  for (auto &x : omega)
    x *= kI;
  return omega;
}

TensorGrid sample(std::vector<Axis> axes, const ScalarFunction &f)
{
  Shape shape;
  for (const auto &ax : axes)
    shape.push_back(ax.size());
  std::vector<Complex> values(element_count(shape));
  std::vector<Complex> x(axes.size());
  for (std::size_t flat = 0; flat < values.size(); ++flat)
  {
    const auto idx = unravel(flat, shape);
    for (std::size_t d = 0; d < axes.size(); ++d)
      x[d] = axes[d][idx[d]];
    values[flat] = f(x);
  }
  return make_grid(std::move(axes), std::move(values), std::move(shape));
}

MatrixTensorGrid sample_matrix(std::vector<Axis> axes, const MatrixFunction &f)
{
  Shape shape;
  for (const auto &ax : axes)
    shape.push_back(ax.size());
  std::vector<Eigen::MatrixXcd> values(element_count(shape));
  std::vector<Complex> x(axes.size());
  for (std::size_t flat = 0; flat < values.size(); ++flat)
  {
    const auto idx = unravel(flat, shape);
    for (std::size_t d = 0; d < axes.size(); ++d)
      x[d] = axes[d][idx[d]];
    values[flat] = f(x);
  }
  return make_matrix_grid(std::move(axes), std::move(values), std::move(shape));
}

Complex synthetic_2var(Complex s, Complex p)
{
  const Complex d1 = 1.0 + 25.0 * (s + p) * (s + p);
  const Complex d2 = 1.0 + 25.0 * (s - 0.5) * (s - 0.5);
  const Complex d3 = p + 25.0;
  if (d1 == 0.0 || d2 == 0.0 || d3 == 0.0)
    throw EvaluationError("synthetic function has a pole here", as_vector(s, p));
  return 1.0 / d1 + 0.5 / d2 + 0.1 / d3;
}

void PenzlSpec::validate() const
{
  if (tail < 1)
    throw InvalidInput("Penzl tail length must be at least 1");
  for (double w : rotations)
    if (!(w > 0.0))
      throw InvalidInput("Penzl rotations must be positive");
}

Complex penzl_transfer(const PenzlSpec &spec, Complex s)
{
  spec.validate();
  const Complex sp1 = s + 1.0;
  Complex h(0.0);
  for (double w : spec.rotations)
  {
    const Complex den = sp1 * sp1 + w * w;
    if (den == 0.0)
      throw EvaluationError("resolvent is singular", {s});
    h += 200.0 * sp1 / den;
  }
  for (std::size_t m = 1; m <= spec.tail; ++m)
  {
    const Complex den = s + static_cast<double>(m);
    if (den == 0.0)
      throw EvaluationError("resolvent is singular", {s});
    h += 1.0 / den;
  }
  return h;
}

Complex penzl_2var(Complex s, Complex p)
{
  if (p.imag() != 0.0)
    throw InvalidInput("Penzl parameter must be real");
  return penzl_transfer({{p.real(), 200.0, 400.0}, 1000}, s);
}

Complex penzl_3var(Complex s, Complex p, Complex z)
{
  if (p.imag() != 0.0 || z.imag() != 0.0)
    throw InvalidInput("Penzl parameters must be real");
  return penzl_transfer({{p.real(), z.real(), 2.0 * z.real()}, 1000}, s);
}

ParametricStateSpace::ParametricStateSpace(std::size_t state_dim, std::size_t n_out,
                                           std::size_t n_in, std::uint64_t seed)
{
  if (state_dim < 1 || n_out < 1 || n_in < 1)
    throw InvalidInput("state-space dimensions must be at least 1");
  std::mt19937_64 rng(seed);
  const auto n = static_cast<Eigen::Index>(state_dim);

  a0_ = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    a0_(i, i) = -std::pow(10.0, -0.5 + 1.5 * uniform01(rng));  // poles in [-10^1, -10^-0.5]

  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i)
    u(i) = normal(rng) / std::sqrt(static_cast<double>(n));
  a1_ = -u * u.transpose();

  b_.resize(n, static_cast<Eigen::Index>(n_in));
  for (Eigen::Index j = 0; j < b_.cols(); ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      b_(i, j) = normal(rng);
  c_.resize(static_cast<Eigen::Index>(n_out), n);
  for (Eigen::Index i = 0; i < c_.rows(); ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      c_(i, j) = normal(rng);
}

Eigen::MatrixXcd ParametricStateSpace::operator()(Complex s, Complex p) const
{
  const Eigen::Index n = a0_.rows();
  Eigen::MatrixXcd k = s * Eigen::MatrixXcd::Identity(n, n) - a0_.cast<Complex>() -
                       p * a1_.cast<Complex>();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(k);
  if (!lu.isInvertible())
    throw EvaluationError("resolvent is singular", as_vector(s, p));
  return c_.cast<Complex>() * lu.solve(b_.cast<Complex>());
}

ParametricStateSpace random_parametric_mimo(std::size_t state_dim, std::size_t n_out,
                                            std::size_t n_in, std::uint64_t seed)
{
  return ParametricStateSpace(state_dim, n_out, n_in, seed);
}

TensorGrid synthetic_grid()
{
  return sample({linspace(-1.0, 1.0, 21), linspace(0.0, 1.0, 21)},
                [](std::span<const Complex> x) { return synthetic_2var(x[0], x[1]); });
}

TensorGrid penzl2_grid()
{
  return sample({on_imaginary_axis(logspace(0.1, 1000.0, 100)), linspace(10.0, 100.0, 30)},
                [](std::span<const Complex> x) { return penzl_2var(x[0], x[1]); });
}

TensorGrid penzl3_grid()
{
  return sample({on_imaginary_axis(logspace(1.0, 2000.0, 100)), linspace(10.0, 100.0, 10),
                 linspace(150.0, 250.0, 10)},
                [](std::span<const Complex> x) { return penzl_3var(x[0], x[1], x[2]); });
}

}  // namespace paaa::models
