#include "paaa/barycentric.hpp"

#include <cmath>

namespace paaa
{

namespace
{

Shape shape_of(const std::vector<Axis> &support_points)
{
  Shape shape;
  for (const auto &ax : support_points)
    shape.push_back(ax.size());
  return shape;
}

void validate_support(const std::vector<Axis> &support_points, const std::vector<Complex> &weights)
{
  if (support_points.empty())
    throw InvalidInput("model needs at least one variable");
  for (std::size_t d = 0; d < support_points.size(); ++d)
  {
    const auto &ax = support_points[d];
    if (ax.empty())
      throw InvalidInput("variable " + std::to_string(d) + " has no support points");
    for (std::size_t i = 0; i < ax.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (ax[i] == ax[j])
          throw InvalidInput("duplicate support point in variable " + std::to_string(d));
  }
  if (weights.size() != element_count(shape_of(support_points)))
    throw InvalidInput("weight count does not match the support shape");
  bool any = false;
  for (const auto &w : weights)
  {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
      throw InvalidInput("non-finite weight");
    any = any || w != Complex(0.0);
  }
  if (!any)
    throw InvalidInput("weights are identically zero");
}

// Per-variable Cauchy factors 1/(x - sigma_i); a coordinate equal to sigma_m becomes the
// indicator of m. Returns the number of matched variables.
std::size_t cauchy_factors(const std::vector<Axis> &support_points, std::span<const Complex> point,
                           std::vector<std::vector<Complex>> &factors)
{
  if (point.size() != support_points.size())
    throw InvalidInput("point has " + std::to_string(point.size()) + " coordinates, model has " +
                       std::to_string(support_points.size()) + " variables");
  std::size_t matched = 0;
  factors.resize(support_points.size());
  for (std::size_t d = 0; d < support_points.size(); ++d)
  {
    const auto &ax = support_points[d];
    auto &c = factors[d];
    c.assign(ax.size(), Complex(0.0));
    long hit = -1;
    for (std::size_t i = 0; i < ax.size(); ++i)
      if (point[d] == ax[i])
        hit = static_cast<long>(i);
    if (hit >= 0)
    {
      c[hit] = 1.0;
      ++matched;
    }
    else
    {
      for (std::size_t i = 0; i < ax.size(); ++i)
        c[i] = 1.0 / (point[d] - ax[i]);
    }
  }
  return matched;
}

// Kronecker product of the per-variable factors, row-major.
std::vector<Complex> kron(const std::vector<std::vector<Complex>> &factors)
{
  std::vector<Complex> out{Complex(1.0)};
  for (const auto &c : factors)
  {
    std::vector<Complex> next(out.size() * c.size());
    for (std::size_t a = 0; a < out.size(); ++a)
      for (std::size_t b = 0; b < c.size(); ++b)
        next[a * c.size() + b] = out[a] * c[b];
    out = std::move(next);
  }
  return out;
}

Quotient restricted_sums(const std::vector<Complex> &coef, const std::vector<Complex> &values,
                         const std::vector<Complex> &weights)
{
  Quotient q{Complex(0.0), Complex(0.0)};
  for (std::size_t I = 0; I < coef.size(); ++I)
  {
    if (coef[I] == Complex(0.0))
      continue;
    const Complex cw = coef[I] * weights[I];
    q.numerator += cw * values[I];
    q.denominator += cw;
  }
  return q;
}

std::vector<Complex> to_vector(std::span<const Complex> point)
{
  return {point.begin(), point.end()};
}

// Flat support index when every coordinate matched, else -1.
long fully_matched_index(const std::vector<std::vector<Complex>> &factors, const Shape &shape)
{
  MultiIndex idx(factors.size());
  for (std::size_t d = 0; d < factors.size(); ++d)
  {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < factors[d].size(); ++i)
      if (factors[d][i] != Complex(0.0))
      {
        idx[d] = i;
        ++nonzero;
      }
    if (nonzero != 1 || factors[d][idx[d]] != Complex(1.0))
      return -1;
  }
  return static_cast<long>(ravel(idx, shape));
}

}  // namespace

BarycentricModel::BarycentricModel(std::vector<Axis> support_points,
                                   std::vector<Complex> support_values,
                                   std::vector<Complex> weights)
  : support_points_(std::move(support_points)), support_values_(std::move(support_values)),
    weights_(std::move(weights))
{
  validate_support(support_points_, weights_);
  shape_ = shape_of(support_points_);
  if (support_values_.size() != weights_.size())
    throw InvalidInput("support value count does not match the support shape");
}

MatrixBarycentricModel::MatrixBarycentricModel(std::vector<Axis> support_points,
                                               std::vector<Eigen::MatrixXcd> support_values,
                                               std::vector<Complex> weights)
  : support_points_(std::move(support_points)), support_values_(std::move(support_values)),
    weights_(std::move(weights))
{
  validate_support(support_points_, weights_);
  shape_ = shape_of(support_points_);
  if (support_values_.size() != weights_.size())
    throw InvalidInput("support matrix count does not match the support shape");
  for (const auto &m : support_values_)
    if (m.rows() != support_values_.front().rows() || m.cols() != support_values_.front().cols())
      throw InvalidInput("support matrices differ in shape");
  if (rows() == 0 || cols() == 0)
    throw InvalidInput("support matrices must be nonempty");
}

BarycentricModel MatrixBarycentricModel::entry(Eigen::Index row, Eigen::Index col) const
{
  std::vector<Complex> values;
  values.reserve(support_values_.size());
  for (const auto &m : support_values_)
    values.push_back(m(row, col));
  return BarycentricModel(support_points_, std::move(values), weights_);
}

Quotient restricted_num_den(const BarycentricModel &model, std::span<const Complex> point)
{
  std::vector<std::vector<Complex>> factors;
  cauchy_factors(model.support_points(), point, factors);
  return restricted_sums(kron(factors), model.support_values(), model.weights());
}

Quotient num_den(const BarycentricModel &model, std::span<const Complex> point)
{
  std::vector<std::vector<Complex>> factors;
  if (cauchy_factors(model.support_points(), point, factors) > 0)
    throw EvaluationError("point collides with a support coordinate", to_vector(point));
  return restricted_sums(kron(factors), model.support_values(), model.weights());
}

Complex eval(const BarycentricModel &model, std::span<const Complex> point)
{
  std::vector<std::vector<Complex>> factors;
  const std::size_t matched = cauchy_factors(model.support_points(), point, factors);
  if (matched == model.dims())
  {
    const long I = fully_matched_index(factors, model.shape());
    if (model.weights()[I] == Complex(0.0))
      throw EvaluationError("zero weight at a support tuple", to_vector(point));
    return model.support_values()[I];
  }
  const auto q = restricted_sums(kron(factors), model.support_values(), model.weights());
  if (q.denominator == Complex(0.0))
    throw EvaluationError("denominator vanishes (pole)", to_vector(point));
  return q.numerator / q.denominator;
}

Eigen::MatrixXcd eval_matrix(const MatrixBarycentricModel &model, std::span<const Complex> point)
{
  std::vector<std::vector<Complex>> factors;
  const std::size_t matched = cauchy_factors(model.support_points(), point, factors);
  if (matched == model.dims())
  {
    const long I = fully_matched_index(factors, model.shape());
    if (model.weights()[I] == Complex(0.0))
      throw EvaluationError("zero weight at a support tuple", to_vector(point));
    return model.support_values()[I];
  }
  const auto coef = kron(factors);
  Eigen::MatrixXcd num = Eigen::MatrixXcd::Zero(model.rows(), model.cols());
  Complex den(0.0);
  for (std::size_t I = 0; I < coef.size(); ++I)
  {
    if (coef[I] == Complex(0.0))
      continue;
    const Complex cw = coef[I] * model.weights()[I];
    num += cw * model.support_values()[I];
    den += cw;
  }
  if (den == Complex(0.0))
    throw EvaluationError("denominator vanishes (pole)", to_vector(point));
  return num / den;
}

std::vector<std::size_t> orders(const BarycentricModel &model)
{
  std::vector<std::size_t> out;
  for (auto k : model.shape())
    out.push_back(k - 1);
  return out;
}

std::vector<std::size_t> orders(const MatrixBarycentricModel &model)
{
  std::vector<std::size_t> out;
  for (auto k : model.shape())
    out.push_back(k - 1);
  return out;
}

std::vector<Complex> eval_on_grid(const BarycentricModel &model, const std::vector<Axis> &axes)
{
  Shape shape;
  for (const auto &ax : axes)
    shape.push_back(ax.size());
  const std::size_t n = element_count(shape);
  std::vector<Complex> out(n);
  std::vector<Complex> x(axes.size());
  for (std::size_t flat = 0; flat < n; ++flat)
  {
    const auto idx = unravel(flat, shape);
    for (std::size_t d = 0; d < axes.size(); ++d)
      x[d] = axes[d][idx[d]];
    out[flat] = eval(model, x);
  }
  return out;
}

}  // namespace paaa
