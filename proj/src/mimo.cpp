#include "paaa/mimo.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace paaa
{

namespace
{

double uniform_open(std::mt19937_64 &rng)
{
  // 53 random bits mapped into (0, 1).
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

Eigen::VectorXcd random_unit(std::size_t dim, std::uint64_t seed)
{
  if (dim == 0)
    throw InvalidInput("random_unit needs dim >= 1");
  std::mt19937_64 rng(seed);
  Eigen::VectorXcd x(dim);
  for (std::size_t i = 0; i < dim; ++i)
  {
    const double r = std::sqrt(-std::log(uniform_open(rng)));
    const double t = 2.0 * std::numbers::pi * uniform_open(rng);
    x(i) = Complex(r * std::cos(t), r * std::sin(t));
  }
  return x / x.norm();
}

Scalarizer make_scalarizer(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed)
{
  return {random_unit(rows, seed), random_unit(cols, seed + 1), seed};
}

TensorGrid scalarize(const MatrixTensorGrid &mgrid, const Scalarizer &sc)
{
  if (sc.w.size() != mgrid.rows() || sc.v.size() != mgrid.cols())
    throw InvalidInput("scalarizer dimensions do not match the matrix samples");
  std::vector<Complex> values;
  values.reserve(mgrid.size());
  for (const auto &m : mgrid.values())
    values.push_back(sc.w.transpose() * m * sc.v);
  return make_grid(mgrid.axes(), std::move(values), mgrid.shape());
}

MatrixBarycentricModel lift(const MatrixTensorGrid &mgrid, const BarycentricModel &scalar,
                            const Partition &part)
{
  const std::size_t D = mgrid.dims();
  // A zero-iteration fit keeps the mean surrogate, whose matrix analogue is the sample mean.
  if (part.dims() == 0 || part.counts() == Shape(D, 0))
  {
    Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(mgrid.rows(), mgrid.cols());
    for (const auto &m : mgrid.values())
      mean += m;
    mean /= static_cast<double>(mgrid.size());
    return MatrixBarycentricModel(scalar.support_points(), {mean}, scalar.weights());
  }
  part.validate(mgrid.shape());
  const Shape k = part.counts();
  std::vector<Eigen::MatrixXcd> values(element_count(k));
  MultiIndex grid_index(D);
  for (std::size_t flat = 0; flat < values.size(); ++flat)
  {
    const auto local = unravel(flat, k);
    for (std::size_t d = 0; d < D; ++d)
      grid_index[d] = part.support(d)[local[d]];
    values[flat] = mgrid.value(grid_index);
  }
  return MatrixBarycentricModel(scalar.support_points(), std::move(values), scalar.weights());
}

MimoFitResult mimo_fit(const MatrixTensorGrid &mgrid, const FitOptions &opts,
                       const Scalarizer &sc)
{
  auto scalar = fit(scalarize(mgrid, sc), opts);
  auto model = lift(mgrid, scalar.model, scalar.partition);
  return {std::move(model), std::move(scalar)};
}

}  // namespace paaa
