#include "paaa/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace paaa
{

namespace
{

bool is_finite(const Complex &z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void validate_axes(const std::vector<Axis> &axes, const Shape &shape)
{
  if (axes.empty())
    throw InvalidInput("grid needs at least one axis");
  if (shape.size() != axes.size())
    throw InvalidInput("shape rank " + std::to_string(shape.size()) + " does not match " +
                       std::to_string(axes.size()) + " axes");
  for (std::size_t d = 0; d < axes.size(); ++d)
  {
    const auto &ax = axes[d];
    if (ax.empty())
      throw InvalidInput("axis " + std::to_string(d) + " is empty");
    if (shape[d] != ax.size())
      throw InvalidInput("shape[" + std::to_string(d) + "] = " + std::to_string(shape[d]) +
                         " but axis has " + std::to_string(ax.size()) + " points");
    for (std::size_t i = 0; i < ax.size(); ++i)
    {
      if (!is_finite(ax[i]))
        throw InvalidInput("non-finite point on axis " + std::to_string(d));
      for (std::size_t j = 0; j < i; ++j)
        if (ax[i] == ax[j])
          throw InvalidInput("duplicate point on axis " + std::to_string(d) + " at indices " +
                             std::to_string(j) + " and " + std::to_string(i));
    }
  }
}

}  // namespace

std::size_t element_count(const Shape &shape)
{
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t ravel(const MultiIndex &index, const Shape &shape)
{
  std::size_t flat = 0;
  for (std::size_t d = 0; d < shape.size(); ++d)
    flat = flat * shape[d] + index[d];
  return flat;
}

MultiIndex unravel(std::size_t flat, const Shape &shape)
{
  MultiIndex index(shape.size());
  for (std::size_t d = shape.size(); d-- > 0;)
  {
    index[d] = flat % shape[d];
    flat /= shape[d];
  }
  return index;
}

std::vector<Complex> TensorGrid::point(const MultiIndex &index) const
{
  std::vector<Complex> x(dims());
  for (std::size_t d = 0; d < dims(); ++d)
    x[d] = axes_[d][index[d]];
  return x;
}

TensorGrid make_grid(std::vector<Axis> axes, std::vector<Complex> values, Shape shape)
{
  validate_axes(axes, shape);
  if (element_count(shape) != values.size())
    throw InvalidInput("shape holds " + std::to_string(element_count(shape)) +
                       " entries but " + std::to_string(values.size()) + " values given");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!is_finite(values[i]))
      throw InvalidInput("non-finite value at flat index " + std::to_string(i));

  TensorGrid grid;
  grid.axes_ = std::move(axes);
  grid.shape_ = std::move(shape);
  grid.values_ = std::move(values);
  return grid;
}

TensorGrid make_grid(std::vector<Axis> axes, std::vector<Complex> values)
{
  Shape shape;
  for (const auto &ax : axes)
    shape.push_back(ax.size());
  return make_grid(std::move(axes), std::move(values), std::move(shape));
}

MatrixTensorGrid make_matrix_grid(std::vector<Axis> axes, std::vector<Eigen::MatrixXcd> values,
                                  Shape shape)
{
  validate_axes(axes, shape);
  if (element_count(shape) != values.size())
    throw InvalidInput("shape holds " + std::to_string(element_count(shape)) +
                       " entries but " + std::to_string(values.size()) + " matrices given");
  const Eigen::Index rows = values.front().rows(), cols = values.front().cols();
  if (rows == 0 || cols == 0)
    throw InvalidInput("matrix samples must be nonempty");
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    if (values[i].rows() != rows || values[i].cols() != cols)
      throw InvalidInput("matrix sample " + std::to_string(i) + " has a different shape");
    if (!values[i].allFinite())
      throw InvalidInput("non-finite matrix sample at flat index " + std::to_string(i));
  }

  MatrixTensorGrid grid;
  grid.axes_ = std::move(axes);
  grid.shape_ = std::move(shape);
  grid.rows_ = rows;
  grid.cols_ = cols;
  grid.values_ = std::move(values);
  return grid;
}

Partition::Partition(std::vector<std::vector<std::size_t>> support) : support_(std::move(support))
{
  for (std::size_t d = 0; d < support_.size(); ++d)
  {
    auto sorted = support_[d];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidInput("repeated support index on axis " + std::to_string(d));
  }
}

Shape Partition::counts() const
{
  Shape k;
  for (const auto &s : support_)
    k.push_back(s.size());
  return k;
}

bool Partition::contains(std::size_t axis, std::size_t point_index) const
{
  return position(axis, point_index) >= 0;
}

long Partition::position(std::size_t axis, std::size_t point_index) const
{
  const auto &s = support_[axis];
  auto it = std::find(s.begin(), s.end(), point_index);
  return it == s.end() ? -1 : static_cast<long>(it - s.begin());
}

void Partition::validate(const Shape &grid_shape) const
{
  if (grid_shape.size() != support_.size())
    throw InvalidInput("partition has " + std::to_string(support_.size()) +
                       " axes but grid has " + std::to_string(grid_shape.size()));
  for (std::size_t d = 0; d < support_.size(); ++d)
  {
    if (support_[d].size() > grid_shape[d])
      throw InvalidInput("support on axis " + std::to_string(d) + " exceeds axis length");
    for (auto i : support_[d])
      if (i >= grid_shape[d])
        throw InvalidInput("support index " + std::to_string(i) + " out of range on axis " +
                           std::to_string(d));
  }
}

Partition add_support(const Partition &part, std::size_t axis, std::size_t point_index)
{
  if (axis >= part.dims())
    throw InvalidInput("axis " + std::to_string(axis) + " out of range");
  if (part.contains(axis, point_index))
    throw InvalidInput("index " + std::to_string(point_index) + " already in support of axis " +
                       std::to_string(axis));
  auto support = part.support();
  support[axis].push_back(point_index);
  return Partition(std::move(support));
}

Tensor support_cross_values(const TensorGrid &grid, const Partition &part)
{
  part.validate(grid.shape());
  Tensor out;
  out.shape = part.counts();
  const std::size_t n = element_count(out.shape);
  out.data.resize(n);
  MultiIndex grid_index(grid.dims());
  for (std::size_t flat = 0; flat < n; ++flat)
  {
    const auto local = unravel(flat, out.shape);
    for (std::size_t d = 0; d < grid.dims(); ++d)
      grid_index[d] = part.support(d)[local[d]];
    out.data[flat] = grid.value(grid_index);
  }
  return out;
}

namespace detail
{
std::vector<std::vector<long>> support_lookup(const Partition &part, const Shape &grid_shape)
{
  std::vector<std::vector<long>> lookup(grid_shape.size());
  for (std::size_t d = 0; d < grid_shape.size(); ++d)
  {
    lookup[d].assign(grid_shape[d], -1);
    const auto &s = part.support(d);
    for (std::size_t m = 0; m < s.size(); ++m)
      lookup[d][s[m]] = static_cast<long>(m);
  }
  return lookup;
}
}  // namespace detail

}  // namespace paaa
