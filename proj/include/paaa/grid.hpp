#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace paaa
{

using Complex = std::complex<double>;
using Shape = std::vector<std::size_t>;
using MultiIndex = std::vector<std::size_t>;
using Axis = std::vector<Complex>;

// Raised for malformed input: duplicate points, shape mismatches, non-finite samples.
class InvalidInput : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

std::size_t element_count(const Shape &shape);

// Row-major (last axis fastest) linearization shared by grids, Loewner columns and weights.
std::size_t ravel(const MultiIndex &index, const Shape &shape);
MultiIndex unravel(std::size_t flat, const Shape &shape);

// Dense D-dimensional complex tensor, row-major.
struct Tensor
{
  Shape shape;
  std::vector<Complex> data;

  std::size_t size() const { return data.size(); }
  const Complex &operator[](const MultiIndex &index) const { return data[ravel(index, shape)]; }
};

// Sampled values of a function on a tensor-product grid of complex points.
class TensorGrid
{
public:
  TensorGrid() = default;

  std::size_t dims() const { return axes_.size(); }
  const std::vector<Axis> &axes() const { return axes_; }
  const Axis &axis(std::size_t d) const { return axes_[d]; }
  const Shape &shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }

  const std::vector<Complex> &values() const { return values_; }
  const Complex &value(std::size_t flat) const { return values_[flat]; }
  const Complex &value(const MultiIndex &index) const { return values_[ravel(index, shape_)]; }

  // Grid coordinates of a multi-index.
  std::vector<Complex> point(const MultiIndex &index) const;

private:
  friend TensorGrid make_grid(std::vector<Axis> axes, std::vector<Complex> values, Shape shape);
  std::vector<Axis> axes_;
  Shape shape_;
  std::vector<Complex> values_;
};

TensorGrid make_grid(std::vector<Axis> axes, std::vector<Complex> values, Shape shape);

// Shape taken from the axis lengths.
TensorGrid make_grid(std::vector<Axis> axes, std::vector<Complex> values);

// Grid whose entries are complex matrices of one fixed shape (rows = outputs, cols = inputs).
class MatrixTensorGrid
{
public:
  MatrixTensorGrid() = default;

  std::size_t dims() const { return axes_.size(); }
  const std::vector<Axis> &axes() const { return axes_; }
  const Axis &axis(std::size_t d) const { return axes_[d]; }
  const Shape &shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }

  const std::vector<Eigen::MatrixXcd> &values() const { return values_; }
  const Eigen::MatrixXcd &value(std::size_t flat) const { return values_[flat]; }
  const Eigen::MatrixXcd &value(const MultiIndex &index) const
  {
    return values_[ravel(index, shape_)];
  }

private:
  friend MatrixTensorGrid make_matrix_grid(std::vector<Axis> axes,
                                           std::vector<Eigen::MatrixXcd> values, Shape shape);
  std::vector<Axis> axes_;
  Shape shape_;
  Eigen::Index rows_ = 0, cols_ = 0;
  std::vector<Eigen::MatrixXcd> values_;
};

MatrixTensorGrid make_matrix_grid(std::vector<Axis> axes, std::vector<Eigen::MatrixXcd> values,
                                  Shape shape);

// Per-axis ordered support (interpolated) indices; the complement on each axis is LS-fitted.
class Partition
{
public:
  Partition() = default;
  explicit Partition(std::size_t dims) : support_(dims) {}
  explicit Partition(std::vector<std::vector<std::size_t>> support);

  std::size_t dims() const { return support_.size(); }
  const std::vector<std::vector<std::size_t>> &support() const { return support_; }
  const std::vector<std::size_t> &support(std::size_t axis) const { return support_[axis]; }

  // (k_1, ..., k_D)
  Shape counts() const;
  bool contains(std::size_t axis, std::size_t point_index) const;

  // Position of point_index within the axis's support list, or -1.
  long position(std::size_t axis, std::size_t point_index) const;

  // Throws unless every axis index is unique and below the matching grid axis length.
  void validate(const Shape &grid_shape) const;

private:
  std::vector<std::vector<std::size_t>> support_;
};

Partition add_support(const Partition &part, std::size_t axis, std::size_t point_index);

// Sampled values at the support cross product, in support-list order.
Tensor support_cross_values(const TensorGrid &grid, const Partition &part);

namespace detail
{
// For each axis, grid index -> position in the support list (or -1).
std::vector<std::vector<long>> support_lookup(const Partition &part, const Shape &grid_shape);
}  // namespace detail

}  // namespace paaa
