#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "paaa/grid.hpp"

namespace paaa
{

// A barycentric quotient could not be evaluated: its denominator vanished (a pole of
// the rational function) or the point collides with a support coordinate where the
// caller needs the unrestricted sums.
class EvaluationError : public std::runtime_error
{
public:
  EvaluationError(const std::string &what, std::vector<Complex> point)
    : std::runtime_error(what), point_(std::move(point))
  {
  }
  const std::vector<Complex> &point() const { return point_; }

private:
  std::vector<Complex> point_;
};

// Multivariate barycentric rational function
//
//   H(x) = sum_I  v_I w_I / prod_d (x_d - sigma^(d)_{I_d})
//          ---------------------------------------------
//          sum_I  w_I     / prod_d (x_d - sigma^(d)_{I_d})
//
// with support values v_I and weights w_I stored row-major over the support multi-index I.
class BarycentricModel
{
public:
  BarycentricModel() = default;
  BarycentricModel(std::vector<Axis> support_points, std::vector<Complex> support_values,
                   std::vector<Complex> weights);

  std::size_t dims() const { return support_points_.size(); }
  const std::vector<Axis> &support_points() const { return support_points_; }
  const std::vector<Complex> &support_values() const { return support_values_; }
  const std::vector<Complex> &weights() const { return weights_; }
  const Shape &shape() const { return shape_; }

private:
  std::vector<Axis> support_points_;
  std::vector<Complex> support_values_;
  std::vector<Complex> weights_;
  Shape shape_;
};

// Matrix-valued variant sharing one scalar denominator.
class MatrixBarycentricModel
{
public:
  MatrixBarycentricModel() = default;
  MatrixBarycentricModel(std::vector<Axis> support_points,
                         std::vector<Eigen::MatrixXcd> support_values,
                         std::vector<Complex> weights);

  std::size_t dims() const { return support_points_.size(); }
  const std::vector<Axis> &support_points() const { return support_points_; }
  const std::vector<Eigen::MatrixXcd> &support_values() const { return support_values_; }
  const std::vector<Complex> &weights() const { return weights_; }
  const Shape &shape() const { return shape_; }
  Eigen::Index rows() const { return support_values_.front().rows(); }
  Eigen::Index cols() const { return support_values_.front().cols(); }

  // Scalar model from entry (row, col) of every support matrix, same weights.
  BarycentricModel entry(Eigen::Index row, Eigen::Index col) const;

private:
  std::vector<Axis> support_points_;
  std::vector<Eigen::MatrixXcd> support_values_;
  std::vector<Complex> weights_;
  Shape shape_;
};

struct Quotient
{
  Complex numerator;
  Complex denominator;
};

// Value at a point. A coordinate equal (exactly) to a support point of its variable
// restricts the sums to that support index and drops the matching Cauchy factor.
Complex eval(const BarycentricModel &model, std::span<const Complex> point);
Eigen::MatrixXcd eval_matrix(const MatrixBarycentricModel &model, std::span<const Complex> point);

// The two raw sums. Throws EvaluationError if any coordinate is a support point.
Quotient num_den(const BarycentricModel &model, std::span<const Complex> point);

// Numerator and denominator after the support-coordinate restriction; never throws.
Quotient restricted_num_den(const BarycentricModel &model, std::span<const Complex> point);

// (k_1 - 1, ..., k_D - 1)
std::vector<std::size_t> orders(const BarycentricModel &model);
std::vector<std::size_t> orders(const MatrixBarycentricModel &model);

// Model values at every grid tuple, row-major. Throws EvaluationError at the first pole.
std::vector<Complex> eval_on_grid(const BarycentricModel &model, const std::vector<Axis> &axes);

}  // namespace paaa
