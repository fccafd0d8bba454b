#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "paaa/grid.hpp"

namespace paaa::models
{

Axis linspace(double lo, double hi, std::size_t n);
// n points 10^t, t evenly spaced between log10(lo) and log10(hi).
Axis logspace(double lo, double hi, std::size_t n);
// Multiplies every point by the imaginary unit (frequencies s = i*omega).
Axis on_imaginary_axis(Axis omega);

using ScalarFunction = std::function<Complex(std::span<const Complex>)>;
using MatrixFunction = std::function<Eigen::MatrixXcd(std::span<const Complex>)>;

TensorGrid sample(std::vector<Axis> axes, const ScalarFunction &f);
MatrixTensorGrid sample_matrix(std::vector<Axis> axes, const MatrixFunction &f);

// 1/(1 + 25(s+p)^2) + 0.5/(1 + 25(s-0.5)^2) + 0.1/(p + 25)
Complex synthetic_2var(Complex s, Complex p);

// Rotation block pattern of the Penzl model: each 2x2 block [-1 w; -w -1] seen
// through b = c = [10 10] contributes 200(s+1)/((s+1)^2 + w^2); the diagonal tail
// -diag(1..tail) seen through ones contributes sum 1/(s+m).
struct PenzlSpec
{
  std::vector<double> rotations;
  std::size_t tail = 1000;

  void validate() const;
};

// Closed-form transfer function c^T (sI - A)^{-1} b of a Penzl-type system.
Complex penzl_transfer(const PenzlSpec &spec, Complex s);

// Rotations (p, 200, 400).
Complex penzl_2var(Complex s, Complex p);
// Rotations (p, z, 2z).
Complex penzl_3var(Complex s, Complex p, Complex z);

// Seeded stable parametric state space H(s, p) = C (sI - A0 - p A1)^{-1} B with A0 negative
// diagonal and A1 = -u u^T of rank one, so the response is rational of order state_dim
// in s and 1 in p.
class ParametricStateSpace
{
public:
  ParametricStateSpace(std::size_t state_dim, std::size_t n_out, std::size_t n_in,
                       std::uint64_t seed);

  Eigen::MatrixXcd operator()(Complex s, Complex p) const;

  const Eigen::MatrixXd &a0() const { return a0_; }
  const Eigen::MatrixXd &a1() const { return a1_; }
  const Eigen::MatrixXd &b() const { return b_; }
  const Eigen::MatrixXd &c() const { return c_; }

private:
  Eigen::MatrixXd a0_, a1_, b_, c_;
};

ParametricStateSpace random_parametric_mimo(std::size_t state_dim, std::size_t n_out,
                                            std::size_t n_in, std::uint64_t seed);

// Default sampling grids of the benchmark problems.
TensorGrid synthetic_grid();  // 21 x 21, s in [-1, 1], p in [0, 1]
TensorGrid penzl2_grid();     // 100 log-spaced s in [0.1, 1000]i x 30 p in [10, 100]
TensorGrid penzl3_grid();     // 100 log-spaced s in [1, 2000]i x 10 p in [10, 100] x 10 z in [150, 250]

}  // namespace paaa::models
