#pragma once

#include <Eigen/Dense>

namespace paaa
{

struct LsqSolution
{
  Eigen::VectorXcd a;      // unit 2-norm minimizer
  double sigma_min = 0.0;  // smallest singular value (0 when rows < cols)
  double residual = 0.0;   // ||M a||_2
};

// argmin ||M a||_2 subject to ||a||_2 = 1: the right singular vector of the smallest
// singular value. Its largest-modulus entry is rotated to be real and positive so that
// repeated runs give identical vectors.
LsqSolution min_unit(const Eigen::MatrixXcd &matrix);

}  // namespace paaa
