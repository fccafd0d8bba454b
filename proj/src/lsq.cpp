#include "paaa/lsq.hpp"

#include <cmath>
#include <stdexcept>

namespace paaa
{

LsqSolution min_unit(const Eigen::MatrixXcd &matrix)
{
  if (matrix.cols() == 0 || matrix.rows() == 0)
    throw std::invalid_argument("min_unit needs a nonempty matrix");

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("SVD did not converge");

  const Eigen::Index n = matrix.cols();
  LsqSolution sol;
  sol.a = svd.matrixV().col(n - 1);
  // Singular values come sorted decreasingly; a wide matrix has an exact null space.
  sol.sigma_min = matrix.rows() >= n ? svd.singularValues()(n - 1) : 0.0;

  Eigen::Index largest = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (std::abs(sol.a(i)) > std::abs(sol.a(largest)))
      largest = i;
  const auto pivot = sol.a(largest);
  sol.a *= std::conj(pivot) / std::abs(pivot);
  sol.a(largest) = std::abs(sol.a(largest));
  sol.a.normalize();

  sol.residual = (matrix * sol.a).norm();
  return sol;
}

}  // namespace paaa
