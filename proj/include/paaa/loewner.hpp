#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "paaa/barycentric.hpp"
#include "paaa/grid.hpp"

namespace paaa
{

// Linearized least-squares matrix. Rows are the grid tuples outside the support cross
// product in row-major grid order; columns are support multi-indices in row-major weight
// order, so row r applied to the weights is H(t_r) d(t_r) - n(t_r).
struct LoewnerSystem
{
  Eigen::MatrixXcd matrix;
  std::vector<MultiIndex> row_map;
};

// (other_vals[i] - support_vals[j]) / (other_pts[i] - support_pts[j])
Eigen::MatrixXcd loewner_1d(std::span<const Complex> support_pts,
                            std::span<const Complex> support_vals,
                            std::span<const Complex> other_pts, std::span<const Complex> other_vals);

// One row for a grid tuple that is not fully inside the support cross product.
//
// Let F be the variables whose coordinate is not a support point; on the others the
// coordinate is support index m_d. The entry at support multi-index I vanishes unless
// I_d = m_d for every d outside F, and is otherwise
//   (H(t) - H(sigma_I)) / prod_{d in F} (t_d - sigma^(d)_{I_d}).
Eigen::RowVectorXcd loewner_row(const TensorGrid &grid, const Partition &part,
                                const MultiIndex &tuple);

LoewnerSystem assemble(const TensorGrid &grid, const Partition &part);

// Scales row r by 1 / d_prev(t_r), d_prev being the previous model's denominator with the
// support-coordinate restriction. A null model leaves the system unchanged.
LoewnerSystem apply_weighting(LoewnerSystem system, const TensorGrid &grid,
                              const BarycentricModel *previous);

// Upper-triangular R with R^H R = L^H L for the (optionally weighted) system, built by
// streaming Householder QR over row blocks so the full matrix is never stored.
struct ReducedSystem
{
  Eigen::MatrixXcd r;
  std::size_t rows = 0;  // rows of the full system
};

ReducedSystem assemble_reduced(const TensorGrid &grid, const Partition &part,
                               const BarycentricModel *previous = nullptr,
                               std::size_t block_rows = 0);

}  // namespace paaa
