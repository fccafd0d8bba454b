#pragma once

#include <cstdint>

#include "paaa/barycentric.hpp"
#include "paaa/fit.hpp"
#include "paaa/grid.hpp"

namespace paaa
{

// Fixed pair of directions compressing matrix samples to scalars h = w^T H v.
struct Scalarizer
{
  Eigen::VectorXcd w;  // output side, length = sample rows
  Eigen::VectorXcd v;  // input side, length = sample cols
  std::uint64_t seed = 0;
};

// Normalized draw from a seeded standard complex normal. The generator is mt19937_64 with
// a Box-Muller transform, so the vector depends only on (dim, seed).
Eigen::VectorXcd random_unit(std::size_t dim, std::uint64_t seed);

// w drawn with `seed`, v with `seed + 1`.
Scalarizer make_scalarizer(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

// Plain transpose (no conjugation): h = w^T H v.
TensorGrid scalarize(const MatrixTensorGrid &mgrid, const Scalarizer &sc);

struct MimoFitResult
{
  MatrixBarycentricModel model;
  FitResult scalar;  // fit of the scalarized data; its trace is the MIMO trace
};

// Scalar fit on w^T H v, then the same support and weights carry the matrix samples.
MimoFitResult mimo_fit(const MatrixTensorGrid &mgrid, const FitOptions &opts,
                       const Scalarizer &sc);

// Matrix model with the support and weights of a scalar model fitted on `mgrid`'s axes.
MatrixBarycentricModel lift(const MatrixTensorGrid &mgrid, const BarycentricModel &scalar,
                            const Partition &part);

}  // namespace paaa
