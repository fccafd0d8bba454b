#include "paaa/loewner.hpp"

#include <algorithm>

namespace paaa
{

namespace
{

// Precomputed per-variable Cauchy factors for every grid coordinate, plus the support
// values, shared by all rows of one assembly.
class RowBuilder
{
public:
  RowBuilder(const TensorGrid &grid, const Partition &part)
    : grid_(grid), lookup_(detail::support_lookup(part, grid.shape())), counts_(part.counts())
  {
    for (std::size_t d = 0; d < grid.dims(); ++d)
      if (counts_[d] == 0)
        throw InvalidInput("empty support on axis " + std::to_string(d));
    support_values_ = support_cross_values(grid, part).data;

    factors_.resize(grid.dims());
    for (std::size_t d = 0; d < grid.dims(); ++d)
    {
      const auto &ax = grid.axis(d);
      const auto &s = part.support(d);
      factors_[d].resize(ax.size());
      for (std::size_t i = 0; i < ax.size(); ++i)
      {
        auto &c = factors_[d][i];
        c.assign(s.size(), Complex(0.0));
        if (lookup_[d][i] >= 0)
          c[lookup_[d][i]] = 1.0;
        else
          for (std::size_t m = 0; m < s.size(); ++m)
            c[m] = 1.0 / (ax[i] - ax[s[m]]);
      }
    }
  }

  std::size_t cols() const { return support_values_.size(); }

  bool in_support(const MultiIndex &tuple) const
  {
    for (std::size_t d = 0; d < tuple.size(); ++d)
      if (lookup_[d][tuple[d]] < 0)
        return false;
    return true;
  }

  template <typename Row>
  void fill(const MultiIndex &tuple, Row &&row) const
  {
    const Complex h = grid_.value(tuple);
    coef_.assign(1, Complex(1.0));
    for (std::size_t d = 0; d < tuple.size(); ++d)
    {
      const auto &c = factors_[d][tuple[d]];
      next_.resize(coef_.size() * c.size());
      for (std::size_t a = 0; a < coef_.size(); ++a)
        for (std::size_t b = 0; b < c.size(); ++b)
          next_[a * c.size() + b] = coef_[a] * c[b];
      std::swap(coef_, next_);
    }
    for (std::size_t I = 0; I < coef_.size(); ++I)
      row(static_cast<Eigen::Index>(I)) =
        coef_[I] == Complex(0.0) ? Complex(0.0) : (h - support_values_[I]) * coef_[I];
  }

private:
  const TensorGrid &grid_;
  std::vector<std::vector<long>> lookup_;
  Shape counts_;
  std::vector<Complex> support_values_;
  std::vector<std::vector<std::vector<Complex>>> factors_;
  mutable std::vector<Complex> coef_, next_;
};

Complex weighting_factor(const TensorGrid &grid, const BarycentricModel &previous,
                         const MultiIndex &tuple)
{
  const auto x = grid.point(tuple);
  const Complex den = restricted_num_den(previous, x).denominator;
  if (den == Complex(0.0))
    throw EvaluationError("previous denominator vanishes at a row tuple", x);
  return 1.0 / den;
}

}  // namespace

Eigen::MatrixXcd loewner_1d(std::span<const Complex> support_pts,
                            std::span<const Complex> support_vals,
                            std::span<const Complex> other_pts, std::span<const Complex> other_vals)
{
  if (support_pts.size() != support_vals.size() || other_pts.size() != other_vals.size())
    throw InvalidInput("point and value counts differ");
  Eigen::MatrixXcd L(other_pts.size(), support_pts.size());
  for (std::size_t i = 0; i < other_pts.size(); ++i)
    for (std::size_t j = 0; j < support_pts.size(); ++j)
    {
      if (other_pts[i] == support_pts[j])
        throw InvalidInput("support and remaining point sets overlap");
      L(i, j) = (other_vals[i] - support_vals[j]) / (other_pts[i] - support_pts[j]);
    }
  return L;
}

Eigen::RowVectorXcd loewner_row(const TensorGrid &grid, const Partition &part,
                                const MultiIndex &tuple)
{
  part.validate(grid.shape());
  RowBuilder builder(grid, part);
  if (builder.in_support(tuple))
    throw InvalidInput("tuple lies in the support cross product (interpolated, not fitted)");
  Eigen::RowVectorXcd row(builder.cols());
  builder.fill(tuple, row);
  return row;
}

LoewnerSystem assemble(const TensorGrid &grid, const Partition &part)
{
  part.validate(grid.shape());
  RowBuilder builder(grid, part);
  const std::size_t rows = grid.size() - builder.cols();
  if (rows == 0)
    throw InvalidInput("support covers the whole grid; no rows to fit");

  LoewnerSystem sys;
  sys.matrix.resize(rows, builder.cols());
  sys.row_map.reserve(rows);
  Eigen::Index r = 0;
  for (std::size_t flat = 0; flat < grid.size(); ++flat)
  {
    auto tuple = unravel(flat, grid.shape());
    if (builder.in_support(tuple))
      continue;
    builder.fill(tuple, sys.matrix.row(r++));
    sys.row_map.push_back(std::move(tuple));
  }
  return sys;
}

LoewnerSystem apply_weighting(LoewnerSystem system, const TensorGrid &grid,
                              const BarycentricModel *previous)
{
  if (previous == nullptr)
    return system;
  for (std::size_t r = 0; r < system.row_map.size(); ++r)
    system.matrix.row(r) *= weighting_factor(grid, *previous, system.row_map[r]);
  return system;
}

ReducedSystem assemble_reduced(const TensorGrid &grid, const Partition &part,
                               const BarycentricModel *previous, std::size_t block_rows)
{
  part.validate(grid.shape());
  RowBuilder builder(grid, part);
  const auto cols = static_cast<Eigen::Index>(builder.cols());
  const std::size_t total = grid.size() - builder.cols();
  if (total == 0)
    throw InvalidInput("support covers the whole grid; no rows to fit");
  if (block_rows == 0)
    block_rows = std::max<std::size_t>(2048, 8 * builder.cols());

  ReducedSystem out;
  out.rows = total;
  Eigen::MatrixXcd r(0, cols);
  Eigen::MatrixXcd stack;
  Eigen::Index filled = 0;

  auto compress = [&] {
    if (filled == 0)
      return;
    stack.conservativeResize(r.rows() + filled, Eigen::NoChange);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(stack);
    const Eigen::Index k = std::min(stack.rows(), cols);
    r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    filled = 0;
  };

  stack.resize(static_cast<Eigen::Index>(block_rows) + cols, cols);
  for (std::size_t flat = 0; flat < grid.size(); ++flat)
  {
    const auto tuple = unravel(flat, grid.shape());
    if (builder.in_support(tuple))
      continue;
    if (filled == 0)
    {
      stack.resize(r.rows() + static_cast<Eigen::Index>(block_rows), cols);
      stack.topRows(r.rows()) = r;
    }
    auto row = stack.row(r.rows() + filled);
    builder.fill(tuple, row);
    if (previous != nullptr)
      row *= weighting_factor(grid, *previous, tuple);
    if (++filled == static_cast<Eigen::Index>(block_rows))
      compress();
  }
  compress();
  out.r = std::move(r);
  return out;
}

}  // namespace paaa
