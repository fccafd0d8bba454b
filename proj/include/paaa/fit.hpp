#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paaa/barycentric.hpp"
#include "paaa/grid.hpp"

namespace paaa
{

enum class FitMode
{
  Greedy,       // greedy interpolation + least-squares iteration
  FixedSupport  // one-shot solve on a caller-chosen support partition
};

struct FitOptions
{
  double tol = 1e-3;               // relative max-norm stopping tolerance
  std::size_t max_iters = 100;
  std::vector<std::size_t> max_orders;  // optional per-axis cap on k_d - 1; empty = none
  bool weighted = false;           // scale LS rows by 1/d of the previous iterate
  FitMode mode = FitMode::Greedy;
  std::optional<Partition> support;  // required by FitMode::FixedSupport

  void validate(std::size_t dims) const;
};

enum class StopReason
{
  Tolerance,
  MaxIterations,
  MaxOrders,
  AllInterpolated,  // support covers the grid, or nothing above rounding is left to select
  FixedSupport
};

std::string to_string(StopReason reason);

struct TraceRecord
{
  std::size_t iter = 0;
  MultiIndex selected_index;
  std::vector<Complex> selected;
  std::vector<bool> grew;
  Shape counts;  // (k_1, ..., k_D) after the step
  double rel_error = 0.0;
  double sigma_min = 0.0;
};

using FitTrace = std::vector<TraceRecord>;

struct FitResult
{
  BarycentricModel model;
  FitTrace trace;
  StopReason stop = StopReason::Tolerance;
  double rel_error = 0.0;
  double sigma_min = 0.0;
  Partition partition;
  std::vector<std::string> warnings;
};

// A fitted iterate has a pole exactly on a grid tuple.
class FitError : public std::runtime_error
{
public:
  FitError(const std::string &what, MultiIndex tuple)
    : std::runtime_error(what), tuple_(std::move(tuple))
  {
  }
  const MultiIndex &tuple() const { return tuple_; }

private:
  MultiIndex tuple_;
};

struct ErrorReport
{
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::size_t argmax = 0;       // flat grid index of the largest absolute error
  std::vector<double> errors;   // |h - H~| per tuple, row-major
};

ErrorReport error_report(const TensorGrid &grid, const std::vector<Complex> &approx);
ErrorReport error_report(const TensorGrid &grid, const BarycentricModel &model);

// Tuple of largest |h - H~|, ties to the smallest row-major index; nullopt if all zero.
std::optional<MultiIndex> greedy_select(const TensorGrid &grid, const std::vector<Complex> &approx);
std::optional<MultiIndex> greedy_select(const TensorGrid &grid, const BarycentricModel &model);

// Order-0 model equal to the arithmetic mean of the samples.
BarycentricModel mean_model(const TensorGrid &grid);

FitResult fit(const TensorGrid &grid, const FitOptions &opts = {});

struct FixedFit
{
  BarycentricModel model;
  double sigma_min = 0.0;
};

FixedFit interpolate_fixed(const TensorGrid &grid, const Partition &part);

}  // namespace paaa
