#include "paaa/fit.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "paaa/loewner.hpp"
#include "paaa/lsq.hpp"

namespace paaa
{

namespace
{

// Tuples whose error sits at rounding level are treated as already converged.
constexpr double kNoiseFloor = 1e2 * std::numeric_limits<double>::epsilon();

double max_abs(const std::vector<Complex> &v)
{
  double m = 0.0;
  for (const auto &z : v)
    m = std::max(m, std::abs(z));
  return m;
}

std::vector<Axis> support_points(const TensorGrid &grid, const Partition &part)
{
  std::vector<Axis> pts(grid.dims());
  for (std::size_t d = 0; d < grid.dims(); ++d)
    for (auto i : part.support(d))
      pts[d].push_back(grid.axis(d)[i]);
  return pts;
}

std::vector<Complex> evaluate_iterate(const TensorGrid &grid, const BarycentricModel &model)
{
  try
  {
    return eval_on_grid(model, grid.axes());
  }
  catch (const EvaluationError &e)
  {
    // Recover the grid tuple behind the failing coordinates.
    MultiIndex tuple(grid.dims());
    for (std::size_t d = 0; d < grid.dims(); ++d)
      for (std::size_t i = 0; i < grid.axis(d).size(); ++i)
        if (grid.axis(d)[i] == e.point()[d])
          tuple[d] = i;
    std::string where;
    for (std::size_t d = 0; d < tuple.size(); ++d)
      where += (d ? "," : "") + std::to_string(tuple[d]);
    throw FitError("fitted model has a pole on grid tuple (" + where + "): " + e.what(),
                   std::move(tuple));
  }
}

void check_weights(const BarycentricModel &model, std::vector<std::string> &warnings,
                   std::size_t iter)
{
  for (std::size_t I = 0; I < model.weights().size(); ++I)
    if (model.weights()[I] == Complex(0.0))
      warnings.push_back("iteration " + std::to_string(iter) + ": weight " + std::to_string(I) +
                         " is exactly zero; its support tuple is not interpolated");
}

}  // namespace

void FitOptions::validate(std::size_t dims) const
{
  if (!(tol > 0.0))
    throw InvalidInput("tol must be positive");
  if (max_iters < 1)
    throw InvalidInput("max_iters must be at least 1");
  if (!max_orders.empty() && max_orders.size() != dims)
    throw InvalidInput("max_orders needs one entry per variable");
  if (mode == FitMode::FixedSupport && !support)
    throw InvalidInput("fixed-support mode needs a support partition");
}

std::string to_string(StopReason reason)
{
  switch (reason)
  {
    case StopReason::Tolerance: return "tolerance";
    case StopReason::MaxIterations: return "max_iters";
    case StopReason::MaxOrders: return "max_orders";
    case StopReason::AllInterpolated: return "all_interpolated";
    case StopReason::FixedSupport: return "fixed_support";
  }
  return "unknown";
}

ErrorReport error_report(const TensorGrid &grid, const std::vector<Complex> &approx)
{
  if (approx.size() != grid.size())
    throw InvalidInput("approximation size does not match the grid");
  ErrorReport rep;
  rep.errors.resize(grid.size());
  double hmax = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    rep.errors[i] = std::abs(grid.value(i) - approx[i]);
    hmax = std::max(hmax, std::abs(grid.value(i)));
    if (rep.errors[i] > rep.max_abs_error)
    {
      rep.max_abs_error = rep.errors[i];
      rep.argmax = i;
    }
  }
  rep.max_rel_error = hmax > 0.0 ? rep.max_abs_error / hmax : rep.max_abs_error;
  return rep;
}

ErrorReport error_report(const TensorGrid &grid, const BarycentricModel &model)
{
  if (model.dims() != grid.dims())
    throw InvalidInput("model and grid differ in the number of variables");
  return error_report(grid, eval_on_grid(model, grid.axes()));
}

std::optional<MultiIndex> greedy_select(const TensorGrid &grid, const std::vector<Complex> &approx)
{
  const auto rep = error_report(grid, approx);
  if (rep.max_abs_error == 0.0)
    return std::nullopt;
  return unravel(rep.argmax, grid.shape());
}

std::optional<MultiIndex> greedy_select(const TensorGrid &grid, const BarycentricModel &model)
{
  return greedy_select(grid, eval_on_grid(model, grid.axes()));
}

BarycentricModel mean_model(const TensorGrid &grid)
{
  const Complex mean = std::accumulate(grid.values().begin(), grid.values().end(), Complex(0.0)) /
                       static_cast<double>(grid.size());
  std::vector<Axis> pts(grid.dims());
  for (std::size_t d = 0; d < grid.dims(); ++d)
    pts[d] = {grid.axis(d).front()};
  return BarycentricModel(std::move(pts), {mean}, {Complex(1.0)});
}

FixedFit interpolate_fixed(const TensorGrid &grid, const Partition &part)
{
  part.validate(grid.shape());
  const auto reduced = assemble_reduced(grid, part);
  const auto sol = min_unit(reduced.r);
  std::vector<Complex> weights(sol.a.data(), sol.a.data() + sol.a.size());
  return {BarycentricModel(support_points(grid, part), support_cross_values(grid, part).data,
                           std::move(weights)),
          sol.sigma_min};
}

FitResult fit(const TensorGrid &grid, const FitOptions &opts)
{
  opts.validate(grid.dims());
  FitResult res;

  if (opts.mode == FitMode::FixedSupport)
  {
    auto fixed = interpolate_fixed(grid, *opts.support);
    res.model = std::move(fixed.model);
    res.sigma_min = fixed.sigma_min;
    res.partition = *opts.support;
    res.rel_error = error_report(grid, evaluate_iterate(grid, res.model)).max_rel_error;
    res.stop = StopReason::FixedSupport;
    check_weights(res.model, res.warnings, 0);
    return res;
  }

  const std::size_t D = grid.dims();
  const double hmax = max_abs(grid.values());
  Partition part(D);
  res.model = mean_model(grid);
  std::vector<Complex> approx(grid.size(), res.model.support_values().front());
  auto report = error_report(grid, approx);
  res.rel_error = report.max_rel_error;

  // Weighting uses the previous rational iterate; the mean surrogate has no denominator.
  bool have_rational = false;

  while (res.rel_error > opts.tol)
  {
    if (res.trace.size() >= opts.max_iters)
    {
      res.stop = StopReason::MaxIterations;
      break;
    }

    // Greedy pick over tuples that still need fitting and whose growth respects the caps.
    const auto lookup = detail::support_lookup(part, grid.shape());
    const Shape counts = part.counts();
    std::optional<std::size_t> pick;
    bool capped = false;
    for (std::size_t flat = 0; flat < grid.size(); ++flat)
    {
      const auto idx = unravel(flat, grid.shape());
      bool in_support = true, allowed = true;
      for (std::size_t d = 0; d < D; ++d)
        if (lookup[d][idx[d]] < 0)
        {
          in_support = false;
          if (!opts.max_orders.empty() && counts[d] >= opts.max_orders[d] + 1)
            allowed = false;
        }
      if (in_support)
        continue;
      if (!allowed)
      {
        capped = true;
        continue;
      }
      if (!pick || report.errors[flat] > report.errors[*pick])
        pick = flat;
    }
    if (!pick)
    {
      res.stop = capped ? StopReason::MaxOrders : StopReason::AllInterpolated;
      break;
    }
    if (report.errors[*pick] <= kNoiseFloor * hmax)
    {
      res.stop = StopReason::AllInterpolated;
      break;
    }

    TraceRecord rec;
    rec.iter = res.trace.size() + 1;
    rec.selected_index = unravel(*pick, grid.shape());
    rec.selected = grid.point(rec.selected_index);
    rec.grew.assign(D, false);
    for (std::size_t d = 0; d < D; ++d)
      if (!part.contains(d, rec.selected_index[d]))
      {
        part = add_support(part, d, rec.selected_index[d]);
        rec.grew[d] = true;
      }

    const auto pts = support_points(grid, part);
    auto values = support_cross_values(grid, part).data;
    std::vector<Complex> weights;
    if (values.size() == grid.size())
    {
      // Nothing left for least squares: any nonzero weights interpolate every sample.
      weights.assign(values.size(), Complex(1.0 / std::sqrt(static_cast<double>(values.size()))));
      rec.sigma_min = 0.0;
    }
    else
    {
      const auto reduced =
        assemble_reduced(grid, part, opts.weighted && have_rational ? &res.model : nullptr);
      const auto sol = min_unit(reduced.r);
      weights.assign(sol.a.data(), sol.a.data() + sol.a.size());
      rec.sigma_min = sol.sigma_min;
    }

    res.model = BarycentricModel(pts, std::move(values), std::move(weights));
    have_rational = true;
    check_weights(res.model, res.warnings, rec.iter);
    approx = evaluate_iterate(grid, res.model);
    report = error_report(grid, approx);
    res.rel_error = report.max_rel_error;
    res.sigma_min = rec.sigma_min;

    rec.counts = part.counts();
    rec.rel_error = res.rel_error;
    res.trace.push_back(std::move(rec));

    if (element_count(part.counts()) == grid.size() && res.rel_error > opts.tol)
    {
      res.stop = StopReason::AllInterpolated;
      break;
    }
  }
  if (res.rel_error <= opts.tol)
    res.stop = StopReason::Tolerance;
  res.partition = part;
  return res;
}

}  // namespace paaa
