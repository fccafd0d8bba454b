#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "paaa/fit.hpp"
#include "paaa/io.hpp"
#include "paaa/loewner.hpp"
#include "paaa/mimo.hpp"
#include "paaa/models.hpp"

namespace paaa::cli
{

namespace
{

using io::json;
using AnyGrid = std::variant<TensorGrid, MatrixTensorGrid>;
using AnyModel = std::variant<BarycentricModel, MatrixBarycentricModel>;

struct RunConfig
{
  std::string problem = "synthetic";
  std::string input, output, model_out, trace_out, model, grid, reference, loewner_csv;
  std::string format;
  double tol = 1e-3;
  std::size_t max_iters = 100;
  std::vector<std::size_t> max_orders;
  std::string mode = "paaa";
  bool weighted = false;
  std::uint64_t seed = 0;
  std::string support;
  std::vector<std::string> axes;
  std::size_t state_dim = 6, outputs = 2, inputs = 2;
};

bool ends_with(const std::string &s, const std::string &suffix)
{
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split(const std::string &s, char sep)
{
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, sep))
    out.push_back(item);
  if (!s.empty() && s.back() == sep)
    out.emplace_back();
  return out;
}

double to_double(const std::string &s)
{
  try
  {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size())
      throw InvalidInput("");
    return x;
  }
  catch (const std::exception &)
  {
    throw InvalidInput("not a number: \"" + s + "\"");
  }
}

std::size_t to_index(const std::string &s)
{
  const double x = to_double(s);
  if (x < 0 || x != std::floor(x))
    throw InvalidInput("not an index: \"" + s + "\"");
  return static_cast<std::size_t>(x);
}

// "lin:LO:HI:N", "log:LO:HI:N" or "list:V1,V2,..."; an "i" prefix puts the points on the
// imaginary axis.
Axis parse_axis(const std::string &spec)
{
  const auto parts = split(spec, ':');
  if (parts.empty())
    throw InvalidInput("empty axis specification");
  std::string kind = parts[0];
  bool imaginary = false;
  if (kind.size() > 1 && kind[0] == 'i')
  {
    imaginary = true;
    kind = kind.substr(1);
  }
  Axis ax;
  if ((kind == "lin" || kind == "log") && parts.size() == 4)
  {
    const double lo = to_double(parts[1]), hi = to_double(parts[2]);
    const std::size_t n = to_index(parts[3]);
    if (n == 0)
      throw InvalidInput("axis needs at least one point");
    ax = kind == "lin" ? models::linspace(lo, hi, n) : models::logspace(lo, hi, n);
  }
  else if (kind == "list" && parts.size() == 2)
  {
    for (const auto &v : split(parts[1], ','))
      ax.emplace_back(to_double(v));
  }
  else
    throw InvalidInput("bad axis specification \"" + spec + "\"");
  return imaginary ? models::on_imaginary_axis(std::move(ax)) : ax;
}

// "i0,i1;j0;k0,k1" -> per-axis support indices.
Partition parse_support(const std::string &spec, std::size_t dims)
{
  const auto groups = split(spec, ';');
  if (groups.size() != dims)
    throw InvalidInput("--support needs " + std::to_string(dims) + " ';'-separated index lists");
  std::vector<std::vector<std::size_t>> support;
  for (const auto &g : groups)
  {
    std::vector<std::size_t> idx;
    if (!g.empty())
      for (const auto &v : split(g, ','))
        idx.push_back(to_index(v));
    support.push_back(std::move(idx));
  }
  return Partition(std::move(support));
}

AnyGrid load_grid(const std::string &path)
{
  const auto text = io::read_file(path);
  if (ends_with(path, ".csv"))
  {
    std::istringstream in(text);
    return io::grid_from_csv(in);
  }
  const auto doc = io::parse_json(text);
  if (io::is_matrix_document(doc))
    return io::matrix_grid_from_json(doc);
  return io::grid_from_json(doc);
}

AnyModel load_model(const std::string &path)
{
  const auto doc = io::parse_json(io::read_file(path));
  if (io::is_matrix_document(doc))
    return io::matrix_model_from_json(doc);
  return io::model_from_json(doc);
}

void write_or_print(const std::string &path, const std::string &content, std::ostream &out)
{
  if (path.empty() || path == "-")
    out << content;
  else
    io::write_file(path, content);
}

json complex_array(const std::vector<Complex> &v)
{
  json a = json::array();
  for (const auto &z : v)
    a.push_back(io::to_json(z));
  return a;
}

json vector_to_json(const Eigen::VectorXcd &v)
{
  return complex_array(std::vector<Complex>(v.data(), v.data() + v.size()));
}

// Largest Frobenius-norm deviation relative to the largest sample norm.
struct MatrixError
{
  double max_rel_error = 0.0, max_abs_error = 0.0;
  std::size_t argmax = 0;
};

MatrixError matrix_error(const MatrixTensorGrid &grid, const MatrixBarycentricModel &model)
{
  MatrixError e;
  double hmax = 0.0;
  for (std::size_t flat = 0; flat < grid.size(); ++flat)
  {
    const auto idx = unravel(flat, grid.shape());
    std::vector<Complex> x(grid.dims());
    for (std::size_t d = 0; d < grid.dims(); ++d)
      x[d] = grid.axes()[d][idx[d]];
    const double err = (grid.value(flat) - eval_matrix(model, x)).norm();
    hmax = std::max(hmax, grid.value(flat).norm());
    if (err > e.max_abs_error)
    {
      e.max_abs_error = err;
      e.argmax = flat;
    }
  }
  e.max_rel_error = hmax > 0.0 ? e.max_abs_error / hmax : e.max_abs_error;
  return e;
}

std::string loewner_csv(const LoewnerSystem &sys)
{
  std::ostringstream out;
  const std::size_t dims = sys.row_map.empty() ? 0 : sys.row_map.front().size();
  for (std::size_t d = 0; d < dims; ++d)
    out << (d ? "," : "") << "i" << d;
  for (Eigen::Index c = 0; c < sys.matrix.cols(); ++c)
    out << ",c" << c << "_re,c" << c << "_im";
  out << '\n';
  for (std::size_t r = 0; r < sys.row_map.size(); ++r)
  {
    for (std::size_t d = 0; d < dims; ++d)
      out << (d ? "," : "") << sys.row_map[r][d];
    for (Eigen::Index c = 0; c < sys.matrix.cols(); ++c)
      out << ',' << io::format_double(sys.matrix(r, c).real()) << ','
          << io::format_double(sys.matrix(r, c).imag());
    out << '\n';
  }
  return out.str();
}

FitOptions fit_options(const RunConfig &cfg, std::size_t dims)
{
  FitOptions opts;
  opts.tol = cfg.tol;
  opts.max_iters = cfg.max_iters;
  opts.max_orders = cfg.max_orders;
  opts.weighted = cfg.weighted;
  if (cfg.mode == "interp")
  {
    opts.mode = FitMode::FixedSupport;
    if (cfg.support.empty())
      throw InvalidInput("--mode interp needs --support");
    opts.support = parse_support(cfg.support, dims);
  }
  else if (cfg.mode != "paaa")
    throw InvalidInput("unknown mode \"" + cfg.mode + "\"");
  opts.validate(dims);
  return opts;
}

json summary_of(const FitResult &res)
{
  json warnings = json::array();
  for (const auto &w : res.warnings)
    warnings.push_back(w);
  return {{"stop_reason", to_string(res.stop)},
          {"iterations", res.trace.size()},
          {"support_counts", res.model.shape()},
          {"orders", orders(res.model)},
          {"rel_error", res.rel_error},
          {"sigma_min", res.sigma_min},
          {"warnings", std::move(warnings)}};
}

int cmd_generate(const RunConfig &cfg, std::ostream &out)
{
  std::vector<Axis> axes;
  for (const auto &spec : cfg.axes)
    axes.push_back(parse_axis(spec));
  auto axes_or = [&](std::vector<Axis> defaults) {
    if (axes.empty())
      return defaults;
    if (axes.size() != defaults.size())
      throw InvalidInput("problem \"" + cfg.problem + "\" needs " +
                         std::to_string(defaults.size()) + " --axis options");
    return axes;
  };

  std::string content;
  const bool csv = cfg.format == "csv" || (cfg.format.empty() && ends_with(cfg.output, ".csv"));
  auto emit = [&](const TensorGrid &grid) {
    if (csv)
    {
      std::ostringstream ss;
      io::write_csv(ss, grid);
      content = ss.str();
    }
    else
      content = io::to_json(grid).dump() + "\n";
  };

  if (cfg.problem == "synthetic")
  {
    emit(axes.empty() ? models::synthetic_grid()
                      : models::sample(axes_or(std::vector<Axis>(2)),
                                       [](std::span<const Complex> x) {
                                         return models::synthetic_2var(x[0], x[1]);
                                       }));
  }
  else if (cfg.problem == "penzl2")
  {
    emit(axes.empty() ? models::penzl2_grid()
                      : models::sample(axes_or(std::vector<Axis>(2)),
                                       [](std::span<const Complex> x) {
                                         return models::penzl_2var(x[0], x[1]);
                                       }));
  }
  else if (cfg.problem == "penzl3")
  {
    if (axes.empty())
      emit(models::penzl3_grid());
    else
      emit(models::sample(axes_or(std::vector<Axis>(3)), [](std::span<const Complex> x) {
        return models::penzl_3var(x[0], x[1], x[2]);
      }));
  }
  else if (cfg.problem == "mimo")
  {
    if (csv)
      throw InvalidInput("matrix grids have no CSV form");
    const auto sys = models::random_parametric_mimo(cfg.state_dim, cfg.outputs, cfg.inputs, cfg.seed);
    const auto grid = models::sample_matrix(
      axes_or({models::on_imaginary_axis(models::logspace(0.1, 100, 40)), models::linspace(0, 1, 10)}),
      [&](std::span<const Complex> x) { return sys(x[0], x[1]); });
    content = io::to_json(grid).dump() + "\n";
  }
  else
    throw InvalidInput("unknown problem \"" + cfg.problem + "\"");

  write_or_print(cfg.output, content, out);
  return kOk;
}

int cmd_fit(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
  const AnyGrid any = load_grid(cfg.input);
  std::string model_text, trace_text;
  json summary;
  std::optional<LoewnerSystem> dump;

  auto maybe_dump = [&](const TensorGrid &grid, const Partition &part) {
    if (cfg.loewner_csv.empty())
      return;
    const auto counts = part.counts();
    if (std::find(counts.begin(), counts.end(), 0) != counts.end() ||
        element_count(counts) == grid.size())
    {
      err << "warning: no Loewner system to dump for this partition\n";
      return;
    }
    dump = assemble(grid, part);
  };

  if (const auto *grid = std::get_if<TensorGrid>(&any))
  {
    const auto opts = fit_options(cfg, grid->dims());
    const auto res = fit(*grid, opts);
    model_text = io::to_json(res.model).dump() + "\n";
    trace_text = io::trace_to_jsonl(res.trace);
    summary = summary_of(res);
    summary["mode"] = cfg.mode;
    maybe_dump(*grid, res.partition);
  }
  else
  {
    const auto &mgrid = std::get<MatrixTensorGrid>(any);
    const auto opts = fit_options(cfg, mgrid.dims());
    const auto sc = make_scalarizer(mgrid.rows(), mgrid.cols(), cfg.seed);
    const auto res = mimo_fit(mgrid, opts, sc);
    model_text = io::to_json(res.model).dump() + "\n";
    trace_text = io::trace_to_jsonl(res.scalar.trace);
    summary = summary_of(res.scalar);
    summary["mode"] = cfg.mode;
    summary["seed"] = cfg.seed;
    summary["w"] = vector_to_json(sc.w);
    summary["v"] = vector_to_json(sc.v);
    summary["matrix_rel_error"] = matrix_error(mgrid, res.model).max_rel_error;
    maybe_dump(scalarize(mgrid, sc), res.scalar.partition);
  }

  if (!cfg.model_out.empty())
    io::write_file(cfg.model_out, model_text);
  if (!cfg.trace_out.empty())
    io::write_file(cfg.trace_out, trace_text);
  if (dump)
    io::write_file(cfg.loewner_csv, loewner_csv(*dump));
  out << summary.dump() << '\n';
  return kOk;
}

int cmd_eval(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
  const AnyModel model = load_model(cfg.model);
  const bool is_matrix = std::holds_alternative<MatrixBarycentricModel>(model);
  const std::size_t dims = std::visit([](const auto &m) { return m.dims(); }, model);

  std::optional<AnyGrid> ref;
  std::vector<Axis> axes;
  if (!cfg.reference.empty())
  {
    if (!cfg.axes.empty())
      throw InvalidInput("use either --axis or --reference, not both");
    ref = load_grid(cfg.reference);
    if (std::holds_alternative<MatrixTensorGrid>(*ref) != is_matrix)
      throw InvalidInput("reference grid and model differ in value type");
    axes = std::visit([](const auto &g) { return g.axes(); }, *ref);
  }
  else
  {
    for (const auto &spec : cfg.axes)
      axes.push_back(parse_axis(spec));
  }
  if (axes.size() != dims)
    throw InvalidInput("sweep has " + std::to_string(axes.size()) + " axes, model has " +
                       std::to_string(dims) + " variables");

  Eigen::Index rows = 1, cols = 1;
  if (is_matrix)
  {
    rows = std::get<MatrixBarycentricModel>(model).rows();
    cols = std::get<MatrixBarycentricModel>(model).cols();
  }
  if (ref && is_matrix)
  {
    const auto &g = std::get<MatrixTensorGrid>(*ref);
    if (g.rows() != rows || g.cols() != cols)
      throw InvalidInput("reference matrices differ in shape from the model");
  }

  std::ostringstream csv;
  for (std::size_t d = 0; d < dims; ++d)
    csv << (d ? "," : "") << "x" << d << "_re,x" << d << "_im";
  if (is_matrix)
  {
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c)
        csv << ",h" << r << "_" << c << "_re,h" << r << "_" << c << "_im";
  }
  else
    csv << ",re,im";
  if (ref)
    csv << ",abs_error";
  csv << '\n';

  Shape shape;
  for (const auto &ax : axes)
    shape.push_back(ax.size());
  std::size_t failures = 0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t flat = 0; flat < element_count(shape); ++flat)
  {
    const auto idx = unravel(flat, shape);
    std::vector<Complex> x(dims);
    for (std::size_t d = 0; d < dims; ++d)
    {
      x[d] = axes[d][idx[d]];
      csv << (d ? "," : "") << io::format_double(x[d].real()) << ','
          << io::format_double(x[d].imag());
    }
    Eigen::MatrixXcd value = Eigen::MatrixXcd::Constant(rows, cols, Complex(nan, nan));
    bool ok = true;
    try
    {
      if (is_matrix)
        value = eval_matrix(std::get<MatrixBarycentricModel>(model), x);
      else
        value(0, 0) = eval(std::get<BarycentricModel>(model), x);
    }
    catch (const EvaluationError &)
    {
      ok = false;
      ++failures;
    }
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c)
        csv << ',' << io::format_double(value(r, c).real()) << ','
            << io::format_double(value(r, c).imag());
    if (ref)
    {
      double e = nan;
      if (ok)
      {
        if (is_matrix)
          e = (std::get<MatrixTensorGrid>(*ref).value(flat) - value).norm();
        else
          e = std::abs(std::get<TensorGrid>(*ref).value(flat) - value(0, 0));
      }
      csv << ',' << io::format_double(e);
    }
    csv << '\n';
  }
  write_or_print(cfg.output, csv.str(), out);
  if (failures > 0)
    err << "warning: " << failures << " evaluation failure(s) (poles); rows hold nan\n";
  return kOk;
}

int cmd_report(const RunConfig &cfg, std::ostream &out)
{
  const AnyModel model = load_model(cfg.model);
  const AnyGrid grid = load_grid(cfg.grid);
  const std::size_t model_dims = std::visit([](const auto &m) { return m.dims(); }, model);
  const std::size_t grid_dims = std::visit([](const auto &g) { return g.dims(); }, grid);
  if (model_dims != grid_dims)
    throw InvalidInput("model has " + std::to_string(model_dims) + " variables, grid has " +
                       std::to_string(grid_dims));
  if ((model.index() == 1) != (grid.index() == 1))
    throw InvalidInput("model and grid differ in value type (scalar vs matrix)");

  json rep;
  Shape grid_shape;
  std::vector<Axis> grid_axes;
  std::size_t argmax = 0;
  if (model.index() == 0)
  {
    const auto &g = std::get<TensorGrid>(grid);
    const auto e = error_report(g, std::get<BarycentricModel>(model));
    rep["max_rel_error"] = e.max_rel_error;
    rep["max_abs_error"] = e.max_abs_error;
    argmax = e.argmax;
    grid_shape = g.shape();
    grid_axes = g.axes();
    rep["orders"] = orders(std::get<BarycentricModel>(model));
  }
  else
  {
    const auto &g = std::get<MatrixTensorGrid>(grid);
    const auto &m = std::get<MatrixBarycentricModel>(model);
    if (g.rows() != m.rows() || g.cols() != m.cols())
      throw InvalidInput("model and grid matrices differ in shape");
    const auto e = matrix_error(g, m);
    rep["max_rel_error"] = e.max_rel_error;
    rep["max_abs_error"] = e.max_abs_error;
    argmax = e.argmax;
    grid_shape = g.shape();
    grid_axes = g.axes();
    rep["orders"] = orders(m);
  }
  const auto idx = unravel(argmax, grid_shape);
  std::vector<Complex> x;
  for (std::size_t d = 0; d < idx.size(); ++d)
    x.push_back(grid_axes[d][idx[d]]);
  rep["argmax_index"] = idx;
  rep["argmax_point"] = complex_array(x);
  out << rep.dump() << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Parametric AAA rational approximation of sampled multivariate functions"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto *gen = app.add_subcommand("generate", "Sample a benchmark function on a grid");
  gen->add_option("--problem", cfg.problem, "synthetic | penzl2 | penzl3 | mimo")
    ->capture_default_str();
  gen->add_option("--axis", cfg.axes,
                  "Override sampling axes in variable order: lin:LO:HI:N, log:LO:HI:N, "
                  "list:V1,V2,... (prefix i for imaginary points)");
  gen->add_option("--out", cfg.output, "Output file (default stdout)");
  gen->add_option("--format", cfg.format, "json | csv (default from extension)");
  gen->add_option("--seed", cfg.seed, "Seed of the mimo state space")->capture_default_str();
  gen->add_option("--state-dim", cfg.state_dim)->capture_default_str();
  gen->add_option("--outputs", cfg.outputs)->capture_default_str();
  gen->add_option("--inputs", cfg.inputs)->capture_default_str();

  auto *fitc = app.add_subcommand("fit", "Fit a barycentric rational model to a sampled grid");
  fitc->add_option("--input", cfg.input, "Grid file (.json, or .csv for real 2-variable data)")
    ->required();
  fitc->add_option("--model-out", cfg.model_out, "Model JSON output");
  fitc->add_option("--trace-out", cfg.trace_out, "Per-iteration trace, JSON lines");
  fitc->add_option("--tol", cfg.tol, "Relative max-norm tolerance")->capture_default_str();
  fitc->add_option("--max-iters", cfg.max_iters)->capture_default_str();
  fitc->add_option("--max-orders", cfg.max_orders, "Per-variable order caps")->delimiter(',');
  fitc->add_option("--mode", cfg.mode, "paaa | interp")->capture_default_str();
  fitc->add_option("--support", cfg.support,
                   "Support indices for --mode interp, e.g. \"0,4;2\" (';' between variables)");
  fitc->add_flag("--weighted", cfg.weighted, "Weight LS rows by 1/d of the previous iterate");
  fitc->add_option("--seed", cfg.seed, "Seed of the scalarizing vectors (matrix data)")
    ->capture_default_str();
  fitc->add_option("--loewner-csv", cfg.loewner_csv, "Dump the final Loewner matrix as CSV");

  auto *evalc = app.add_subcommand("eval", "Evaluate a model on a tensor sweep");
  evalc->add_option("--model", cfg.model)->required();
  evalc->add_option("--axis", cfg.axes, "Sweep axes, same syntax as generate --axis");
  evalc->add_option("--reference", cfg.reference, "Sweep the axes of this grid and add abs_error");
  evalc->add_option("--out", cfg.output, "CSV output (default stdout)");

  auto *rep = app.add_subcommand("report", "Error of a model against a sampled grid");
  rep->add_option("--model", cfg.model)->required();
  rep->add_option("--grid", cfg.grid)->required();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try
  {
    if (*gen)
      return cmd_generate(cfg, out);
    if (*fitc)
      return cmd_fit(cfg, out, err);
    if (*evalc)
      return cmd_eval(cfg, out, err);
    return cmd_report(cfg, out);
  }
  catch (const FitError &e)
  {
    err << "fit failed: " << e.what() << '\n';
    return kFitError;
  }
  catch (const EvaluationError &e)
  {
    err << "evaluation failed: " << e.what() << '\n';
    return kFitError;
  }
  catch (const InvalidInput &e)
  {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  catch (const std::exception &e)
  {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace paaa::cli
