#include "paaa/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace paaa::io
{

namespace
{

template <typename F>
auto guarded(const char *what, F &&f) -> decltype(f())
{
  try
  {
    return f();
  }
  catch (const json::exception &e)
  {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const json &field(const json &j, const char *key)
{
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

json axes_to_json(const std::vector<Axis> &axes)
{
  json out = json::array();
  for (const auto &ax : axes)
  {
    json a = json::array();
    for (const auto &z : ax)
      a.push_back(to_json(z));
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Axis> axes_from_json(const json &j)
{
  if (!j.is_array())
    throw ParseError("axes must be an array of arrays");
  std::vector<Axis> axes;
  for (const auto &a : j)
  {
    if (!a.is_array())
      throw ParseError("each axis must be an array of [re, im] pairs");
    Axis ax;
    for (const auto &z : a)
      ax.push_back(complex_from_json(z));
    axes.push_back(std::move(ax));
  }
  return axes;
}

json complex_list(const std::vector<Complex> &v)
{
  json out = json::array();
  for (const auto &z : v)
    out.push_back(to_json(z));
  return out;
}

std::vector<Complex> complex_list_from_json(const json &j)
{
  if (!j.is_array())
    throw ParseError("expected an array of [re, im] pairs");
  std::vector<Complex> v;
  v.reserve(j.size());
  for (const auto &z : j)
    v.push_back(complex_from_json(z));
  return v;
}

json matrix_to_json(const Eigen::MatrixXcd &m)
{
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out.push_back(to_json(m(r, c)));
  return out;
}

Eigen::MatrixXcd matrix_from_json(const json &j, Eigen::Index rows, Eigen::Index cols)
{
  const auto flat = complex_list_from_json(j);
  if (static_cast<Eigen::Index>(flat.size()) != rows * cols)
    throw ParseError("matrix value has " + std::to_string(flat.size()) + " entries, expected " +
                     std::to_string(rows * cols));
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = flat[r * cols + c];
  return m;
}

std::pair<Eigen::Index, Eigen::Index> value_shape(const json &j)
{
  const auto shape = field(j, "value_shape").get<std::vector<long>>();
  if (shape.size() != 2 || shape[0] < 1 || shape[1] < 1)
    throw ParseError("value_shape must be [rows, cols] with positive entries");
  return {shape[0], shape[1]};
}

Shape shape_from_json(const json &j)
{
  const auto raw = field(j, "shape").get<std::vector<long long>>();
  Shape shape;
  for (auto n : raw)
  {
    if (n < 0)
      throw ParseError("negative shape entry");
    shape.push_back(static_cast<std::size_t>(n));
  }
  return shape;
}

std::vector<std::string> split(const std::string &line, char sep)
{
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep))
    out.push_back(cell);
  if (!line.empty() && line.back() == sep)
    out.emplace_back();
  return out;
}

double parse_number(std::string cell)
{
  while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' '))
    cell.pop_back();
  std::size_t start = cell.find_first_not_of(' ');
  if (start == std::string::npos)
    throw ParseError("empty CSV cell");
  double x = 0.0;
  const char *first = cell.data() + start;
  const char *last = cell.data() + cell.size();
  if (*first == '+')
    ++first;
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last)
    throw ParseError("not a number: \"" + cell + "\"");
  return x;
}

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json &j)
{
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex numbers must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const TensorGrid &grid)
{
  return {{"axes", axes_to_json(grid.axes())},
          {"shape", grid.shape()},
          {"values", complex_list(grid.values())}};
}

json to_json(const MatrixTensorGrid &grid)
{
  json values = json::array();
  for (const auto &m : grid.values())
    values.push_back(matrix_to_json(m));
  return {{"axes", axes_to_json(grid.axes())},
          {"shape", grid.shape()},
          {"value_shape", {grid.rows(), grid.cols()}},
          {"values", std::move(values)}};
}

bool is_matrix_document(const json &j) { return j.is_object() && j.contains("value_shape"); }

TensorGrid grid_from_json(const json &j)
{
  return guarded("grid", [&] {
    return make_grid(axes_from_json(field(j, "axes")), complex_list_from_json(field(j, "values")),
                     shape_from_json(j));
  });
}

MatrixTensorGrid matrix_grid_from_json(const json &j)
{
  return guarded("matrix grid", [&] {
    const auto [rows, cols] = value_shape(j);
    std::vector<Eigen::MatrixXcd> values;
    const auto &vals = field(j, "values");
    if (!vals.is_array())
      throw ParseError("values must be an array");
    for (const auto &v : vals)
      values.push_back(matrix_from_json(v, rows, cols));
    if (values.empty())
      throw ParseError("matrix grid has no values");
    return make_matrix_grid(axes_from_json(field(j, "axes")), std::move(values),
                            shape_from_json(j));
  });
}

json to_json(const BarycentricModel &model)
{
  return {{"support_points", axes_to_json(model.support_points())},
          {"support_values", complex_list(model.support_values())},
          {"weights", complex_list(model.weights())}};
}

json to_json(const MatrixBarycentricModel &model)
{
  json values = json::array();
  for (const auto &m : model.support_values())
    values.push_back(matrix_to_json(m));
  return {{"support_points", axes_to_json(model.support_points())},
          {"value_shape", {model.rows(), model.cols()}},
          {"support_values", std::move(values)},
          {"weights", complex_list(model.weights())}};
}

BarycentricModel model_from_json(const json &j)
{
  return guarded("model", [&] {
    return BarycentricModel(axes_from_json(field(j, "support_points")),
                            complex_list_from_json(field(j, "support_values")),
                            complex_list_from_json(field(j, "weights")));
  });
}

MatrixBarycentricModel matrix_model_from_json(const json &j)
{
  return guarded("matrix model", [&] {
    const auto [rows, cols] = value_shape(j);
    std::vector<Eigen::MatrixXcd> values;
    const auto &vals = field(j, "support_values");
    if (!vals.is_array())
      throw ParseError("support_values must be an array");
    for (const auto &v : vals)
      values.push_back(matrix_from_json(v, rows, cols));
    return MatrixBarycentricModel(axes_from_json(field(j, "support_points")), std::move(values),
                                  complex_list_from_json(field(j, "weights")));
  });
}

json to_json(const TraceRecord &rec)
{
  return {{"iter", rec.iter},
          {"selected", complex_list(rec.selected)},
          {"orders", rec.counts},
          {"rel_error", rec.rel_error}};
}

std::string trace_to_jsonl(const FitTrace &trace)
{
  std::string out;
  for (const auto &rec : trace)
    out += to_json(rec).dump() + "\n";
  return out;
}

std::vector<json> read_jsonl(std::istream &in)
{
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line))
  {
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    out.push_back(parse_json(line));
  }
  return out;
}

TensorGrid grid_from_csv(std::istream &in)
{
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("empty CSV file");
  const auto header = split(line, ',');
  if (header.size() < 2)
    throw ParseError("CSV header needs at least one parameter column");
  Axis p;
  for (std::size_t c = 1; c < header.size(); ++c)
    p.emplace_back(parse_number(header[c]));

  Axis s;
  std::vector<Complex> values;
  while (std::getline(in, line))
  {
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size())
      throw ParseError("CSV row " + std::to_string(s.size() + 1) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(header.size()));
    s.emplace_back(parse_number(cells[0]));
    for (std::size_t c = 1; c < cells.size(); ++c)
      values.emplace_back(parse_number(cells[c]));
  }
  if (s.empty())
    throw ParseError("CSV has no data rows");
  try
  {
    return make_grid({std::move(s), std::move(p)}, std::move(values));
  }
  catch (const ParseError &)
  {
    throw;
  }
  catch (const InvalidInput &e)
  {
    throw ParseError(std::string("CSV grid: ") + e.what());
  }
}

void write_csv(std::ostream &out, const TensorGrid &grid)
{
  if (grid.dims() != 2)
    throw InvalidInput("CSV output needs a two-variable grid");
  auto real = [](Complex z) {
    if (z.imag() != 0.0)
      throw InvalidInput("CSV output needs real points and values");
    return format_double(z.real());
  };
  out << "s\\p";
  for (const auto &p : grid.axis(1))
    out << ',' << real(p);
  out << '\n';
  for (std::size_t i = 0; i < grid.axis(0).size(); ++i)
  {
    out << real(grid.axis(0)[i]);
    for (std::size_t j = 0; j < grid.axis(1).size(); ++j)
      out << ',' << real(grid.value(MultiIndex{i, j}));
    out << '\n';
  }
}

std::string format_double(double x)
{
  if (std::isnan(x))
    return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

json parse_json(const std::string &text)
{
  try
  {
    return json::parse(text);
  }
  catch (const json::exception &e)
  {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &content)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out)
    throw std::runtime_error("failed writing " + path);
}

}  // namespace paaa::io
