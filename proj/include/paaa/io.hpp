#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "paaa/barycentric.hpp"
#include "paaa/fit.hpp"
#include "paaa/grid.hpp"

namespace paaa::io
{

using nlohmann::json;

// Malformed file content.
class ParseError : public InvalidInput
{
public:
  using InvalidInput::InvalidInput;
};

// Complex numbers are always [re, im] pairs.
json to_json(Complex z);
Complex complex_from_json(const json &j);

// {"axes": [[[re,im],...],...], "shape": [...], "values": [[re,im],...]}
// Matrix grids add "value_shape": [rows, cols]; each value is then a row-major list of
// rows*cols [re,im] pairs.
json to_json(const TensorGrid &grid);
json to_json(const MatrixTensorGrid &grid);
TensorGrid grid_from_json(const json &j);
MatrixTensorGrid matrix_grid_from_json(const json &j);
bool is_matrix_document(const json &j);

// {"support_points": ..., "support_values": ..., "weights": ...}, plus "value_shape" for
// matrix models.
json to_json(const BarycentricModel &model);
json to_json(const MatrixBarycentricModel &model);
BarycentricModel model_from_json(const json &j);
MatrixBarycentricModel matrix_model_from_json(const json &j);

// One JSON object per line: {"iter", "selected", "orders", "rel_error"}; "orders" holds the
// support counts k_d after the step.
json to_json(const TraceRecord &rec);
std::string trace_to_jsonl(const FitTrace &trace);
std::vector<json> read_jsonl(std::istream &in);

// Two-variable real grids: first row = p samples (leading cell ignored), first column =
// s samples, body = real values.
TensorGrid grid_from_csv(std::istream &in);
void write_csv(std::ostream &out, const TensorGrid &grid);

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

json parse_json(const std::string &text);
std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &content);

}  // namespace paaa::io
