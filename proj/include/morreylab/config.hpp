#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "morreylab/experiments.hpp"
#include "morreylab/geometry.hpp"
#include "morreylab/kernels.hpp"
#include "morreylab/weights.hpp"

namespace morreylab::config {

// Malformed or missing configuration; the CLI maps this to exit code 2
// (numeric precondition violations surface as std::invalid_argument and
// map to exit code 3).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

json load_file(const std::string& path);

// Exponents may be numbers or the string "inf".
double parse_exponent(const json& j, const std::string& key);

Grid parse_grid(const json& j);
HomogeneousKernel parse_kernel(const json& j);
Weight parse_weight(const json& j);
BallFamily parse_ball_family(const json& j, const Grid& grid);
TestFamily parse_test_family(const json& j);
SampledFunction parse_function(const json& j, const Grid& grid);

// Serialization helpers; non-finite doubles become the strings
// "inf" / "-inf" / "nan" so reports stay valid JSON.
json number_or_string(double v);
json report_to_json(const RatioReport& rep);
std::string report_to_csv(const RatioReport& rep);

} // namespace morreylab::config
