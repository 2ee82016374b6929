#include "monobound/cli/specs.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "monobound/error.hpp"

namespace monobound::cli {
namespace {

[[noreturn]] void fail(const std::string& message) {
  throw Error(ErrorCode::ParseError, message);
}

std::pair<std::string_view, std::string_view> split_head(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) return {spec, {}};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// key=value pairs; every expected key exactly once, nothing else.
std::map<std::string, double> parse_params(std::string_view params,
                                           std::initializer_list<std::string_view> keys,
                                           std::string_view spec) {
  std::map<std::string, double> out;
  if (params.empty()) fail(fmt::format("spec '{}' is missing parameters", spec));
  for (auto part : split(params, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) fail(fmt::format("expected key=value in '{}'", spec));
    const std::string key(part.substr(0, eq));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      fail(fmt::format("unknown parameter '{}' in '{}'", key, spec));
    }
    if (!out.emplace(key, parse_real(part.substr(eq + 1))).second) {
      fail(fmt::format("parameter '{}' repeated in '{}'", key, spec));
    }
  }
  for (auto k : keys) {
    if (!out.contains(std::string(k))) fail(fmt::format("parameter '{}' missing in '{}'", k, spec));
  }
  return out;
}

void require_no_params(std::string_view name, std::string_view params, std::string_view spec) {
  if (!params.empty() || spec.size() != name.size()) {
    fail(fmt::format("spec '{}' takes no parameters", name));
  }
}

std::string file_path(std::string_view params, std::string_view spec) {
  if (params.size() < 2 || params.front() != '@') {
    fail(fmt::format("expected table:@<path> in '{}'", spec));
  }
  return std::string(params.substr(1));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_blank_or_comment(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#';
}

}  // namespace

double parse_real(std::string_view token) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (!token.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    fail(fmt::format("'{}' is not a number", token));
  }
  if (!std::isfinite(value)) fail(fmt::format("'{}' is not finite", token));
  return value;
}

MonotoneFunction parse_function_spec(std::string_view spec) {
  const auto [name, params] = split_head(spec);
  if (name == "power") {
    return MonotoneFunction::power_complement(parse_params(params, {"k"}, spec).at("k"));
  }
  if (name == "exp") {
    return MonotoneFunction::exponential(parse_params(params, {"lambda"}, spec).at("lambda"));
  }
  if (name == "log") {
    require_no_params(name, params, spec);
    return MonotoneFunction::logarithmic();
  }
  if (name == "recip") {
    require_no_params(name, params, spec);
    return MonotoneFunction::reciprocal();
  }
  if (name == "trig") {
    require_no_params(name, params, spec);
    return MonotoneFunction::trigonometric();
  }
  if (name == "const") {
    return MonotoneFunction::constant(parse_params(params, {"c"}, spec).at("c"));
  }
  if (name == "linear") {
    const auto p = parse_params(params, {"m", "b"}, spec);
    return MonotoneFunction::linear(p.at("m"), p.at("b"));
  }
  if (name == "table") {
    return MonotoneFunction::tabulated(read_knots_file(file_path(params, spec)));
  }
  fail(fmt::format("unknown function spec '{}'", spec));
}

Density parse_density_spec(std::string_view spec) {
  const auto [name, params] = split_head(spec);
  if (name == "uniform") {
    require_no_params(name, params, spec);
    return Density::uniform();
  }
  if (name == "poly") {
    if (params.empty()) fail("poly density needs coefficients");
    std::vector<double> coefficients;
    for (auto part : split(params, ',')) coefficients.push_back(parse_real(part));
    return Density::polynomial(std::move(coefficients));
  }
  if (name == "tri") {
    return Density::triangular(parse_params(params, {"peak"}, spec).at("peak"));
  }
  if (name == "table") {
    return Density::tabulated(read_knots_file(file_path(params, spec)));
  }
  fail(fmt::format("unknown density spec '{}'", spec));
}

ConvexFunction parse_convex_spec(std::string_view spec) {
  if (spec == "square") return ConvexFunction::square();
  if (spec == "exp") return ConvexFunction::exp();
  const auto [name, params] = split_head(spec);
  if (name == "absdev") {
    return ConvexFunction::abs_deviation(parse_params(params, {"c"}, spec).at("c"));
  }
  return ConvexFunction::restricted(parse_function_spec(spec));
}

std::string to_spec(const MonotoneFunction& g) {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, kinds::PowerComplement>) {
          return fmt::format("power:k={}", k.k);
        } else if constexpr (std::is_same_v<T, kinds::Exponential>) {
          return fmt::format("exp:lambda={}", k.lambda);
        } else if constexpr (std::is_same_v<T, kinds::Logarithmic>) {
          return "log";
        } else if constexpr (std::is_same_v<T, kinds::Reciprocal>) {
          return "recip";
        } else if constexpr (std::is_same_v<T, kinds::Trigonometric>) {
          return "trig";
        } else if constexpr (std::is_same_v<T, kinds::Constant>) {
          return fmt::format("const:c={}", k.c);
        } else if constexpr (std::is_same_v<T, kinds::Linear>) {
          return fmt::format("linear:m={},b={}", k.m, k.b);
        } else {
          return "table";
        }
      },
      g.kind());
}

std::vector<double> parse_numbers(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      fail(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) fail("expected a JSON array of numbers");
    std::vector<double> out;
    for (const auto& v : doc) {
      if (!v.is_number()) fail("JSON array contains a non-number");
      out.push_back(v.get<double>());
    }
    return out;
  }
  std::vector<double> out;
  for (auto line : split(text, '\n')) {
    if (is_blank_or_comment(line)) continue;
    std::size_t pos = 0;
    while (pos < line.size()) {
      const auto start = line.find_first_not_of(" \t\r,;", pos);
      if (start == std::string_view::npos) break;
      auto stop = line.find_first_of(" \t\r,;", start);
      if (stop == std::string_view::npos) stop = line.size();
      out.push_back(parse_real(line.substr(start, stop - start)));
      pos = stop;
    }
  }
  return out;
}

std::vector<double> read_numbers_file(const std::string& path) {
  return parse_numbers(read_file(path));
}

std::vector<std::pair<double, double>> parse_knots(std::string_view text) {
  std::vector<std::pair<double, double>> knots;
  for (auto line : split(text, '\n')) {
    if (is_blank_or_comment(line)) continue;
    const auto values = parse_numbers(line);
    if (values.size() != 2) fail(fmt::format("expected two columns in '{}'", line));
    knots.emplace_back(values[0], values[1]);
  }
  return knots;
}

std::vector<std::pair<double, double>> read_knots_file(const std::string& path) {
  return parse_knots(read_file(path));
}

}  // namespace monobound::cli
