#pragma once

// Text formats accepted on the command line.
//
// Function specs:
//   power:k=<real>            1 - x^k, k > 0
//   exp:lambda=<real>         exp(-lambda x), lambda > 0
//   log                       ln(2 - x)
//   recip                     1 / (1 + x)
//   trig                      cos(pi x / 2)
//   const:c=<real>            c
//   linear:m=<real>,b=<real>  m x + b (keys in either order)
//   table:@<path>             two-column knot file, linear interpolation
//
// Density specs:
//   uniform | poly:<c0>,<c1>,... | tri:peak=<real> | table:@<path>
//
// Convex specs (karamata): square | exp | absdev:c=<real> | any function spec
//
// <real> is anything std::from_chars accepts for double and must be finite.
// No whitespace is allowed inside a spec.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monobound/functions.hpp"
#include "monobound/majorization.hpp"
#include "monobound/transform.hpp"

namespace monobound::cli {

MonotoneFunction parse_function_spec(std::string_view spec);
Density parse_density_spec(std::string_view spec);
ConvexFunction parse_convex_spec(std::string_view spec);

/// Canonical spec string for a catalog function; "table" for tabulated.
std::string to_spec(const MonotoneFunction& g);

/// Numbers from a JSON array, or separated by commas, semicolons or
/// whitespace. Lines starting with '#' are comments.
std::vector<double> parse_numbers(std::string_view text);
std::vector<double> read_numbers_file(const std::string& path);

/// One "x,y" (or "x y") pair per non-empty, non-comment line.
std::vector<std::pair<double, double>> parse_knots(std::string_view text);
std::vector<std::pair<double, double>> read_knots_file(const std::string& path);

double parse_real(std::string_view token);

}  // namespace monobound::cli
