#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace monobound {

enum class Direction { decreasing, increasing, constant, non_monotone };

std::string_view to_string(Direction d);

namespace kinds {
struct PowerComplement { double k; };     // 1 - x^k
struct Exponential { double lambda; };    // exp(-lambda x)
struct Logarithmic {};                    // ln(2 - x)
struct Reciprocal {};                     // 1 / (1 + x)
struct Trigonometric {};                  // cos(pi x / 2)
struct Constant { double c; };
struct Linear { double m; double b; };    // m x + b
struct Tabulated {
  std::vector<double> x;  // strictly increasing, x.front() == 0, x.back() == 1
  std::vector<double> y;
};
}  // namespace kinds

/// A real function on [0,1] together with its analytically known
/// monotonicity. Catalog kinds carry exact directions; tabulated functions
/// derive theirs from the knot values, which is exact for the piecewise
/// linear interpolant.
class MonotoneFunction {
 public:
  using Kind = std::variant<kinds::PowerComplement, kinds::Exponential, kinds::Logarithmic,
                            kinds::Reciprocal, kinds::Trigonometric, kinds::Constant,
                            kinds::Linear, kinds::Tabulated>;

  static MonotoneFunction power_complement(double k);
  static MonotoneFunction exponential(double lambda);
  static MonotoneFunction logarithmic();
  static MonotoneFunction reciprocal();
  static MonotoneFunction trigonometric();
  static MonotoneFunction constant(double c);
  static MonotoneFunction linear(double m, double b);
  static MonotoneFunction tabulated(std::vector<std::pair<double, double>> samples);

  const Kind& kind() const { return kind_; }
  Direction direction() const { return direction_; }
  bool strictly_monotone() const { return strict_; }

  /// Throws DomainViolation outside [0,1].
  double operator()(double x) const;

  /// Interior points where the function has kinks (tabulated knots).
  std::span<const double> kinks() const;

  /// Human-readable formula, e.g. "1 - x^2".
  std::string formula() const;

 private:
  MonotoneFunction(Kind kind, Direction direction, bool strict)
      : kind_(std::move(kind)), direction_(direction), strict_(strict) {}

  Kind kind_;
  Direction direction_;
  bool strict_;
};

inline double evaluate(const MonotoneFunction& g, double x) { return g(x); }

/// Analytic value of the integral over [0,1]; empty for tabulated functions.
std::optional<double> closed_form_integral(const MonotoneFunction& g);

/// Adaptive quadrature estimate of the integral over [0,1] with absolute
/// error at most `tol`. Throws ToleranceNotReached.
double quadrature_integral(const MonotoneFunction& g, double tol);

struct MonotonicityVerdict {
  Direction direction = Direction::constant;
  bool strict = false;
  std::optional<std::pair<double, double>> witness;  // set iff non_monotone
};

inline constexpr double kProbeTolerance = 1e-14;

/// Sampling heuristic: classifies the sign pattern of successive differences
/// on a uniform grid of `grid_size` points merged with any tabulated knots.
/// Differences within 1e-14 of zero count as flat.
MonotonicityVerdict probe_monotonicity(const MonotoneFunction& g, std::size_t grid_size);

/// Representative analytic catalog members (fixed parameters), in listing order.
std::vector<MonotoneFunction> catalog_entries();

}  // namespace monobound
