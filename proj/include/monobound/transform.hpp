#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "monobound/functions.hpp"
#include "monobound/partitions.hpp"

namespace monobound {

inline constexpr double kMassTolerance = 1e-9;

namespace densities {
struct Uniform {};
struct Polynomial { std::vector<double> coefficients; };  // c0 + c1 x + c2 x^2 + ...
struct Triangular { double peak; };
struct Tabulated {
  std::vector<double> x;  // strictly increasing over [0,1]
  std::vector<double> y;  // renormalized to unit trapezoid mass
};
}  // namespace densities

/// Probability density on [0,1]. Construction checks non-negativity on a
/// 1001-point grid and unit mass by quadrature.
class Density {
 public:
  using Kind = std::variant<densities::Uniform, densities::Polynomial, densities::Triangular,
                            densities::Tabulated>;

  static Density uniform();
  /// Throws NotNormalized when the mass is not 1 within 1e-9.
  static Density polynomial(std::vector<double> coefficients);
  static Density triangular(double peak);
  /// Knots must span [0,1]; values are rescaled so the trapezoid mass is 1.
  static Density tabulated(std::vector<std::pair<double, double>> knots);

  const Kind& kind() const { return kind_; }
  double operator()(double x) const;
  std::span<const double> kinks() const;
  std::string describe() const;

 private:
  explicit Density(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

/// F(x) = integral of f over [0, x], clamped to [0,1].
class CDF {
 public:
  const Density& density() const { return density_; }
  double operator()(double x) const;

 private:
  friend CDF cdf_of(const Density& f);
  explicit CDF(Density f, std::vector<double> knot_mass)
      : density_(std::move(f)), knot_mass_(std::move(knot_mass)) {}
  Density density_;
  std::vector<double> knot_mass_;  // tabulated only: F at each knot
};

/// Closed-form antiderivatives for analytic kinds; exact integration of the
/// piecewise-linear interpolant for tabulated densities. Throws NotNormalized.
CDF cdf_of(const Density& f);

/// Mass of f over [0,1] by adaptive quadrature.
double density_mass(const Density& f);

struct TransformReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Compares the integral of f(x) g(F(x)) against the integral of g, both
/// over [0,1]. Each side is integrated to tol / 4.
TransformReport pit_identity_check(const Density& f, const MonotoneFunction& g, double tol);

enum class EmpiricalWeighting { uniform, given };

/// Weights for an empirical sample. Uniform weighting ignores the values
/// and uses 1/n each; given weights must match the sample length and are
/// normalized.
WeightVector empirical_partition(std::span<const double> data, EmpiricalWeighting weighting,
                                 std::span<const double> given = {});

struct ExpectationBound {
  double expectation = 0.0;  // integral of g over [0,1] = E[g(U)]
  double sum = 0.0;          // sum of a_i g(S_i)
  bool holds = false;        // sum <= expectation + 1e-12 (+ tol if by quadrature)
};

/// Throws NonMonotoneFunction unless g is decreasing or constant.
ExpectationBound expectation_upper_bound(const MonotoneFunction& g, const WeightVector& w,
                                         double tol = 1e-10);

/// Densities used for identity checks: uniform, 2x, 3x^2, two triangles and
/// a tabulated step-like shape.
std::vector<Density> density_catalog();

}  // namespace monobound
