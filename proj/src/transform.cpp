#include "monobound/transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "monobound/bounds.hpp"
#include "monobound/error.hpp"
#include "monobound/quadrature.hpp"
#include "monobound/summation.hpp"

namespace monobound {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::size_t kNonNegativityGrid = 1001;

void check_mass(double mass) {
  if (!(std::abs(mass - 1.0) <= kMassTolerance)) {
    throw Error(ErrorCode::NotNormalized, "density mass is " + std::to_string(mass),
                std::nullopt, mass);
  }
}

void check_non_negative(const Density& f) {
  for (std::size_t i = 0; i < kNonNegativityGrid; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(kNonNegativityGrid - 1);
    const double v = f(x);
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "density is negative or non-finite", std::nullopt,
                  x);
    }
  }
}

// Smallest x in [0,1] with F(x) >= u, by bisection.
double cdf_preimage(const CDF& F, double u) {
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && lo < hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (F(mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

Density Density::uniform() { return Density(densities::Uniform{}); }

Density Density::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) {
    throw Error(ErrorCode::EmptyInput, "polynomial density needs at least one coefficient");
  }
  for (double c : coefficients) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::InvalidArgument, "polynomial coefficient is not finite");
    }
  }
  Density f(densities::Polynomial{std::move(coefficients)});
  check_non_negative(f);
  check_mass(density_mass(f));
  return f;
}

Density Density::triangular(double peak) {
  if (!(peak >= 0.0 && peak <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "triangular peak must lie in [0,1]", std::nullopt,
                peak);
  }
  Density f(densities::Triangular{peak});
  check_mass(density_mass(f));
  return f;
}

Density Density::tabulated(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a tabulated density needs at least two knots");
  }
  std::sort(knots.begin(), knots.end());
  densities::Tabulated t;
  for (const auto& [x, y] : knots) {
    if (!std::isfinite(x) || !std::isfinite(y) || y < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "density knots must be finite and non-negative",
                  std::nullopt, x);
    }
    if (!t.x.empty() && !(t.x.back() < x)) {
      throw Error(ErrorCode::InvalidArgument, "duplicate density knot", std::nullopt, x);
    }
    t.x.push_back(x);
    t.y.push_back(y);
  }
  if (t.x.front() != 0.0 || t.x.back() != 1.0) {
    throw Error(ErrorCode::InvalidArgument, "density knots must span exactly [0,1]");
  }
  CompensatedSum mass;
  for (std::size_t i = 1; i < t.x.size(); ++i) {
    mass += 0.5 * (t.x[i] - t.x[i - 1]) * (t.y[i] + t.y[i - 1]);
  }
  if (!(mass.value() > 0.0)) {
    throw Error(ErrorCode::NotNormalized, "tabulated density has zero mass", std::nullopt, 0.0);
  }
  for (double& y : t.y) y /= mass.value();
  return Density(std::move(t));
}

double Density::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::DomainViolation, "density argument outside [0,1]", std::nullopt, x);
  }
  return std::visit(
      overloaded{
          [](const densities::Uniform&) { return 1.0; },
          [x](const densities::Polynomial& p) {
            double acc = 0.0;
            for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
              acc = acc * x + *it;
            }
            return acc;
          },
          [x](const densities::Triangular& t) {
            if (x < t.peak) return 2.0 * x / t.peak;
            if (t.peak == 1.0) return 2.0;
            return 2.0 * (1.0 - x) / (1.0 - t.peak);
          },
          [x](const densities::Tabulated& t) {
            auto hi = std::upper_bound(t.x.begin(), t.x.end(), x);
            if (hi == t.x.end()) return t.y.back();
            const auto j = static_cast<std::size_t>(hi - t.x.begin());
            const double s = (x - t.x[j - 1]) / (t.x[j] - t.x[j - 1]);
            return t.y[j - 1] + s * (t.y[j] - t.y[j - 1]);
          },
      },
      kind_);
}

std::span<const double> Density::kinks() const {
  if (const auto* t = std::get_if<densities::Triangular>(&kind_)) {
    return std::span<const double>(&t->peak, 1);
  }
  if (const auto* t = std::get_if<densities::Tabulated>(&kind_)) return t->x;
  return {};
}

std::string Density::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&os](const densities::Uniform&) { os << "uniform"; },
                 [&os](const densities::Polynomial& p) {
                   os << "poly(";
                   for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
                     os << (i ? "," : "") << p.coefficients[i];
                   }
                   os << ")";
                 },
                 [&os](const densities::Triangular& t) { os << "triangular(peak=" << t.peak << ")"; },
                 [&os](const densities::Tabulated& t) {
                   os << "tabulated(" << t.x.size() << " knots)";
                 },
             },
             kind_);
  return os.str();
}

double density_mass(const Density& f) {
  if (std::holds_alternative<densities::Uniform>(f.kind())) return 1.0;
  return integrate_adaptive([&f](double x) { return f(x); }, 0.0, 1.0, 1e-12, f.kinks()).value;
}

double CDF::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::DomainViolation, "CDF argument outside [0,1]", std::nullopt, x);
  }
  const double value = std::visit(
      overloaded{
          [x](const densities::Uniform&) { return x; },
          [x](const densities::Polynomial& p) {
            double acc = 0.0;
            for (std::size_t j = p.coefficients.size(); j-- > 0;) {
              acc = acc * x + p.coefficients[j] / static_cast<double>(j + 1);
            }
            return acc * x;
          },
          [x](const densities::Triangular& t) {
            if (x < t.peak) return x * x / t.peak;
            if (t.peak == 1.0) return 1.0;
            const double r = 1.0 - x;
            return 1.0 - r * r / (1.0 - t.peak);
          },
          [this, x](const densities::Tabulated& t) {
            auto hi = std::upper_bound(t.x.begin(), t.x.end(), x);
            if (hi == t.x.end()) return knot_mass_.back();
            const auto j = static_cast<std::size_t>(hi - t.x.begin());
            const double h = t.x[j] - t.x[j - 1];
            const double s = x - t.x[j - 1];
            return knot_mass_[j - 1] + t.y[j - 1] * s + 0.5 * (t.y[j] - t.y[j - 1]) * s * s / h;
          },
      },
      density_.kind());
  return std::clamp(value, 0.0, 1.0);
}

CDF cdf_of(const Density& f) {
  check_mass(density_mass(f));
  std::vector<double> knot_mass;
  if (const auto* t = std::get_if<densities::Tabulated>(&f.kind())) {
    CompensatedSum running;
    knot_mass.push_back(0.0);
    for (std::size_t i = 1; i < t->x.size(); ++i) {
      running += 0.5 * (t->x[i] - t->x[i - 1]) * (t->y[i] + t->y[i - 1]);
      knot_mass.push_back(running.value());
    }
  }
  return CDF(f, std::move(knot_mass));
}

TransformReport pit_identity_check(const Density& f, const MonotoneFunction& g, double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive", std::nullopt, tol);
  }
  const CDF F = cdf_of(f);
  const double side_tol = 0.25 * tol;

  std::vector<double> kinks(f.kinks().begin(), f.kinks().end());
  for (double u : g.kinks()) kinks.push_back(cdf_preimage(F, u));

  TransformReport r;
  r.tol = tol;
  r.lhs = integrate_adaptive([&](double x) { return f(x) * g(F(x)); }, 0.0, 1.0, side_tol, kinks)
              .value;
  if (auto exact = closed_form_integral(g)) {
    r.rhs = *exact;
  } else {
    r.rhs = quadrature_integral(g, side_tol);
  }
  r.residual = std::abs(r.lhs - r.rhs);
  r.pass = r.residual <= tol;
  return r;
}

WeightVector empirical_partition(std::span<const double> data, EmpiricalWeighting weighting,
                                 std::span<const double> given) {
  if (data.empty()) {
    throw Error(ErrorCode::EmptyInput, "empirical data is empty");
  }
  if (weighting == EmpiricalWeighting::uniform) return WeightVector::uniform(data.size());
  if (given.size() != data.size()) {
    throw Error(ErrorCode::LengthMismatch, "weights and data differ in length", given.size());
  }
  return WeightVector::from_weights(given, /*normalize=*/true);
}

ExpectationBound expectation_upper_bound(const MonotoneFunction& g, const WeightVector& w,
                                         double tol) {
  if (g.direction() != Direction::decreasing && g.direction() != Direction::constant) {
    throw Error(ErrorCode::NonMonotoneFunction,
                "expectation bound needs a decreasing g, got " +
                    std::string(to_string(g.direction())));
  }
  ExpectationBound b;
  double slack = kIdentityTolerance;
  if (auto exact = closed_form_integral(g)) {
    b.expectation = *exact;
  } else {
    b.expectation = quadrature_integral(g, tol);
    slack += tol;
  }
  b.sum = riemann_sum_right(g, cumulative(w));
  b.holds = b.sum <= b.expectation + slack;
  return b;
}

std::vector<Density> density_catalog() {
  return {
      Density::uniform(),
      Density::polynomial({0.0, 2.0}),
      Density::polynomial({0.0, 0.0, 3.0}),
      Density::triangular(0.5),
      Density::triangular(0.2),
      Density::tabulated({{0.0, 0.5}, {0.3, 1.5}, {0.6, 0.5}, {1.0, 1.0}}),
  };
}

}  // namespace monobound
