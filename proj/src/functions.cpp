#include "monobound/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "monobound/error.hpp"
#include "monobound/quadrature.hpp"

namespace monobound {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a finite positive number",
                std::nullopt, v);
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be finite", std::nullopt,
                v);
  }
}

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::decreasing: return "decreasing";
    case Direction::increasing: return "increasing";
    case Direction::constant: return "constant";
    case Direction::non_monotone: return "non_monotone";
  }
  return "unknown";
}

MonotoneFunction MonotoneFunction::power_complement(double k) {
  require_positive(k, "k");
  return {kinds::PowerComplement{k}, Direction::decreasing, true};
}

MonotoneFunction MonotoneFunction::exponential(double lambda) {
  require_positive(lambda, "lambda");
  return {kinds::Exponential{lambda}, Direction::decreasing, true};
}

MonotoneFunction MonotoneFunction::logarithmic() {
  return {kinds::Logarithmic{}, Direction::decreasing, true};
}

MonotoneFunction MonotoneFunction::reciprocal() {
  return {kinds::Reciprocal{}, Direction::decreasing, true};
}

MonotoneFunction MonotoneFunction::trigonometric() {
  return {kinds::Trigonometric{}, Direction::decreasing, true};
}

MonotoneFunction MonotoneFunction::constant(double c) {
  require_finite(c, "c");
  return {kinds::Constant{c}, Direction::constant, false};
}

MonotoneFunction MonotoneFunction::linear(double m, double b) {
  require_finite(m, "m");
  require_finite(b, "b");
  const Direction d =
      m < 0.0 ? Direction::decreasing : (m > 0.0 ? Direction::increasing : Direction::constant);
  return {kinds::Linear{m, b}, d, m != 0.0};
}

MonotoneFunction MonotoneFunction::tabulated(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a tabulated function needs at least two knots");
  }
  std::sort(samples.begin(), samples.end());
  kinds::Tabulated t;
  for (const auto& [x, y] : samples) {
    require_finite(x, "knot x");
    require_finite(y, "knot y");
    if (!t.x.empty() && !(t.x.back() < x)) {
      throw Error(ErrorCode::InvalidArgument, "duplicate knot abscissa", std::nullopt, x);
    }
    t.x.push_back(x);
    t.y.push_back(y);
  }
  if (t.x.front() != 0.0 || t.x.back() != 1.0) {
    throw Error(ErrorCode::InvalidArgument, "tabulated knots must span exactly [0,1]");
  }
  bool down = false;
  bool up = false;
  bool flat = false;
  for (std::size_t i = 1; i < t.y.size(); ++i) {
    const double d = t.y[i] - t.y[i - 1];
    down |= d < 0.0;
    up |= d > 0.0;
    flat |= d == 0.0;
  }
  Direction dir = Direction::constant;
  if (down && up) {
    dir = Direction::non_monotone;
  } else if (down) {
    dir = Direction::decreasing;
  } else if (up) {
    dir = Direction::increasing;
  }
  const bool strict = (down != up) && !flat;
  return {std::move(t), dir, strict};
}

double MonotoneFunction::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::DomainViolation, "argument outside [0,1]", std::nullopt, x);
  }
  return std::visit(
      overloaded{
          [x](const kinds::PowerComplement& p) { return 1.0 - std::pow(x, p.k); },
          [x](const kinds::Exponential& e) { return std::exp(-e.lambda * x); },
          [x](const kinds::Logarithmic&) { return std::log(2.0 - x); },
          [x](const kinds::Reciprocal&) { return 1.0 / (1.0 + x); },
          [x](const kinds::Trigonometric&) { return std::cos(0.5 * std::numbers::pi * x); },
          [](const kinds::Constant& c) { return c.c; },
          [x](const kinds::Linear& l) { return l.m * x + l.b; },
          [x](const kinds::Tabulated& t) {
            auto hi = std::upper_bound(t.x.begin(), t.x.end(), x);
            if (hi == t.x.end()) return t.y.back();
            const auto j = static_cast<std::size_t>(hi - t.x.begin());
            const double s = (x - t.x[j - 1]) / (t.x[j] - t.x[j - 1]);
            return t.y[j - 1] + s * (t.y[j] - t.y[j - 1]);
          },
      },
      kind_);
}

std::span<const double> MonotoneFunction::kinks() const {
  if (const auto* t = std::get_if<kinds::Tabulated>(&kind_)) return t->x;
  return {};
}

std::string MonotoneFunction::formula() const {
  return std::visit(
      overloaded{
          [](const kinds::PowerComplement& p) { return "1 - x^" + number(p.k); },
          [](const kinds::Exponential& e) { return "exp(-" + number(e.lambda) + " x)"; },
          [](const kinds::Logarithmic&) { return std::string("ln(2 - x)"); },
          [](const kinds::Reciprocal&) { return std::string("1 / (1 + x)"); },
          [](const kinds::Trigonometric&) { return std::string("cos(pi x / 2)"); },
          [](const kinds::Constant& c) { return number(c.c); },
          [](const kinds::Linear& l) { return number(l.m) + " x + " + number(l.b); },
          [](const kinds::Tabulated& t) {
            return "piecewise linear (" + std::to_string(t.x.size()) + " knots)";
          },
      },
      kind_);
}

std::optional<double> closed_form_integral(const MonotoneFunction& g) {
  using std::numbers::ln2;
  using std::numbers::pi;
  return std::visit(
      overloaded{
          [](const kinds::PowerComplement& p) -> std::optional<double> {
            return p.k / (p.k + 1.0);
          },
          [](const kinds::Exponential& e) -> std::optional<double> {
            return -std::expm1(-e.lambda) / e.lambda;
          },
          [](const kinds::Logarithmic&) -> std::optional<double> { return 2.0 * ln2 - 1.0; },
          [](const kinds::Reciprocal&) -> std::optional<double> { return ln2; },
          [](const kinds::Trigonometric&) -> std::optional<double> { return 2.0 / pi; },
          [](const kinds::Constant& c) -> std::optional<double> { return c.c; },
          [](const kinds::Linear& l) -> std::optional<double> { return 0.5 * l.m + l.b; },
          [](const kinds::Tabulated&) -> std::optional<double> { return std::nullopt; },
      },
      g.kind());
}

double quadrature_integral(const MonotoneFunction& g, double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive", std::nullopt, tol);
  }
  return integrate_adaptive([&g](double x) { return g(x); }, 0.0, 1.0, tol, g.kinks()).value;
}

MonotonicityVerdict probe_monotonicity(const MonotoneFunction& g, std::size_t grid_size) {
  if (grid_size < 2) {
    throw Error(ErrorCode::InvalidArgument, "probe grid needs at least two points");
  }
  std::vector<double> xs;
  xs.reserve(grid_size + g.kinks().size());
  const double step = 1.0 / static_cast<double>(grid_size - 1);
  for (std::size_t i = 0; i + 1 < grid_size; ++i) xs.push_back(static_cast<double>(i) * step);
  xs.push_back(1.0);
  xs.insert(xs.end(), g.kinks().begin(), g.kinks().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  MonotonicityVerdict verdict;
  int first_sign = 0;
  bool all_strict = true;
  double prev = g(xs.front());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double cur = g(xs[i]);
    const double d = cur - prev;
    prev = cur;
    int sign = 0;
    if (d > kProbeTolerance) {
      sign = 1;
    } else if (d < -kProbeTolerance) {
      sign = -1;
    }
    if (sign == 0) {
      all_strict = false;
      continue;
    }
    if (first_sign == 0) {
      first_sign = sign;
    } else if (sign != first_sign) {
      verdict.direction = Direction::non_monotone;
      verdict.strict = false;
      verdict.witness = std::pair{xs[i - 1], xs[i]};
      return verdict;
    }
  }
  if (first_sign == 0) {
    verdict.direction = Direction::constant;
    verdict.strict = false;
  } else {
    verdict.direction = first_sign < 0 ? Direction::decreasing : Direction::increasing;
    verdict.strict = all_strict;
  }
  return verdict;
}

std::vector<MonotoneFunction> catalog_entries() {
  return {
      MonotoneFunction::power_complement(1.0),  MonotoneFunction::power_complement(2.0),
      MonotoneFunction::power_complement(3.0),  MonotoneFunction::power_complement(10.0),
      MonotoneFunction::exponential(0.5),       MonotoneFunction::exponential(1.0),
      MonotoneFunction::exponential(2.0),       MonotoneFunction::logarithmic(),
      MonotoneFunction::reciprocal(),           MonotoneFunction::trigonometric(),
      MonotoneFunction::constant(1.0),          MonotoneFunction::linear(-1.0, 1.0),
  };
}

}  // namespace monobound
