#include "monobound/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "monobound/error.hpp"
#include "monobound/summation.hpp"

namespace monobound {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::size_t kConvexityGrid = 257;

std::vector<double> descending_prefix_sums(std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::vector<double> prefix;
  prefix.reserve(sorted.size());
  CompensatedSum acc;
  for (double e : sorted) {
    acc += e;
    prefix.push_back(acc.value());
  }
  return prefix;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace

RealVector::RealVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw Error(ErrorCode::EmptyInput, "vector must have at least one entry");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i])) {
      throw Error(ErrorCode::InvalidArgument, "vector entry is not finite", i, entries_[i]);
    }
  }
}

std::string_view to_string(MajorizationRelation r) {
  switch (r) {
    case MajorizationRelation::x_majorized_by_y: return "x_majorized_by_y";
    case MajorizationRelation::y_majorized_by_x: return "y_majorized_by_x";
    case MajorizationRelation::both: return "both";
    case MajorizationRelation::incomparable: return "incomparable";
    case MajorizationRelation::total_mismatch: return "total_mismatch";
  }
  return "unknown";
}

MajorizationVerdict is_majorized(const RealVector& x, const RealVector& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "vectors have lengths " + std::to_string(x.size()) + " and " +
                    std::to_string(y.size()));
  }
  const auto px = descending_prefix_sums(x.entries());
  const auto py = descending_prefix_sums(y.entries());
  const double tol =
      kMajorizationTolerance * std::max({1.0, max_abs(x.entries()), max_abs(y.entries())});

  MajorizationVerdict v;
  v.prefix_margins.reserve(px.size());
  for (std::size_t k = 0; k < px.size(); ++k) v.prefix_margins.push_back(py[k] - px[k]);

  const std::size_t n = px.size();
  if (!(std::abs(v.prefix_margins[n - 1]) <= tol)) {
    v.relation = MajorizationRelation::total_mismatch;
    return v;
  }
  bool x_below = true;  // every prefix of x <= prefix of y
  bool y_below = true;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    x_below &= v.prefix_margins[k] >= -tol;
    y_below &= v.prefix_margins[k] <= tol;
  }
  if (x_below && y_below) {
    v.relation = MajorizationRelation::both;
  } else if (x_below) {
    v.relation = MajorizationRelation::x_majorized_by_y;
  } else if (y_below) {
    v.relation = MajorizationRelation::y_majorized_by_x;
  } else {
    v.relation = MajorizationRelation::incomparable;
  }
  return v;
}

double ConvexFunction::operator()(double t) const {
  return std::visit(overloaded{
                        [t](const convex::Square&) { return t * t; },
                        [t](const convex::Exp&) { return std::exp(t); },
                        [t](const convex::AbsDeviation& a) { return std::abs(t - a.center); },
                        [t](const MonotoneFunction& g) { return g(t); },
                    },
                    kind_);
}

std::string_view ConvexFunction::name() const {
  return std::visit(overloaded{
                        [](const convex::Square&) { return "t^2"; },
                        [](const convex::Exp&) { return "exp(t)"; },
                        [](const convex::AbsDeviation&) { return "|t - c|"; },
                        [](const MonotoneFunction&) { return "catalog g"; },
                    },
                    kind_);
}

KaramataResult karamata_check(const ConvexFunction& g, const RealVector& x, const RealVector& y) {
  const auto verdict = is_majorized(x, y);
  if (verdict.relation != MajorizationRelation::x_majorized_by_y &&
      verdict.relation != MajorizationRelation::both) {
    throw Error(ErrorCode::NotMajorized,
                "x is not majorized by y (" + std::string(to_string(verdict.relation)) + ")");
  }

  const auto [lo_it, hi_it] = std::minmax_element(y.entries().begin(), y.entries().end());
  double lo = std::min(*lo_it, *std::min_element(x.entries().begin(), x.entries().end()));
  double hi = std::max(*hi_it, *std::max_element(x.entries().begin(), x.entries().end()));
  if (lo < hi) {
    const double step = (hi - lo) / static_cast<double>(kConvexityGrid - 1);
    for (std::size_t i = 1; i + 1 < kConvexityGrid; ++i) {
      const double a = lo + static_cast<double>(i - 1) * step;
      const double m = lo + static_cast<double>(i) * step;
      const double b = i + 2 == kConvexityGrid ? hi : lo + static_cast<double>(i + 1) * step;
      const double ga = g(a);
      const double gm = g(m);
      const double gb = g(b);
      const double scale = std::max({1.0, std::abs(ga), std::abs(gm), std::abs(gb)});
      if (ga - 2.0 * gm + gb < -kMajorizationTolerance * scale) {
        throw Error(ErrorCode::NotConvex,
                    "negative second difference at (" + std::to_string(a) + ", " +
                        std::to_string(m) + ", " + std::to_string(b) + ")",
                    std::nullopt, m);
      }
    }
  }

  CompensatedSum sy;
  CompensatedSum sx;
  for (double e : y.entries()) sy += g(e);
  for (double e : x.entries()) sx += g(e);
  KaramataResult r;
  r.margin = sy.value() - sx.value();
  r.pass = r.margin >= -kMajorizationTolerance;
  return r;
}

void robin_hood_transfer(std::vector<double>& v, std::size_t from, std::size_t to,
                         double amount) {
  if (from >= v.size() || to >= v.size() || from == to) {
    throw Error(ErrorCode::InvalidArgument, "transfer indices out of range or equal");
  }
  if (!(amount >= 0.0 && amount <= 0.5 * (v[from] - v[to]))) {
    throw Error(ErrorCode::InvalidArgument,
                "transfer must move at most half the difference from richer to poorer",
                std::nullopt, amount);
  }
  v[from] -= amount;
  v[to] += amount;
}

std::pair<RealVector, RealVector> generate_majorized_pair(std::size_t n, std::size_t transfers,
                                                          std::uint64_t seed) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidArgument, "majorized pairs need n >= 2");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> index(0, n - 1);

  std::vector<double> y(n);
  for (double& e : y) e = unit(rng);
  std::vector<double> x = y;
  for (std::size_t t = 0; t < transfers; ++t) {
    std::size_t i = index(rng);
    std::size_t j = index(rng);
    while (j == i) j = index(rng);
    if (x[i] < x[j]) std::swap(i, j);
    // Fraction in (0, 1]: 1 equalizes the two entries completely.
    const double fraction = 1.0 - unit(rng);
    const double amount = 0.5 * (x[i] - x[j]) * fraction;
    if (amount > 0.0) robin_hood_transfer(x, i, j, amount);
  }
  return {RealVector(std::move(x)), RealVector(std::move(y))};
}

MajorizationVerdict cumulative_majorization_bridge(const WeightVector& w1,
                                                   const WeightVector& w2) {
  return is_majorized(RealVector({w1.values().begin(), w1.values().end()}),
                      RealVector({w2.values().begin(), w2.values().end()}));
}

}  // namespace monobound
