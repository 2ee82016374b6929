#include "monobound/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "monobound/error.hpp"
#include "monobound/quadrature.hpp"
#include "monobound/summation.hpp"

namespace monobound {
namespace {

constexpr std::size_t kMaxRefinedIntervals = std::size_t{1} << 24;

[[noreturn]] void throw_non_monotone(const MonotoneFunction& g) {
  const auto verdict = probe_monotonicity(g, 101);
  if (verdict.witness) {
    throw Error(ErrorCode::NonMonotoneFunction,
                "g changes direction between " + std::to_string(verdict.witness->first) +
                    " and " + std::to_string(verdict.witness->second),
                std::nullopt, verdict.witness->first, verdict.witness->second);
  }
  throw Error(ErrorCode::NonMonotoneFunction, "g is not monotone on [0,1]");
}

void require_monotone(const MonotoneFunction& g) {
  if (g.direction() == Direction::non_monotone) throw_non_monotone(g);
}

// Values g(S_0), ..., g(S_n).
template <class F>
std::vector<double> sample(const F& g, const CumulativePartition& p) {
  std::vector<double> values;
  values.reserve(p.breakpoints().size());
  for (double s : p.breakpoints()) values.push_back(g(s));
  return values;
}

// Sum of (S_i - S_{i-1}) h_i with h_i = values[i + offset - 1]. Each width is
// split into S_i h_i - S_{i-1} h_i with exact products, so for constant h
// the terms telescope to h (S_n - S_0) without the rounding of the widths.
double weighted_sum(std::span<const double> values, const CumulativePartition& p,
                    std::size_t offset) {
  CompensatedSum sum;
  for (std::size_t i = 1; i <= p.intervals(); ++i) {
    const double h = values[i + offset - 1];
    sum.add_product(p[i], h);
    sum.add_product(-p[i - 1], h);
  }
  return sum.value();
}

double right_sum_from(std::span<const double> values, const CumulativePartition& p) {
  return weighted_sum(values, p, 1);
}

double abel_from(std::span<const double> values, const CumulativePartition& p) {
  const std::size_t n = p.intervals();
  CompensatedSum sum(values[n]);
  for (std::size_t i = 1; i < n; ++i) sum += p[i] * (values[i] - values[i + 1]);
  return sum.value();
}

}  // namespace

std::string_view to_string(IntegralSource s) {
  return s == IntegralSource::closed_form ? "closed_form" : "quadrature";
}

std::string_view to_string(Strictness s) {
  switch (s) {
    case Strictness::strict: return "strict";
    case Strictness::equal: return "equal";
    case Strictness::indeterminate: return "indeterminate";
  }
  return "unknown";
}

double riemann_sum_right(const MonotoneFunction& g, const CumulativePartition& p) {
  return weighted_sum(sample(g, p), p, 1);
}

double riemann_sum_left(const MonotoneFunction& g, const CumulativePartition& p) {
  return weighted_sum(sample(g, p), p, 0);
}

double abel_sum(const MonotoneFunction& g, const CumulativePartition& p) {
  const std::size_t n = p.intervals();
  CompensatedSum sum(g(1.0));
  for (std::size_t i = 1; i < n; ++i) sum += p[i] * (g(p[i]) - g(p[i + 1]));
  return sum.value();
}

std::vector<double> abel_terms(const MonotoneFunction& g, const CumulativePartition& p) {
  const auto values = sample(g, p);
  std::vector<double> terms;
  terms.reserve(p.intervals());
  for (std::size_t i = 1; i < p.intervals(); ++i) {
    terms.push_back(p[i] * (values[i] - values[i + 1]));
  }
  return terms;
}

double gap_bound(const MonotoneFunction& g, const CumulativePartition& p) {
  require_monotone(g);
  return std::abs(g(0.0) - g(1.0)) * p.mesh();
}

BoundReport bound_report(const MonotoneFunction& g, const CumulativePartition& p, double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive", std::nullopt, tol);
  }
  require_monotone(g);

  std::size_t evaluations = 0;
  auto counted = [&g, &evaluations](double x) {
    ++evaluations;
    return g(x);
  };

  BoundReport r;
  r.n = p.intervals();
  r.direction = g.direction();

  const auto values = sample(counted, p);
  r.t_n = right_sum_from(values, p);
  r.abel_value = abel_from(values, p);

  if (auto exact = closed_form_integral(g)) {
    r.integral = *exact;
    r.integral_source = IntegralSource::closed_form;
  } else {
    const auto q = integrate_adaptive(counted, 0.0, 1.0, tol, g.kinks());
    r.integral = q.value;
    r.integral_source = IntegralSource::quadrature;
  }

  r.gap = g.direction() == Direction::increasing ? r.t_n - r.integral : r.integral - r.t_n;
  r.gap_bound = std::abs(values.front() - values.back()) * p.mesh();

  if (r.gap > 10.0 * tol) {
    r.strict = Strictness::strict;
  } else if (g.direction() == Direction::constant) {
    r.strict = Strictness::equal;
  } else {
    r.strict = Strictness::indeterminate;
  }
  r.evaluation_count = evaluations;
  return r;
}

std::vector<double> refinement_chain(const MonotoneFunction& g, const CumulativePartition& p,
                                     std::size_t depth) {
  if (depth < 1) {
    throw Error(ErrorCode::InvalidArgument, "refinement depth must be at least 1");
  }
  require_monotone(g);
  if (depth >= 24 || (p.intervals() << depth) > kMaxRefinedIntervals) {
    throw Error(ErrorCode::InvalidArgument, "refinement would exceed 2^24 intervals", depth);
  }
  std::vector<double> chain{riemann_sum_right(g, p)};
  CumulativePartition current = p;
  for (std::size_t level = 0; level < depth; ++level) {
    current = refine(current, bisection_plan(current));
    chain.push_back(riemann_sum_right(g, current));
  }
  return chain;
}

std::vector<std::string> invariant_violations(const BoundReport& r, double tol) {
  std::vector<std::string> out;
  const double slack =
      kIdentityTolerance + (r.integral_source == IntegralSource::quadrature ? tol : 0.0);
  if (!(r.gap >= -slack)) {
    out.push_back("discrete sum lies on the wrong side of the integral (gap " +
                  std::to_string(r.gap) + ")");
  }
  if (!(std::abs(r.abel_value - r.t_n) <= kIdentityTolerance * std::max(1.0, std::abs(r.t_n)))) {
    out.push_back("Abel form disagrees with the direct sum");
  }
  if (!(r.gap <= r.gap_bound + slack)) {
    out.push_back("gap exceeds the total-variation gap bound");
  }
  return out;
}

}  // namespace monobound
