#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "monobound/functions.hpp"
#include "monobound/partitions.hpp"

namespace monobound {

inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kDefaultQuadratureTolerance = 1e-10;

enum class IntegralSource { closed_form, quadrature };

/// strict: gap exceeds 10 * tol. equal: g is constant, so the sum equals the
/// integral. indeterminate: gap too small to separate from quadrature noise.
enum class Strictness { strict, equal, indeterminate };

std::string_view to_string(IntegralSource s);
std::string_view to_string(Strictness s);

struct BoundReport {
  double t_n = 0.0;
  double integral = 0.0;
  IntegralSource integral_source = IntegralSource::closed_form;
  /// integral - t_n for decreasing g; t_n - integral for increasing g, where
  /// the sum is a lower bound instead. Non-negative whenever the bound holds.
  double gap = 0.0;
  double gap_bound = 0.0;
  Strictness strict = Strictness::indeterminate;
  double abel_value = 0.0;
  std::size_t n = 0;
  std::size_t evaluation_count = 0;
  Direction direction = Direction::decreasing;
};

/// Sum of (S_i - S_{i-1}) g(S_i), compensated, in index order. Does not
/// require monotonicity.
double riemann_sum_right(const MonotoneFunction& g, const CumulativePartition& p);

/// Sum of (S_i - S_{i-1}) g(S_{i-1}).
double riemann_sum_left(const MonotoneFunction& g, const CumulativePartition& p);

/// g(1) + sum_{i<n} S_i (g(S_i) - g(S_{i+1})), evaluated term by term.
double abel_sum(const MonotoneFunction& g, const CumulativePartition& p);

/// The n-1 summands S_i (g(S_i) - g(S_{i+1})) of the Abel form.
std::vector<double> abel_terms(const MonotoneFunction& g, const CumulativePartition& p);

/// |g(0) - g(1)| * mesh(p). Dominates the gap for monotone g, since on each
/// interval the gap is at most width * (g(S_{i-1}) - g(S_i)) and those
/// drops telescope. Throws NonMonotoneFunction.
double gap_bound(const MonotoneFunction& g, const CumulativePartition& p);

/// Full report. The integral comes from the closed form when one exists,
/// otherwise from quadrature at `tol`. Increasing g is reduced to -g.
/// Throws NonMonotoneFunction, ToleranceNotReached.
BoundReport bound_report(const MonotoneFunction& g, const CumulativePartition& p,
                         double tol = kDefaultQuadratureTolerance);

/// Right sums over p and `depth` successive uniform bisections of it
/// (depth + 1 values, coarsest first).
std::vector<double> refinement_chain(const MonotoneFunction& g, const CumulativePartition& p,
                                     std::size_t depth);

/// Mathematical invariants a correct report must satisfy; empty when all
/// hold. Quadrature-sourced integrals get `tol` of extra slack.
std::vector<std::string> invariant_violations(const BoundReport& r, double tol);

}  // namespace monobound
