#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "monobound/functions.hpp"
#include "monobound/partitions.hpp"

namespace monobound {

inline constexpr double kMajorizationTolerance = 1e-12;

/// Finite real entries, n >= 1.
class RealVector {
 public:
  explicit RealVector(std::vector<double> entries);
  std::span<const double> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }

 private:
  std::vector<double> entries_;
};

enum class MajorizationRelation {
  x_majorized_by_y,
  y_majorized_by_x,
  both,  // x is a permutation of y
  incomparable,
  total_mismatch,
};

std::string_view to_string(MajorizationRelation r);

struct MajorizationVerdict {
  MajorizationRelation relation = MajorizationRelation::incomparable;
  /// For k = 1..n: sum of the k largest y minus sum of the k largest x. The
  /// last entry is the difference of the totals.
  std::vector<double> prefix_margins;
};

/// Comparisons use 1e-12 scaled by max(1, largest |entry|), so the verdict
/// is invariant under multiplying both vectors by a positive constant.
/// Throws LengthMismatch.
MajorizationVerdict is_majorized(const RealVector& x, const RealVector& y);

namespace convex {
struct Square {};
struct Exp {};
struct AbsDeviation { double center; };
}  // namespace convex

/// Convex test function on the real line, or a catalog function restricted
/// to [0,1].
class ConvexFunction {
 public:
  using Kind = std::variant<convex::Square, convex::Exp, convex::AbsDeviation, MonotoneFunction>;

  static ConvexFunction square() { return ConvexFunction(convex::Square{}); }
  static ConvexFunction exp() { return ConvexFunction(convex::Exp{}); }
  static ConvexFunction abs_deviation(double center) {
    return ConvexFunction(convex::AbsDeviation{center});
  }
  static ConvexFunction restricted(MonotoneFunction g) { return ConvexFunction(std::move(g)); }

  double operator()(double t) const;
  std::string_view name() const;

 private:
  explicit ConvexFunction(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

struct KaramataResult {
  double margin = 0.0;  // sum g(y_i) - sum g(x_i)
  bool pass = false;    // margin >= -1e-12
};

/// Checks sum g(x) <= sum g(y) for x majorized by y. Convexity of g is
/// verified by second differences on a 257-point grid over the hull of all
/// entries. Throws LengthMismatch, NotMajorized, NotConvex.
KaramataResult karamata_check(const ConvexFunction& g, const RealVector& x, const RealVector& y);

/// Moves `amount` from entry `from` to entry `to`. Requires
/// 0 <= amount <= (v[from] - v[to]) / 2, which keeps the result majorized
/// by the input.
void robin_hood_transfer(std::vector<double>& v, std::size_t from, std::size_t to, double amount);

/// y is uniform on [0,1)^n; x is y after `transfers` random Robin Hood
/// transfers. Deterministic in (n, transfers, seed).
std::pair<RealVector, RealVector> generate_majorized_pair(std::size_t n, std::size_t transfers,
                                                          std::uint64_t seed);

/// Applies is_majorized to the weight vectors as mass distributions.
MajorizationVerdict cumulative_majorization_bridge(const WeightVector& w1,
                                                   const WeightVector& w2);

}  // namespace monobound
