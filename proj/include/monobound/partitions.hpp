#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace monobound {

inline constexpr double kWeightSumTolerance = 1e-9;
inline constexpr double kNormalizedSumTolerance = 1e-15;
inline constexpr double kPartitionTolerance = 1e-12;

/// Positive weights a_1..a_n summing to one.
class WeightVector {
 public:
  /// Validates `weights`. With `normalize` the weights are divided by their
  /// compensated sum; otherwise the sum must already be within 1e-9 of 1.
  static WeightVector from_weights(std::span<const double> weights, bool normalize = false);

  /// n equal weights 1/n.
  static WeightVector uniform(std::size_t n);

  std::span<const double> values() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  double max_weight() const;

 private:
  explicit WeightVector(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

/// Breakpoints 0 = S_0 < S_1 < ... < S_n = 1.
class CumulativePartition {
 public:
  /// Validates raw breakpoints. The last point is snapped to 1 when it lies
  /// within 1e-12 of it.
  static CumulativePartition from_breakpoints(std::vector<double> breakpoints);

  std::span<const double> breakpoints() const { return points_; }
  /// Number of intervals n (one less than the number of breakpoints).
  std::size_t intervals() const { return points_.size() - 1; }
  double operator[](std::size_t i) const { return points_[i]; }
  double width(std::size_t i) const { return points_[i] - points_[i - 1]; }
  /// Largest interval width, max_i (S_i - S_{i-1}).
  double mesh() const;

  friend bool operator==(const CumulativePartition&, const CumulativePartition&) = default;

 private:
  explicit CumulativePartition(std::vector<double> p) : points_(std::move(p)) {}
  std::vector<double> points_;
};

struct Insertion {
  std::size_t interval;  // 1-based: interval i is (S_{i-1}, S_i)
  double point;
};

struct RefinementPlan {
  std::vector<Insertion> insertions;
};

CumulativePartition cumulative(const WeightVector& w);

/// Inserts every planned point. Each point must lie strictly inside its
/// interval of the *original* partition, and no point may repeat.
CumulativePartition refine(const CumulativePartition& p, const RefinementPlan& plan);

/// Midpoint of every interval.
RefinementPlan bisection_plan(const CumulativePartition& p);

WeightVector weights_of(const CumulativePartition& p);

}  // namespace monobound
