#include "monobound/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "monobound/error.hpp"
#include "monobound/summation.hpp"

namespace monobound {

WeightVector WeightVector::from_weights(std::span<const double> weights, bool normalize) {
  if (weights.empty()) {
    throw Error(ErrorCode::EmptyInput, "weight list is empty");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    // Negated comparison also rejects NaN.
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::NonPositiveWeight,
                  "weight " + std::to_string(i) + " is not a finite positive number", i,
                  weights[i]);
    }
  }
  const double total = compensated_sum(weights);
  std::vector<double> w(weights.begin(), weights.end());
  if (normalize) {
    if (!std::isfinite(total)) {
      throw Error(ErrorCode::SumOutOfTolerance, "weight sum overflows", std::nullopt, total);
    }
    for (double& x : w) x /= total;
    const double renormalized = compensated_sum(w);
    if (std::abs(renormalized - 1.0) > kNormalizedSumTolerance) {
      throw Error(ErrorCode::SumOutOfTolerance, "normalized weights do not sum to 1",
                  std::nullopt, renormalized);
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!(w[i] > 0.0)) {
        throw Error(ErrorCode::NonPositiveWeight, "weight underflows after normalization", i,
                    w[i]);
      }
    }
  } else if (!(std::abs(total - 1.0) <= kWeightSumTolerance)) {
    throw Error(ErrorCode::SumOutOfTolerance, "weights sum to " + std::to_string(total),
                std::nullopt, total);
  }
  return WeightVector(std::move(w));
}

WeightVector WeightVector::uniform(std::size_t n) {
  if (n == 0) {
    throw Error(ErrorCode::EmptyInput, "uniform weights need n >= 1");
  }
  return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double WeightVector::max_weight() const {
  return *std::max_element(weights_.begin(), weights_.end());
}

CumulativePartition CumulativePartition::from_breakpoints(std::vector<double> points) {
  if (points.size() < 2) {
    throw Error(ErrorCode::DegeneratePartition, "a partition needs at least two breakpoints");
  }
  if (points.front() != 0.0) {
    throw Error(ErrorCode::DegeneratePartition, "first breakpoint must be 0", 0,
                points.front());
  }
  const std::size_t last = points.size() - 1;
  if (!(std::abs(points[last] - 1.0) <= kPartitionTolerance)) {
    throw Error(ErrorCode::DegeneratePartition, "last breakpoint must be 1", last,
                points[last]);
  }
  points[last] = 1.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1] < points[i])) {
      throw Error(ErrorCode::DegeneratePartition,
                  "breakpoints not strictly increasing at " + std::to_string(i), i, points[i]);
    }
  }
  return CumulativePartition(std::move(points));
}

double CumulativePartition::mesh() const {
  double widest = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) widest = std::max(widest, width(i));
  return widest;
}

CumulativePartition cumulative(const WeightVector& w) {
  std::vector<double> points;
  points.reserve(w.size() + 1);
  points.push_back(0.0);
  CompensatedSum running;
  for (double a : w.values()) {
    running += a;
    points.push_back(running.value());
  }
  // The weight sum may sit up to 1e-9 away from 1; the last interval absorbs it.
  points.back() = 1.0;
  return CumulativePartition::from_breakpoints(std::move(points));
}

CumulativePartition refine(const CumulativePartition& p, const RefinementPlan& plan) {
  const auto old = p.breakpoints();
  std::vector<double> points(old.begin(), old.end());
  points.reserve(points.size() + plan.insertions.size());
  for (const auto& [interval, point] : plan.insertions) {
    if (interval < 1 || interval > p.intervals()) {
      throw Error(ErrorCode::PointOutsideInterval,
                  "interval index " + std::to_string(interval) + " out of range", interval,
                  point);
    }
    if (!(old[interval - 1] < point && point < old[interval])) {
      throw Error(ErrorCode::PointOutsideInterval,
                  "point is not interior to interval " + std::to_string(interval), interval,
                  point);
    }
    points.push_back(point);
  }
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw Error(ErrorCode::PointOutsideInterval, "refinement plan contains duplicate points");
  }
  return CumulativePartition::from_breakpoints(std::move(points));
}

RefinementPlan bisection_plan(const CumulativePartition& p) {
  RefinementPlan plan;
  plan.insertions.reserve(p.intervals());
  for (std::size_t i = 1; i <= p.intervals(); ++i) {
    plan.insertions.push_back({i, p[i - 1] + 0.5 * p.width(i)});
  }
  return plan;
}

WeightVector weights_of(const CumulativePartition& p) {
  std::vector<double> w;
  w.reserve(p.intervals());
  for (std::size_t i = 1; i <= p.intervals(); ++i) w.push_back(p.width(i));
  return WeightVector::from_weights(w);
}

}  // namespace monobound
