#include "monobound/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "monobound/error.hpp"
#include "monobound/summation.hpp"

namespace monobound {
namespace {

// QUADPACK qk15 abscissae and weights. Odd-indexed Kronrod nodes are the
// 7-point Gauss nodes; index 7 is the centre.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::size_t kMaxSegments = 20000;

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    const double pair = f1[j] + f2[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  asc *= std::abs(half);
  abs_sum *= std::abs(half);
  const double value = kronrod * half;
  double error = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && error != 0.0) {
    error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps)) {
    error = std::max(50.0 * eps * abs_sum, error);
  }
  return {a, b, value, error};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, std::span<const double> breakpoints) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "quadrature tolerance must be positive", std::nullopt,
                tol);
  }
  if (!(a < b)) {
    throw Error(ErrorCode::InvalidArgument, "quadrature interval must satisfy a < b");
  }
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (a < p && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment> queue;
  std::size_t evaluations = 0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    queue.push(kronrod15(f, cuts[i - 1], cuts[i]));
    evaluations += 15;
  }

  auto totals = [&queue]() {
    auto copy = queue;
    CompensatedSum value;
    CompensatedSum error;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair{value.value(), error.value()};
  };

  // Running error total; recomputed exactly from the queue before returning.
  double error_total = totals().second;

  while (queue.size() < kMaxSegments) {
    if (error_total <= tol) {
      error_total = totals().second;
      if (error_total <= tol) break;
    }
    const Segment worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) break;  // interval exhausted at double precision
    queue.pop();
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    evaluations += 30;
    error_total += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  const auto [value, error] = totals();
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::DomainViolation, "integrand produced a non-finite value");
  }
  if (error > tol) {
    throw Error(ErrorCode::ToleranceNotReached,
                "estimated error " + std::to_string(error) + " exceeds tolerance", std::nullopt,
                value, error);
  }
  return {value, error, evaluations};
}

}  // namespace monobound
