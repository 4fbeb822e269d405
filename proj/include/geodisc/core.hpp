#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace geodisc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Test-set family a discrepancy value refers to.
enum class Family {
  anchored_box,
  convex,
  smooth_convex,
  spherical_cap,
  weighted_box,
  pushback,
};

/// How the value was obtained: exact closed form / enumeration, a certified
/// lower bound of the true supremum, or a statistical estimate.
enum class Method { exact, lower_bound, estimate };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::anchored_box: return "anchored_box";
    case Family::convex: return "convex";
    case Family::smooth_convex: return "smooth_convex";
    case Family::spherical_cap: return "spherical_cap";
    case Family::weighted_box: return "weighted_box";
    case Family::pushback: return "pushback";
  }
  return "?";
}

inline const char* to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::lower_bound: return "lower_bound";
    case Method::estimate: return "estimate";
  }
  return "?";
}

/// A computed discrepancy: value in [0,1], the family it was measured
/// against, the L^q exponent (kInf for the sup), and an optional
/// uncertainty for estimators.
struct DiscrepancyResult {
  double value = 0.0;
  Family family = Family::anchored_box;
  double q = kInf;
  Method method = Method::exact;
  std::optional<double> error_hint;
};

inline DiscrepancyResult make_result(double value, Family family, double q, Method method,
                                     std::optional<double> error_hint = std::nullopt) {
  if (!(value >= 0.0 && value <= 1.0 + 1e-12))
    throw std::logic_error("discrepancy value outside [0,1]: " + std::to_string(value));
  if (method == Method::exact && error_hint.has_value())
    throw std::logic_error("exact result must not carry an error hint");
  return DiscrepancyResult{std::min(value, 1.0), family, q, method, error_hint};
}

/// Thrown when an exact enumeration would exceed its configured size budget.
/// Callers should fall back to an estimator explicitly, never silently.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an internal identity fails beyond numerical tolerance
/// (e.g. a squared quantity comes out significantly negative).
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Neumaier compensated accumulator. The O(N^2) kernels sum many terms of
/// mixed sign; compensation keeps results reproducible to ~1e-13 regardless
/// of how a caller might split the loop.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline bool nearly_equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace geodisc
