#pragma once

#include <functional>
#include <span>

namespace rflight {

inline constexpr double kDefaultFiniteTol = 1e-10;
inline constexpr double kDefaultOscillatoryTol = 1e-7;

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
  // Oscillatory tails only.
  int cells = 0;
  bool alternating = true;     // false: cell signs did not alternate
  double raw_partial_sum = 0.0;  // plain sum of the cell integrals
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (10/21 point) integration on [a, b] with global
/// bisection of the worst interval. Converged means the error estimate is
/// below tol * max(1, |value|). Intervals are not split beyond depth 50.
QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  double tol = kDefaultFiniteTol);

/// integrate_finite over each cell [p_i, p_{i+1}] and sums the results.
QuadratureResult integrate_cells(const Integrand& f, std::span<const double> points,
                                 double tol = kDefaultFiniteTol);

/// Integral of f from break_points.front() to infinity.
///
/// Integrates f over consecutive cells between break points and accelerates
/// the sequence of partial sums. When the cell integrals alternate in sign
/// the partial sums go through repeated (Euler) averaging; otherwise the
/// result is flagged non-alternating and a Levin u-transform is used.
/// Needs at least 4 break points.
QuadratureResult integrate_oscillatory_tail(const Integrand& f,
                                            std::span<const double> break_points,
                                            double tol = kDefaultOscillatoryTol,
                                            int max_intervals = 200);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

}  // namespace rflight
