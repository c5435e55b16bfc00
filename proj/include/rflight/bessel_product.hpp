#pragma once

#include <complex>
#include <vector>

#include "rflight/quadrature.hpp"

namespace rflight {

/// One factor j_order(k * length) / (k * length)^divisor_power.
struct BesselFactor {
  double length = 1.0;
  int order = 0;
  int divisor_power = 0;
};

/// The integrand k^2 * prod_j factor_j(k) of the random-flight integrals and
/// its integral over [0, inf).
///
/// For k > 0 every j_n is a finite combination of e^{+-ik}/k^p, so the
/// product splits exactly into components Re[e^{i w k} Q(1/k)] with a
/// non-negative frequency w = |sum of +-lengths| and a Laurent polynomial Q.
/// The integral is taken on [0, K] with finite cells and the tail beyond K
/// component by component: accelerated oscillatory quadrature for
/// oscillating components and generalised exponential integrals for slow
/// (w K < 4) ones.
class BesselProduct {
 public:
  struct Component {
    double frequency = 0.0;
    // coeffs[p] multiplies k^{-p}.
    std::vector<std::complex<double>> coeffs;

    std::complex<double> amplitude(double k) const;
    double operator()(double k) const;
  };

  explicit BesselProduct(std::vector<BesselFactor> factors);

  double operator()(double k) const;

  /// Sum of all components at k; equals operator() up to rounding.
  double asymptotic(double k) const;

  const std::vector<Component>& components() const { return components_; }
  const std::vector<BesselFactor>& factors() const { return factors_; }

  /// Start of the tail region.
  double split_point() const { return split_; }

  /// Integral over [0, inf) with absolute tolerance tol.
  QuadratureResult integrate(double tol) const;

  /// Tail integral of one component from K to inf, closed form.
  static double tail_closed_form(const Component& c, double K);

  /// Tail integral of one component from K to inf by accelerated cell sums.
  static QuadratureResult tail_oscillatory(const Component& c, double K, double tol);

 private:
  std::vector<BesselFactor> factors_;
  std::vector<Component> components_;
  double split_ = 0.0;
  double max_frequency_ = 0.0;
};

/// Generalised exponential integral E_n(z) = int_1^inf e^{-z t} t^{-n} dt for
/// complex z off the negative real axis, n >= 1.
std::complex<double> expint_e(int n, std::complex<double> z);

}  // namespace rflight
