#pragma once

#include <vector>

#include "rflight/quadrature.hpp"
#include "rflight/specfun.hpp"

namespace rflight {

/// f(r) = sum_i A_i j_l(alpha_i^l r / S) on [0, S].
struct FourierBesselSeries {
  double S = 1.0;
  int l = 0;
  std::vector<double> coefficients;
  std::vector<bool> converged;  // per-coefficient quadrature status
  ZeroTable zeros;
};

/// Coefficients A_i = 2 / (S^3 j_{l+1}^2(alpha_i)) int_0^S r^2 j_l(alpha_i r/S) f(r) dr.
FourierBesselSeries expand(const Integrand& f, int l, double S, int N,
                           double tol = kDefaultFiniteTol);

double evaluate(const FourierBesselSeries& series, double r);

/// Parameters of K_N(z, z') = sum_{i<=N} j_m(a_i z) j_m(a_i z') / j_{l+1}^2(a_i)
/// with a_i the zeros of j_l.
struct KernelSpec {
  int m = 0;
  int l = 0;
  int N = 400;
  std::vector<double> grid;

  void validate() const;
};

/// The nine interior points 0.1, 0.2, ..., 0.9.
std::vector<double> interior_grid();

/// Precomputed zeros and weights 1/j_{l+1}^2 for one (m, l, N).
class CompletenessKernel {
 public:
  explicit CompletenessKernel(const KernelSpec& spec);

  const KernelSpec& spec() const { return spec_; }
  const ZeroTable& zeros() const { return zeros_; }
  double weight(int i) const { return weights_[i]; }

  /// Partial sum over the first n terms (n <= spec.N).
  double partial_sum(double z, double zp, int n) const;
  double operator()(double z, double zp) const { return partial_sum(z, zp, spec_.N); }

 private:
  KernelSpec spec_;
  ZeroTable zeros_;
  std::vector<double> weights_;
};

double kernel_partial_sum(const KernelSpec& spec, double z, double zp);

/// F_N[f](z) = 2 int_0^1 z'^2 K_N(z, z') f(z') dz'. The moments
/// int_0^1 z'^2 j_m(a_i z') f(z') dz' are computed once, so evaluating many
/// z and any truncation n <= spec.N is cheap.
class DeltaFunctional {
 public:
  DeltaFunctional(const KernelSpec& spec, const Integrand& f, double tol = kDefaultFiniteTol);

  double operator()(double z) const { return value(z, kernel_.spec().N); }
  double value(double z, int n) const;
  bool converged() const { return converged_; }

 private:
  CompletenessKernel kernel_;
  std::vector<double> moments_;
  bool converged_ = true;
};

double delta_test(const KernelSpec& spec, const Integrand& f, double z);

}  // namespace rflight
