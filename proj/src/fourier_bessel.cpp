#include "rflight/fourier_bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rflight/errors.hpp"

namespace rflight {
namespace {

// Cells of roughly one half-period of j_l(alpha x / S) on [0, S].
std::vector<double> oscillation_cells(double alpha, double S) {
  const int n = std::max(1, static_cast<int>(std::ceil(alpha / std::numbers::pi)));
  std::vector<double> p(n + 1);
  for (int i = 0; i <= n; ++i) p[i] = S * i / n;
  return p;
}

}  // namespace

FourierBesselSeries expand(const Integrand& f, int l, double S, int N, double tol) {
  if (!(S > 0)) throw DomainError("expand needs S > 0");
  if (N < 1) throw DomainError("expand needs N >= 1");
  if (l < 0) throw DomainError("expand needs l >= 0");
  FourierBesselSeries out;
  out.S = S;
  out.l = l;
  out.zeros = bessel_zeros(l, N);
  out.coefficients.resize(N);
  out.converged.resize(N);
  for (int i = 0; i < N; ++i) {
    const double a = out.zeros[i];
    const Integrand g = [&](double r) { return r * r * spherical_bessel_j(l, a * r / S) * f(r); };
    const auto cells = oscillation_cells(a, S);
    const auto q = integrate_cells(g, cells, tol);
    const double jn = spherical_bessel_j(l + 1, a);
    out.coefficients[i] = 2.0 * q.value / (S * S * S * jn * jn);
    out.converged[i] = q.converged;
  }
  return out;
}

double evaluate(const FourierBesselSeries& series, double r) {
  if (!(r >= 0 && r <= series.S)) throw DomainError("evaluate: r outside [0, S]");
  CompensatedSum sum;
  for (std::size_t i = 0; i < series.coefficients.size(); ++i)
    sum.add(series.coefficients[i] * spherical_bessel_j(series.l, series.zeros[i] * r / series.S));
  return sum.value();
}

void KernelSpec::validate() const {
  if (m < 0 || l < m) throw DomainError("kernel needs l >= m >= 0");
  if (N < 1) throw DomainError("kernel needs N >= 1");
  for (double z : grid)
    if (!(z >= 0 && z <= 1)) throw DomainError("kernel grid points must lie in [0, 1]");
}

std::vector<double> interior_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 9; ++i) g.push_back(i / 10.0);
  return g;
}

CompletenessKernel::CompletenessKernel(const KernelSpec& spec) : spec_(spec) {
  spec_.validate();
  zeros_ = bessel_zeros(spec_.l, spec_.N);
  weights_.resize(spec_.N);
  for (int i = 0; i < spec_.N; ++i) {
    const double j = spherical_bessel_j(spec_.l + 1, zeros_[i]);
    weights_[i] = 1.0 / (j * j);
  }
}

double CompletenessKernel::partial_sum(double z, double zp, int n) const {
  if (!(z >= 0 && z <= 1 && zp >= 0 && zp <= 1)) throw DomainError("kernel arguments must lie in [0, 1]");
  n = std::min(n, spec_.N);
  CompensatedSum sum;
  for (int i = 0; i < n; ++i) {
    // Multiply the two Bessel values first so the summand is symmetric bit for bit.
    const double a = spherical_bessel_j(spec_.m, zeros_[i] * z);
    const double b = spherical_bessel_j(spec_.m, zeros_[i] * zp);
    sum.add((a * b) * weights_[i]);
  }
  return sum.value();
}

double kernel_partial_sum(const KernelSpec& spec, double z, double zp) {
  return CompletenessKernel(spec)(z, zp);
}

DeltaFunctional::DeltaFunctional(const KernelSpec& spec, const Integrand& f, double tol)
    : kernel_(spec) {
  const int N = kernel_.spec().N;
  const int m = kernel_.spec().m;
  moments_.resize(N);
  for (int i = 0; i < N; ++i) {
    const double a = kernel_.zeros()[i];
    const Integrand g = [&](double x) { return x * x * spherical_bessel_j(m, a * x) * f(x); };
    const auto q = integrate_cells(g, oscillation_cells(a, 1.0), tol);
    moments_[i] = q.value;
    converged_ = converged_ && q.converged;
  }
}

double DeltaFunctional::value(double z, int n) const {
  if (!(z >= 0 && z <= 1)) throw DomainError("delta test point must lie in [0, 1]");
  n = std::min(n, kernel_.spec().N);
  const int m = kernel_.spec().m;
  CompensatedSum sum;
  for (int i = 0; i < n; ++i) {
    sum.add(spherical_bessel_j(m, kernel_.zeros()[i] * z) * kernel_.weight(i) * moments_[i]);
  }
  return 2.0 * sum.value();
}

double delta_test(const KernelSpec& spec, const Integrand& f, double z) {
  return DeltaFunctional(spec, f)(z);
}

}  // namespace rflight
