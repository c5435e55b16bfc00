#include "rflight/extended.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rflight/errors.hpp"

namespace rflight {
namespace {

constexpr double kPi = std::numbers::pi;

// Cells of at most half a period of j_m(x r) on [lo, hi].
std::vector<double> cells_for(double x, double lo, double hi) {
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) * x / kPi)));
  std::vector<double> p(n + 1);
  for (int i = 0; i <= n; ++i) p[i] = lo + (hi - lo) * i / n;
  p.back() = hi;
  return p;
}

// pi / S^3 sum_i int W(r) j_m(x_i r) dr j_m(x_i r1) / j_{o+1}^2(alpha_i^o), per term.
std::vector<double> kernel_terms(int order, int l, int m, double R, double X, double r1,
                                 int N, double tol) {
  const double S = R + r1;
  const double lo = std::abs(R - X);
  const double hi = R + X;
  const auto zeros = bessel_zeros(order, N);
  const ExtendedConfig cfg{l, m, R, X, {r1}};
  std::vector<double> out(N);
  for (int i = 0; i < N; ++i) {
    const double x = zeros[i] / S;
    const Integrand f = [&](double r) { return extended_weight(cfg, r) * spherical_bessel_j(m, x * r); };
    const double moment = integrate_cells(f, cells_for(x, lo, hi), tol).value;
    const double jn = spherical_bessel_j(order + 1, zeros[i]);
    out[i] = kPi / (S * S * S) * moment * spherical_bessel_j(m, x * r1) / (jn * jn);
  }
  return out;
}

}  // namespace

double ExtendedConfig::extended_length() const {
  double s = R;
  for (double r : lengths) s += r;
  return s;
}

void ExtendedConfig::validate() const {
  if (m < 0 || l < m) throw DomainError("extended flight needs l >= m >= 0");
  if (!(R > 0) || !(X > 0)) throw DomainError("extended flight needs R, X > 0");
  inner().validate();
}

BesselProduct extended_product(const ExtendedConfig& cfg) {
  cfg.validate();
  std::vector<BesselFactor> factors;
  factors.push_back({cfg.R, cfg.l, cfg.m});
  factors.push_back({cfg.X, cfg.l, 0});
  const std::size_t n = cfg.lengths.size();
  for (std::size_t q = 0; q + 1 < n; ++q) factors.push_back({cfg.lengths[q], cfg.m, cfg.m});
  factors.push_back({cfg.lengths.back(), cfg.m, 0});
  return BesselProduct(std::move(factors));
}

QuadratureResult extended_direct_result(const ExtendedConfig& cfg, double tol) {
  return extended_product(cfg).integrate(tol);
}

double extended_direct(const ExtendedConfig& cfg, double tol) {
  return extended_direct_result(cfg, tol).value;
}

double extended_weight(const ExtendedConfig& cfg, double r) {
  return contraction_weight(cfg.l, cfg.m, cfg.R, cfg.X, r);
}

double extended_via_contraction(const ExtendedConfig& cfg, double tol) {
  cfg.validate();
  const double lo = std::abs(cfg.R - cfg.X);
  const double hi = cfg.R + cfg.X;
  if (cfg.lengths.size() == 1) {
    const auto delta = flight_one_step(cfg.inner());
    if (delta.location < lo || delta.location > hi) return 0.0;
    return extended_weight(cfg, delta.location) * delta.weight;
  }
  const FlightConfig inner = cfg.inner();
  const auto support = support_interval(inner);
  const double a = std::max(lo, support.r_min);
  const double b = std::min(hi, support.r_max);
  if (!(a < b)) return 0.0;
  const auto points = kink_points(cfg.lengths, a, b);
  const Integrand f = [&](double r) {
    if (!(r > 0)) return 0.0;
    return extended_weight(cfg, r) * flight_recursive(inner, r, tol);
  };
  return integrate_cells(f, points, tol).value;
}

ExtendedSeries::ExtendedSeries(ExtendedConfig cfg, int N) : cfg_(std::move(cfg)), N_(N) {
  cfg_.validate();
  if (N < 1) throw DomainError("series needs N >= 1");
  const double S = cfg_.extended_length();
  if (cfg_.X > S) throw DomainError("series route needs X <= R + sum of lengths");
  const int l = cfg_.l;
  const int m = cfg_.m;
  const auto zeros = bessel_zeros(l, N);
  terms_.resize(N);
  for (int i = 0; i < N; ++i) {
    const double x = zeros[i] / S;
    const double jn = spherical_bessel_j(l + 1, zeros[i]);
    double t = kPi / (S * S * S * jn * jn);
    const double xr = x * cfg_.R;
    t *= spherical_bessel_j(l, xr) / std::pow(xr, m);
    t *= spherical_bessel_j(l, x * cfg_.X);
    const std::size_t n = cfg_.lengths.size();
    for (std::size_t q = 0; q + 1 < n; ++q) {
      const double y = x * cfg_.lengths[q];
      t *= spherical_bessel_j(m, y) / std::pow(y, m);
    }
    t *= spherical_bessel_j(m, x * cfg_.lengths.back());
    terms_[i] = t;
  }
}

double ExtendedSeries::value(int n) const {
  n = std::min(n, N_);
  CompensatedSum sum;
  for (int i = 0; i < n; ++i) sum.add(terms_[i]);
  return sum.value();
}

double extended_series(const ExtendedConfig& cfg, int N) { return ExtendedSeries(cfg, N)(); }

RepresentationGap::RepresentationGap(int l, int m, double R, double X, double r1, int max_terms,
                                     double tol) {
  const ExtendedConfig cfg{l, m, R, X, {r1}};
  cfg.validate();
  if (max_terms < 1) throw DomainError("gap needs N >= 1");
  lhs_terms_ = kernel_terms(m, l, m, R, X, r1, max_terms, tol);
  rhs_terms_ = kernel_terms(l, l, m, R, X, r1, max_terms, tol);
}

GapResult RepresentationGap::at(int N) const {
  N = std::clamp(N, 1, max_terms());
  CompensatedSum lhs;
  CompensatedSum rhs;
  for (int i = 0; i < N; ++i) {
    lhs.add(lhs_terms_[i]);
    rhs.add(rhs_terms_[i]);
  }
  return {std::abs(lhs.value() - rhs.value()), lhs.value(), rhs.value()};
}

GapResult representation_gap(int l, int m, double R, double X, double r1, int N) {
  return RepresentationGap(l, m, R, X, r1, N).at(N);
}

}  // namespace rflight
