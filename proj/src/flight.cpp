#include "rflight/flight.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rflight/errors.hpp"

namespace rflight {
namespace {

constexpr double kPi = std::numbers::pi;

double support_eps(double S) { return 1e-12 * std::max(1.0, S); }

double recurse(int m, double r, const std::vector<double>& lengths, double tol) {
  const std::size_t n = lengths.size();
  if (n == 2) return flight_two_step(m, r, lengths[0], lengths[1]);
  const double a = lengths[n - 2];
  const double b = lengths[n - 1];
  // Feasible diagonals: the contraction triangle and closure of the reduced flight.
  double total = r;
  double longest = r;
  for (std::size_t q = 0; q + 2 < n; ++q) {
    total += lengths[q];
    longest = std::max(longest, lengths[q]);
  }
  const double lo = std::max({std::abs(a - b), 2.0 * longest - total, 0.0});
  const double hi = std::min(a + b, total);
  if (!(lo < hi)) return 0.0;

  std::vector<double> reduced(lengths.begin(), lengths.end() - 2);
  reduced.insert(reduced.begin(), r);
  const auto points = kink_points(reduced, lo, hi);
  reduced.erase(reduced.begin());
  reduced.push_back(0.0);
  const Integrand f = [&](double rho) {
    auto inner = reduced;
    inner.back() = rho;
    return contraction_weight(m, m, a, b, rho) * recurse(m, r, inner, tol);
  };
  return integrate_cells(f, points, tol).value;
}

}  // namespace

double FlightConfig::total_length() const {
  double s = 0.0;
  for (double r : lengths) s += r;
  return s;
}

void FlightConfig::validate() const {
  if (m < 0) throw DomainError("flight order m must be >= 0");
  if (lengths.empty()) throw DomainError("flight needs at least one step");
  for (double r : lengths)
    if (!(r > 0) || !std::isfinite(r)) throw DomainError("step lengths must be positive");
}

SupportInterval support_interval(const FlightConfig& cfg) {
  cfg.validate();
  const double S = cfg.total_length();
  if (cfg.steps() == 1) return {S, S};
  const double longest = *std::max_element(cfg.lengths.begin(), cfg.lengths.end());
  return {std::max(0.0, 2.0 * longest - S), S};
}

DiracDelta flight_one_step(const FlightConfig& cfg) {
  cfg.validate();
  if (cfg.steps() != 1) throw DomainError("flight_one_step needs exactly one step");
  const double r1 = cfg.lengths[0];
  return {r1, kPi / (2.0 * r1 * r1)};
}

BesselProduct flight_product(const FlightConfig& cfg, double r) {
  std::vector<BesselFactor> factors;
  factors.push_back({r, cfg.m, 0});
  for (int q = 0; q + 1 < cfg.steps(); ++q) factors.push_back({cfg.lengths[q], cfg.m, cfg.m});
  factors.push_back({cfg.lengths.back(), cfg.m, 0});
  return BesselProduct(std::move(factors));
}

QuadratureResult flight_integral_direct_result(const FlightConfig& cfg, double r, double tol) {
  cfg.validate();
  if (cfg.steps() == 1)
    throw DistributionalCase("one-step flight is a Dirac delta; use flight_one_step");
  if (!(r > 0)) throw DomainError("flight_integral_direct needs r > 0");
  return flight_product(cfg, r).integrate(tol);
}

double flight_integral_direct(const FlightConfig& cfg, double r, double tol) {
  return flight_integral_direct_result(cfg, r, tol).value;
}

double flight_two_step(int m, double r, double r1, double r2) {
  if (m < 0) throw DomainError("flight order m must be >= 0");
  if (!(r > 0 && r1 > 0 && r2 > 0)) throw DomainError("flight_two_step needs positive lengths");
  if (r > r1 + r2 || r < std::abs(r1 - r2)) return 0.0;
  const auto t = triangle_angle(r1, r2, r);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * (kPi / 4.0) * std::pow(r2, m - 1) / (r1 * std::pow(r, m + 1)) *
         assoc_legendre_trig(m, -m, t.cos, t.sin) * std::pow(t.sin, m);
}

double contraction_weight(int l, int m, double a, double b, double rho) {
  if (rho < std::abs(a - b) || rho > a + b) return 0.0;
  const auto t = triangle_angle(a, b, rho);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return 0.5 * sign * std::pow(a, -m) * std::pow(a * b / rho, m - 1) *
         assoc_legendre_trig(l, -m, t.cos, t.sin) * std::pow(t.sin, m);
}

double flight_recursive(const FlightConfig& cfg, double r, double tol) {
  cfg.validate();
  if (cfg.steps() == 1)
    throw DistributionalCase("one-step flight is a Dirac delta; use flight_one_step");
  if (cfg.steps() > kMaxRecursiveSteps)
    throw UnsupportedOrder("recursive route limited to 8 steps; use flight_series");
  if (!(r > 0)) throw DomainError("flight_recursive needs r > 0");
  return recurse(cfg.m, r, cfg.lengths, tol);
}

std::vector<double> kink_points(const std::vector<double>& lengths, double lo, double hi) {
  std::vector<double> pts{lo, hi};
  const std::size_t n = lengths.size();
  if (n <= 16) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      double s = 0.0;
      for (std::size_t q = 0; q < n; ++q) s += ((mask >> q) & 1U) ? -lengths[q] : lengths[q];
      s = std::abs(s);
      if (s > lo && s < hi) pts.push_back(s);
    }
  }
  std::sort(pts.begin(), pts.end());
  const double eps = 1e-12 * std::max(1.0, hi);
  std::vector<double> out;
  for (double p : pts)
    if (out.empty() || p - out.back() > eps) out.push_back(p);
  if (out.back() < hi) out.back() = hi;
  return out;
}

FlightSeries::FlightSeries(FlightConfig cfg, int N) : cfg_(std::move(cfg)), N_(N) {
  cfg_.validate();
  if (cfg_.steps() < 2) throw DistributionalCase("series route needs at least two steps");
  if (N < 1) throw DomainError("series needs N >= 1");
  S_ = cfg_.total_length();
  zeros_ = bessel_zeros(cfg_.m, N);
  weights_.resize(N);
  for (int i = 0; i < N; ++i) {
    const double j = spherical_bessel_j(cfg_.m + 1, zeros_[i]);
    weights_[i] = kPi / (S_ * S_ * S_ * j * j);
  }
}

double FlightSeries::value(double r, int n) const {
  if (!(r >= 0 && r <= S_ + support_eps(S_))) throw DomainError("series route needs 0 <= r <= S_n");
  r = std::min(r, S_);
  n = std::min(n, N_);
  const int m = cfg_.m;
  CompensatedSum sum;
  for (int i = 0; i < n; ++i) {
    const double x = zeros_[i] / S_;
    double term = weights_[i] * spherical_bessel_j(m, x * r);
    for (int q = 0; q + 1 < cfg_.steps(); ++q) {
      const double y = x * cfg_.lengths[q];
      term *= spherical_bessel_j(m, y) / std::pow(y, m);
    }
    term *= spherical_bessel_j(m, x * cfg_.lengths.back());
    sum.add(term);
  }
  return sum.value();
}

double flight_series(const FlightConfig& cfg, double r, int N) { return FlightSeries(cfg, N)(r); }

DensityModel::DensityModel(FlightConfig cfg, double tol) : cfg_(std::move(cfg)), tol_(tol) {
  cfg_.validate();
  if (cfg_.steps() < 2) throw DistributionalCase("density of a one-step flight is a Dirac delta");
  support_ = support_interval(cfg_);
  const auto points = kink_points(cfg_.lengths, support_.r_min, support_.r_max);
  const Integrand f = [this](double r) { return r > 0 ? raw(r) : 0.0; };
  mass_ = integrate_cells(f, points, tol_).value;
  c_ = 1.0 / mass_;
}

double DensityModel::prefactor(double r) const {
  const int n = cfg_.steps();
  const int m = cfg_.m;
  return std::pow(std::tgamma(m + 1.5), n - 1) * std::pow(kPi / 2.0, -(n + 1) / 2.0) *
         std::pow(r, m + 2) / std::pow(cfg_.lengths.back(), m);
}

double DensityModel::J(double r) const {
  if (cfg_.steps() == 2) return flight_two_step(cfg_.m, r, cfg_.lengths[0], cfg_.lengths[1]);
  return flight_recursive(cfg_, r, tol_);
}

FlightDensity density_from_J(const FlightConfig& cfg, double r) {
  const DensityModel model(cfg);
  return {r > 0 ? model.raw(r) : 0.0, model.normalization()};
}

}  // namespace rflight
