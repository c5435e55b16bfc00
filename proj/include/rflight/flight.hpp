#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rflight/bessel_product.hpp"
#include "rflight/quadrature.hpp"
#include "rflight/specfun.hpp"

namespace rflight {

/// Flight of n fixed-length steps in D = 2m + 3 dimensions.
struct FlightConfig {
  int m = 0;
  std::vector<double> lengths;

  int steps() const { return static_cast<int>(lengths.size()); }
  int dimension() const { return 2 * m + 3; }
  double total_length() const;
  void validate() const;
};

struct SupportInterval {
  double r_min = 0.0;
  double r_max = 0.0;
  bool contains(double r) const { return r >= r_min && r <= r_max; }
};

SupportInterval support_interval(const FlightConfig& cfg);

/// weight * delta(r - location).
struct DiracDelta {
  double location = 0.0;
  double weight = 0.0;
};

/// The one-step case: J_m(r; r1) = pi / (2 r1^2) delta(r - r1).
DiracDelta flight_one_step(const FlightConfig& cfg);

/// Factors of the k-integrand for displacement r: (r, m, 0), (r_q, m, m) for
/// q < n, (r_n, m, 0).
BesselProduct flight_product(const FlightConfig& cfg, double r);

QuadratureResult flight_integral_direct_result(const FlightConfig& cfg, double r,
                                               double tol = kDefaultOscillatoryTol);
double flight_integral_direct(const FlightConfig& cfg, double r,
                              double tol = kDefaultOscillatoryTol);

/// Closed form for n = 2; zero when (r, r1, r2) do not form a triangle.
double flight_two_step(int m, double r, double r1, double r2);

/// Contracts the last two steps into a diagonal rho and recurses down to the
/// two-step closed form. At most 8 steps.
double flight_recursive(const FlightConfig& cfg, double r, double tol = 1e-9);

inline constexpr int kMaxRecursiveSteps = 8;

/// Contraction weight turning j_m(k a)/(k a)^m j_m(k b) into j_m(k rho).
double contraction_weight(int l, int m, double a, double b, double rho);

/// Truncated Fourier-Bessel series of J_m on [0, S_n].
class FlightSeries {
 public:
  FlightSeries(FlightConfig cfg, int N);
  double operator()(double r) const { return value(r, N_); }
  double value(double r, int n) const;

 private:
  FlightConfig cfg_;
  int N_;
  double S_;
  ZeroTable zeros_;
  std::vector<double> weights_;  // pi / (S^3 j_{m+1}^2(alpha_i))
};

double flight_series(const FlightConfig& cfg, double r, int N);

/// Points in r where J_m(r; lengths) can fail to be smooth: every |sum of
/// +-r_q| that falls inside [lo, hi], plus lo and hi, sorted.
std::vector<double> kink_points(const std::vector<double>& lengths, double lo, double hi);

/// Density of |displacement| built from J_m with the stated prefactor
/// Gamma(m+3/2)^{n-1} (pi/2)^{-(n+1)/2} r^{m+2} / r_n^m, and the constant c
/// that normalises it to unit mass.
struct FlightDensity {
  double density = 0.0;
  double normalization = 1.0;
};

class DensityModel {
 public:
  explicit DensityModel(FlightConfig cfg, double tol = 1e-10);

  double prefactor(double r) const;
  double J(double r) const;
  double raw(double r) const { return prefactor(r) * J(r); }
  double normalized(double r) const { return c_ * raw(r); }
  double normalization() const { return c_; }
  double raw_mass() const { return mass_; }
  const SupportInterval& support() const { return support_; }

 private:
  FlightConfig cfg_;
  double tol_;
  SupportInterval support_;
  double mass_ = 0.0;
  double c_ = 1.0;
};

FlightDensity density_from_J(const FlightConfig& cfg, double r);

struct McHistogram {
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  std::size_t bins() const { return counts.size(); }
  double density(std::size_t bin) const;
};

/// |sum of steps| for `count` flights with isotropic step directions in D
/// dimensions. The stream is cut into fixed chunks, each with its own
/// generator seeded from (seed, chunk), so the result does not depend on the
/// number of worker threads.
std::vector<double> sample_distances(const FlightConfig& cfg, std::uint64_t count,
                                     std::uint64_t seed, unsigned threads = 0);

McHistogram sample_flight(const FlightConfig& cfg, std::uint64_t count, std::uint64_t seed,
                          int bins = 50, unsigned threads = 0);

McHistogram histogram(const std::vector<double>& samples, double lo, double hi, int bins,
                      std::uint64_t seed);

/// Kolmogorov-Smirnov statistic of the samples against a continuous CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace rflight
