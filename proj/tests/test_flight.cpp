#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rflight/errors.hpp"
#include "rflight/flight.hpp"

using namespace rflight;
constexpr double kPi = std::numbers::pi;

namespace {
// J_0(r; r1, r2, r3) from the overlap of the two triangle ranges.
double overlap_three_step(double r, double r1, double r2, double r3) {
  const double lo = std::max(std::abs(r2 - r3), std::abs(r - r1));
  const double hi = std::min(r2 + r3, r + r1);
  return hi > lo ? kPi * (hi - lo) / (8 * r * r1 * r2 * r3) : 0.0;
}

// Smallest |sum of vectors| over random directions, used as a brute-force
// check on r_min.
double brute_min(const std::vector<double>& lengths) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  double best = 1e300;
  for (int t = 0; t < 200000; ++t) {
    double x = 0, y = 0, z = 0;
    for (double L : lengths) {
      double a = g(rng), b = g(rng), c = g(rng);
      const double n = std::sqrt(a * a + b * b + c * c);
      x += L * a / n;
      y += L * b / n;
      z += L * c / n;
    }
    best = std::min(best, std::sqrt(x * x + y * y + z * z));
  }
  return best;
}
}  // namespace

TEST_CASE("support intervals") {
  auto s = support_interval({0, {1.0, 0.3}});
  CHECK(s.r_min == doctest::Approx(0.7));
  CHECK(s.r_max == doctest::Approx(1.3));
  s = support_interval({0, {1, 1, 1}});
  CHECK(s.r_min == 0.0);
  CHECK(s.r_max == 3.0);
  s = support_interval({0, {3, 1, 1}});
  CHECK(s.r_min == 1.0);
  CHECK(s.r_max == 5.0);
  s = support_interval({0, {2.0}});
  CHECK(s.r_min == 2.0);
  CHECK(s.r_max == 2.0);
}

TEST_CASE("r_min agrees with brute-force minimisation") {
  for (const auto& lengths : {std::vector<double>{3, 1, 1}, {2, 0.5}, {1.5, 0.4, 0.3, 0.2}}) {
    const double rmin = support_interval({0, lengths}).r_min;
    const double bf = brute_min(lengths);
    CHECK(bf >= rmin - 1e-12);
    CHECK(bf - rmin < 0.05);
  }
}

TEST_CASE("one-step flight is a delta") {
  const auto d = flight_one_step({0, {2.0}});
  CHECK(d.location == 2.0);
  CHECK(d.weight == doctest::Approx(kPi / 8));
  CHECK_THROWS_AS(flight_integral_direct({0, {2.0}}, 1.0), DistributionalCase);
  CHECK_THROWS_AS(flight_recursive({0, {2.0}}, 1.0), DistributionalCase);
}

TEST_CASE("two-step closed form") {
  CHECK(flight_two_step(0, 1, 1, 1) == doctest::Approx(kPi / 4));
  CHECK(flight_two_step(0, 2, 0.5, 0.5) == 0.0);
  CHECK(std::abs(flight_two_step(1, 1, 1, 1) - 3 * kPi / 32) < 1e-15);
  CHECK(std::abs(flight_integral_direct({1, {1, 1}}, 1.0) - 3 * kPi / 32) < 1e-6);
}

TEST_CASE("direct integral anchors") {
  CHECK(std::abs(flight_integral_direct({0, {1, 1}}, 1.0) - kPi / 4) < 1e-6);
  CHECK(std::abs(flight_integral_direct({0, {1, 1, 1}}, 1.0) - kPi / 4) < 1e-6);
  // Four unit steps: int sin^5 k / k^3 dk = 5 pi / 32.
  CHECK(std::abs(flight_integral_direct({0, {1, 1, 1, 1}}, 1.0) - 5 * kPi / 32) < 1e-6);
  CHECK(std::abs(flight_integral_direct({0, {1, 0.3}}, 2.0)) < 1e-6);
}

TEST_CASE("recursive route") {
  CHECK(std::abs(flight_recursive({0, {1, 1, 1}}, 1.0) - kPi / 4) < 1e-9);
  CHECK(flight_recursive({1, {0.8, 1.1}}, 0.9) == flight_two_step(1, 0.9, 0.8, 1.1));
  const FlightConfig c{1, {1, 0.8, 0.6}};
  CHECK(std::abs(flight_recursive(c, 0.9) - flight_integral_direct(c, 0.9)) < 1e-5);
  CHECK_THROWS_AS(flight_recursive({0, std::vector<double>(9, 1.0)}, 1.0), UnsupportedOrder);
}

TEST_CASE("three-step overlap formula") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int i = 0; i < 10; ++i) {
    const double r1 = u(rng), r2 = u(rng), r3 = u(rng);
    const auto s = support_interval({0, {r1, r2, r3}});
    const double r = s.r_min + (s.r_max - s.r_min) * (i + 0.5) / 10;
    CHECK(std::abs(flight_recursive({0, {r1, r2, r3}}, r) - overlap_three_step(r, r1, r2, r3)) < 1e-9);
  }
}

TEST_CASE("series route") {
  CHECK(std::abs(flight_series({0, {1, 1, 1}}, 1.0, 400) - kPi / 4) < 1e-3);
  const FlightConfig c{1, {1, 0.8, 0.6}};
  CHECK(std::abs(flight_series(c, 0.9, 400) - flight_recursive(c, 0.9)) < 1e-3);
  CHECK_THROWS_AS(flight_series({0, {1, 1, 1, 1}}, 4.5, 10), DomainError);
}

TEST_CASE("scaling for two steps") {
  const double lam = 2.5;
  const double a = flight_integral_direct({0, {1.0, 0.7}}, 1.2);
  const double b = flight_integral_direct({0, {lam, 0.7 * lam}}, 1.2 * lam);
  CHECK(std::abs(a / (lam * lam * lam) - b) < 1e-7);
}

TEST_CASE("direct integral vanishes outside the support") {
  for (const auto& cfg : {FlightConfig{0, {1.0, 0.4, 0.3}}, FlightConfig{1, {1.2, 0.5}}, FlightConfig{2, {1, 1, 0.5}}}) {
    const auto s = support_interval(cfg);
    CHECK(std::abs(flight_integral_direct(cfg, 1.05 * s.r_max)) < 1e-6);
    if (s.r_min > 0) CHECK(std::abs(flight_integral_direct(cfg, 0.95 * s.r_min)) < 1e-6);
  }
}

TEST_CASE("density normalisation for two unit steps in three dimensions") {
  const DensityModel model({0, {1, 1}});
  // The stated prefactor gives sqrt(2)/4 r, so c = sqrt(2).
  CHECK(model.normalization() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(model.raw_mass() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-10));
  for (int b = 0; b < 50; ++b) {
    const double r = (b + 0.5) * 2.0 / 50;
    CHECK(std::abs(model.normalized(r) - r / 2) < 1e-12);
  }
  const auto d = density_from_J({0, {1, 1}}, 1.0);
  CHECK(d.normalization * d.density == doctest::Approx(0.5));
}

TEST_CASE("kink points") {
  const auto p = kink_points({1.0, 0.5, 0.3}, 0.0, 1.8);
  CHECK(p.front() == 0.0);
  CHECK(p.back() == 1.8);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) CHECK(p[i] < p[i + 1]);
}
