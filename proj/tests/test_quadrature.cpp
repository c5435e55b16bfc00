#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "rflight/errors.hpp"
#include "rflight/quadrature.hpp"
#include "rflight/specfun.hpp"

using namespace rflight;
constexpr double kPi = std::numbers::pi;

namespace {
std::vector<double> multiples(double step, int count) {
  std::vector<double> v;
  for (int i = 0; i <= count; ++i) v.push_back(i * step);
  return v;
}
}  // namespace

TEST_CASE("finite integrals") {
  const auto a = integrate_finite([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  CHECK(a.converged);
  CHECK(std::abs(a.value - 1.0 / 3.0) < 1e-15);
  CHECK(a.evaluations > 0);

  const auto b = integrate_finite([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12);
  CHECK(std::abs(b.value - 2.0) < 1e-12);

  const auto c = integrate_finite([](double z) { return z * z * spherical_bessel_j(0, kPi * z); }, 0.0, 1.0, 1e-12);
  CHECK(std::abs(c.value - 1.0 / (kPi * kPi)) < 1e-12);
}

TEST_CASE("polynomials up to the Gauss degree are exact on one cell") {
  for (int p = 0; p <= 19; ++p) {
    const auto r = integrate_finite([p](double x) { return std::pow(x, p); }, 0.0, 1.0, 1e-14);
    CHECK(std::abs(r.value - 1.0 / (p + 1)) < 1e-15);
    CHECK(r.evaluations == 21);
  }
}

TEST_CASE("converged implies error below tolerance") {
  for (double tol : {1e-4, 1e-8, 1e-12}) {
    const auto r = integrate_finite([](double x) { return std::sqrt(x); }, 0.0, 1.0, tol);
    if (r.converged) CHECK(r.abs_error_estimate <= tol * std::max(1.0, std::abs(r.value)));
    CHECK(std::abs(r.value - 2.0 / 3.0) < 10 * tol);
  }
}

TEST_CASE("halving the tolerance does not increase the error") {
  const auto f = [](double x) { return std::exp(-x) * std::cos(7 * x) / (1 + x * x); };
  const auto g = [](double x) { return std::log(x + 1e-3); };
  double prev_f = 1e300, prev_g = 1e300;
  const double ref_f = integrate_finite(f, 0.0, 3.0, 1e-15).value;
  const double ref_g = integrate_finite(g, 0.0, 1.0, 1e-15).value;
  for (double tol = 1e-4; tol > 1e-11; tol /= 2) {
    const double ef = std::abs(integrate_finite(f, 0.0, 3.0, tol).value - ref_f);
    const double eg = std::abs(integrate_finite(g, 0.0, 1.0, tol).value - ref_g);
    CHECK(ef <= std::max(prev_f, 1e-15));
    CHECK(eg <= std::max(prev_g, 1e-15));
    prev_f = ef;
    prev_g = eg;
  }
}

TEST_CASE("finite integration errors") {
  CHECK_THROWS_AS(integrate_finite([](double x) { return x; }, 1.0, 0.0), DomainError);
  try {
    integrate_finite([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0);
    FAIL("expected an evaluation error");
  } catch (const EvaluationError& e) {
    CHECK(e.abscissa() == 0.5);
  }
}

TEST_CASE("depth limit flags non-convergence but returns a value") {
  const auto r = integrate_finite([](double x) { return x < 1.0 / 3.0 ? 0.0 : 1.0 / std::sqrt(x - 1.0 / 3.0 + 1e-300); },
                                  0.0, 1.0, 1e-15);
  CHECK(std::isfinite(r.value));
  CHECK(r.value == doctest::Approx(2.0 * std::sqrt(2.0 / 3.0)).epsilon(1e-3));
}

TEST_CASE("Dirichlet integral is accelerated") {
  const auto br = multiples(kPi, 60);
  const auto r = integrate_oscillatory_tail([](double x) { return x == 0 ? 1.0 : std::sin(x) / x; }, br, 1e-10);
  CHECK(r.converged);
  CHECK(r.alternating);
  CHECK(r.cells <= 60);
  CHECK(std::abs(r.value - kPi / 2) < 1e-8);

  // Plain summation of all 60 cells is far off.
  const auto raw = integrate_oscillatory_tail([](double x) { return x == 0 ? 1.0 : std::sin(x) / x; }, br,
                                              1e-300, 60);
  CHECK(raw.cells <= 60);
  CHECK(std::abs(raw.raw_partial_sum - kPi / 2) > 1e-3);
  CHECK(std::abs(raw.value - kPi / 2) < 1e-8);
}

TEST_CASE("non-alternating tail") {
  const auto r = integrate_oscillatory_tail(
      [](double x) {
        const double s = std::sin(x);
        return x == 0 ? 0.0 : s * s * s * s / (x * x);
      },
      multiples(kPi, 300), 1e-10);
  CHECK_FALSE(r.alternating);
  CHECK(std::abs(r.value - kPi / 4) < 1e-8);
}

TEST_CASE("Bessel triple product through the tail integrator") {
  const auto f = [](double k) {
    return k * k * spherical_bessel_j(0, k) * spherical_bessel_j(0, 0.5 * k) * spherical_bessel_j(0, 0.8 * k);
  };
  // sin(k) sin(0.5k) sin(0.8k) is a sum of sines with frequencies 0.3, 0.7,
  // 1.3 and 2.3, all of which flip sign over 10 pi.
  const auto r = integrate_oscillatory_tail(f, multiples(10 * kPi, 200), 1e-10, 200);
  CHECK(r.alternating);
  CHECK(std::abs(r.value - kPi / (4 * 0.5 * 0.8)) < 1e-6);
}

TEST_CASE("tail needs four break points") {
  const std::vector<double> three{0.0, 1.0, 2.0};
  CHECK_THROWS_AS(integrate_oscillatory_tail([](double) { return 0.0; }, three), InsufficientData);
  const std::vector<double> bad{0.0, 2.0, 1.0, 3.0};
  CHECK_THROWS_AS(integrate_oscillatory_tail([](double) { return 0.0; }, bad), DomainError);
}

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-10));
}
