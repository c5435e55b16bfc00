#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rflight/errors.hpp"
#include "rflight/quadrature.hpp"
#include "rflight/specfun.hpp"

using namespace rflight;
constexpr double kPi = std::numbers::pi;

TEST_CASE("j_n at simple points") {
  CHECK(spherical_bessel_j(0, 0.0) == 1.0);
  CHECK(spherical_bessel_j(3, 0.0) == 0.0);
  CHECK(std::abs(spherical_bessel_j(0, kPi)) < 1e-14);
  const double x = 1e-3;
  CHECK(spherical_bessel_j(2, x) == doctest::Approx(x * x / 15.0).epsilon(1e-12));
  CHECK(std::abs(spherical_bessel_j(1, 4.49340945790906)) < 1e-10);
}

TEST_CASE("j_n against high-precision values") {
  struct Ref {
    int n;
    double x;
    double v;
  };
  const Ref refs[] = {
      {5, 7.3, 0.16486146555622406818},       {50, 30.0, 2.6901637185735316123e-9},
      {200, 10.0, 4.3594330496210811229e-237}, {3, 1e4, -0.000095197185680696087694},
      {100, 150.0, 0.0016466452167928511202},  {20, 20.5, 0.045230519100682218176},
      {10, 0.5, 7.064123963661878184e-14},     {150, 149.0, 0.0064607004999959164126},
      {200, 199.5, 0.0057317340305954647058},
  };
  for (const auto& r : refs) {
    CAPTURE(r.n);
    CAPTURE(r.x);
    CHECK(std::abs(spherical_bessel_j(r.n, r.x) - r.v) <= 1e-12 * std::abs(r.v));
  }
}

TEST_CASE("j_n against Boost over orders and arguments") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.0, 300.0);
  std::uniform_int_distribution<int> un(0, 120);
  double worst = 0.0;
  for (int i = 0; i < 3000; ++i) {
    const int n = un(rng);
    const double x = ux(rng);
    const double ref = boost::math::sph_bessel(n, x);
    const double got = spherical_bessel_j(n, x);
    // Relative error, or absolute error near zeros.
    const double err = std::abs(got - ref) / std::max(std::abs(ref), 1e-2 / std::max(1.0, x));
    worst = std::max(worst, err);
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("sequence matches single evaluations") {
  for (double x : {0.3, 5.0, 40.0, 250.0}) {
    const auto seq = spherical_bessel_j_sequence(60, x);
    for (int n = 0; n <= 60; ++n) {
      const double v = spherical_bessel_j(n, x);
      CHECK(std::abs(seq[n] - v) <= 1e-13 * std::abs(v) + 1e-300);
    }
  }
}

TEST_CASE("series and recurrence agree at the crossover") {
  for (int n : {1, 2, 5, 10, 30, 80}) {
    const double xc = std::sqrt(2.0 * n + 3.0);
    const double below = spherical_bessel_j(n, xc * (1 - 1e-9));
    const double above = spherical_bessel_j(n, xc * (1 + 1e-9));
    // j_n ~ x^n near the crossover, so the 2e-9 step moves it by about 2e-9 n.
    CHECK(std::abs(below - above) <= 4e-9 * (n + 1) * std::abs(below));
  }
}

TEST_CASE("j_n argument validation") {
  CHECK_THROWS_AS(spherical_bessel_j(0, -1.0), DomainError);
  CHECK_THROWS_AS(spherical_bessel_j(201, 1.0), UnsupportedOrder);
  CHECK_THROWS_AS(spherical_bessel_j(-1, 1.0), DomainError);
}

TEST_CASE("associated Legendre basics") {
  CHECK(assoc_legendre(0, 0, 0.3) == 1.0);
  CHECK(assoc_legendre(1, 0, 0.3) == doctest::Approx(0.3));
  CHECK(assoc_legendre(2, -2, std::cos(kPi / 3)) == doctest::Approx(0.09375).epsilon(1e-14));
  CHECK_THROWS_AS(assoc_legendre(1, 2, 0.3), DomainError);
  CHECK_THROWS_AS(assoc_legendre(1, 0, 1.5), DomainError);
}

TEST_CASE("P_m^-m follows the Rodrigues form with no phase") {
  for (int m = 0; m <= 6; ++m) {
    const double a = 0.7;
    double expect = std::pow(std::sin(a), m);
    for (int k = 1; k <= m; ++k) expect /= 2.0 * k;
    if (m % 2) expect = -expect;
    CHECK(assoc_legendre(m, -m, std::cos(a)) == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("associated Legendre against Boost in both conventions") {
  // Boost includes the Condon-Shortley phase.
  for (int l = 0; l <= 12; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (double x : {-0.95, -0.3, 0.0, 0.41, 0.99}) {
        const double cs = boost::math::legendre_p(l, m, x);
        const double scale = std::max(1.0, std::abs(cs));
        CHECK(std::abs(assoc_legendre(l, m, x, LegendreConvention::CondonShortley) - cs) < 1e-12 * scale);
        const double sign = (m % 2 != 0) ? -1.0 : 1.0;
        CHECK(std::abs(assoc_legendre(l, m, x, LegendreConvention::NoPhase) - sign * cs) < 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("zeros of j_0 are multiples of pi") {
  const auto t = bessel_zeros(0, 50);
  REQUIRE(t.size() == 50);
  for (int i = 0; i < 50; ++i) CHECK(std::abs(t[i] - (i + 1) * kPi) < 1e-12);
}

TEST_CASE("zeros: reference values and residuals") {
  CHECK(std::abs(bessel_zeros(1, 1)[0] - 4.4934094579090641753) < 1e-10);
  const auto t2 = bessel_zeros(2, 3);
  CHECK(t2[0] == doctest::Approx(5.7634591968945497914).epsilon(1e-14));
  CHECK(t2[1] == doctest::Approx(9.0950113304763551563).epsilon(1e-14));
  CHECK(t2[2] == doctest::Approx(12.322940970566582052).epsilon(1e-14));
  for (int l = 0; l <= 10; ++l) {
    for (double a : bessel_zeros(l, 50).zeros) CHECK(std::abs(spherical_bessel_j(l, a)) < 1e-12);
  }
}

TEST_CASE("zeros interlace with the next order") {
  for (int l = 0; l <= 10; ++l) {
    const auto a = bessel_zeros(l, 51);
    const auto b = bessel_zeros(l + 1, 50);
    for (int i = 0; i < 50; ++i) {
      CHECK(a[i] < b[i]);
      CHECK(b[i] < a[i + 1]);
    }
  }
}

TEST_CASE("zeros at high order stay ordered") {
  const auto t = bessel_zeros(40, 20);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) CHECK(t[i] < t[i + 1]);
  CHECK(t[0] > 40.0);
  CHECK_THROWS_AS(bessel_zeros(0, 0), DomainError);
}

TEST_CASE("orthogonality on [0,1]") {
  std::vector<double> cells;
  for (int c = 0; c <= 40; ++c) cells.push_back(c / 40.0);
  for (int l = 0; l <= 5; ++l) {
    const auto z = bessel_zeros(l, 10);
    for (int i = 0; i < 10; ++i) {
      for (int j = i; j < 10; ++j) {
        const Integrand f = [&](double x) {
          return x * x * spherical_bessel_j(l, z[i] * x) * spherical_bessel_j(l, z[j] * x);
        };
        const double v = integrate_cells(f, cells, 1e-13).value;
        const double jn = spherical_bessel_j(l + 1, z[i]);
        CHECK(std::abs(v - (i == j ? 0.5 * jn * jn : 0.0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("addition theorem") {
  const auto p0 = addition_theorem_lhs_rhs(0, 1.0, 1.0, 1.0, kPi / 2, 40);
  CHECK(std::abs(p0.lhs - 0.69845599863660835984) < 1e-12);
  CHECK(p0.residual() < 1e-10);

  const auto p1 = addition_theorem_lhs_rhs(1, 2.0, 1.0, 1.5, 1.0, 60);
  CHECK(std::abs(p1.lhs - 0.16100190743199786125) < 1e-12);
  CHECK(p1.residual() < 1e-8);

  // The odd-m identity fails with the Condon-Shortley sign.
  const auto cs = addition_theorem_lhs_rhs(1, 2.0, 1.0, 1.5, 1.0, 60, LegendreConvention::CondonShortley);
  CHECK(cs.residual() > 1e-3);

  CHECK_THROWS_AS(addition_theorem_lhs_rhs(1, 1.0, 1.0, 1.0, 0.0, 10), SingularConfiguration);
}

TEST_CASE("addition theorem residual shrinks with l_max for m = 0") {
  double prev = 1e300;
  for (int lmax : {2, 4, 8, 16}) {
    const double r = addition_theorem_lhs_rhs(0, 2.0, 1.0, 1.3, 0.8, lmax).residual();
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("addition theorem on a random grid") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const int m = i % 4;
    const double k = 0.5 + 3.5 * u(rng);
    const double r1 = 0.5 + 1.5 * u(rng);
    const double r2 = 0.5 + 1.5 * u(rng);
    const double a = 0.2 + (kPi - 0.4) * u(rng);
    CHECK(addition_theorem_lhs_rhs(m, k, r1, r2, a, 80).residual() < 1e-8);
  }
}

TEST_CASE("contraction identity") {
  const auto c0 = contraction_identity_check(0, 0, 1.0, 1.0, 1.0, 1e-10);
  CHECK(c0.lhs == doctest::Approx(std::sin(1.0) * std::sin(1.0)));
  CHECK(c0.passed);
  CHECK(contraction_identity_check(2, 0, 3.0, 0.7, 1.2, 1e-8).passed);
  CHECK(contraction_identity_check(3, 1, 5.0, 1.0, 1.0, 1e-7).passed);
  CHECK_THROWS_AS(contraction_identity_check(1, 2, 1.0, 1.0, 1.0, 1e-7), DomainError);
}

TEST_CASE("contraction identity on a grid") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const int l = i % 7;
    const int m = static_cast<int>(u(rng) * (l + 1)) % (l + 1);
    const auto c = contraction_identity_check(l, m, 0.5 + 9.5 * u(rng), 0.5 + 1.5 * u(rng),
                                              0.5 + 1.5 * u(rng), 1e-7);
    CAPTURE(l);
    CAPTURE(m);
    CHECK(c.passed);
  }
}

TEST_CASE("convention selection picks the no-phase convention") {
  CHECK(select_legendre_convention() == kActiveConvention);
  CHECK(convention_name(kActiveConvention) == "no_phase");
}

TEST_CASE("triangle angle") {
  const auto t = triangle_angle(1.0, 1.0, 1.0);
  CHECK(t.cos == doctest::Approx(0.5));
  CHECK(t.sin == doctest::Approx(std::sqrt(3.0) / 2));
  const auto d = triangle_angle(1.0, 1.0, 2.0);
  CHECK(d.sin == 0.0);
  CHECK(d.cos == doctest::Approx(-1.0));
}
