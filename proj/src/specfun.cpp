#include "rflight/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rflight/errors.hpp"
#include "rflight/quadrature.hpp"

namespace rflight {
namespace {

constexpr double kPi = std::numbers::pi;

void check_order(int n) {
  if (n < 0) throw DomainError("spherical Bessel order must be non-negative");
  if (n > kMaxBesselOrder)
    throw UnsupportedOrder("spherical Bessel order " + std::to_string(n) + " exceeds cap " +
                           std::to_string(kMaxBesselOrder));
}

void check_argument(double x) {
  if (!(x >= 0.0)) throw DomainError("spherical Bessel argument must be non-negative");
}

double j0_closed(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// x^n/(2n+1)!! * sum_k (-x^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))
double series_j(int n, double x) {
  double prefactor = 1.0;
  for (int k = 1; k <= n; ++k) prefactor *= x / (2.0 * k + 1.0);
  const double h = -0.5 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= h / (k * (2.0 * n + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return prefactor * sum;
}

double j1_closed(double x) {
  if (x * x <= 5.0) return series_j(1, x);
  return (std::sin(x) / x - std::cos(x)) / x;
}

int miller_start(int nmax, double x) {
  const double top = std::max<double>(nmax, x);
  return static_cast<int>(top + 40.0 + std::sqrt(40.0 * top));
}

// Downward recurrence from an arbitrary seed far above nmax. Values are kept
// as mantissa * 2^exponent relative to the running scale so that neither the
// growth towards low orders nor the stored high orders overflow.
std::vector<double> miller_sequence(int nmax, double x) {
  const int start = miller_start(nmax, x);
  std::vector<double> mant(nmax + 1, 0.0);
  std::vector<long> expo(nmax + 1, 0);
  long scale_exp = 0;
  double above = 0.0;
  double current = 1e-30;
  for (int k = start; k >= 1; --k) {
    const double below = (2.0 * k + 1.0) / x * current - above;
    above = current;
    current = below;
    if (std::abs(current) > 1e200) {
      int e = 0;
      std::frexp(current, &e);
      current = std::ldexp(current, -e);
      above = std::ldexp(above, -e);
      scale_exp += e;
    }
    // `current` now holds j_{k-1}; `above` holds j_k.
    if (k - 1 <= nmax) {
      mant[k - 1] = current;
      expo[k - 1] = scale_exp;
    }
  }
  // current ~ j_0, above ~ j_1, both at scale_exp.
  const double t0 = j0_closed(x);
  const double t1 = j1_closed(x);
  double norm;
  if (std::abs(t0) >= std::abs(t1)) {
    norm = t0 / current;
  } else {
    norm = t1 / above;
  }
  std::vector<double> out(nmax + 1);
  for (int k = 0; k <= nmax; ++k) {
    out[k] = std::ldexp(mant[k] * norm, static_cast<int>(expo[k] - scale_exp));
  }
  out[0] = t0;
  if (nmax >= 1) out[1] = t1;
  return out;
}

double upward(int n, double x) {
  double jm1 = j0_closed(x);
  if (n == 0) return jm1;
  double j = j1_closed(x);
  for (int k = 1; k < n; ++k) {
    const double next = (2.0 * k + 1.0) / x * j - jm1;
    jm1 = j;
    j = next;
  }
  return j;
}

}  // namespace

double spherical_bessel_j(int n, double x) {
  check_order(n);
  check_argument(x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (n == 0) return std::sin(x) / x;
  if (x * x <= 2.0 * n + 3.0) return series_j(n, x);
  if (x > n) return upward(n, x);
  return miller_sequence(n, x)[n];
}

std::vector<double> spherical_bessel_j_sequence(int nmax, double x) {
  check_order(nmax);
  check_argument(x);
  std::vector<double> out(nmax + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (x > nmax) {
    out[0] = j0_closed(x);
    if (nmax >= 1) out[1] = j1_closed(x);
    for (int k = 1; k < nmax; ++k) out[k + 1] = (2.0 * k + 1.0) / x * out[k] - out[k - 1];
    return out;
  }
  return miller_sequence(nmax, x);
}

std::string_view convention_name(LegendreConvention c) {
  return c == LegendreConvention::NoPhase ? "no_phase" : "condon_shortley";
}

double factorial_ratio(int l, int m) {
  double r = 1.0;
  for (int k = l - m + 1; k <= l + m; ++k) r /= k;
  return r;
}

std::vector<double> assoc_legendre_sequence(int lmax, int m, double cos_a, double sin_a,
                                            LegendreConvention convention) {
  if (m < 0 || m > lmax) throw DomainError("assoc_legendre_sequence requires 0 <= m <= lmax");
  std::vector<double> out;
  out.reserve(lmax - m + 1);
  double pmm = 1.0;
  for (int i = 1; i <= m; ++i) pmm *= (2.0 * i - 1.0) * sin_a;
  if (convention == LegendreConvention::CondonShortley && (m % 2 == 1)) pmm = -pmm;
  out.push_back(pmm);
  if (lmax == m) return out;
  double prev = pmm;
  double cur = cos_a * (2.0 * m + 1.0) * pmm;
  out.push_back(cur);
  for (int l = m + 2; l <= lmax; ++l) {
    const double next = (cos_a * (2.0 * l - 1.0) * cur - (l + m - 1.0) * prev) / (l - m);
    prev = cur;
    cur = next;
    out.push_back(cur);
  }
  return out;
}

double assoc_legendre_trig(int l, int m, double cos_a, double sin_a,
                           LegendreConvention convention) {
  if (l < 0) throw DomainError("Legendre degree must be non-negative");
  if (std::abs(m) > l) throw DomainError("associated Legendre requires |m| <= l");
  if (std::abs(cos_a) > 1.0) throw DomainError("associated Legendre requires |x| <= 1");
  const int am = std::abs(m);
  const double p = assoc_legendre_sequence(l, am, cos_a, sin_a, convention).back();
  if (m >= 0) return p;
  const double sign = (am % 2 == 0) ? 1.0 : -1.0;
  return sign * factorial_ratio(l, am) * p;
}

double assoc_legendre(int l, int m, double x, LegendreConvention convention) {
  if (std::abs(x) > 1.0) throw DomainError("associated Legendre requires |x| <= 1");
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  return assoc_legendre_trig(l, m, x, s, convention);
}

ZeroTable bessel_zeros(int l, int count) {
  check_order(l);
  if (count < 1) throw DomainError("bessel_zeros needs count >= 1");
  ZeroTable table;
  table.order = l;
  table.zeros.reserve(count);
  if (l == 0) {
    for (int i = 1; i <= count; ++i) table.zeros.push_back(i * kPi);
    return table;
  }
  const ZeroTable lower = bessel_zeros(l - 1, count + 1);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < count; ++i) {
    double lo = lower[i];
    double hi = lower[i + 1];
    const double f_lo = spherical_bessel_j(l, lo);
    // McMahon-type first guess, clipped into the bracket.
    const double beta = (i + 1 + 0.5 * l) * kPi;
    double x = beta - l * (l + 1.0) / (2.0 * beta);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    bool done = false;
    for (int iter = 0; iter < 100; ++iter) {
      const double f = spherical_bessel_j(l, x);
      if (f == 0.0) {
        done = true;
        break;
      }
      if ((f > 0) == (f_lo > 0)) {
        lo = x;
      } else {
        hi = x;
      }
      const double df = spherical_bessel_j(l - 1, x) - (l + 1.0) / x * f;
      double next = x - f / df;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const double step = std::abs(next - x);
      x = next;
      if (step <= 4.0 * eps * x || hi - lo <= 4.0 * eps * x) {
        done = true;
        break;
      }
    }
    if (!done || std::abs(spherical_bessel_j(l, x)) >= 1e-12) {
      throw NonConvergence("zero " + std::to_string(i + 1) + " of j_" + std::to_string(l) +
                           " did not converge");
    }
    table.zeros.push_back(x);
  }
  return table;
}

double IdentityPair::residual() const { return std::abs(lhs - rhs); }

TriangleAngle triangle_angle(double a, double b, double c) {
  TriangleAngle t;
  t.cos = std::clamp((a * a + b * b - c * c) / (2.0 * a * b), -1.0, 1.0);
  const double h = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
  t.sin = h > 0.0 ? std::sqrt(h) / (2.0 * a * b) : 0.0;
  return t;
}

IdentityPair addition_theorem_lhs_rhs(int m, double k, double r1, double r2, double alpha,
                                      int l_max, LegendreConvention convention) {
  if (m < 0 || l_max < m) throw DomainError("addition theorem requires 0 <= m <= l_max");
  if (!(k > 0 && r1 > 0 && r2 > 0)) throw DomainError("addition theorem requires k, r1, r2 > 0");
  const double s = std::sin(alpha);
  const double c = std::cos(alpha);
  if (m >= 1 && (alpha <= 0.0 || alpha >= kPi || s == 0.0))
    throw SingularConfiguration("addition theorem with m >= 1 needs 0 < alpha < pi");
  const double r = std::sqrt(std::max(0.0, r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * c));
  IdentityPair out;
  const double kr = k * r;
  out.lhs = kr == 0.0 ? (m == 0 ? 1.0 : 0.0) : spherical_bessel_j(m, kr) / std::pow(kr, m);
  if (kr == 0.0 && m > 0) {
    double df = 1.0;
    for (int i = 1; i <= m; ++i) df *= 2.0 * i + 1.0;
    out.lhs = 1.0 / df;
  }
  const auto ja = spherical_bessel_j_sequence(l_max, k * r1);
  const auto jb = spherical_bessel_j_sequence(l_max, k * r2);
  const auto p = assoc_legendre_sequence(l_max, m, c, s, convention);
  const double denom = std::pow(k * r1 * k * r2 * s, m);
  CompensatedSum sum;
  for (int l = m; l <= l_max; ++l) {
    sum.add((2.0 * l + 1.0) * ja[l] * jb[l] * p[l - m] / denom);
  }
  out.rhs = sum.value();
  return out;
}

ContractionCheck contraction_identity_check(int l, int m, double k, double r1, double r2,
                                            double tol, LegendreConvention convention) {
  if (m < 0 || l < m) throw DomainError("contraction identity requires l >= m >= 0");
  if (!(k > 0 && r1 > 0 && r2 > 0)) throw DomainError("contraction identity requires k, r1, r2 > 0");
  ContractionCheck out;
  out.lhs = spherical_bessel_j(l, k * r1) * spherical_bessel_j(l, k * r2);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const auto integrand = [&](double r) {
    const TriangleAngle t = triangle_angle(r1, r2, r);
    const double p = assoc_legendre_trig(l, -m, t.cos, t.sin, convention);
    return std::pow(k, m) * std::pow(r1 * r2 / r, m - 1) * p * std::pow(t.sin, m) *
           spherical_bessel_j(m, k * r);
  };
  const auto q = integrate_finite(integrand, std::abs(r1 - r2), r1 + r2, 1e-13);
  out.rhs = 0.5 * sign * q.value;
  out.residual = std::abs(out.lhs - out.rhs);
  out.passed = out.residual < tol;
  return out;
}

LegendreConvention select_legendre_convention() {
  double best = std::numeric_limits<double>::infinity();
  LegendreConvention winner = kActiveConvention;
  for (const auto conv : {LegendreConvention::NoPhase, LegendreConvention::CondonShortley}) {
    const double add = addition_theorem_lhs_rhs(1, 2.0, 1.0, 1.5, 1.0, 60, conv).residual();
    const double con = contraction_identity_check(3, 1, 5.0, 1.0, 1.0, 1e-7, conv).residual;
    const double worst = std::max(add, con);
    if (worst < best) {
      best = worst;
      winner = conv;
    }
  }
  if (!(best < 1e-7)) throw NonConvergence("no Legendre sign convention satisfies the identities");
  return winner;
}

}  // namespace rflight
