#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace rflight {

/// Highest spherical Bessel order supported by the evaluators.
inline constexpr int kMaxBesselOrder = 200;

/// Spherical Bessel function of the first kind, j_n(x), for x >= 0.
///
/// Small arguments (x^2 <= 2n+3) use the Taylor series, x > n uses upward
/// recurrence from j_0 and j_1, and the band in between uses Miller's
/// downward recurrence normalised against j_0 or j_1.
double spherical_bessel_j(int n, double x);

/// j_0(x) .. j_nmax(x) in one pass.
std::vector<double> spherical_bessel_j_sequence(int nmax, double x);

/// Sign convention for P_l^m.
///
/// NoPhase: P_l^m(x) = (1-x^2)^{m/2} d^m P_l / dx^m for m >= 0.
/// CondonShortley: the same times (-1)^m.
/// Both use P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.
enum class LegendreConvention { NoPhase, CondonShortley };

/// The convention under which the Gegenbauer addition theorem and the
/// contraction identity hold as written (checked by select_legendre_convention
/// in the test suite).
inline constexpr LegendreConvention kActiveConvention = LegendreConvention::NoPhase;

std::string_view convention_name(LegendreConvention c);

/// Associated Legendre function P_l^m(x), |m| <= l, |x| <= 1.
double assoc_legendre(int l, int m, double x,
                      LegendreConvention convention = kActiveConvention);

/// Same, with sqrt(1 - x^2) supplied by the caller (avoids cancellation when
/// x is close to +-1 and the sine is known from geometry).
double assoc_legendre_trig(int l, int m, double cos_a, double sin_a,
                           LegendreConvention convention = kActiveConvention);

/// P_{|m|}^m .. P_lmax^m for fixed m >= 0.
std::vector<double> assoc_legendre_sequence(int lmax, int m, double cos_a, double sin_a,
                                            LegendreConvention convention = kActiveConvention);

/// Ordered positive zeros of j_l.
struct ZeroTable {
  int order = 0;
  std::vector<double> zeros;  // zeros[i] is alpha_{i+1}^l

  std::size_t size() const { return zeros.size(); }
  double operator[](std::size_t i) const { return zeros[i]; }
};

/// First `count` positive zeros of j_l, bracketed by interlacing with the
/// zeros of j_{l-1} and polished with safeguarded Newton steps.
ZeroTable bessel_zeros(int l, int count);

struct IdentityPair {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual() const;
};

/// Both sides of the Gegenbauer-type addition theorem
///   j_m(kr)/(kr)^m = sum_{l=m}^{l_max} (2l+1) j_l(kr1) j_l(kr2) P_l^m(cos a)
///                    / [(kr1)(kr2) sin a]^m,
/// with r^2 = r1^2 + r2^2 - 2 r1 r2 cos a.
IdentityPair addition_theorem_lhs_rhs(int m, double k, double r1, double r2, double alpha,
                                      int l_max,
                                      LegendreConvention convention = kActiveConvention);

struct ContractionCheck {
  double lhs = 0.0;  // j_l(k r1) j_l(k r2)
  double rhs = 0.0;  // weighted integral of j_m(k r) over |r1-r2| <= r <= r1+r2
  double residual = 0.0;
  bool passed = false;
};

/// Checks the contraction identity that rewrites j_l(kr1) j_l(kr2) as a
/// single integral of j_m(kr), m <= l.
ContractionCheck contraction_identity_check(int l, int m, double k, double r1, double r2,
                                            double tol,
                                            LegendreConvention convention = kActiveConvention);

/// Runs the m = 1 addition theorem and contraction checks under both sign
/// conventions and returns the one for which they hold. Throws NonConvergence
/// if neither does.
LegendreConvention select_legendre_convention();

/// cos and sin of the angle between sides a and b of a triangle whose third
/// side is c. sin is computed from Heron's formula, so it stays accurate for
/// nearly degenerate triangles; it is 0 when the sides do not close.
struct TriangleAngle {
  double cos = 1.0;
  double sin = 0.0;
};
TriangleAngle triangle_angle(double a, double b, double c);

/// (l - m)! / (l + m)! for 0 <= m <= l.
double factorial_ratio(int l, int m);

}  // namespace rflight
