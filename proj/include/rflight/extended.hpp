#pragma once

#include <vector>

#include "rflight/flight.hpp"

namespace rflight {

/// Extended flight: outer legs R and X carry order l, the inner steps order m.
struct ExtendedConfig {
  int l = 0;
  int m = 0;
  double R = 1.0;
  double X = 1.0;
  std::vector<double> lengths;

  FlightConfig inner() const { return {m, lengths}; }
  double extended_length() const;  // R + sum of lengths
  void validate() const;
};

BesselProduct extended_product(const ExtendedConfig& cfg);

QuadratureResult extended_direct_result(const ExtendedConfig& cfg,
                                        double tol = kDefaultOscillatoryTol);
double extended_direct(const ExtendedConfig& cfg, double tol = kDefaultOscillatoryTol);

/// Weight that contracts j_l(kR)/(kR)^m j_l(kX) into j_m(kr).
double extended_weight(const ExtendedConfig& cfg, double r);

/// Integral of the contraction weight against J_m(r; lengths) over
/// |R-X| <= r <= R+X. One step collapses the delta at r = r1.
double extended_via_contraction(const ExtendedConfig& cfg, double tol = 1e-9);

class ExtendedSeries {
 public:
  ExtendedSeries(ExtendedConfig cfg, int N);
  double operator()() const { return value(N_); }
  double value(int n) const;

 private:
  ExtendedConfig cfg_;
  int N_;
  std::vector<double> terms_;
};

double extended_series(const ExtendedConfig& cfg, int N);

struct GapResult {
  double gap = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// The two truncated one-step representations of F_{l,m}(X, R; r1): kernel
/// built from zeros of j_m (lhs) or of j_l (rhs), both on [0, R + r1], each
/// integrated against the contraction weight. Per-term integrals are kept so
/// every N up to max_terms is available.
class RepresentationGap {
 public:
  RepresentationGap(int l, int m, double R, double X, double r1, int max_terms,
                    double tol = 1e-12);
  GapResult at(int N) const;
  int max_terms() const { return static_cast<int>(lhs_terms_.size()); }

 private:
  std::vector<double> lhs_terms_;
  std::vector<double> rhs_terms_;
};

GapResult representation_gap(int l, int m, double R, double X, double r1, int N);

}  // namespace rflight
