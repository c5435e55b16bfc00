#include "rflight/bessel_product.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "rflight/errors.hpp"
#include "rflight/specfun.hpp"

namespace rflight {
namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr int kTailCells = 400;
// Components with frequency * K below this are integrated in closed form.
constexpr double kSlowPhase = 4.0;

double double_factorial_odd(int n) {
  double r = 1.0;
  for (int i = 3; i <= 2 * n + 1; i += 2) r *= i;
  return r;
}

double factor_value(const BesselFactor& f, double k) {
  const double x = k * f.length;
  if (x == 0.0) {
    if (f.order != f.divisor_power) return 0.0;
    return 1.0 / double_factorial_odd(f.order);
  }
  const double j = spherical_bessel_j(f.order, x);
  return f.divisor_power == 0 ? j : j / std::pow(x, f.divisor_power);
}

// The e^{+ika} half of one factor: j_n(ka)/(ka)^d = Re[e^{ika} P(1/k)] with
// P(1/k) = (-i)^{n+1} sum_s i^s (n+s)!/(s!(n-s)! 2^s) / (ka)^{s+1+d}.
std::vector<cplx> factor_polynomial(const BesselFactor& f) {
  const int n = f.order;
  std::vector<cplx> poly(n + 2 + f.divisor_power, cplx(0.0, 0.0));
  cplx lead(1.0, 0.0);
  for (int i = 0; i < n + 1; ++i) lead *= cplx(0.0, -1.0);
  cplx is(1.0, 0.0);
  double coef = 1.0;  // (n+s)!/(s!(n-s)! 2^s)
  for (int s = 0; s <= n; ++s) {
    const int p = s + 1 + f.divisor_power;
    poly[p] = lead * is * coef / std::pow(f.length, p);
    is *= cplx(0.0, 1.0);
    coef *= static_cast<double>((n + s + 1) * (n - s)) / (2.0 * (s + 1));
  }
  return poly;
}

std::vector<cplx> multiply(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size() + b.size() - 1, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == cplx(0.0, 0.0)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<cplx> conjugated(std::vector<cplx> v) {
  for (auto& c : v) c = std::conj(c);
  return v;
}

double digamma_int(int n) {
  double r = -0.57721566490153286061;
  for (int i = 1; i < n; ++i) r += 1.0 / i;
  return r;
}

}  // namespace

std::complex<double> expint_e(int n, std::complex<double> z) {
  if (n < 0) throw DomainError("expint_e needs n >= 0");
  if (z == cplx(0.0, 0.0)) {
    if (n <= 1) throw DomainError("expint_e diverges at z = 0 for n <= 1");
    return 1.0 / (n - 1.0);
  }
  if (n == 0) return std::exp(-z) / z;
  constexpr double eps = 1e-16;
  constexpr int max_iter = 100000;
  if (std::abs(z) > 1.0) {
    // Modified Lentz evaluation of the continued fraction.
    constexpr double tiny = 1e-300;
    cplx b = z + static_cast<double>(n);
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i <= max_iter; ++i) {
      const double an = -static_cast<double>(i) * (n - 1 + i);
      b += 2.0;
      d = 1.0 / (an * d + b);
      c = b + an / c;
      const cplx del = c * d;
      h *= del;
      if (std::abs(del - 1.0) < eps) return h * std::exp(-z);
    }
    throw NonConvergence("expint_e continued fraction did not converge");
  }
  cplx sum = (n == 1) ? -std::log(z) + digamma_int(1) : cplx(1.0 / (n - 1), 0.0);
  // The k = n-1 term carries the logarithm.
  cplx term(1.0, 0.0);  // (-z)^k / k!
  for (int k = 1; k <= max_iter; ++k) {
    term *= -z / static_cast<double>(k);
    cplx add;
    if (k == n - 1) {
      add = term * (-std::log(z) + digamma_int(n));
      sum += add;
    } else {
      add = -term / static_cast<double>(k - n + 1);
      sum += add;
    }
    if (std::abs(add) < eps * std::abs(sum) && k > n) return sum;
  }
  throw NonConvergence("expint_e series did not converge");
}

std::complex<double> BesselProduct::Component::amplitude(double k) const {
  const double u = 1.0 / k;
  cplx acc(0.0, 0.0);
  for (std::size_t p = coeffs.size(); p-- > 0;) acc = acc * u + coeffs[p];
  return acc;
}

double BesselProduct::Component::operator()(double k) const {
  const cplx phase(std::cos(frequency * k), std::sin(frequency * k));
  return (phase * amplitude(k)).real();
}

BesselProduct::BesselProduct(std::vector<BesselFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw DomainError("BesselProduct needs at least one factor");
  double total_length = 0.0;
  for (const auto& f : factors_) {
    if (!(f.length > 0)) throw DomainError("factor lengths must be positive");
    if (f.order < 0 || f.divisor_power < 0) throw DomainError("negative order or power");
    if (f.order > kMaxBesselOrder) throw UnsupportedOrder("order above cap");
    total_length += f.length;
    split_ = std::max(split_, 2.0 * (f.order + 1.0) * (f.order + 1.0) / f.length);
  }

  // Expand prod_j (1/2)(e^{i a_j k} P_j + e^{-i a_j k} conj P_j). Sign patterns
  // come in conjugate pairs; keep those with the first sign positive and
  // double them. k^2 shifts the powers down by two.
  const std::size_t nf = factors_.size();
  std::vector<std::vector<cplx>> polys;
  for (const auto& f : factors_) polys.push_back(factor_polynomial(f));

  std::map<double, std::vector<cplx>> merged;
  const double merge_tol = 1e-12 * total_length;
  const std::size_t patterns = std::size_t{1} << (nf - 1);
  const double scale = 2.0 / std::ldexp(1.0, static_cast<int>(nf));
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    double omega = factors_[0].length;
    std::vector<cplx> q = polys[0];
    for (std::size_t j = 1; j < nf; ++j) {
      const bool minus = (mask >> (j - 1)) & 1U;
      omega += minus ? -factors_[j].length : factors_[j].length;
      q = multiply(q, minus ? conjugated(polys[j]) : polys[j]);
    }
    if (omega < 0) {
      omega = -omega;
      q = conjugated(q);
    }
    if (omega < merge_tol) omega = 0.0;
    for (auto& c : q) c *= scale;
    auto it = merged.lower_bound(omega - merge_tol);
    if (it != merged.end() && std::abs(it->first - omega) <= merge_tol) {
      auto& dst = it->second;
      if (dst.size() < q.size()) dst.resize(q.size(), cplx(0.0, 0.0));
      for (std::size_t p = 0; p < q.size(); ++p) dst[p] += q[p];
    } else {
      merged.emplace(omega, std::move(q));
    }
  }
  for (auto& [omega, q] : merged) {
    Component c;
    c.frequency = omega;
    // Drop the k^2 factor into the power index.
    c.coeffs.assign(q.size() >= 2 ? q.size() - 2 : 0, cplx(0.0, 0.0));
    for (std::size_t p = 2; p < q.size(); ++p) c.coeffs[p - 2] = q[p];
    if (std::abs(q[0]) + std::abs(q[1]) != 0.0) {
      // Only possible for a single factor; keep the terms at negative powers
      // out of the tail representation.
      throw DomainError("product decays too slowly for a k-integral");
    }
    max_frequency_ = std::max(max_frequency_, omega);
    components_.push_back(std::move(c));
  }
}

double BesselProduct::operator()(double k) const {
  double v = k * k;
  for (const auto& f : factors_) v *= factor_value(f, k);
  return v;
}

double BesselProduct::asymptotic(double k) const {
  CompensatedSum s;
  for (const auto& c : components_) s.add(c(k));
  return s.value();
}

double BesselProduct::tail_closed_form(const Component& c, double K) {
  cplx total(0.0, 0.0);
  double magnitude = 0.0;
  for (const auto& x : c.coeffs) magnitude = std::max(magnitude, std::abs(x));
  for (std::size_t p = 0; p < c.coeffs.size(); ++p) {
    const cplx a = c.coeffs[p];
    if (a == cplx(0.0, 0.0)) continue;
    const double kp = std::pow(K, 1.0 - static_cast<double>(p));
    if (c.frequency == 0.0) {
      if (p <= 1) {
        // Only the real part survives; an imaginary coefficient is harmless.
        if (std::abs(a.real()) > 1e-12 * std::max(magnitude, 1e-300))
          throw DomainError("non-oscillating component decays too slowly to integrate");
        continue;
      }
      total += a * kp / (static_cast<double>(p) - 1.0);
    } else {
      total += a * kp * expint_e(static_cast<int>(p), cplx(0.0, -c.frequency * K));
    }
  }
  return total.real();
}

QuadratureResult BesselProduct::tail_oscillatory(const Component& c, double K, double tol) {
  if (!(c.frequency > 0)) throw DomainError("tail_oscillatory needs a positive frequency");
  const double w = c.frequency;
  const double phi = std::arg(c.amplitude(K));
  // Zeros of cos(w k + phi).
  double j = std::ceil((w * K + phi - 0.5 * kPi) / kPi);
  double k1 = (0.5 * kPi + j * kPi - phi) / w;
  if (k1 <= K) k1 += kPi / w;
  std::vector<double> breaks;
  breaks.reserve(kTailCells + 1);
  for (int i = 0; i <= kTailCells; ++i) breaks.push_back(k1 + i * kPi / w);
  const Integrand f = [&c](double k) { return c(k); };
  auto head = integrate_finite(f, K, k1, 0.1 * tol);
  auto tail = integrate_oscillatory_tail(f, breaks, 0.9 * tol, kTailCells);
  tail.value += head.value;
  tail.abs_error_estimate += head.abs_error_estimate;
  tail.evaluations += head.evaluations;
  tail.converged = tail.converged && head.converged;
  return tail;
}

QuadratureResult BesselProduct::integrate(double tol) const {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  double total_length = 0.0;
  for (const auto& f : factors_) total_length += f.length;
  const double K = split_;

  QuadratureResult out;
  out.converged = true;
  const double width = kPi / total_length;
  const int cells = std::clamp(static_cast<int>(std::ceil(K / width)), 1, 2000);
  std::vector<double> points(cells + 1);
  for (int i = 0; i <= cells; ++i) points[i] = K * i / cells;
  const Integrand f = [this](double k) { return (*this)(k); };
  const auto head = integrate_cells(f, points, 0.1 * tol / cells);
  out.evaluations += head.evaluations;
  out.abs_error_estimate += head.abs_error_estimate;
  out.converged = head.converged;
  out.cells = head.cells;

  CompensatedSum sum;
  sum.add(head.value);
  int fast = 0;
  for (const auto& c : components_)
    if (c.frequency * K >= kSlowPhase) ++fast;
  const double comp_tol = 0.9 * tol / std::max(fast, 1);
  for (const auto& c : components_) {
    if (c.frequency * K >= kSlowPhase) {
      const auto t = tail_oscillatory(c, K, comp_tol);
      sum.add(t.value);
      out.evaluations += t.evaluations;
      out.abs_error_estimate += t.abs_error_estimate;
      out.converged = out.converged && t.converged;
      out.cells += t.cells;
      out.alternating = out.alternating && t.alternating;
    } else {
      sum.add(tail_closed_form(c, K));
    }
  }
  out.value = sum.value();
  out.raw_partial_sum = out.value;
  return out;
}

}  // namespace rflight
