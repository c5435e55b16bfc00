#include "rflight/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "rflight/errors.hpp"

namespace rflight {
namespace {

// Gauss-Kronrod 21-point nodes (descending, last is the centre) and weights;
// the 10-point Gauss rule uses the odd-indexed nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208067916560, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxDepth = 50;
constexpr int kMaxIntervals = 20000;

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double floor;  // roundoff level of this segment's estimate
  int depth;
  bool operator<(const Segment& o) const { return error < o.error; }
};

double checked(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw EvaluationError("non-finite integrand value", x);
  return y;
}

Segment gk21(const Integrand& f, double a, double b, int depth) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, centre);
  double resk = fc * kWgk[10];
  double resg = 0.0;
  double resabs = std::abs(resk);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(f, centre - dx);
    f2[j] = checked(f, centre + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  resk *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double floor = 50.0 * kEps * resabs;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(floor, err);
  return {a, b, resk, err, floor, depth};
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Repeated averaging of the last `window` partial sums (Euler transform of
// the tail of an alternating series).
double euler_average(const std::vector<double>& partial, std::size_t end) {
  constexpr std::size_t kWindow = 24;
  const std::size_t count = std::min(end + 1, kWindow);
  const std::size_t first = end + 1 - count;
  std::vector<double> row(partial.begin() + first, partial.begin() + end + 1);
  for (std::size_t level = 1; level < count; ++level) {
    for (std::size_t i = 0; i + level < count; ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
  }
  return row[0];
}

// Levin u-transform L_k^{(n)} built from partial sums S_n..S_{n+k} with
// remainder estimates (n+1) a_n.
double levin_u(const std::vector<double>& terms, const std::vector<double>& partial,
               std::size_t n, std::size_t k) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j <= k; ++j) {
    const double omega = (n + j + 1.0) * terms[n + j];
    if (omega == 0.0) return partial[n + k];
    const double weight = ((j % 2 == 0) ? 1.0 : -1.0) *
                          binomial(static_cast<int>(k), static_cast<int>(j)) *
                          std::pow((n + j + 1.0) / (n + k + 1.0), static_cast<double>(k) - 1.0) /
                          omega;
    num += weight * partial[n + j];
    den += weight;
  }
  return den == 0.0 ? partial[n + k] : num / den;
}

}  // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b, double tol) {
  if (!(a <= b)) throw DomainError("integrate_finite requires a <= b");
  if (!(tol > 0)) throw DomainError("integrate_finite requires tol > 0");
  QuadratureResult out;
  std::priority_queue<Segment> heap;
  std::vector<Segment> frozen;
  heap.push(gk21(f, a, b, 0));
  out.evaluations = 21;
  double total = heap.top().value;
  double total_err = heap.top().error;
  double total_floor = heap.top().floor;
  int intervals = 1;
  while (total_err > tol * std::max(1.0, std::abs(total))) {
    // Nothing left to gain once the estimate is at the rounding level.
    if (heap.empty() || total_err <= 2.0 * total_floor) break;
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    const bool too_small = (worst.b - worst.a) <= 100.0 * kEps * std::max(std::abs(mid), 1e-300);
    if (worst.depth >= kMaxDepth || too_small || intervals >= kMaxIntervals) {
      // Cannot refine this one; set it aside and keep working on the rest.
      heap.pop();
      frozen.push_back(worst);
      if (intervals >= kMaxIntervals) break;
      continue;
    }
    heap.pop();
    const Segment left = gk21(f, worst.a, mid, worst.depth + 1);
    const Segment right = gk21(f, mid, worst.b, worst.depth + 1);
    out.evaluations += 42;
    ++intervals;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_floor += left.floor + right.floor - worst.floor;
    heap.push(left);
    heap.push(right);
  }
  CompensatedSum sum;
  double err = 0.0;
  for (const auto& s : frozen) {
    sum.add(s.value);
    err += s.error;
  }
  while (!heap.empty()) {
    sum.add(heap.top().value);
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum.value();
  out.abs_error_estimate = err;
  out.converged = err <= tol * std::max(1.0, std::abs(out.value));
  return out;
}

QuadratureResult integrate_cells(const Integrand& f, std::span<const double> points, double tol) {
  QuadratureResult out;
  out.converged = true;
  if (points.size() < 2) throw InsufficientData("integrate_cells needs at least two points");
  CompensatedSum sum;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const auto r = integrate_finite(f, points[i], points[i + 1], tol);
    sum.add(r.value);
    out.abs_error_estimate += r.abs_error_estimate;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  out.value = sum.value();
  out.cells = static_cast<int>(points.size() - 1);
  return out;
}

QuadratureResult integrate_oscillatory_tail(const Integrand& f,
                                            std::span<const double> break_points, double tol,
                                            int max_intervals) {
  if (break_points.size() < 4) throw InsufficientData("oscillatory tail needs at least 4 break points");
  for (std::size_t i = 0; i + 1 < break_points.size(); ++i) {
    if (!(break_points[i] < break_points[i + 1]))
      throw DomainError("break points must be strictly increasing");
  }
  const std::size_t max_cells =
      std::min<std::size_t>(break_points.size() - 1, static_cast<std::size_t>(std::max(max_intervals, 3)));

  QuadratureResult out;
  std::vector<double> terms;
  std::vector<double> partial;
  CompensatedSum raw;
  double estimate = 0.0;
  double previous = 0.0;
  double error = std::numeric_limits<double>::infinity();
  bool alternating = true;
  const double cell_tol = 0.1 * tol;

  for (std::size_t i = 0; i < max_cells; ++i) {
    const auto cell = integrate_finite(f, break_points[i], break_points[i + 1], cell_tol);
    out.evaluations += cell.evaluations;
    terms.push_back(cell.value);
    raw.add(cell.value);
    partial.push_back(raw.value());
    const std::size_t n = terms.size();
    if (n >= 2 && terms[n - 1] != 0.0 && terms[n - 2] != 0.0 &&
        (terms[n - 1] > 0) == (terms[n - 2] > 0)) {
      alternating = false;
    }
    if (n < 3) continue;

    if (alternating) {
      estimate = euler_average(partial, n - 1);
      previous = euler_average(partial, n - 2);
    } else {
      const std::size_t k = std::min<std::size_t>(n - 1, 16);
      const std::size_t offset = n - 1 - k;
      estimate = levin_u(terms, partial, offset, k);
      previous = levin_u(terms, partial, offset, k - 1);
    }
    error = std::abs(estimate - previous);
    const bool negligible = alternating && std::abs(terms[n - 1]) < 0.1 * tol &&
                            std::abs(terms[n - 2]) < 0.1 * tol;
    if (n >= 4 && (error <= tol || negligible)) {
      if (negligible) error = std::min(error, std::abs(terms[n - 1]));
      out.converged = true;
      break;
    }
  }
  out.value = estimate;
  out.abs_error_estimate = error;
  out.cells = static_cast<int>(terms.size());
  out.alternating = alternating;
  out.raw_partial_sum = raw.value();
  return out;
}

}  // namespace rflight
