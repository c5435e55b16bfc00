#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rflight/csv.hpp"
#include "rflight/errors.hpp"
#include "rflight/extended.hpp"
#include "rflight/flight.hpp"
#include "rflight/fourier_bessel.hpp"
#include "rflight/specfun.hpp"
#include "rflight/verify.hpp"

using namespace rflight;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string out;
  std::optional<double> tol;
  std::optional<int> terms;
  std::uint64_t seed = VerifyOptions{}.seed;
  bool json = false;
};

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }
  void finish(const std::string& path) {
    os().flush();
    if (file_ && !*file_) throw std::runtime_error("write failed for " + path);
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<double> lengths_arg(const std::string& s) {
  try {
    return parse_lengths(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--lengths: ") + e.what());
  }
}

int require_terms(const Globals& g, const char* what) {
  if (!g.terms) throw UsageError(std::string(what) + " requires --terms");
  if (*g.terms < 1) throw UsageError("--terms must be >= 1");
  return *g.terms;
}

Integrand unit_function(const std::string& name) {
  if (name == "1") return [](double) { return 1.0; };
  if (name == "z") return [](double z) { return z; };
  if (name == "z2") return [](double z) { return z * z; };
  throw UsageError("--f must be one of 1, z, z2");
}

Integrand interval_function(const std::string& name, double S) {
  if (name == "1") return [](double) { return 1.0; };
  if (name == "r") return [](double r) { return r; };
  if (name == "r2") return [](double r) { return r * r; };
  if (name == "bump") return [S](double r) { return r * (S - r); };
  throw UsageError("--f must be one of 1, r, r2, bump");
}

void emit_value(std::ostream& os, const Globals& g, const json& j) {
  if (g.json) {
    os << j.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : j.items()) {
    os << k << '=';
    if (v.is_number_float()) {
      os << format_double(v.get<double>());
    } else if (v.is_string()) {
      os << v.get<std::string>();
    } else {
      os << v.dump();
    }
    os << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random flights, Fourier-Bessel kernels and their numerical checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--tol", g.tol, "Absolute tolerance for integrals");
  app.add_option("--terms", g.terms, "Number of series terms N");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_flag("--json", g.json, "JSON output where applicable");

  // zeros
  int z_order = 0;
  int z_count = 10;
  auto* zeros = app.add_subcommand("zeros", "Positive zeros of j_l as CSV index,zero");
  zeros->add_option("--order,-l", z_order, "Order l")->required();
  zeros->add_option("--count,-n", z_count, "Number of zeros");

  // kernel
  int k_m = 0, k_l = 0, k_grid = 9;
  auto* kernel = app.add_subcommand("kernel", "Partial-sum kernel K_N(z, z') on a grid, CSV");
  kernel->add_option("--m", k_m, "Inner order m")->required();
  kernel->add_option("--l", k_l, "Outer order l >= m")->required();
  kernel->add_option("--grid-size", k_grid, "Grid points i/(G+1), i = 1..G");

  // delta-test
  int d_m = 0, d_l = 0;
  std::string d_f = "z2";
  std::vector<double> d_z;
  auto* delta = app.add_subcommand("delta-test", "Smoothed kernel functional F_N[f](z) vs f(z)");
  delta->add_option("--m", d_m, "Inner order m")->required();
  delta->add_option("--l", d_l, "Outer order l >= m")->required();
  delta->add_option("--f", d_f, "Test function: 1, z, z2");
  delta->add_option("--z", d_z, "Evaluation points (default 0.1..0.9)");

  // expand
  int e_l = 0;
  double e_S = 1.0;
  std::string e_f = "bump";
  auto* expand_cmd = app.add_subcommand("expand", "Fourier-Bessel coefficients, CSV index,coefficient");
  expand_cmd->add_option("--l", e_l, "Order l");
  expand_cmd->add_option("--S", e_S, "Interval end S");
  expand_cmd->add_option("--f", e_f, "Function on [0,S]: 1, r, r2, bump = r(S-r)");

  // flight
  int f_m = 0;
  std::string f_lengths;
  std::optional<double> f_r;
  std::string f_method = "direct";
  int f_grid = 0;
  auto* flight = app.add_subcommand("flight", "Random-flight integral J_m(r; r_1..r_n)");
  flight->add_option("--m", f_m, "Order m (dimension 2m+3)");
  flight->add_option("--lengths", f_lengths, "Comma-separated step lengths")->required();
  flight->add_option("--r", f_r, "Displacement r");
  flight->add_option("--method", f_method, "direct, recursive or series")
      ->check(CLI::IsMember({"direct", "recursive", "series"}));
  flight->add_option("--grid", f_grid, "Emit CSV r,J_direct,J_recursive,J_series on this many points");

  // extended
  int x_l = 0, x_m = 0;
  double x_R = 1.0, x_X = 1.0;
  std::string x_lengths;
  std::string x_method = "direct";
  auto* extended = app.add_subcommand("extended", "Extended random-flight function F_{l,m}");
  extended->add_option("--l", x_l, "Outer order l")->required();
  extended->add_option("--m", x_m, "Inner order m <= l")->required();
  extended->add_option("--R", x_R, "Origin-observer distance R")->required();
  extended->add_option("--X", x_X, "Exit-observer distance X")->required();
  extended->add_option("--lengths", x_lengths, "Comma-separated step lengths")->required();
  extended->add_option("--method", x_method, "direct, contraction or series")
      ->check(CLI::IsMember({"direct", "contraction", "series"}));

  // gap
  int p_l = 2, p_m = 0;
  double p_R = 1.0, p_X = 0.9, p_r1 = 1.1;
  std::vector<int> p_ns;
  auto* gap = app.add_subcommand("gap", "Representation gap sweep, CSV l,m,R,X,r1,N,lhs,rhs,gap");
  gap->add_option("--l", p_l, "Outer order l");
  gap->add_option("--m", p_m, "Inner order m <= l");
  gap->add_option("--R", p_R, "R");
  gap->add_option("--X", p_X, "X");
  gap->add_option("--r1", p_r1, "Single step length r1");
  gap->add_option("--n-values", p_ns, "Truncations to report (default 50 100 200 400, or --terms)");

  // mc
  int mc_m = 0;
  std::string mc_lengths;
  std::uint64_t mc_samples = 100000;
  int mc_bins = 50;
  auto* mc = app.add_subcommand("mc", "Monte Carlo histogram CSV bin_lo,bin_hi,count,density");
  mc->add_option("--m", mc_m, "Order m (dimension 2m+3)");
  mc->add_option("--lengths", mc_lengths, "Comma-separated step lengths")->required();
  mc->add_option("--samples", mc_samples, "Number of flights");
  mc->add_option("--bins", mc_bins, "Histogram bins");

  // verify
  std::string v_suite;
  std::string v_report;
  std::string v_zeros;
  std::uint64_t v_samples = VerifyOptions{}.mc_samples;
  auto* verify = app.add_subcommand("verify", "Run a verification suite and emit a JSON report");
  verify->add_option("suite", v_suite, "specfun, kernels, flights, extended or all")
      ->required()
      ->check(CLI::IsMember({"specfun", "kernels", "flights", "extended", "all"}));
  verify->add_option("--report", v_report, "Report path (default: --out or stdout)");
  verify->add_option("--zeros-file", v_zeros, "CSV index,zero used in place of the computed j_0 zeros");
  verify->add_option("--samples", v_samples, "Monte Carlo samples per case");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (g.tol && !(*g.tol > 0)) throw UsageError("--tol must be positive");

    if (*zeros) {
      if (z_order < 0) throw UsageError("--order must be >= 0");
      if (z_order > kMaxBesselOrder) throw UsageError("--order above 200");
      if (z_count < 1) throw UsageError("--count must be >= 1");
      const auto t = bessel_zeros(z_order, z_count);
      Sink sink(g.out);
      sink.os() << "index,zero\n";
      for (std::size_t i = 0; i < t.size(); ++i) sink.os() << (i + 1) << ',' << format_double(t[i]) << '\n';
      sink.finish(g.out);
      return kExitPass;
    }

    if (*kernel) {
      if (k_m < 0 || k_l < k_m) throw UsageError("kernel needs l >= m >= 0");
      if (k_grid < 1) throw UsageError("--grid-size must be >= 1");
      const int N = require_terms(g, "kernel");
      std::vector<double> grid;
      for (int i = 1; i <= k_grid; ++i) grid.push_back(static_cast<double>(i) / (k_grid + 1));
      const CompletenessKernel K({k_m, k_l, N, grid});
      Sink sink(g.out);
      sink.os() << "z,zprime,K_N\n";
      for (double z : grid)
        for (double zp : grid) write_csv_row(sink.os(), {z, zp, K(z, zp)});
      sink.finish(g.out);
      return kExitPass;
    }

    if (*delta) {
      if (d_m < 0 || d_l < d_m) throw UsageError("delta-test needs l >= m >= 0");
      const int N = g.terms ? require_terms(g, "delta-test") : 400;
      const auto f = unit_function(d_f);
      if (d_z.empty()) d_z = interior_grid();
      for (double z : d_z)
        if (!(z >= 0 && z <= 1)) throw UsageError("--z points must lie in [0, 1]");
      const DeltaFunctional F({d_m, d_l, N, d_z}, f);
      Sink sink(g.out);
      sink.os() << "z,F_N,f,error\n";
      for (double z : d_z) {
        const double v = F(z);
        write_csv_row(sink.os(), {z, v, f(z), v - f(z)});
      }
      sink.finish(g.out);
      return kExitPass;
    }

    if (*expand_cmd) {
      if (e_l < 0) throw UsageError("--l must be >= 0");
      if (!(e_S > 0)) throw UsageError("--S must be positive");
      const int N = require_terms(g, "expand");
      const auto s = expand(interval_function(e_f, e_S), e_l, e_S, N, g.tol.value_or(kDefaultFiniteTol));
      Sink sink(g.out);
      sink.os() << "index,coefficient\n";
      for (std::size_t i = 0; i < s.coefficients.size(); ++i)
        sink.os() << (i + 1) << ',' << format_double(s.coefficients[i]) << '\n';
      sink.finish(g.out);
      return kExitPass;
    }

    if (*flight) {
      if (f_m < 0) throw UsageError("--m must be >= 0");
      const FlightConfig cfg{f_m, lengths_arg(f_lengths)};
      const double tol = g.tol.value_or(kDefaultOscillatoryTol);
      if (f_method == "series") require_terms(g, "--method series");
      Sink sink(g.out);
      if (f_grid > 0) {
        const int N = require_terms(g, "--grid");
        if (cfg.steps() < 2) throw UsageError("--grid needs at least two steps");
        const auto s = support_interval(cfg);
        const FlightSeries series(cfg, N);
        sink.os() << "r,J_direct,J_recursive,J_series\n";
        for (int i = 1; i <= f_grid; ++i) {
          const double r = s.r_max * i / (f_grid + 1.0);
          const double rec = cfg.steps() <= kMaxRecursiveSteps ? flight_recursive(cfg, r) : std::nan("");
          write_csv_row(sink.os(), {r, flight_integral_direct(cfg, r, tol), rec, series(r)});
        }
        sink.finish(g.out);
        return kExitPass;
      }
      if (!f_r) throw UsageError("flight needs --r (or --grid)");
      const double r = *f_r;
      const auto support = support_interval(cfg);
      json j;
      j["method"] = f_method;
      j["m"] = f_m;
      j["r"] = r;
      if (cfg.steps() == 1) {
        const auto d = flight_one_step(cfg);
        j["delta_location"] = d.location;
        j["delta_weight"] = d.weight;
        j["note"] = "one-step flight is weight * delta(r - location)";
        emit_value(sink.os(), g, j);
        sink.finish(g.out);
        return kExitPass;
      }
      if (!(r > 0)) throw UsageError("--r must be positive");
      j["r_min"] = support.r_min;
      j["r_max"] = support.r_max;
      j["outside_support"] = !support.contains(r);
      if (f_method == "direct") {
        const auto q = flight_integral_direct_result(cfg, r, tol);
        j["value"] = q.value;
        j["abs_error_estimate"] = q.abs_error_estimate;
        j["evaluations"] = q.evaluations;
        j["converged"] = q.converged;
      } else if (f_method == "recursive") {
        j["value"] = flight_recursive(cfg, r, g.tol.value_or(1e-9));
      } else {
        if (r > support.r_max) throw UsageError("series route needs r <= sum of lengths");
        j["terms"] = *g.terms;
        j["value"] = flight_series(cfg, r, *g.terms);
      }
      emit_value(sink.os(), g, j);
      sink.finish(g.out);
      return kExitPass;
    }

    if (*extended) {
      if (x_m < 0 || x_l < x_m) throw UsageError("extended needs l >= m >= 0");
      if (!(x_R > 0 && x_X > 0)) throw UsageError("--R and --X must be positive");
      const ExtendedConfig cfg{x_l, x_m, x_R, x_X, lengths_arg(x_lengths)};
      json j;
      j["method"] = x_method;
      if (x_method == "direct") {
        const auto q = extended_direct_result(cfg, g.tol.value_or(kDefaultOscillatoryTol));
        j["value"] = q.value;
        j["abs_error_estimate"] = q.abs_error_estimate;
        j["converged"] = q.converged;
      } else if (x_method == "contraction") {
        j["value"] = extended_via_contraction(cfg, g.tol.value_or(1e-9));
      } else {
        const int N = require_terms(g, "--method series");
        if (x_X > cfg.extended_length()) throw UsageError("series route needs X <= R + sum of lengths");
        j["terms"] = N;
        j["value"] = extended_series(cfg, N);
      }
      Sink sink(g.out);
      emit_value(sink.os(), g, j);
      sink.finish(g.out);
      return kExitPass;
    }

    if (*gap) {
      if (p_m < 0 || p_l < p_m) throw UsageError("gap needs l >= m >= 0");
      if (!(p_R > 0 && p_X > 0 && p_r1 > 0)) throw UsageError("gap needs positive R, X, r1");
      if (p_ns.empty()) p_ns = g.terms ? std::vector<int>{*g.terms} : std::vector<int>{50, 100, 200, 400};
      int nmax = 0;
      for (int n : p_ns) {
        if (n < 1) throw UsageError("truncations must be >= 1");
        nmax = std::max(nmax, n);
      }
      const RepresentationGap rg(p_l, p_m, p_R, p_X, p_r1, nmax);
      Sink sink(g.out);
      sink.os() << "l,m,R,X,r1,N,lhs,rhs,gap\n";
      for (int n : p_ns) {
        const auto r = rg.at(n);
        sink.os() << p_l << ',' << p_m << ',' << format_double(p_R) << ',' << format_double(p_X) << ','
                  << format_double(p_r1) << ',' << n << ',' << format_double(r.lhs) << ','
                  << format_double(r.rhs) << ',' << format_double(r.gap) << '\n';
      }
      sink.finish(g.out);
      return kExitPass;
    }

    if (*mc) {
      if (mc_m < 0) throw UsageError("--m must be >= 0");
      if (mc_samples == 0) throw UsageError("--samples must be >= 1");
      if (mc_bins < 1) throw UsageError("--bins must be >= 1");
      const FlightConfig cfg{mc_m, lengths_arg(mc_lengths)};
      const auto h = sample_flight(cfg, mc_samples, g.seed, mc_bins);
      Sink sink(g.out);
      sink.os() << "bin_lo,bin_hi,count,density\n";
      for (std::size_t b = 0; b < h.bins(); ++b) {
        sink.os() << format_double(h.bin_edges[b]) << ',' << format_double(h.bin_edges[b + 1]) << ','
                  << h.counts[b] << ',' << format_double(h.density(b)) << '\n';
      }
      sink.finish(g.out);
      return kExitPass;
    }

    if (*verify) {
      if (v_samples == 0) throw UsageError("--samples must be >= 1");
      VerifyOptions opts;
      opts.seed = g.seed;
      opts.mc_samples = v_samples;
      if (!v_zeros.empty()) opts.zeros_file = v_zeros;
      const auto report = run_suite(v_suite, opts);
      const std::string path = v_report.empty() ? g.out : v_report;
      Sink sink(path);
      sink.os() << report.to_json().dump(2) << '\n';
      sink.finish(path);
      for (const auto& c : report.cases)
        if (!c.pass) std::cerr << "FAIL " << c.id << '\n';
      std::cerr << (report.pass() ? "PASS" : "FAIL") << ' ' << report.suite << '\n';
      return report.pass() ? kExitPass : kExitFail;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // Domain, order and distributional-case errors all come from bad arguments.
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
