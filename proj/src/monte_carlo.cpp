#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "rflight/errors.hpp"
#include "rflight/flight.hpp"

namespace rflight {
namespace {

constexpr std::uint64_t kChunk = 1u << 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  return splitmix64(splitmix64(seed) ^ splitmix64(chunk + 0x632be59bd9b4e019ULL));
}

void fill_chunk(const FlightConfig& cfg, std::uint64_t seed, std::uint64_t chunk,
                std::uint64_t begin, std::uint64_t end, std::vector<double>& out) {
  std::mt19937_64 rng(chunk_seed(seed, chunk));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int D = cfg.dimension();
  std::vector<double> pos(D);
  std::vector<double> dir(D);
  for (std::uint64_t s = begin; s < end; ++s) {
    std::fill(pos.begin(), pos.end(), 0.0);
    for (double len : cfg.lengths) {
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (int d = 0; d < D; ++d) {
          dir[d] = gauss(rng);
          norm2 += dir[d] * dir[d];
        }
      } while (norm2 == 0.0);
      const double scale = len / std::sqrt(norm2);
      for (int d = 0; d < D; ++d) pos[d] += scale * dir[d];
    }
    double r2 = 0.0;
    for (double p : pos) r2 += p * p;
    out[s] = std::sqrt(r2);
  }
}

}  // namespace

double McHistogram::density(std::size_t bin) const {
  const double width = bin_edges[bin + 1] - bin_edges[bin];
  return static_cast<double>(counts[bin]) / (static_cast<double>(samples) * width);
}

std::vector<double> sample_distances(const FlightConfig& cfg, std::uint64_t count,
                                     std::uint64_t seed, unsigned threads) {
  cfg.validate();
  if (count == 0) throw DomainError("sample count must be positive");
  std::vector<double> out(count);
  const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      fill_chunk(cfg, seed, c, c * kChunk, std::min(count, (c + 1) * kChunk), out);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

McHistogram histogram(const std::vector<double>& samples, double lo, double hi, int bins,
                      std::uint64_t seed) {
  if (bins < 1) throw DomainError("histogram needs at least one bin");
  if (!(lo < hi)) throw DomainError("histogram range is empty");
  McHistogram h;
  h.seed = seed;
  h.samples = samples.size();
  h.counts.assign(bins, 0);
  h.bin_edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) h.bin_edges[i] = lo + (hi - lo) * i / bins;
  for (double x : samples) {
    auto b = static_cast<long>(std::floor((x - lo) / (hi - lo) * bins));
    b = std::clamp<long>(b, 0, bins - 1);
    ++h.counts[b];
  }
  return h;
}

McHistogram sample_flight(const FlightConfig& cfg, std::uint64_t count, std::uint64_t seed,
                          int bins, unsigned threads) {
  const auto samples = sample_distances(cfg, count, seed, threads);
  auto support = support_interval(cfg);
  if (!(support.r_min < support.r_max)) {
    support.r_min = std::max(0.0, support.r_min - 0.5);
    support.r_max += 0.5;
  }
  return histogram(samples, support.r_min, support.r_max, bins, seed);
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InsufficientData("ks_distance needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - F, F - i / n});
  }
  return d;
}

}  // namespace rflight
