#include <cmath>

#include "doctest.h"
#include "rflight/errors.hpp"
#include "rflight/flight.hpp"

using namespace rflight;

TEST_CASE("same seed gives identical samples for any thread count") {
  const FlightConfig cfg{1, {1.0, 0.6, 0.3}};
  const auto a = sample_distances(cfg, 200000, 99, 1);
  const auto b = sample_distances(cfg, 200000, 99, 4);
  CHECK(a == b);
  const auto h1 = sample_flight(cfg, 200000, 99, 40, 1);
  const auto h2 = sample_flight(cfg, 200000, 99, 40, 3);
  CHECK(h1.counts == h2.counts);
  CHECK(sample_distances(cfg, 1000, 100, 1) != sample_distances(cfg, 1000, 99, 1));
}

TEST_CASE("samples stay inside the support") {
  for (const auto& cfg : {FlightConfig{0, {3, 1, 1}}, FlightConfig{2, {1, 1}}, FlightConfig{0, {0.5, 2.0, 0.7, 0.4}}}) {
    const auto s = support_interval(cfg);
    for (double r : sample_distances(cfg, 50000, 7)) {
      CHECK(r >= s.r_min - 1e-12);
      CHECK(r <= s.r_max + 1e-12);
    }
  }
}

TEST_CASE("histogram counts add up and the density integrates to one") {
  const auto h = sample_flight({0, {1, 1}}, 100000, 3, 50);
  std::uint64_t total = 0;
  double mass = 0.0;
  for (std::size_t b = 0; b < h.bins(); ++b) {
    total += h.counts[b];
    mass += h.density(b) * (h.bin_edges[b + 1] - h.bin_edges[b]);
  }
  CHECK(total == h.samples);
  CHECK(std::abs(mass - 1.0) < 1e-12);
}

TEST_CASE("three-dimensional two-step law") {
  const auto d = sample_distances({0, {1, 1}}, 1000000, 20240611);
  const double ks = ks_distance(d, [](double r) { return std::min(1.0, r * r / 4); });
  CHECK(ks < 0.002);
}

TEST_CASE("KS distance of a wrong law is large") {
  const auto d = sample_distances({0, {1, 1}}, 100000, 1);
  CHECK(ks_distance(d, [](double r) { return std::min(1.0, r / 2); }) > 0.1);
}

TEST_CASE("zero samples are rejected") {
  CHECK_THROWS_AS(sample_distances({0, {1}}, 0, 1), DomainError);
}
