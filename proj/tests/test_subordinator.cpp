#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "haudim/quadrature.hpp"
#include "haudim/stats.hpp"
#include "haudim/subordinator.hpp"

using namespace haudim;

TEST_CASE("gamma=1 is the deterministic clock") {
  const SubordinatorSpec spec(1.0, 3.0);
  const auto samples = sample_subordinator(spec, 50, 42);
  for (double v : samples) CHECK(v == 3.0);
}

TEST_CASE("samples are strictly positive and deterministic") {
  const SubordinatorSpec spec(0.7, 2.0);
  const auto a = sample_subordinator(spec, 5000, 11);
  const auto b = sample_subordinator(spec, 5000, 11);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] > 0.0);
    CHECK(a[i] == b[i]);
  }
  // per-index draws are order independent
  CHECK(subordinator_sample_at(spec, 11, 4321) > 0.0);
  CHECK(subordinator_sample_at(spec, 11, 17) == a[17]);
}

TEST_CASE("half-stable sampler matches the erfc cdf") {
  const SubordinatorSpec spec(0.5, 1.0);
  const auto samples = sample_subordinator(spec, 1000000, 7);
  const double ks = ks_distance(samples, [](double s) { return half_stable_cdf(1.0, s); });
  CHECK(ks < 0.005);
}

TEST_CASE("scaling law tau_t = t^{1/gamma} tau_1 in distribution") {
  const std::size_t n = 1000000;
  auto at4 = sample_subordinator(SubordinatorSpec(0.5, 4.0), n, 3);
  auto at1 = sample_subordinator(SubordinatorSpec(0.5, 1.0), n, 4);
  for (double& v : at1) v *= 16.0;  // 4^{1/0.5}
  CHECK(ks_distance_two(at4, at1) < 0.01);
}

TEST_CASE("Laplace transform identity within 3 standard errors") {
  for (double gamma : {0.35, 0.5, 0.8}) {
    const double t = 1.3;
    const std::size_t n = 200000;
    const auto samples = sample_subordinator(SubordinatorSpec(gamma, t), n, 99);
    for (double lam : {0.5, 1.0, 2.0}) {
      double sum = 0, sumsq = 0;
      for (double v : samples) {
        const double e = std::exp(-lam * v);
        sum += e;
        sumsq += e * e;
      }
      const double mean = sum / static_cast<double>(n);
      const double se =
          std::sqrt((sumsq / static_cast<double>(n) - mean * mean) / static_cast<double>(n));
      const double expect = std::exp(-t * std::pow(lam, gamma));
      CHECK(std::fabs(mean - expect) <= 3.0 * se);
    }
  }
}

TEST_CASE("Zolotarev density agrees with the Levy closed form at gamma=1/2") {
  // evaluate the integral representation against the closed form it bypasses
  for (double s : {0.05, 0.3, 1.0, 4.0, 25.0}) {
    const double m = 1.0;  // gamma/(1-gamma) at gamma = 1/2
    const double log_g = -m * std::log(s);
    // re-derive via the generic representation by calling the density at a
    // gamma slightly off 1/2 is pointless; instead check the closed form
    // against quadrature of the Kanter representation through gamma=0.499999
    const double near = stable_subordinator_density(0.4999999, s);
    const double exact = stable_subordinator_density(0.5, s);
    CHECK(near == doctest::Approx(exact).epsilon(2e-5));
    (void)log_g;
  }
}

TEST_CASE("density integrates to one and matches a histogram") {
  const double gamma = 0.7;
  const auto f = [&](double s) { return stable_subordinator_density(gamma, s); };
  const QuadResult head = integrate(f, 0.0, 1.0, 1e-10, 1e-9);
  const QuadResult tail = integrate_tail_by_inversion(f, 1.0, 1e-10, 1e-9);
  CHECK(head.value + tail.value == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("density bound report for the half-stable subordinator") {
  const SubordinatorSpec spec(0.5, 1.0);
  const auto samples = sample_subordinator(spec, 1000000, 5);
  std::vector<double> grid;
  for (int i = 0; i <= 52; ++i) grid.push_back(0.1 * std::pow(20000.0, i / 52.0));
  const DensityBoundReport rep = check_density_bounds(spec, samples, grid);
  CHECK(!rep.degenerate);
  CHECK(rep.upper.ratio_max > 0.0);
  CHECK(std::isfinite(rep.upper.ratio_max));
  CHECK(rep.lower.ratio_min > 0.0);
  CHECK(std::fabs(rep.upper.trend_slope) < 0.1);

  SUBCASE("histogram density within 5% of the exact density on [0.1, 20]") {
    // the report's ratios recover pi_hat as ratio * envelope
    for (std::size_t i = 0; i < rep.upper.sweep.size(); ++i) {
      const double s = rep.upper.sweep[i];
      if (s < 0.1 || s > 20.0) continue;
      const double envelope = std::pow(s, -1.5) * std::exp(-1.0 / std::sqrt(s));
      const double pi_hat = rep.upper.ratios[i] * envelope;
      const double exact = subordinator_density(spec, s);
      CHECK(pi_hat == doctest::Approx(exact).epsilon(0.05));
    }
    // and an estimator-independent local-window cross-check
    for (double s : {0.1, 0.5, 1.0, 3.0, 10.0, 20.0}) {
      const double exact = subordinator_density(spec, s);
      std::size_t count = 0;
      const double w = 0.02 * s;
      for (double v : samples)
        if (v >= s - w && v < s + w) ++count;
      const double est = static_cast<double>(count) / (samples.size() * 2 * w);
      CHECK(est == doctest::Approx(exact).epsilon(0.05));
    }
  }
}

TEST_CASE("degenerate gamma=1 report is flagged") {
  const SubordinatorSpec spec(1.0, 2.0);
  const auto samples = sample_subordinator(spec, 100000, 1);
  const DensityBoundReport rep = check_density_bounds(spec, samples, {1.0, 2.0});
  CHECK(rep.degenerate);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(SubordinatorSpec(1.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(SubordinatorSpec(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(sample_subordinator(SubordinatorSpec(0.5, 1.0), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(check_density_bounds(SubordinatorSpec(0.5, 1.0),
                                       std::vector<double>(200000, 1.0), {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_density_bounds(SubordinatorSpec(0.5, 1.0), {1.0, 2.0}, {1.0}),
                  std::invalid_argument);
}

TEST_CASE("subordinator potentials") {
  // w0 and w1 have known Laplace transforms; spot check against quadrature.
  for (double gamma : {0.5, 0.75}) {
    for (double lam : {0.5, 2.0}) {
      const auto f1 = [&](double s) {
        return std::exp(-lam * s) * subordinator_potential1(gamma, s);
      };
      const QuadResult head = integrate(f1, 0.0, 1.0, 1e-11, 1e-9);
      const QuadResult tail = integrate_to_infinity(f1, 1.0, 1.0, 1e-10);  // e^{-lam s} decay
      CHECK(head.value + tail.value ==
            doctest::Approx(1.0 / (1.0 + std::pow(lam, gamma))).epsilon(1e-6));

      const auto f0 = [&](double s) {
        return std::exp(-lam * s) * subordinator_potential0(gamma, s);
      };
      const QuadResult h0 = integrate(f0, 0.0, 1.0, 1e-11, 1e-9);
      const QuadResult t0 = integrate_to_infinity(f0, 1.0, 1.0, 1e-10);  // e^{-lam s} decay
      CHECK(h0.value + t0.value == doctest::Approx(std::pow(lam, -gamma)).epsilon(1e-6));
    }
  }
}
