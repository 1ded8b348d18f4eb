#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "haudim/kernel_lab.hpp"
#include "haudim/quadrature.hpp"

using namespace haudim;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("closed forms at alpha = 2 and alpha = 1") {
  CHECK(stable_kernel(2.0, 1.0, 0.0) == doctest::Approx(1.0 / std::sqrt(4.0 * kPi)).epsilon(1e-14));
  CHECK(stable_kernel(1.0, 1.0, 1.0) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));
  // quadrature route agrees with the closed forms
  for (double t : {0.3, 1.0, 4.0}) {
    for (double x : {0.0, 0.7, 2.5}) {
      CHECK(stable_kernel_quadrature(2.0, t, x, 1e-10) ==
            doctest::Approx(stable_kernel(2.0, t, x)).epsilon(1e-8));
      CHECK(stable_kernel_quadrature(1.0, t, x, 1e-10) ==
            doctest::Approx(stable_kernel(1.0, t, x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("on-diagonal value matches Gamma(1+1/alpha)/pi") {
  // p(1,0) = (1/pi) integral exp(-xi^alpha) dxi has a closed form.
  for (double alpha : {0.7, 1.2, 1.5, 1.8}) {
    const double expect = std::tgamma(1.0 + 1.0 / alpha) / kPi;
    CHECK(stable_kernel(alpha, 1.0, 0.0, 1e-11) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("Richardson self-consistency at alpha = 1.5") {
  for (double x : {0.0, 0.5, 2.0, 5.0}) {
    const double coarse = stable_kernel(1.5, 1.0, x, 1e-8);
    const double fine = stable_kernel(1.5, 1.0, x, 1e-12);
    CHECK(std::fabs(coarse - fine) / fine < 1e-7);
  }
}

TEST_CASE("kernel table reproduces direct quadrature") {
  const StableKernelTable table(1.5);
  for (double s : {0.2, 1.0, 3.0}) {
    for (double x : {0.0, 0.3, 1.0, 4.0, 20.0}) {
      const double direct = stable_kernel(1.5, s, x, 1e-11);
      CHECK(table.eval(s, x) == doctest::Approx(direct).epsilon(2e-5));
    }
  }
  SUBCASE("symmetry in x") {
    for (double x : {0.4, 1.7, 9.0}) CHECK(table.eval(1.0, x) == table.eval(1.0, -x));
  }
  SUBCASE("tail switch is continuous") {
    CHECK(table.density(59.999) == doctest::Approx(table.density(60.001)).epsilon(1e-3));
  }
}

TEST_CASE("kernel grid values are nonnegative and symmetric") {
  const KernelGrid grid = make_kernel_grid(1.2, 1e-2, 1e2, 9, 30.0, 10);
  for (const auto& row : grid.values)
    for (double v : row) CHECK(v >= 0.0);
  const StableKernelTable table(1.2);
  CHECK(table.eval(0.7, 1.3) == table.eval(0.7, -1.3));
}

TEST_CASE("WUHK and NDLHK reports for the Cauchy kernel") {
  const KernelGrid grid = make_kernel_grid(1.0, 1e-2, 1e2, 13, 50.0, 12);
  const BoundReport up = check_wuhk(1.0, grid);
  CHECK(std::isfinite(up.ratio_max));
  CHECK(up.ratio_max > 0.0);
  CHECK(std::fabs(up.trend_slope) < 0.1);  // flat over 4 decades of t
  const BoundReport low = check_ndlhk(1.0, grid);
  CHECK(low.ratio_min > 0.0);
  CHECK(std::fabs(low.trend_slope) < 0.1);
}

TEST_CASE("NDLHK ratio_min positive for alpha = 1.5") {
  const KernelGrid grid = make_kernel_grid(1.5, 1e-2, 1e2, 9, 30.0, 10);
  CHECK(check_ndlhk(1.5, grid).ratio_min > 0.0);
}

TEST_CASE("alpha = 2 on-diagonal scaling is exact") {
  for (double t : {0.01, 0.1, 1.0, 10.0})
    CHECK(stable_kernel(2.0, t, 0.0) * std::sqrt(t) ==
          doctest::Approx(1.0 / std::sqrt(4.0 * kPi)).epsilon(1e-14));
}

TEST_CASE("subordinated kernel identities") {
  SUBCASE("alpha=2, gamma=1/2 at the origin is Cauchy") {
    CHECK(subordinated_kernel(2.0, 0.5, 1.0, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-7));
  }
  SUBCASE("gamma=1 equals the base kernel exactly") {
    const StableKernelTable base(1.3);
    for (double x : {0.0, 1.0, 3.0})
      CHECK(subordinated_kernel(base, 1.0, 0.7, x) == base.eval(0.7, x));
  }
  SUBCASE("alpha=2, gamma=3/4 equals the 1.5-stable kernel within 1%") {
    const StableKernelTable base(2.0);
    for (double x : {0.0, 1.0, 3.0, 5.0}) {
      const double q = subordinated_kernel(base, 0.75, 1.0, x);
      const double p = stable_kernel(1.5, 1.0, x);
      CHECK(q == doctest::Approx(p).epsilon(0.01));
    }
  }
  SUBCASE("monotone envelope: q(t,x) <= q(t,0)") {
    const StableKernelTable base(2.0);
    const double q0 = subordinated_kernel(base, 0.5, 1.0, 0.0);
    for (double x : {0.2, 1.0, 2.0, 8.0})
      CHECK(subordinated_kernel(base, 0.5, 1.0, x) <= q0 * (1 + 1e-9));
  }
}

TEST_CASE("monte carlo subordinated kernel agrees with quadrature") {
  const McValue mc = subordinated_kernel_mc(2.0, 0.5, 1.0, 0.5, 200000, 13);
  const double q = subordinated_kernel(2.0, 0.5, 1.0, 0.5);
  CHECK(std::fabs(mc.value - q) <= 4.0 * mc.std_error);

  SUBCASE("generic base exponent goes through the table route") {
    const McValue m = subordinated_kernel_mc(1.6, 0.75, 1.0, 1.0, 100000, 14);
    const double qq = subordinated_kernel(1.6, 0.75, 1.0, 1.0);
    CHECK(std::fabs(m.value - qq) <= 4.0 * m.std_error + 1e-4);
  }
}

TEST_CASE("subordinated bound reports for the Cauchy-producing pair (2, 1/2)") {
  LemmaCheckConfig cfg;
  cfg.t_lo = 1e-2;
  cfg.t_hi = 1e1;
  const std::vector<BoundReport> reports = check_subordinated_bounds(2.0, 0.5, cfg);
  REQUIRE(reports.size() == 3);
  for (const auto& rep : reports) {
    INFO(rep.name);
    CHECK(rep.ratio_min > 0.0);
    CHECK(std::isfinite(rep.ratio_max));
    CHECK(std::fabs(rep.trend_slope) <= 0.1);
  }
}

TEST_CASE("subordinated bound reports reduce to base bounds at gamma=1") {
  LemmaCheckConfig cfg;
  cfg.nt = 6;
  cfg.nx = 8;
  const std::vector<BoundReport> reports = check_subordinated_bounds(2.0, 1.0, cfg);
  // on-diagonal ratio is the Gaussian constant 1/sqrt(4 pi)
  CHECK(reports[0].ratio_min == doctest::Approx(1.0 / std::sqrt(4.0 * kPi)).epsilon(1e-6));
  CHECK(reports[0].ratio_max == doctest::Approx(1.0 / std::sqrt(4.0 * kPi)).epsilon(1e-6));
}

TEST_CASE("green function of the product (transient stable pair)") {
  const StableKernelTable b(1.2);
  SUBCASE("symmetry and positivity") {
    const double u = green_product(b, b, 1.0, 0.4, 0.9);
    CHECK(u > 0.0);
    CHECK(green_product(b, b, 1.0, 0.9, 0.4) == doctest::Approx(u).epsilon(1e-9));
  }
  SUBCASE("recurrent configuration throws") {
    const StableKernelTable g(2.0);
    CHECK_THROWS_AS(green_product(g, g, 1.0, 1.0, 1.0), std::runtime_error);
  }
  SUBCASE("on-diagonal divergence when the near field is too heavy") {
    CHECK(std::isinf(green_product(b, b, 1.0, 0.0, 0.0)));
  }
  SUBCASE("envelope check is flat within 0.15") {
    GreenCheckConfig cfg;
    cfg.sep_lo = 0.05;
    cfg.sep_hi = 5.0;
    cfg.n = 8;
    const BoundReport rep = check_green_product(1.2, 1.2, 1.0, cfg);
    CHECK(rep.ratio_min > 0.0);
    CHECK(std::fabs(rep.trend_slope) < 0.15);
  }
}

TEST_CASE("subordinated product Green function (gamma < 1)") {
  // Two Brownian components under a 1/2-subordinator: the product kernel is
  // the planar Cauchy kernel, whose Green function decays like the envelope
  // 1/max(|dx1|,|dx2|) exactly.
  const StableKernelTable g(2.0);
  const double u = green_product(g, g, 0.5, 0.8, 0.3);
  CHECK(u > 0.0);
  CHECK(green_product(g, g, 0.5, 0.3, 0.8) == doctest::Approx(u).epsilon(1e-8));
  GreenCheckConfig cfg;
  cfg.sep_lo = 0.1;
  cfg.sep_hi = 10.0;
  cfg.n = 7;
  const BoundReport rep = check_green_product(2.0, 2.0, 0.5, cfg);
  CHECK(rep.ratio_min > 0.0);
  CHECK(std::fabs(rep.trend_slope) < 0.05);
}

TEST_CASE("subordinated resolvent agrees with a direct time integral") {
  // (alpha, gamma) = (2, 1/2): q is the Cauchy kernel, so
  // u1(x) = (1/pi) integral e^{-t} t/(t^2+x^2) dt.
  const StableKernelTable g(2.0);
  for (double x : {0.3, 1.0, 4.0}) {
    const auto direct = [&](double t) { return std::exp(-t) * t / (kPi * (t * t + x * x)); };
    const QuadResult ref = integrate(direct, 0.0, 60.0, 1e-12, 1e-10);
    CHECK(subordinated_resolvent1(g, 0.5, x) == doctest::Approx(ref.value).epsilon(1e-6));
  }
}

TEST_CASE("kernel sanity residuals") {
  SUBCASE("Chapman-Kolmogorov and normalization, alpha = 1.5") {
    const StableKernelTable table(1.5);
    CHECK(chapman_kolmogorov_residual(table, 0.4, 0.7, 0.9) < 1e-6);
    CHECK(normalization_residual(table, 1.0) < 1e-6);
    CHECK(normalization_residual(table, 0.1) < 1e-6);
  }
  SUBCASE("Gaussian case") {
    const StableKernelTable table(2.0);
    CHECK(chapman_kolmogorov_residual(table, 0.5, 0.5, 1.0) < 1e-8);
    CHECK(normalization_residual(table, 2.0) < 1e-8);
  }
  SUBCASE("subordination identity in characteristic-function space") {
    const double res =
        subordination_fourier_residual(2.0, 0.5, 1.0, {0.0, 0.5, 1.0, 2.0, 5.0, 10.0});
    CHECK(res < 1e-6);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(stable_kernel(2.5, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(stable_kernel(1.5, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(check_wuhk(2.0, make_kernel_grid(1.0, 0.1, 1.0, 3, 5.0, 3)),
                  std::domain_error);
  CHECK_THROWS_AS(subordinated_kernel(2.0, 1.5, 1.0, 0.0), std::domain_error);
}
