#include "haudim/kernel_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "haudim/quadrature.hpp"
#include "haudim/stats.hpp"
#include "haudim/subordinator.hpp"

namespace haudim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_alpha_t(double alpha, double t) {
  if (!(alpha > 0) || alpha > 2) throw std::domain_error("stable kernel: alpha must lie in (0,2]");
  if (!(t > 0)) throw std::domain_error("stable kernel: t must be positive");
}

// Cutoff Xi with (1/pi) integral_Xi^inf exp(-t xi^alpha) dxi < tol, from the
// incomplete-gamma bound Gamma(s,u) <= C u^{s-1} e^{-u}.
double fourier_cutoff(double alpha, double t, double tol) {
  const double s = 1.0 / alpha;
  const double c = s <= 1.0 ? 1.0 : 2.0;
  double u0 = std::max(2.0 * (s - 1.0) + 1.0, 4.0);
  while (u0 < 800.0) {
    const double bound = s / kPi * c * std::pow(t, -s) * std::pow(u0, s - 1.0) * std::exp(-u0);
    if (bound < tol) break;
    u0 *= 1.3;
  }
  return std::pow(u0 / t, 1.0 / alpha);
}

double gaussian_kernel(double t, double x) {
  return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

double cauchy_kernel(double t, double x) { return t / (kPi * (t * t + x * x)); }

// Bergstroem tail coefficients of the exp(-|xi|^alpha) density:
// g(z) ~ c1 z^{-1-alpha} + c2 z^{-1-2 alpha}.
double tail_coeff(double alpha, int k) {
  const double sign = k % 2 == 1 ? 1.0 : -1.0;
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return sign / kPi * std::tgamma(k * alpha + 1.0) / fact * std::sin(0.5 * k * kPi * alpha);
}

}  // namespace

double stable_kernel_quadrature(double alpha, double t, double x, double abs_tol) {
  validate_alpha_t(alpha, t);
  const double ax = std::fabs(x);
  const double cutoff = fourier_cutoff(alpha, t, abs_tol * 0.5);
  const auto integrand = [&](double xi) {
    return std::exp(-t * std::pow(xi, alpha)) * std::cos(xi * ax) / kPi;
  };
  const QuadResult q = integrate(integrand, 0.0, cutoff, abs_tol * 0.5, 1e-12, 60000);
  return std::max(q.value, 0.0);
}

double stable_kernel(double alpha, double t, double x, double abs_tol) {
  validate_alpha_t(alpha, t);
  const double ax = std::fabs(x);
  if (alpha == 2.0) return gaussian_kernel(t, ax);
  if (alpha == 1.0) return cauchy_kernel(t, ax);
  return stable_kernel_quadrature(alpha, t, ax, abs_tol);
}

double stable_cdf(double alpha, double t, double x, double abs_tol) {
  validate_alpha_t(alpha, t);
  if (alpha == 2.0) return 0.5 * std::erfc(-x / (2.0 * std::sqrt(t)));
  if (alpha == 1.0) return 0.5 + std::atan(x / t) / kPi;
  if (x == 0.0) return 0.5;
  const double ax = std::fabs(x);
  const double cutoff = fourier_cutoff(alpha, t, abs_tol * 0.5 / std::max(1.0, 1.0 / ax));
  const auto integrand = [&](double xi) {
    const double sinc = xi * ax < 1e-8 ? ax : std::sin(xi * ax) / xi;
    return std::exp(-t * std::pow(xi, alpha)) * sinc / kPi;
  };
  const QuadResult q = integrate(integrand, 0.0, cutoff, abs_tol * 0.5, 1e-12, 60000);
  return x > 0 ? 0.5 + q.value : 0.5 - q.value;
}

StableKernelTable::StableKernelTable(double alpha, double z_max, std::size_t n_points)
    : alpha_(alpha), z_max_(z_max) {
  validate_alpha_t(alpha, 1.0);
  closed_form_ = alpha == 2.0 || alpha == 1.0;
  if (closed_form_) {
    dz_ = 0.0;
    return;
  }
  dz_ = z_max / static_cast<double>(n_points - 1);
  g_.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i)
    g_[i] = stable_kernel(alpha, 1.0, static_cast<double>(i) * dz_, 1e-11);
  tail_c1_ = tail_coeff(alpha, 1);
  tail_c2_ = tail_coeff(alpha, 2);
}

double StableKernelTable::density(double z) const {
  const double az = std::fabs(z);
  if (closed_form_)
    return alpha_ == 2.0 ? gaussian_kernel(1.0, az) : cauchy_kernel(1.0, az);
  if (az >= z_max_)
    return tail_c1_ * std::pow(az, -1.0 - alpha_) + tail_c2_ * std::pow(az, -1.0 - 2.0 * alpha_);
  const double pos = az / dz_;
  std::size_t i = static_cast<std::size_t>(pos);
  if (i + 2 >= g_.size()) i = g_.size() - 3;
  const double tau = pos - static_cast<double>(i);
  // Catmull-Rom; the density is even, so the left neighbour of index 0 is g[1].
  const double p0 = i == 0 ? g_[1] : g_[i - 1];
  const double p1 = g_[i];
  const double p2 = g_[i + 1];
  const double p3 = g_[i + 2];
  return 0.5 * (2.0 * p1 + (-p0 + p2) * tau + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * tau * tau +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * tau * tau * tau);
}

double StableKernelTable::eval(double s, double x) const {
  const double r = std::pow(s, -1.0 / alpha_);
  return r * density(x * r);
}

KernelGrid make_kernel_grid(double alpha, double t_lo, double t_hi, std::size_t nt,
                            double x_hi, std::size_t nx) {
  if (!(t_lo > 0) || !(t_hi > t_lo) || nt < 2 || nx < 2)
    throw std::invalid_argument("make_kernel_grid: bad grid request");
  KernelGrid grid;
  for (std::size_t i = 0; i < nt; ++i)
    grid.t_grid.push_back(t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) /
                                                            static_cast<double>(nt - 1)));
  const double x_lo = 0.05 * std::pow(t_lo, 1.0 / alpha);
  grid.x_grid.push_back(0.0);
  for (std::size_t j = 0; j < nx; ++j)
    grid.x_grid.push_back(x_lo * std::pow(x_hi / x_lo, static_cast<double>(j) /
                                                           static_cast<double>(nx - 1)));
  const StableKernelTable table(alpha);
  grid.values.resize(grid.t_grid.size());
  for (std::size_t i = 0; i < grid.t_grid.size(); ++i) {
    grid.values[i].resize(grid.x_grid.size());
    for (std::size_t j = 0; j < grid.x_grid.size(); ++j)
      grid.values[i][j] = table.eval(grid.t_grid[i], grid.x_grid[j]);
  }
  return grid;
}

BoundReport check_wuhk(double alpha, const KernelGrid& grid) {
  if (!(alpha > 0) || !(alpha < 2))
    throw std::domain_error("check_wuhk: alpha must lie in (0,2)");
  BoundReport rep;
  rep.name = "wuhk";
  rep.note = "per-t maxima of p / (t^{-1/a} ^ t|x|^{-(1+a)})";
  std::vector<double> log_t, log_ratio;
  for (std::size_t i = 0; i < grid.t_grid.size(); ++i) {
    const double t = grid.t_grid[i];
    double m = 0.0;
    for (std::size_t j = 0; j < grid.x_grid.size(); ++j) {
      const double x = grid.x_grid[j];
      const double on_diag = std::pow(t, -1.0 / alpha);
      const double env = x == 0.0 ? on_diag
                                  : std::min(on_diag, t * std::pow(x, -1.0 - alpha));
      m = std::max(m, grid.values[i][j] / env);
    }
    rep.sweep.push_back(t);
    rep.ratios.push_back(m);
    log_t.push_back(std::log(t));
    log_ratio.push_back(std::log(m));
    if (rep.n_points == 0)
      rep.ratio_min = rep.ratio_max = m;
    else {
      rep.ratio_min = std::min(rep.ratio_min, m);
      rep.ratio_max = std::max(rep.ratio_max, m);
    }
    ++rep.n_points;
  }
  rep.trend_slope = linear_fit(log_t, log_ratio).slope;
  return rep;
}

BoundReport check_ndlhk(double alpha, const KernelGrid& grid) {
  if (!(alpha > 0) || !(alpha < 2))
    throw std::domain_error("check_ndlhk: alpha must lie in (0,2)");
  BoundReport rep;
  rep.name = "ndlhk";
  rep.note = "per-t minima of p * t^{1/a} over |x| <= t^{1/a} (c0 = 1)";
  std::vector<double> log_t, log_ratio;
  for (std::size_t i = 0; i < grid.t_grid.size(); ++i) {
    const double t = grid.t_grid[i];
    const double reach = std::pow(t, 1.0 / alpha);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid.x_grid.size(); ++j) {
      if (grid.x_grid[j] > reach) continue;
      m = std::min(m, grid.values[i][j] * reach);
    }
    rep.sweep.push_back(t);
    rep.ratios.push_back(m);
    log_t.push_back(std::log(t));
    log_ratio.push_back(std::log(m));
    if (rep.n_points == 0)
      rep.ratio_min = rep.ratio_max = m;
    else {
      rep.ratio_min = std::min(rep.ratio_min, m);
      rep.ratio_max = std::max(rep.ratio_max, m);
    }
    ++rep.n_points;
  }
  rep.trend_slope = linear_fit(log_t, log_ratio).slope;
  return rep;
}

double subordinated_kernel(const StableKernelTable& base, double gamma, double t, double x) {
  if (!(gamma > 0) || gamma > 1)
    throw std::domain_error("subordinated_kernel: gamma must lie in (0,1]");
  if (!(t > 0)) throw std::domain_error("subordinated_kernel: t must be positive");
  if (gamma == 1.0) return base.eval(t, x);
  const double big_t = std::pow(t, 1.0 / gamma);
  const auto integrand = [&](double sigma) {
    if (sigma <= 0.0) return 0.0;
    const double f = stable_subordinator_density(gamma, sigma);
    if (f == 0.0) return 0.0;
    return base.eval(big_t * sigma, x) * f;
  };
  const QuadResult head = integrate(integrand, 0.0, 1.0, 1e-13, 1e-9, 8000);
  const double tail_tol = std::max(1e-14, 1e-9 * std::fabs(head.value));
  const QuadResult tail = integrate_tail_by_inversion(integrand, 1.0, tail_tol, 1e-9, 8000);
  return head.value + tail.value;
}

double subordinated_kernel(double alpha, double gamma, double t, double x) {
  const StableKernelTable base(alpha);
  return subordinated_kernel(base, gamma, t, x);
}

McValue subordinated_kernel_mc(double alpha, double gamma, double t, double x, std::size_t n,
                               std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("subordinated_kernel_mc: need n >= 2");
  const StableKernelTable base(alpha);
  const SubordinatorSpec spec(gamma, t);
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = subordinator_sample_at(spec, seed, i);
    const double v = base.eval(tau, x);
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, sumsq / static_cast<double>(n) - mean * mean);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

double subordinated_resolvent1(const StableKernelTable& base, double gamma, double x) {
  if (!(gamma > 0) || gamma > 1)
    throw std::domain_error("subordinated_resolvent1: gamma must lie in (0,1]");
  const auto weighted = [&](double s) {
    return base.eval(s, x) * subordinator_potential1(gamma, s);
  };
  // Head with the s = u^{1/gamma} substitution to flatten the s^{gamma-1}
  // behaviour of the potential near 0.
  const auto head_integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double s = std::pow(u, 1.0 / gamma);
    return weighted(s) * std::pow(u, 1.0 / gamma - 1.0) / gamma;
  };
  const QuadResult head = integrate(head_integrand, 0.0, 1.0, 1e-13, 1e-8, 8000);
  const double tail_tol = std::max(1e-14, 1e-8 * std::fabs(head.value));
  const QuadResult tail = integrate_tail_by_inversion(weighted, 1.0, tail_tol, 1e-8, 8000);
  return head.value + tail.value;
}

namespace {

void accumulate(BoundReport& rep, double sweep, double ratio) {
  rep.sweep.push_back(sweep);
  rep.ratios.push_back(ratio);
  if (rep.n_points == 0)
    rep.ratio_min = rep.ratio_max = ratio;
  else {
    rep.ratio_min = std::min(rep.ratio_min, ratio);
    rep.ratio_max = std::max(rep.ratio_max, ratio);
  }
  ++rep.n_points;
}

void fit_trend(BoundReport& rep) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rep.sweep.size(); ++i) {
    if (rep.ratios[i] > 0) {
      lx.push_back(std::log(rep.sweep[i]));
      ly.push_back(std::log(rep.ratios[i]));
    }
  }
  if (lx.size() >= 2) rep.trend_slope = linear_fit(lx, ly).slope;
}

// integral_{T}^{inf} e^{-t} t^{-1/beta} dt, the small-separation resolvent envelope.
double resolvent_envelope_integral(double beta, double lower) {
  const auto f = [&](double t) { return std::exp(-t) * std::pow(t, -1.0 / beta); };
  const QuadResult head = integrate(f, lower, lower + 50.0, 1e-14, 1e-10, 8000);
  return head.value;  // e^{-t} makes anything beyond lower+50 negligible
}

}  // namespace

std::vector<BoundReport> check_subordinated_bounds(double alpha, double gamma,
                                              const LemmaCheckConfig& cfg) {
  const double beta = alpha * gamma;
  const StableKernelTable base(alpha);

  std::vector<double> t_grid;
  for (std::size_t i = 0; i < cfg.nt; ++i)
    t_grid.push_back(cfg.t_lo * std::pow(cfg.t_hi / cfg.t_lo,
                                         static_cast<double>(i) / static_cast<double>(cfg.nt - 1)));

  BoundReport ondiag;
  ondiag.name = "subordinated-ondiagonal";
  ondiag.note = "q(t,0) * V((phi^gamma)^{-1}(t)) over t";
  for (double t : t_grid) {
    const double q0 = subordinated_kernel(base, gamma, t, 0.0);
    accumulate(ondiag, t, q0 * std::pow(t, 1.0 / beta));
  }
  fit_trend(ondiag);

  BoundReport offdiag;
  offdiag.name = "subordinated-offdiagonal";
  offdiag.note = "per-t maxima of q / envelope at x = u t^{1/beta}";
  for (double t : t_grid) {
    double m = 0.0;
    for (double u : cfg.u_grid) {
      const double x = u * std::pow(t, 1.0 / beta);
      const double env = std::min(std::pow(t, -1.0 / beta), t * std::pow(x, -1.0 - beta));
      m = std::max(m, subordinated_kernel(base, gamma, t, x) / env);
    }
    accumulate(offdiag, t, m);
  }
  fit_trend(offdiag);

  BoundReport res;
  res.name = "subordinated-resolvent";
  res.note = "u1 / envelope over x; trend fitted on x <= 1";
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < cfg.nx; ++i) {
    const double x = cfg.x_lo * std::pow(cfg.x_hi / cfg.x_lo,
                                         static_cast<double>(i) / static_cast<double>(cfg.nx - 1));
    const double u1 = subordinated_resolvent1(base, gamma, x);
    const double env = x <= 1.0 ? resolvent_envelope_integral(beta, std::pow(x, beta))
                                : std::pow(x, -1.0 - beta);
    const double ratio = u1 / env;
    accumulate(res, x, ratio);
    if (x <= 1.0 && ratio > 0) {
      lx.push_back(std::log(x));
      ly.push_back(std::log(ratio));
    }
  }
  if (lx.size() >= 2) res.trend_slope = linear_fit(lx, ly).slope;

  return {ondiag, offdiag, res};
}

double green_product(const StableKernelTable& base1, const StableKernelTable& base2,
                     double gamma, double dx1, double dx2) {
  if (!(gamma > 0) || gamma > 1)
    throw std::domain_error("green_product: gamma must lie in (0,1]");
  const double exponent = 1.0 / base1.alpha() + 1.0 / base2.alpha();
  if (exponent <= gamma)
    throw std::runtime_error("green_product: Green function divergent (recurrent configuration)");
  const double a1 = std::fabs(dx1);
  const double a2 = std::fabs(dx2);
  if (a1 == 0.0 && a2 == 0.0 && exponent >= 1.0)
    return std::numeric_limits<double>::infinity();
  const double gamma_fn = std::tgamma(gamma);
  const auto weighted = [&](double s) {
    const double w0 = gamma == 1.0 ? 1.0 : std::pow(s, gamma - 1.0) / gamma_fn;
    return base1.eval(s, a1) * base2.eval(s, a2) * w0;
  };
  const auto head_integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double s = std::pow(u, 1.0 / gamma);
    return weighted(s) * std::pow(u, 1.0 / gamma - 1.0) / gamma;
  };
  const QuadResult head = integrate(head_integrand, 0.0, 1.0, 1e-13, 1e-9, 8000);
  const double tail_tol = std::max(1e-14, 1e-8 * std::fabs(head.value));
  const QuadResult tail = integrate_tail_by_inversion(weighted, 1.0, tail_tol, 1e-8, 8000);
  return head.value + tail.value;
}

double green_product(double alpha1, double alpha2, double gamma, double dx1, double dx2) {
  const StableKernelTable b1(alpha1);
  const StableKernelTable b2(alpha2);
  return green_product(b1, b2, gamma, dx1, dx2);
}

BoundReport check_green_product(double alpha1, double alpha2, double gamma,
                                const GreenCheckConfig& cfg) {
  const StableKernelTable b1(alpha1);
  const StableKernelTable b2(alpha2);
  const double e = 1.0 / (alpha1 * gamma) + 1.0 / (alpha2 * gamma);
  if (e <= 1.0)
    throw std::runtime_error("check_green_product: recurrent configuration");
  BoundReport rep;
  rep.name = "green-product";
  rep.note = "u0(x, x+(d,d)) / product Green envelope over separation d";
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const double d = cfg.sep_lo * std::pow(cfg.sep_hi / cfg.sep_lo,
                                           static_cast<double>(i) / static_cast<double>(cfg.n - 1));
    const double u0 = green_product(b1, b2, gamma, d, d);
    const double phi_d = std::max(std::pow(d, alpha1), std::pow(d, alpha2));
    const double lower = std::pow(phi_d, gamma);
    // integral_{phi_d^gamma}^inf t^{-e} dt with e > 1
    const double env = std::pow(lower, 1.0 - e) / (e - 1.0);
    accumulate(rep, d, u0 / env);
  }
  fit_trend(rep);
  return rep;
}

double chapman_kolmogorov_residual(const StableKernelTable& table, double t, double s, double x) {
  const double reach = std::pow(std::max(t, s), 1.0 / table.alpha());
  const double a = std::max({2.0 * std::fabs(x) + 20.0, 40.0 * reach, 300.0});
  const auto f = [&](double z) { return table.eval(t, z) * table.eval(s, x - z); };
  const QuadResult q = integrate(f, -a, a, 1e-11, 1e-10, 20000);
  return std::fabs(q.value - table.eval(t + s, x));
}

double normalization_residual(const StableKernelTable& table, double t) {
  const double alpha = table.alpha();
  if (alpha == 2.0 || alpha == 1.0) {
    const double a = alpha == 2.0 ? 40.0 * std::sqrt(t) : 0.0;
    if (alpha == 2.0) {
      const QuadResult q = integrate([&](double x) { return table.eval(t, x); }, 0.0, a,
                                     1e-12, 1e-11, 8000);
      return std::fabs(2.0 * q.value - 1.0);
    }
    return 0.0;  // Cauchy integrates to 1 in closed form
  }
  const double cut = std::max(60.0 * std::pow(t, 1.0 / alpha), 10.0);
  const QuadResult q =
      integrate([&](double x) { return table.eval(t, x); }, 0.0, cut, 1e-12, 1e-11, 8000);
  // analytic remainder from the two-term power tail
  const double c1 = tail_coeff(alpha, 1);
  const double c2 = tail_coeff(alpha, 2);
  const double rem = c1 * t * std::pow(cut, -alpha) / alpha +
                     c2 * t * t * std::pow(cut, -2.0 * alpha) / (2.0 * alpha);
  return std::fabs(2.0 * (q.value + rem) - 1.0);
}

double subordination_fourier_residual(double alpha, double gamma, double t,
                                      const std::vector<double>& xi_grid) {
  if (gamma == 1.0) return 0.0;
  double worst = 0.0;
  const double big_t = std::pow(t, 1.0 / gamma);
  for (double xi : xi_grid) {
    const double lam = std::pow(std::fabs(xi), alpha);
    const auto integrand = [&](double sigma) {
      if (sigma <= 0.0) return 0.0;
      const double f = stable_subordinator_density(gamma, sigma);
      if (f == 0.0) return 0.0;
      return std::exp(-lam * big_t * sigma) * f;
    };
    const QuadResult head = integrate(integrand, 0.0, 1.0, 1e-12, 1e-10, 8000);
    const QuadResult tail = integrate_tail_by_inversion(integrand, 1.0, 1e-12, 1e-9, 8000);
    const double expect = std::exp(-t * std::pow(std::fabs(xi), alpha * gamma));
    worst = std::max(worst, std::fabs(head.value + tail.value - expect));
  }
  return worst;
}

}  // namespace haudim
