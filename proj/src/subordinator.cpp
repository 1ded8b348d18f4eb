#include "haudim/subordinator.hpp"

#include <algorithm>
#include <cmath>

#include "haudim/quadrature.hpp"
#include "haudim/rng.hpp"
#include "haudim/stats.hpp"

namespace haudim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// log A(u) of Kanter's representation:
//   A(u) = [ sin(gamma u)^gamma sin((1-gamma)u)^(1-gamma) / sin u ]^(1/(1-gamma))
double log_kanter_a(double gamma, double u) {
  return (gamma * std::log(std::sin(gamma * u)) +
          (1.0 - gamma) * std::log(std::sin((1.0 - gamma) * u)) - std::log(std::sin(u))) /
         (1.0 - gamma);
}

}  // namespace

double kanter_draw(double gamma, double u, double v) {
  if (!(gamma > 0) || !(gamma < 1)) throw std::domain_error("kanter_draw: gamma must lie in (0,1)");
  const double xi = kPi * u;
  const double log_eta = std::log(-std::log(v));
  return std::exp((1.0 - gamma) / gamma * (log_kanter_a(gamma, xi) - log_eta));
}

double subordinator_sample_at(const SubordinatorSpec& spec, std::uint64_t seed, std::uint64_t i) {
  if (spec.gamma == 1.0) return spec.t;
  CounterRng rng(seed, 2 * i);
  const double u = rng.next_unit();
  const double v = rng.next_unit();
  return std::pow(spec.t, 1.0 / spec.gamma) * kanter_draw(spec.gamma, u, v);
}

std::vector<double> sample_subordinator(const SubordinatorSpec& spec, std::size_t n,
                                        std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_subordinator: n must be at least 1");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = subordinator_sample_at(spec, seed, i);
  return out;
}

double stable_subordinator_density(double gamma, double s) {
  if (!(gamma > 0) || !(gamma < 1))
    throw std::domain_error("stable_subordinator_density: gamma must lie in (0,1)");
  if (!(s > 0)) return 0.0;
  if (gamma == 0.5) {
    // Levy distribution: E exp(-lambda tau_1) = exp(-sqrt(lambda)).
    return 0.5 / std::sqrt(kPi) * std::pow(s, -1.5) * std::exp(-0.25 / s);
  }
  const double m = gamma / (1.0 - gamma);
  const double log_g = -m * std::log(s);
  const auto integrand = [&](double u) {
    const double log_b = log_kanter_a(gamma, u) + log_g;
    if (log_b > 700.0) return 0.0;  // B e^{-B} underflows
    const double b = std::exp(log_b);
    return std::exp(log_b - b);
  };
  // A(u) blows up at u = pi and the B e^{-B} factor concentrates into a
  // spike there for large s; panels clustered geometrically toward pi keep
  // the spike visible to the adaptive rule.
  double total = 0.0;
  double lo = 0.0;
  double width = 0.5 * kPi;
  for (int j = 0; j < 48 && width > 0; ++j) {
    const double hi = kPi - width;
    if (hi > lo) {
      total += integrate(integrand, lo, hi, 1e-14, 1e-12).value;
      lo = hi;
    }
    width *= 0.5;
  }
  total += integrate(integrand, lo, kPi, 1e-14, 1e-12).value;
  return m / (kPi * s) * total;
}

double subordinator_density(const SubordinatorSpec& spec, double s) {
  if (spec.gamma == 1.0)
    throw std::domain_error("subordinator_density: gamma=1 is the degenerate clock");
  const double scale = std::pow(spec.t, 1.0 / spec.gamma);
  return stable_subordinator_density(spec.gamma, s / scale) / scale;
}

double half_stable_cdf(double t, double s) {
  if (!(s > 0)) return 0.0;
  return std::erfc(0.5 * t / std::sqrt(s));
}

double subordinator_potential0(double gamma, double s) {
  if (!(gamma > 0) || gamma > 1) throw std::domain_error("potential0: gamma must lie in (0,1]");
  if (!(s > 0)) throw std::domain_error("potential0: s must be positive");
  if (gamma == 1.0) return 1.0;
  return std::pow(s, gamma - 1.0) / std::tgamma(gamma);
}

double subordinator_potential1(double gamma, double s) {
  if (!(gamma > 0) || gamma > 1) throw std::domain_error("potential1: gamma must lie in (0,1]");
  if (!(s > 0)) throw std::domain_error("potential1: s must be positive");
  if (gamma == 1.0) return std::exp(-s);
  // Spectral density of 1/(1+lambda^gamma) across the negative axis.
  const double sg = std::sin(kPi * gamma);
  const double cg = std::cos(kPi * gamma);
  const auto sigma = [&](double r) {
    const double rg = std::pow(r, gamma);
    return sg / kPi * rg / (rg * rg + 2.0 * rg * cg + 1.0);
  };
  const auto integrand = [&](double r) { return std::exp(-r * s) * sigma(r); };
  const double peak = std::max(1.0, 1.0 / s);
  const QuadResult head = integrate(integrand, 0.0, peak, 1e-13, 1e-11);
  const QuadResult tail = integrate_to_infinity(integrand, peak, peak, 1e-13);
  return head.value + tail.value;
}

DensityBoundReport check_density_bounds(const SubordinatorSpec& spec,
                                        const std::vector<double>& samples,
                                        const std::vector<double>& s_grid) {
  if (s_grid.empty()) throw std::invalid_argument("check_density_bounds: empty grid");
  DensityBoundReport out;
  out.upper.name = "subordinator-upper";
  out.lower.name = "subordinator-lower";
  if (spec.gamma == 1.0) {
    out.degenerate = true;
    out.upper.note = out.lower.note = "gamma=1: deterministic clock, no density test";
    return out;
  }
  if (samples.size() < 100000)
    throw std::invalid_argument("check_density_bounds: need at least 1e5 samples");

  // Freedman-Diaconis bandwidth on log s.
  std::vector<double> logs(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) logs[i] = std::log(samples[i]);
  std::vector<double> sorted(logs);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double iqr = sorted[(3 * n) / 4] - sorted[n / 4];
  const double h = 2.0 * iqr / std::cbrt(static_cast<double>(n));
  out.log_bin_width = h;
  const double lo = sorted.front();
  const std::size_t nbins = static_cast<std::size_t>((sorted.back() - lo) / h) + 1;
  std::vector<std::uint64_t> counts(nbins, 0);
  for (double lg : logs) {
    std::size_t k = static_cast<std::size_t>((lg - lo) / h);
    if (k >= nbins) k = nbins - 1;
    ++counts[k];
  }
  const auto density_at = [&](double s) -> double {
    const double lg = std::log(s);
    if (lg < lo || lg >= lo + static_cast<double>(nbins) * h) return 0.0;
    const std::size_t k = static_cast<std::size_t>((lg - lo) / h);
    const double width = std::exp(lo + static_cast<double>(k + 1) * h) -
                         std::exp(lo + static_cast<double>(k) * h);
    return static_cast<double>(counts[k]) / (static_cast<double>(n) * width);
  };

  const double g = spec.gamma;
  const double t = spec.t;
  const double tail_start = std::pow(t, 1.0 / g);
  std::vector<double> tail_log_s, tail_log_ratio;
  bool first = true;
  for (double s : s_grid) {
    const double pi_hat = density_at(s);
    const double env_up = t * std::pow(s, -1.0 - g) * std::exp(-t / std::pow(s, g));
    const double r_up = pi_hat / env_up;
    out.upper.sweep.push_back(s);
    out.upper.ratios.push_back(r_up);
    if (first) {
      out.upper.ratio_min = out.upper.ratio_max = r_up;
      first = false;
    } else {
      out.upper.ratio_min = std::min(out.upper.ratio_min, r_up);
      out.upper.ratio_max = std::max(out.upper.ratio_max, r_up);
    }
    if (s >= tail_start) {
      const double r_lo = pi_hat / (t * std::pow(s, -1.0 - g));
      out.lower.sweep.push_back(s);
      out.lower.ratios.push_back(r_lo);
      if (out.lower.n_points == 0) {
        out.lower.ratio_min = out.lower.ratio_max = r_lo;
      } else {
        out.lower.ratio_min = std::min(out.lower.ratio_min, r_lo);
        out.lower.ratio_max = std::max(out.lower.ratio_max, r_lo);
      }
      ++out.lower.n_points;
      if (r_up > 0) {
        tail_log_s.push_back(std::log(s));
        tail_log_ratio.push_back(std::log(r_up));
      }
    }
    ++out.upper.n_points;
  }
  // The ratio approaches its constant like 1 + O(s^{-gamma}); fit the trend
  // on the deep half of the tail window where the transient has died down.
  if (tail_log_s.size() >= 6) {
    const std::size_t half = tail_log_s.size() / 2;
    std::vector<double> xs(tail_log_s.begin() + half, tail_log_s.end());
    std::vector<double> ys(tail_log_ratio.begin() + half, tail_log_ratio.end());
    out.upper.trend_slope = linear_fit(xs, ys).slope;
  } else if (tail_log_s.size() >= 3) {
    out.upper.trend_slope = linear_fit(tail_log_s, tail_log_ratio).slope;
  }
  out.lower.trend_slope = out.upper.trend_slope;
  return out;
}

}  // namespace haudim
