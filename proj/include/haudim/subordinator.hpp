#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "haudim/bound_report.hpp"

namespace haudim {

// One-sided gamma-stable subordinator tau_t, standardized so that
// E exp(-lambda tau_t) = exp(-t lambda^gamma). gamma = 1 is the identity clock.
struct SubordinatorSpec {
  double gamma = 0.5;
  double t = 1.0;

  SubordinatorSpec() = default;
  SubordinatorSpec(double g, double time) : gamma(g), t(time) {
    if (!(g > 0) || g > 1) throw std::domain_error("SubordinatorSpec: gamma must lie in (0,1]");
    if (!(time > 0)) throw std::domain_error("SubordinatorSpec: t must be positive");
  }
};

// One standard positive gamma-stable draw (t = 1) from two open-unit uniforms,
// via Kanter's representation. Pure function of its inputs.
double kanter_draw(double gamma, double u, double v);

// Draw #i of tau_t for (spec, seed); samples are keyed per index so disjoint
// ranges can be generated independently and out of order.
double subordinator_sample_at(const SubordinatorSpec& spec, std::uint64_t seed, std::uint64_t i);

std::vector<double> sample_subordinator(const SubordinatorSpec& spec, std::size_t n,
                                        std::uint64_t seed);

// Density of tau_1 for the standard gamma-stable subordinator. gamma = 1/2 uses
// the closed form; otherwise the Zolotarev single-integral representation.
double stable_subordinator_density(double gamma, double s);

// Density of tau_t (scaling: pi_t(s) = t^{-1/gamma} f(s t^{-1/gamma})).
double subordinator_density(const SubordinatorSpec& spec, double s);

// CDF of tau_t for gamma = 1/2: erfc(t/(2 sqrt(s))).
double half_stable_cdf(double t, double s);

// Potential densities of the subordinator:
//   w0(s) = integral_0^inf pi_t(s) dt = s^{gamma-1}/Gamma(gamma)
//   w1(s) = integral_0^inf e^{-t} pi_t(s) dt, computed from the spectral
//           representation of 1/(1+lambda^gamma).
double subordinator_potential0(double gamma, double s);
double subordinator_potential1(double gamma, double s);

struct DensityBoundReport {
  BoundReport upper;         // pi_hat / (t s^{-1-gamma} e^{-t/s^gamma})
  BoundReport lower;         // pi_hat / (t s^{-1-gamma}) on s >= t^{1/gamma}
  bool degenerate = false;   // gamma = 1: no density to test
  double log_bin_width = 0;  // Freedman-Diaconis bandwidth on log s
};

DensityBoundReport check_density_bounds(const SubordinatorSpec& spec,
                                        const std::vector<double>& samples,
                                        const std::vector<double>& s_grid);

}  // namespace haudim
