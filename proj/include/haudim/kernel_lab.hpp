#pragma once

#include <cstdint>
#include <vector>

#include "haudim/bound_report.hpp"

namespace haudim {

// Transition density of the symmetric alpha-stable process on R under the
// exp(-t|xi|^alpha) convention:
//   p(t,x) = (1/pi) integral_0^inf exp(-t xi^alpha) cos(xi x) dxi.
// alpha = 2 (Gaussian, generator Laplacian) and alpha = 1 (Cauchy) short-
// circuit to closed forms; otherwise adaptive quadrature with an analytic
// tail cutoff, accurate to abs_tol.
double stable_kernel(double alpha, double t, double x, double abs_tol = 1e-10);

// The Fourier integral without the closed-form short circuits, so alpha in
// {1,2} can be cross-checked against the exact densities.
double stable_kernel_quadrature(double alpha, double t, double x, double abs_tol = 1e-10);

// Distribution function of the same marginal.
double stable_cdf(double alpha, double t, double x, double abs_tol = 1e-10);

// Self-similar lookup table g(z) = p(1,z); p(s,x) = s^{-1/alpha} g(x s^{-1/alpha}).
// Two-term power tail beyond z_max.
class StableKernelTable {
 public:
  explicit StableKernelTable(double alpha, double z_max = 60.0, std::size_t n_points = 3000);
  double alpha() const { return alpha_; }
  double density(double z) const;
  double eval(double s, double x) const;

 private:
  double alpha_;
  double z_max_;
  double dz_;
  bool closed_form_;
  std::vector<double> g_;
  double tail_c1_ = 0.0;
  double tail_c2_ = 0.0;
};

struct KernelGrid {
  std::vector<double> t_grid;
  std::vector<double> x_grid;
  std::vector<std::vector<double>> values;  // values[i][j] = p(t_i, x_j)
};

KernelGrid make_kernel_grid(double alpha, double t_lo, double t_hi, std::size_t nt,
                            double x_hi, std::size_t nx);

BoundReport check_wuhk(double alpha, const KernelGrid& grid);
BoundReport check_ndlhk(double alpha, const KernelGrid& grid);

// Subordinated kernel q(t,x) = integral_0^inf p(s,x) pi_t(s) ds. gamma = 1
// returns the base kernel exactly.
double subordinated_kernel(double alpha, double gamma, double t, double x);
double subordinated_kernel(const StableKernelTable& base, double gamma, double t, double x);

struct McValue {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte Carlo route: average p(tau_i, x) over subordinator samples.
McValue subordinated_kernel_mc(double alpha, double gamma, double t, double x, std::size_t n,
                               std::uint64_t seed);

// 1-resolvent of the subordinate process, u1(x) = integral e^{-t} q(t,x) dt,
// evaluated as integral p(s,x) w1(s) ds with w1 the subordinator 1-potential.
double subordinated_resolvent1(const StableKernelTable& base, double gamma, double x);

struct LemmaCheckConfig {
  double t_lo = 1e-2, t_hi = 1e1;
  std::size_t nt = 10;
  std::vector<double> u_grid = {0.5, 1.0, 2.0, 4.0, 8.0};  // x = u t^{1/(alpha gamma)}
  double x_lo = 1e-3, x_hi = 20.0;
  std::size_t nx = 14;
};

// Three envelope reports for the subordinate process on R (V(r)=r,
// phi=r^alpha): on-diagonal flatness of q(t,0) V((phi^gamma)^{-1}(t)),
// off-diagonal q against (1/V) ^ (t/(V phi^gamma)), and the 1-resolvent
// against its integral envelopes.
std::vector<BoundReport> check_subordinated_bounds(double alpha, double gamma,
                                              const LemmaCheckConfig& cfg = {});

// Green function of the gamma-subordinate direct product of two stable
// processes on R, u0(x,y) = integral_0^inf q(t,x,y) dt, computed through the
// subordinator 0-potential. Throws if the configuration is recurrent.
double green_product(double alpha1, double alpha2, double gamma, double dx1, double dx2);
double green_product(const StableKernelTable& base1, const StableKernelTable& base2,
                     double gamma, double dx1, double dx2);

struct GreenCheckConfig {
  double sep_lo = 1e-2, sep_hi = 10.0;
  std::size_t n = 12;
};

BoundReport check_green_product(double alpha1, double alpha2, double gamma,
                                const GreenCheckConfig& cfg = {});

// Sanity residuals.
double chapman_kolmogorov_residual(const StableKernelTable& table, double t, double s, double x);
double normalization_residual(const StableKernelTable& table, double t);

// max over xi_grid of |FT of q(t,.) - exp(-t xi^{alpha gamma})|.
double subordination_fourier_residual(double alpha, double gamma, double t,
                                      const std::vector<double>& xi_grid);

}  // namespace haudim
