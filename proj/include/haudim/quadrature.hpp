#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace haudim {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double value, double residual)
      : std::runtime_error(what + " (value=" + std::to_string(value) +
                           ", residual=" + std::to_string(residual) + ")"),
        value_estimate(value),
        residual(residual) {}
  double value_estimate;
  double residual;
};

namespace quad_detail {

// Gauss-Kronrod 7-15 nodes (absolute values) and weights.
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

inline Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double fv = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
    resk += kWgk[j] * fv;
    if (j % 2 == 1) resg += kWg[j / 2] * fv;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = resk * h;
  const double diff = std::fabs((resk - resg) * h);
  p.error = diff;
  return p;
}

}  // namespace quad_detail

// Adaptive Gauss-Kronrod integration of f over [a,b] to the requested
// absolute/relative tolerance. Throws QuadratureError on non-convergence,
// carrying the residual estimate.
inline QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                            double abs_tol = 1e-10, double rel_tol = 1e-10,
                            std::size_t max_panels = 4000) {
  using quad_detail::Panel;
  if (!(b > a)) return {0.0, 0.0, 0};
  std::priority_queue<Panel> heap;
  Panel first = quad_detail::gk15(f, a, b);
  double total = first.value;
  double err = first.error;
  std::size_t evals = 15;
  heap.push(first);
  while (err > abs_tol && err > rel_tol * std::fabs(total)) {
    if (heap.size() >= max_panels)
      throw QuadratureError("adaptive quadrature did not converge", total, err);
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw QuadratureError("adaptive quadrature hit machine resolution", total, err);
    Panel l = quad_detail::gk15(f, worst.a, mid);
    Panel r = quad_detail::gk15(f, mid, worst.b);
    evals += 30;
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
  }
  return {total, err, evals};
}

// Integrate f over [a, inf) by the inversion s = a/u, u in (0,1]. Power-law
// tails f ~ s^{-1-eps} become integrable endpoint singularities u^{eps-1},
// which the adaptive rule resolves geometrically.
inline QuadResult integrate_tail_by_inversion(const std::function<double(double)>& f, double a,
                                              double abs_tol = 1e-10, double rel_tol = 1e-10,
                                              std::size_t max_panels = 4000) {
  if (!(a > 0)) throw std::invalid_argument("integrate_tail_by_inversion: need a > 0");
  const auto g = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double s = a / u;
    const double v = f(s);
    return v == 0.0 ? 0.0 : v * a / (u * u);
  };
  return integrate(g, 0.0, 1.0, abs_tol, rel_tol, max_panels);
}

// Integrate f over [a, inf): panels [a, a+w], [a+w, a+2w], ... doubling width,
// stopping once two consecutive panels contribute below the tolerance.
// Suitable for integrands with exponential-type decay; use the inversion
// variant for power-law tails.
inline QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                        double initial_width, double abs_tol = 1e-10,
                                        std::size_t max_doublings = 60) {
  double lo = a;
  double w = initial_width;
  QuadResult acc;
  int quiet = 0;
  for (std::size_t i = 0; i < max_doublings; ++i) {
    QuadResult part = integrate(f, lo, lo + w, abs_tol * 0.25, 1e-12, 2000);
    acc.value += part.value;
    acc.error += part.error;
    acc.evaluations += part.evaluations;
    if (std::fabs(part.value) < abs_tol * 0.25)
      ++quiet;
    else
      quiet = 0;
    if (quiet >= 2) return acc;
    lo += w;
    w *= 2.0;
  }
  throw QuadratureError("semi-infinite quadrature tail did not settle", acc.value, acc.error);
}

}  // namespace haudim
