#pragma once

#include <cmath>
#include <stdexcept>

namespace haudim {

// Piecewise power-law scaling function: phi(r) = r^alpha_local on [0,1],
// r^alpha_global on [1,inf). phi(0)=0, phi(1)=1, strictly increasing.
struct PowerScale {
  double alpha_local = 2.0;
  double alpha_global = 2.0;

  PowerScale() = default;
  PowerScale(double a_local, double a_global) : alpha_local(a_local), alpha_global(a_global) {
    if (!(a_local > 0) || !(a_global > 0))
      throw std::domain_error("PowerScale: exponents must be positive");
  }

  double eval(double r) const {
    if (r < 0) throw std::domain_error("PowerScale::eval: negative input");
    if (r == 0) return 0.0;
    return std::exp2((r <= 1.0 ? alpha_local : alpha_global) * std::log2(r));
  }

  double invert(double t) const {
    if (t < 0) throw std::domain_error("PowerScale::invert: negative input");
    if (t == 0) return 0.0;
    return std::exp2(std::log2(t) / (t <= 1.0 ? alpha_local : alpha_global));
  }

  double alpha_min() const { return alpha_local < alpha_global ? alpha_local : alpha_global; }
  double alpha_max() const { return alpha_local > alpha_global ? alpha_local : alpha_global; }
};

inline double eval_scale(const PowerScale& s, double r) { return s.eval(r); }
inline double invert_scale(const PowerScale& s, double t) { return s.invert(t); }

// phi_d = phi1 v phi2 of a direct product, itself piecewise power.
inline PowerScale product_scale(const PowerScale& s1, const PowerScale& s2) {
  return PowerScale(s1.alpha_local < s2.alpha_local ? s1.alpha_local : s2.alpha_local,
                    s1.alpha_global > s2.alpha_global ? s1.alpha_global : s2.alpha_global);
}

// phi1 ^ phi2. Its inverse max(phi1^{-1}, phi2^{-1}) is the spatial resolution
// of diagonal proximity: a phi_d-ball of size t around (x1,x2) touches the
// diagonal iff |x1-x2| <= phi1^{-1}(t) + phi2^{-1}(t).
inline PowerScale collision_scale(const PowerScale& s1, const PowerScale& s2) {
  return PowerScale(s1.alpha_local > s2.alpha_local ? s1.alpha_local : s2.alpha_local,
                    s1.alpha_global < s2.alpha_global ? s1.alpha_global : s2.alpha_global);
}

// phi^gamma, used by subordinated processes: (phi^gamma)^{-1}(t) = phi^{-1}(t^{1/gamma}).
inline PowerScale subordinated_scale(const PowerScale& s, double gamma) {
  return PowerScale(s.alpha_local * gamma, s.alpha_global * gamma);
}

}  // namespace haudim
