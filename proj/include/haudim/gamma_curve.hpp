#pragma once

#include <algorithm>
#include <stdexcept>

namespace haudim {

enum class GammaVariant { single, collision };

// The critical subordination index s -> gamma(s) for piecewise power inputs.
// single:    gamma(s) = (d1 - s)/alpha_a           clamped at 0, s0 = d1
// collision: gamma(s) = (d1 - s)/alpha_a + d1/alpha_b  clamped at 0,
//            with alpha_a <= alpha_b the sorted local walk exponents and
//            s0 = alpha_a (d1/alpha_a + d1/alpha_b).
class GammaCurve {
 public:
  GammaCurve(double d1, double alpha_a, GammaVariant variant, double alpha_b = 0.0)
      : d1_(d1), alpha_a_(alpha_a), alpha_b_(alpha_b), variant_(variant) {
    if (!(d1 > 0) || !(alpha_a > 0))
      throw std::domain_error("GammaCurve: parameters must be positive");
    if (variant == GammaVariant::collision && !(alpha_b >= alpha_a))
      throw std::domain_error("GammaCurve: collision variant needs alpha_b >= alpha_a");
  }

  double eval(double s) const {
    if (s < 0) throw std::domain_error("GammaCurve::eval: s must be nonnegative");
    const double g = variant_ == GammaVariant::single
                         ? (d1_ - s) / alpha_a_
                         : (d1_ - s) / alpha_a_ + d1_ / alpha_b_;
    return std::max(g, 0.0);
  }

  double operator()(double s) const { return eval(s); }

  double s0() const {
    return variant_ == GammaVariant::single
               ? d1_
               : alpha_a_ * (d1_ / alpha_a_ + d1_ / alpha_b_);
  }

  GammaVariant variant() const { return variant_; }
  double lipschitz_bound() const { return 1.0 / alpha_a_; }

 private:
  double d1_;
  double alpha_a_;
  double alpha_b_;
  GammaVariant variant_;
};

}  // namespace haudim
