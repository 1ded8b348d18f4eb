#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "haudim/gamma_curve.hpp"
#include "haudim/process_class.hpp"

namespace haudim {

enum class Finiteness { Finite, Infinite };
enum class PredictionRegime { level, inverse_image, collision };

struct ConditionCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  std::string detail;
};

// A closed-form dimension prediction. value is empty exactly when the theory
// says the time set itself is empty (gamma above 1).
struct DimPrediction {
  std::optional<double> value;
  PredictionRegime regime = PredictionRegime::level;
  std::vector<ConditionCheck> conditions_met;

  bool empty() const { return !value.has_value(); }
  bool certified() const {
    for (const auto& c : conditions_met)
      if (!c.satisfied) return false;
    return true;
  }
};

// Dyadic-shell divergence test for integrals over (0,1].
struct ShellTestConfig {
  int trailing_shells = 8;       // K
  double ratio_threshold = 0.95; // successive-shell decay requirement
  int max_depth = 64;
};

enum class IntegralClass { Convergent, Divergent };

// Raised when the shell test cannot settle within max_depth; carries the
// shell contributions seen so far (log scale).
class IndeterminateIntegral : public std::runtime_error {
 public:
  IndeterminateIntegral(const std::string& what, std::vector<double> log_shells)
      : std::runtime_error(what), log_shell_contributions(std::move(log_shells)) {}
  std::vector<double> log_shell_contributions;
};

// Classify integral_0^1 exp(log_f(log t)) dt via trailing dyadic shells.
IntegralClass classify_dyadic_integral(const std::function<double(double)>& log_integrand,
                                       const ShellTestConfig& cfg = {});

// gamma(s) for the single-process curve: max((d1 - s)/alpha_local, 0).
double gamma_closed_form(const ProcessClass& proc, double s);

// gamma(s) as the infimum over gamma of convergence of
//   integral_0^1 (phi^{-1}(t))^s / V(phi^{-1}(t)) t^{gamma-1} dt,
// located by bisection with the dyadic shell test as the divergence oracle.
double gamma_numeric(const VolumeProfile& volume, const PowerScale& scale, double s,
                     double tol, const ShellTestConfig& cfg = {});

// Collision curve gamma(s) for two processes sharing a volume profile
// (local exponents sorted ascending).
double collision_gamma(const ProcessClass& p1, const ProcessClass& p2, double s);
GammaCurve collision_curve(const ProcessClass& p1, const ProcessClass& p2);
GammaCurve single_curve(const ProcessClass& proc);

// I^gamma recurrence integral classification: Infinite iff d2 <= gamma*alpha_global.
Finiteness recurrence_I(const ProcessClass& proc, double gamma);

// J^gamma for the direct product: Infinite iff d2_1/ag1 + d2_2/ag2 <= gamma.
Finiteness product_J(const ProcessClass& p1, const ProcessClass& p2, double gamma);

// Cap({a}) > 0 iff integral_0^1 dt/V(phi^{-1}(t)) < infinity, i.e. d1 < alpha_local.
bool point_capacity_positive(const ProcessClass& proc);

DimPrediction predict_level_dim(const ProcessClass& proc, const std::string& at = "a");
DimPrediction predict_inverse_dim(const ProcessClass& proc, double s_F);
DimPrediction predict_collision_dim(const ProcessClass& p1, const ProcessClass& p2,
                                    double s_F, double t_F);

}  // namespace haudim
