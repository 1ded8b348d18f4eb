#include "haudim/scaling_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace haudim {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1,1].
constexpr double kGlNodes[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeights[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                  0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                  0.0622535239386479, 0.0271524594117541};

constexpr double kLn2 = 0.6931471805599453094;

// log of the GL approximation of integral_{2^{-k-1}}^{2^{-k}} exp(log_f(log t)) dt,
// evaluated fully in log space so steep power integrands never overflow.
double log_shell_contribution(const std::function<double(double)>& log_f, int k) {
  const double b = std::exp2(-static_cast<double>(k));
  const double a = 0.5 * b;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double terms[16];
  int m = 0;
  for (int i = 0; i < 8; ++i) {
    const double tp = mid + half * kGlNodes[i];
    const double tm = mid - half * kGlNodes[i];
    const double lw = std::log(kGlWeights[i] * half);
    terms[m++] = lw + log_f(std::log(tp));
    terms[m++] = lw + log_f(std::log(tm));
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 16; ++i) peak = std::max(peak, terms[i]);
  if (!std::isfinite(peak)) return peak;  // all-zero shell underflows to -inf
  double acc = 0.0;
  for (int i = 0; i < 16; ++i) acc += std::exp(terms[i] - peak);
  return peak + std::log(acc);
}

}  // namespace

IntegralClass classify_dyadic_integral(const std::function<double(double)>& log_integrand,
                                       const ShellTestConfig& cfg) {
  if (cfg.trailing_shells < 1 || cfg.max_depth <= cfg.trailing_shells)
    throw std::invalid_argument("classify_dyadic_integral: bad shell configuration");
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(cfg.max_depth));
  for (int k = 0; k < cfg.max_depth; ++k) {
    const double lc = log_shell_contribution(log_integrand, k);
    if (std::isnan(lc))
      throw IndeterminateIntegral("shell contribution is NaN at depth " + std::to_string(k),
                                  logs);
    if (lc == -std::numeric_limits<double>::infinity()) break;  // underflow: done decaying
    logs.push_back(lc);
  }
  if (static_cast<int>(logs.size()) <= cfg.trailing_shells) {
    if (logs.empty())
      throw IndeterminateIntegral("no usable dyadic shells", logs);
    // Everything below the first shells underflowed: decisive decay.
    return IntegralClass::Convergent;
  }
  const double log_thr = std::log(cfg.ratio_threshold);
  const std::size_t n = logs.size();
  for (std::size_t i = n - static_cast<std::size_t>(cfg.trailing_shells); i < n; ++i) {
    if (logs[i] - logs[i - 1] > log_thr) return IntegralClass::Divergent;
  }
  return IntegralClass::Convergent;
}

double gamma_closed_form(const ProcessClass& proc, double s) {
  if (s < 0) throw std::domain_error("gamma_closed_form: s must be nonnegative");
  return std::max((proc.volume.d_local - s) / proc.scale.alpha_local, 0.0);
}

double gamma_numeric(const VolumeProfile& volume, const PowerScale& scale, double s,
                     double tol, const ShellTestConfig& cfg) {
  if (!(tol > 0)) throw std::invalid_argument("gamma_numeric: tol must be positive");
  if (s < 0) throw std::domain_error("gamma_numeric: s must be nonnegative");

  const auto log_integrand = [&](double gamma) {
    return [&volume, &scale, s, gamma](double log_t) {
      // t in (0,1]: phi^{-1} and V are on their local branches.
      const double log_r = log_t / scale.alpha_local;
      return s * log_r - volume.d_local * log_r + (gamma - 1.0) * log_t;
    };
  };

  // The bisection oracle needs a decay threshold tied to tol: a fixed coarse
  // threshold would misplace the infimum by -log2(threshold).
  ShellTestConfig sharp = cfg;
  sharp.ratio_threshold = std::exp2(-0.125 * tol);

  const auto classify = [&](double g) { return classify_dyadic_integral(log_integrand(g), sharp); };

  if (classify(0.0) == IntegralClass::Convergent) return 0.0;

  double lo = 0.0;
  double hi = 1.0;
  int guard = 0;
  while (classify(hi) == IntegralClass::Divergent) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 40)
      throw IndeterminateIntegral("gamma_numeric: failed to bracket the infimum", {});
  }
  while (hi - lo > 0.5 * tol) {
    const double mid = 0.5 * (lo + hi);
    if (classify(mid) == IntegralClass::Divergent)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

GammaCurve single_curve(const ProcessClass& proc) {
  return GammaCurve(proc.volume.d_local, proc.scale.alpha_local, GammaVariant::single);
}

GammaCurve collision_curve(const ProcessClass& p1, const ProcessClass& p2) {
  if (!(p1.volume == p2.volume))
    throw std::invalid_argument("collision curve: processes must share the volume profile");
  const double a_min = std::min(p1.scale.alpha_local, p2.scale.alpha_local);
  const double a_max = std::max(p1.scale.alpha_local, p2.scale.alpha_local);
  return GammaCurve(p1.volume.d_local, a_min, GammaVariant::collision, a_max);
}

double collision_gamma(const ProcessClass& p1, const ProcessClass& p2, double s) {
  return collision_curve(p1, p2).eval(s);
}

Finiteness recurrence_I(const ProcessClass& proc, double gamma) {
  if (!(gamma > 0) || gamma > 1)
    throw std::domain_error("recurrence_I: gamma must lie in (0,1]");
  // integral_1^inf dt / V((phi^gamma)^{-1}(t)) diverges iff the global power
  // d2/(gamma*alpha_global) is at most 1 (log divergence included).
  return proc.volume.d_global <= gamma * proc.scale.alpha_global ? Finiteness::Infinite
                                                                 : Finiteness::Finite;
}

Finiteness product_J(const ProcessClass& p1, const ProcessClass& p2, double gamma) {
  if (!(gamma > 0) || gamma > 1)
    throw std::domain_error("product_J: gamma must lie in (0,1]");
  const double exponent = p1.volume.d_global / p1.scale.alpha_global +
                          p2.volume.d_global / p2.scale.alpha_global;
  return exponent <= gamma ? Finiteness::Infinite : Finiteness::Finite;
}

bool point_capacity_positive(const ProcessClass& proc) {
  require_flag(proc, "ODHK");
  // integral_0^1 dt/V(phi^{-1}(t)) = integral_0^1 t^{-d1/alpha} dt.
  return proc.volume.d_local < proc.scale.alpha_local;
}

namespace {

ConditionCheck check(std::string name, double lhs, double rhs, bool ok, std::string detail = "") {
  return ConditionCheck{std::move(name), lhs, rhs, ok, std::move(detail)};
}

}  // namespace

DimPrediction predict_level_dim(const ProcessClass& proc, const std::string& at) {
  require_flag(proc, "ODHK");
  require_flag(proc, "NDLHK");
  DimPrediction out;
  out.regime = PredictionRegime::level;
  const double g0 = gamma_closed_form(proc, 0.0);
  out.conditions_met.push_back(check(
      "gamma0-in-(0,1]", g0, 1.0, g0 > 0 && g0 <= 1.0,
      g0 == 1.0 ? "boundary case gamma(0)=1 at point " + at : "point " + at));
  const bool i1_inf = recurrence_I(proc, 1.0) == Finiteness::Infinite;
  out.conditions_met.push_back(check("I1-infinite", proc.volume.d_global,
                                     proc.scale.alpha_global, i1_inf,
                                     "equality needs 0 < d2 <= alpha_global"));
  if (g0 > 1.0)
    out.value.reset();
  else
    out.value = 1.0 - g0;
  return out;
}

DimPrediction predict_inverse_dim(const ProcessClass& proc, double s_F) {
  const double d1 = proc.volume.d_local;
  if (!(s_F > 0)) throw std::invalid_argument("predict_inverse_dim: s_F must be positive");
  if (s_F > d1)
    throw std::invalid_argument("predict_inverse_dim: s_F exceeds the ambient dimension d1");
  DimPrediction out;
  out.regime = PredictionRegime::inverse_image;
  const double g = gamma_closed_form(proc, s_F);
  out.conditions_met.push_back(check(
      "gamma(sF)-le-1", s_F, d1 - proc.scale.alpha_local, s_F >= d1 - proc.scale.alpha_local,
      g == 1.0 ? "boundary case gamma(s_F)=1" : "d1 - alpha <= s_F"));
  const bool rec = recurrence_I(proc, 1.0) == Finiteness::Infinite;
  out.conditions_met.push_back(check("d2-le-alpha-global", proc.volume.d_global,
                                     proc.scale.alpha_global, rec,
                                     "recurrence of the base process"));
  const BoundFlags& f = proc.assumed_bounds;
  out.conditions_met.push_back(check("bounds-flagged", 0, 0, f.ndlhk && f.wuhk && f.hr,
                                     "NDLHK, WUHK and HR assumed"));
  if (g > 1.0)
    out.value.reset();
  else
    out.value = 1.0 - g;
  return out;
}

DimPrediction predict_collision_dim(const ProcessClass& p1, const ProcessClass& p2,
                                    double s_F, double t_F) {
  const GammaCurve curve = collision_curve(p1, p2);
  DimPrediction out;
  out.regime = PredictionRegime::collision;

  const double d1 = p1.volume.d_local;
  const double d2 = p1.volume.d_global;
  const double a11 = std::min(p1.scale.alpha_local, p2.scale.alpha_local);
  const double a21 = std::max(p1.scale.alpha_local, p2.scale.alpha_local);
  const double a12 = std::min(p1.scale.alpha_global, p2.scale.alpha_global);
  const double a22 = std::max(p1.scale.alpha_global, p2.scale.alpha_global);

  const double g = curve.eval(s_F);
  const double s0 = curve.s0();

  out.conditions_met.push_back(check("d1-lt-(2a11)^(a21)", d1, std::min(2.0 * a11, a21),
                                     d1 < std::min(2.0 * a11, a21)));
  const double sf_hi = std::min(d1, a11 * (1.0 + d1 / a21));
  out.conditions_met.push_back(
      check("sF-window", s_F, sf_hi, s_F > s0 - a11 && s_F <= sf_hi,
            "requires s0 - a11 < s_F <= min(d1, a11(1 + d1/a21)); s0 - a11 = " +
                std::to_string(s0 - a11)));

  const double j_exponent = d2 / a12 + d2 / a22;
  const bool recurrent = product_J(p1, p2, 1.0) == Finiteness::Infinite;
  if (recurrent) {
    out.conditions_met.push_back(
        check("J1-infinite", j_exponent, 1.0, j_exponent <= 1.0, "recurrent branch"));
  } else {
    out.conditions_met.push_back(
        check("J1-finite", j_exponent, 1.0, j_exponent > 1.0, "transient branch"));
    out.conditions_met.push_back(check("d2-lt-a12", d2, a12, d2 < a12));
    out.conditions_met.push_back(check("local-sum-gt-1", d1 / a11 + d1 / a21, 1.0,
                                       d1 / a11 + d1 / a21 > 1.0));
    const double tf_lo = a22 * (d2 / a12 + d2 / a22 - 1.0);
    out.conditions_met.push_back(check("tF-window", t_F, d2, t_F > tf_lo && t_F <= d2,
                                       "requires " + std::to_string(tf_lo) + " < t_F <= d2"));
  }
  const BoundFlags& f1 = p1.assumed_bounds;
  const BoundFlags& f2 = p2.assumed_bounds;
  out.conditions_met.push_back(check("bounds-flagged", 0, 0,
                                     f1.wuhk && f1.hr && f2.wuhk && f2.hr,
                                     "WUHK and HR assumed for both processes"));
  if (g > 1.0)
    out.value.reset();
  else
    out.value = 1.0 - g;
  if (g == 1.0 && !out.conditions_met.empty())
    out.conditions_met.front().detail += " [boundary gamma(s_F)=1]";
  return out;
}

}  // namespace haudim
