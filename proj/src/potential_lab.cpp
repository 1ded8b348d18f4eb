#include "haudim/potential_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "haudim/rng.hpp"

namespace haudim {

DiscreteMeasure cantor_measure(double ratio, int level, double lo, double hi) {
  const TargetSet set = TargetSet::cantor(ratio, level, lo, hi);
  DiscreteMeasure nu;
  nu.refinement_level = level;
  nu.family = CantorFamily{ratio, lo, hi};
  const double mass = std::ldexp(1.0, -level);  // 2^-L
  nu.atoms.reserve(set.pieces().size());
  for (const auto& [a, b] : set.pieces()) nu.atoms.push_back({0.5 * (a + b), mass});
  return nu;
}

double riesz_energy(const DiscreteMeasure& nu, double s) {
  if (!(s > 0)) throw std::domain_error("riesz_energy: s must be positive");
  if (nu.atoms.empty()) throw std::invalid_argument("riesz_energy: empty measure");
  const std::size_t n = nu.atoms.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::fabs(nu.atoms[i].x - nu.atoms[j].x);
      acc += 2.0 * nu.atoms[i].mass * nu.atoms[j].mass * std::pow(d, -s);
    }
  }
  return acc;
}

namespace {

// Midpoint differences of the level-L Cantor construction are
// sum_k delta_k (1-r) r^{k-1} (hi-lo) with delta_k in {-1,0,1}; a delta vector
// with z zeros covers 2^z ordered atom pairs. Enumerating the 3^L vectors
// replaces the 4^L pairwise sum.
double cantor_energy_level(double ratio, double base_len, int level, double s) {
  double acc = 0.0;
  // spacings (1-r) r^{k} for k = 0..level-1
  std::vector<double> spacing(static_cast<std::size_t>(level));
  for (int k = 0; k < level; ++k)
    spacing[static_cast<std::size_t>(k)] = base_len * (1.0 - ratio) * std::pow(ratio, k);

  struct Frame {
    int k;
    double d;
    int zeros;
    bool started;  // first nonzero placed (fixed to +1; factor 2 at the leaf)
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0.0, 0, false});
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.k == level) {
      if (f.started)
        acc += 2.0 * std::ldexp(1.0, f.zeros) * std::pow(std::fabs(f.d), -s);
      continue;
    }
    const double c = spacing[static_cast<std::size_t>(f.k)];
    stack.push_back({f.k + 1, f.d, f.zeros + 1, f.started});
    stack.push_back({f.k + 1, f.d + c, f.zeros, true});
    if (f.started) stack.push_back({f.k + 1, f.d - c, f.zeros, true});
  }
  return std::ldexp(acc, -2 * level);  // masses 2^-L on both sides
}

}  // namespace

EnergySequence energy_integral(const DiscreteMeasure& nu, double s) {
  if (!(s > 0)) throw std::domain_error("energy_integral: s must be positive");
  EnergySequence seq;
  if (nu.family && nu.refinement_level >= 1) {
    const double base_len = nu.family->hi - nu.family->lo;
    for (int l = 1; l <= nu.refinement_level; ++l) {
      seq.levels.push_back(l);
      seq.values.push_back(cantor_energy_level(nu.family->ratio, base_len, l, s));
    }
    return seq;
  }
  seq.levels.push_back(nu.refinement_level);
  seq.values.push_back(nu.atoms.size() < 2 ? 0.0 : riesz_energy(nu, s));
  return seq;
}

FrostmanResult frostman_verdict(const EnergySequence& seq, const FrostmanConfig& cfg) {
  FrostmanResult res;
  res.threshold = cfg.ratio_threshold;
  const std::size_t n = seq.values.size();
  if (static_cast<int>(n) < cfg.min_levels) return res;
  const double d_prev = seq.values[n - 2] - seq.values[n - 3];
  const double d_last = seq.values[n - 1] - seq.values[n - 2];
  if (!(d_prev > 0) || !(d_last > 0)) return res;  // flat or non-monotone tail
  res.difference_ratio = d_last / d_prev;
  res.verdict = res.difference_ratio <= cfg.ratio_threshold ? FrostmanVerdict::FiniteEnergy
                                                            : FrostmanVerdict::DivergentEnergy;
  return res;
}

AnnulusFamily::AnnulusFamily(std::array<double, 2> center, double lambda, PowerScale phi1,
                             PowerScale phi2, TargetSet base, int n_lo, int n_hi)
    : center_(center), lambda_(lambda), phi1_(phi1), phi2_(phi2), base_(std::move(base)),
      n_lo_(n_lo), n_hi_(n_hi) {
  if (n_lo > n_hi || n_lo < 1)
    throw std::invalid_argument("AnnulusFamily: need 1 <= n_lo <= n_hi");
  const double a_max = std::max(phi1_.alpha_max(), phi2_.alpha_max());
  if (lambda > 1.0) {
    const double required = std::exp2(a_max);
    if (lambda < required)
      throw std::invalid_argument(
          "AnnulusFamily: separation phi^{-1}(lambda t) >= 2 phi^{-1}(t) fails; need lambda >= " +
          std::to_string(required));
  } else if (lambda > 0.0 && lambda < 1.0) {
    const double required = std::exp2(-a_max);
    if (lambda > required)
      throw std::invalid_argument(
          "AnnulusFamily: separation phi^{-1}(t/lambda) >= 2 phi^{-1}(t) fails; need lambda <= " +
          std::to_string(required));
  } else {
    throw std::invalid_argument("AnnulusFamily: lambda must be positive and != 1");
  }
}

double AnnulusFamily::phi_d(double y1, double y2) const {
  return std::max(phi1_.eval(std::fabs(y1 - center_[0])),
                  phi2_.eval(std::fabs(y2 - center_[1])));
}

bool AnnulusFamily::in_shell(int n, double y1, double y2) const {
  const double v = phi_d(y1, y2);
  const double a = std::pow(lambda_, n);
  const double b = std::pow(lambda_, n + 1);
  return lambda_ > 1.0 ? (v >= a && v <= b) : (v >= b && v <= a);
}

AnnulusFamily build_annuli(std::array<double, 2> center, double lambda, const PowerScale& phi1,
                           const PowerScale& phi2, const TargetSet& base, int n_lo, int n_hi) {
  return AnnulusFamily(center, lambda, phi1, phi2, base, n_lo, n_hi);
}

ProductTarget ProductTarget::whole_space() {
  ProductTarget t;
  t.kind = Kind::whole_space;
  return t;
}

ProductTarget ProductTarget::diagonal(TargetSet within) {
  ProductTarget t;
  t.kind = Kind::diagonal;
  t.within = std::move(within);
  return t;
}

ProductTarget ProductTarget::point_pair(double a1, double a2) {
  ProductTarget t;
  t.kind = Kind::point_pair;
  t.point = {a1, a2};
  return t;
}

ProductTarget ProductTarget::annulus(const AnnulusFamily& fam, int n) {
  ProductTarget t;
  t.kind = Kind::annulus_shell;
  t.family = &fam;
  t.shell_index = n;
  return t;
}

namespace {

// Joint stream for the product process; a single subordinator clocks both
// components when gamma < 1.
class PairStream {
 public:
  PairStream(const PairSpec& spec, std::uint64_t seed)
      : spec_(spec),
        key1_(derive_seed(seed, 0)),
        key2_(derive_seed(seed, 1)),
        key_tau_(derive_seed(seed, 2)),
        x1_(spec.p1.x0),
        x2_(spec.p2.x0) {
    if (spec.p1.horizon != spec.p2.horizon || spec.p1.n_steps != spec.p2.n_steps)
      throw std::invalid_argument("PairSpec: component grids must match");
  }

  void advance() {
    const double dt = spec_.p1.dt();
    const double elapsed =
        spec_.gamma == 1.0 ? dt : subordinator_increment(spec_.gamma, dt, key_tau_, i_);
    x1_ += stable_increment(spec_.p1.alpha, elapsed, key1_, i_);
    x2_ += stable_increment(spec_.p2.alpha, elapsed, key2_, i_);
    ++i_;
  }

  double x1() const { return x1_; }
  double x2() const { return x2_; }

 private:
  PairSpec spec_;
  std::uint64_t key1_, key2_, key_tau_;
  std::size_t i_ = 0;
  double x1_, x2_;
};

bool target_hit(const ProductTarget& target, double x1, double x2, double eps1, double eps2) {
  const double eps_d = std::max(eps1, eps2);  // diagonal proximity resolution
  switch (target.kind) {
    case ProductTarget::Kind::whole_space:
      return true;
    case ProductTarget::Kind::diagonal:
      return std::fabs(x1 - x2) <= eps_d && target.within.distance(x1) <= eps_d;
    case ProductTarget::Kind::point_pair:
      return std::fabs(x1 - target.point[0]) <= eps1 && std::fabs(x2 - target.point[1]) <= eps2;
    case ProductTarget::Kind::annulus_shell: {
      const AnnulusFamily& fam = *target.family;
      if (!fam.in_shell(target.shell_index, x1, x2)) return false;
      return std::fabs(x1 - x2) <= eps_d && fam.base().distance(x1) <= eps_d;
    }
  }
  return false;
}

}  // namespace

HitEstimate mc_hitting(const PairSpec& pair, const ProductTarget& target, double horizon,
                       std::size_t trials, std::uint64_t seed) {
  if (trials < 100) throw std::invalid_argument("mc_hitting: need at least 100 trials");
  if (target.kind == ProductTarget::Kind::annulus_shell && target.family == nullptr)
    throw std::invalid_argument("mc_hitting: annulus target without family");
  PairSpec spec = pair;
  spec.p1.horizon = spec.p2.horizon = horizon;
  const double dt = spec.p1.dt();
  const double res = std::pow(dt, 1.0 / spec.gamma);
  const double eps1 = PowerScale(spec.p1.alpha, spec.p1.alpha).invert(res);
  const double eps2 = PowerScale(spec.p2.alpha, spec.p2.alpha).invert(res);

  std::size_t hits = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    PairStream stream(spec, derive_seed(seed, trial));
    for (std::size_t i = 0; i < spec.p1.n_steps; ++i) {
      stream.advance();  // sigma = inf{t > 0}: the start state does not count
      if (target_hit(target, stream.x1(), stream.x2(), eps1, eps2)) {
        ++hits;
        break;
      }
    }
  }
  HitEstimate est;
  est.hits = hits;
  est.trials = trials;
  est.ci = wilson_interval(hits, trials);
  return est;
}

WienerReport wiener_experiment(const WienerConfig& cfg) {
  const AnnulusFamily family(cfg.start, cfg.lambda,
                             PowerScale(cfg.pair.p1.alpha, cfg.pair.p1.alpha),
                             PowerScale(cfg.pair.p2.alpha, cfg.pair.p2.alpha), cfg.base,
                             cfg.n_lo, cfg.n_hi);
  WienerReport report;
  report.lambda = cfg.lambda;
  report.analytic = product_J(stable_class(cfg.pair.p1.alpha), stable_class(cfg.pair.p2.alpha),
                              cfg.pair.gamma);

  PairSpec spec = cfg.pair;
  spec.p1.x0 = cfg.start[0];
  spec.p2.x0 = cfg.start[1];
  spec.p1.n_steps = spec.p2.n_steps = cfg.steps_per_trial;

  double sum = 0.0;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    const double horizon = cfg.horizon_factor * std::pow(cfg.lambda, n + 1);
    const HitEstimate est = mc_hitting(spec, ProductTarget::annulus(family, n), horizon,
                                       cfg.trials, derive_seed(cfg.seed, static_cast<std::uint64_t>(n)));
    report.ns.push_back(n);
    report.estimates.push_back(est);
    sum += est.ci.p_hat;
    report.partial_sums.push_back(sum);
  }

  const std::size_t count = report.ns.size();
  if (count >= 4) {
    const double first = report.estimates.front().ci.p_hat;
    const double last = report.estimates.back().ci.p_hat;
    if (first > 0) {
      bool all_large = true;
      for (std::size_t k = count - 3; k < count; ++k)
        all_large = all_large && report.estimates[k].ci.p_hat > cfg.diverge_fraction * first;
      if (all_large)
        report.verdict = WienerVerdict::DivergesLikely;
      else if (last < cfg.converge_fraction * first)
        report.verdict = WienerVerdict::ConvergesLikely;
    }
  }
  return report;
}

RegularityReport regularity_experiment(const RegularityConfig& cfg) {
  if (cfg.h_ladder.empty()) throw std::invalid_argument("regularity_experiment: empty h ladder");
  RegularityReport report;
  PairSpec spec = cfg.pair;
  spec.p1.x0 = spec.p2.x0 = cfg.start_point;
  spec.p1.n_steps = spec.p2.n_steps = cfg.steps_per_trial;
  const ProductTarget target = ProductTarget::diagonal(cfg.base);
  for (std::size_t k = 0; k < cfg.h_ladder.size(); ++k) {
    const double h = cfg.h_ladder[k];
    report.h.push_back(h);
    report.estimates.push_back(
        mc_hitting(spec, target, h, cfg.trials, derive_seed(cfg.seed, k)));
  }
  return report;
}

}  // namespace haudim
