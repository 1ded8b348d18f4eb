#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "haudim/power_scale.hpp"
#include "haudim/process_sim.hpp"
#include "haudim/scaling_theory.hpp"
#include "haudim/stats.hpp"
#include "haudim/timeset_dim.hpp"

namespace haudim {

struct Atom {
  double x = 0.0;
  double mass = 0.0;
};

// Self-similar construction parameters, kept so energy sequences can be
// regenerated level by level.
struct CantorFamily {
  double ratio = 1.0 / 3.0;
  double lo = 0.0;
  double hi = 1.0;
};

struct DiscreteMeasure {
  std::vector<Atom> atoms;
  int refinement_level = 1;
  std::optional<CantorFamily> family;

  double total_mass() const {
    double m = 0;
    for (const auto& a : atoms) m += a.mass;
    return m;
  }
};

// 2^L atoms at the midpoints of the level-L Cantor intervals, mass 2^{-L}.
DiscreteMeasure cantor_measure(double ratio, int level, double lo = 0.0, double hi = 1.0);

// Off-diagonal Riesz sum  sum_{i != j} m_i m_j |x_i - x_j|^{-s}. The brute
// force oracle; quadratic in the number of atoms.
double riesz_energy(const DiscreteMeasure& nu, double s);

struct EnergySequence {
  std::vector<int> levels;
  std::vector<double> values;
};

// Energy per refinement level. Cantor-backed measures use an exact
// distance-multiplicity enumeration; other measures yield a single value.
EnergySequence energy_integral(const DiscreteMeasure& nu, double s);

enum class FrostmanVerdict { FiniteEnergy, DivergentEnergy, Indeterminate };

struct FrostmanConfig {
  int min_levels = 5;
  double ratio_threshold = 0.97;  // limiting difference-ratio cutoff
};

struct FrostmanResult {
  FrostmanVerdict verdict = FrostmanVerdict::Indeterminate;
  double difference_ratio = 0.0;  // last observed ratio of successive increments
  double threshold = 0.0;
};

FrostmanResult frostman_verdict(const EnergySequence& seq, const FrostmanConfig& cfg = {});

// Product-space annuli lambda^n <= phi_d(x,y) <= lambda^{n+1} (outward) or
// lambda^{n+1} <= phi_d(x,y) <= lambda^n (inward), restricted to diag(base).
class AnnulusFamily {
 public:
  AnnulusFamily(std::array<double, 2> center, double lambda, PowerScale phi1, PowerScale phi2,
                TargetSet base, int n_lo, int n_hi);

  double phi_d(double y1, double y2) const;
  bool in_shell(int n, double y1, double y2) const;
  bool outward() const { return lambda_ > 1.0; }
  double lambda() const { return lambda_; }
  int n_lo() const { return n_lo_; }
  int n_hi() const { return n_hi_; }
  const TargetSet& base() const { return base_; }
  const std::array<double, 2>& center() const { return center_; }
  const PowerScale& phi1() const { return phi1_; }
  const PowerScale& phi2() const { return phi2_; }

 private:
  std::array<double, 2> center_;
  double lambda_;
  PowerScale phi1_, phi2_;
  TargetSet base_;
  int n_lo_, n_hi_;
};

AnnulusFamily build_annuli(std::array<double, 2> center, double lambda, const PowerScale& phi1,
                           const PowerScale& phi2, const TargetSet& base, int n_lo, int n_hi);

// Two independent (optionally jointly subordinated) paths.
struct PairSpec {
  PathSpec p1;
  PathSpec p2;
  double gamma = 1.0;
};

// Entry targets for product-path hitting experiments. Proximity is tested at
// the path resolution eps_i = phi_i^{-1}(dt^{1/gamma}).
struct ProductTarget {
  enum class Kind { whole_space, diagonal, point_pair, annulus_shell };
  Kind kind = Kind::diagonal;
  TargetSet within = TargetSet::all();          // diagonal: restrict to diag(within)
  std::array<double, 2> point{0.0, 0.0};        // point_pair
  const AnnulusFamily* family = nullptr;        // annulus_shell
  int shell_index = 0;

  static ProductTarget whole_space();
  static ProductTarget diagonal(TargetSet within = TargetSet::all());
  static ProductTarget point_pair(double a1, double a2);
  static ProductTarget annulus(const AnnulusFamily& fam, int n);
};

struct HitEstimate {
  std::size_t hits = 0;
  std::size_t trials = 0;
  WilsonInterval ci;
};

HitEstimate mc_hitting(const PairSpec& pair, const ProductTarget& target, double horizon,
                       std::size_t trials, std::uint64_t seed);

enum class WienerVerdict { DivergesLikely, ConvergesLikely, Indeterminate };

struct WienerConfig {
  PairSpec pair;
  std::array<double, 2> start{0.0, 0.0};
  TargetSet base = TargetSet::all();
  double lambda = 16.0;
  int n_lo = 1, n_hi = 8;
  double horizon_factor = 1.0;       // T_n = horizon_factor * lambda^{n+1}
  std::size_t steps_per_trial = 20000;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  double diverge_fraction = 0.5;     // last increments vs first increment
  double converge_fraction = 0.05;
};

struct WienerReport {
  std::vector<int> ns;
  std::vector<HitEstimate> estimates;
  std::vector<double> partial_sums;
  WienerVerdict verdict = WienerVerdict::Indeterminate;
  Finiteness analytic = Finiteness::Finite;  // product_J classification
  double lambda = 0.0;
};

WienerReport wiener_experiment(const WienerConfig& cfg);

// Regularity experiment: P(sigma_{diag(F)} <= h) from starts on diag(F), for
// a decreasing ladder of h. The literal sigma = 0 event is unobservable at
// finite resolution; the estimates should stay near 1 as h shrinks.
struct RegularityConfig {
  PairSpec pair;
  TargetSet base = TargetSet::all();
  double start_point = 0.0;  // a in F; start is (a,a)
  std::vector<double> h_ladder;
  std::size_t steps_per_trial = 4000;
  std::size_t trials = 400;
  std::uint64_t seed = 1;
};

struct RegularityReport {
  std::vector<double> h;
  std::vector<HitEstimate> estimates;
};

RegularityReport regularity_experiment(const RegularityConfig& cfg);

}  // namespace haudim
