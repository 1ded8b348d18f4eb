#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "haudim/power_scale.hpp"
#include "haudim/process_sim.hpp"

namespace haudim {

// Spatial target for inverse-image extraction: a point, a finite union of
// disjoint closed intervals, a level-L Cantor set, or the whole line.
class TargetSet {
 public:
  enum class Kind { point, interval_union, cantor, all };

  static TargetSet point(double a);
  static TargetSet intervals(std::vector<std::pair<double, double>> iv);
  static TargetSet cantor(double ratio, int level, double lo = 0.0, double hi = 1.0);
  static TargetSet all();

  Kind kind() const { return kind_; }
  double nominal_dim() const { return nominal_dim_; }
  int cantor_level() const { return level_; }
  double cantor_ratio() const { return ratio_; }

  // Exact distance to the represented set (0 for Kind::all).
  double distance(double x) const;

  const std::vector<std::pair<double, double>>& pieces() const { return pieces_; }

 private:
  TargetSet() = default;
  Kind kind_ = Kind::all;
  double point_ = 0.0;
  std::vector<std::pair<double, double>> pieces_;  // sorted, disjoint
  double nominal_dim_ = 0.0;
  int level_ = 0;
  double ratio_ = 0.0;
};

// Per-scale sets of hit time boxes [k delta, (k+1) delta).
struct TimeSetHits {
  double horizon = 0.0;
  std::vector<double> deltas;
  std::vector<std::vector<std::uint64_t>> boxes;  // sorted, deduplicated
};

struct DimensionEstimate {
  bool empty_verdict = false;
  double slope = 0.0;
  double std_error = 0.0;
  std::vector<double> scales_used;
  std::vector<std::uint64_t> counts;
};

class InsufficientScales : public std::runtime_error {
 public:
  InsufficientScales(const std::string& what, std::vector<std::uint64_t> c)
      : std::runtime_error(what), counts(std::move(c)) {}
  std::vector<std::uint64_t> counts;
};

// Geometric delta ladder between lo and hi (default ratio 2), descending.
std::vector<double> make_delta_ladder(double lo, double hi, double ratio = 2.0);

// Streaming hit accumulator: feed (sample index, spatial distance) pairs in
// time order. Box resolution eps(delta) = scale^{-1}(delta).
class HitAccumulator {
 public:
  HitAccumulator(const std::vector<double>& deltas, const PowerScale& scale, double dt,
                 double horizon);
  void add(std::uint64_t sample_index, double distance);
  TimeSetHits finish();

 private:
  double dt_;
  double horizon_;
  std::vector<double> deltas_;       // descending
  std::vector<double> eps_;          // matching spatial tolerances, descending
  std::vector<double> inv_deltas_;
  std::vector<std::uint64_t> box_limit_;
  std::vector<std::uint64_t> last_box_;
  std::vector<std::vector<std::uint64_t>> boxes_;
};

TimeSetHits extract_hits(const SamplePath& path, const TargetSet& target,
                         const PowerScale& scale, const std::vector<double>& delta_ladder);

// Collision boxes: |X1 - X2| <= eps(delta), optionally also within eps of a
// target set. Pass the product scale phi_d of the pair.
TimeSetHits collision_hits(const ProductPath& pp, const PowerScale& scale,
                           const std::vector<double>& delta_ladder,
                           const TargetSet& within = TargetSet::all());

// Box-counting regression over scales inside [window_lo, window_hi]. Scales
// with fewer than 10 boxes are dropped; fewer than 4 usable scales is the
// Empty verdict. Fewer than 4 scales inside the window at all is an error.
DimensionEstimate estimate_dimension(const TimeSetHits& hits, double window_lo,
                                     double window_hi);

}  // namespace haudim
