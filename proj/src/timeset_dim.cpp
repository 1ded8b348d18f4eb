#include "haudim/timeset_dim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "haudim/stats.hpp"

namespace haudim {

TargetSet TargetSet::point(double a) {
  TargetSet t;
  t.kind_ = Kind::point;
  t.point_ = a;
  t.nominal_dim_ = 0.0;
  return t;
}

TargetSet TargetSet::intervals(std::vector<std::pair<double, double>> iv) {
  if (iv.empty()) throw std::invalid_argument("TargetSet::intervals: empty union");
  std::sort(iv.begin(), iv.end());
  for (std::size_t i = 0; i < iv.size(); ++i) {
    if (iv[i].second < iv[i].first)
      throw std::invalid_argument("TargetSet::intervals: inverted interval");
    if (i > 0 && iv[i].first < iv[i - 1].second)
      throw std::invalid_argument("TargetSet::intervals: overlapping intervals");
  }
  TargetSet t;
  t.kind_ = Kind::interval_union;
  t.pieces_ = std::move(iv);
  t.nominal_dim_ = 1.0;
  return t;
}

TargetSet TargetSet::cantor(double ratio, int level, double lo, double hi) {
  if (!(ratio > 0) || !(ratio < 0.5))
    throw std::invalid_argument("TargetSet::cantor: ratio must lie in (0, 1/2)");
  if (level < 1) throw std::invalid_argument("TargetSet::cantor: level must be >= 1");
  if (!(hi > lo)) throw std::invalid_argument("TargetSet::cantor: empty base interval");
  std::vector<std::pair<double, double>> iv{{lo, hi}};
  for (int l = 0; l < level; ++l) {
    std::vector<std::pair<double, double>> next;
    next.reserve(iv.size() * 2);
    for (const auto& [a, b] : iv) {
      const double len = (b - a) * ratio;
      next.emplace_back(a, a + len);
      next.emplace_back(b - len, b);
    }
    iv.swap(next);
  }
  TargetSet t;
  t.kind_ = Kind::cantor;
  t.pieces_ = std::move(iv);
  t.nominal_dim_ = std::log(2.0) / std::log(1.0 / ratio);
  t.level_ = level;
  t.ratio_ = ratio;
  return t;
}

TargetSet TargetSet::all() {
  TargetSet t;
  t.kind_ = Kind::all;
  t.nominal_dim_ = 1.0;
  return t;
}

double TargetSet::distance(double x) const {
  switch (kind_) {
    case Kind::all:
      return 0.0;
    case Kind::point:
      return std::fabs(x - point_);
    default:
      break;
  }
  // first interval whose start exceeds x
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const std::pair<double, double>& p) {
                               return v < p.first;
                             });
  double d = std::numeric_limits<double>::infinity();
  if (it != pieces_.end()) d = std::min(d, it->first - x);
  if (it != pieces_.begin()) {
    const auto& prev = *(it - 1);
    d = std::min(d, x <= prev.second ? 0.0 : x - prev.second);
  }
  return d;
}

std::vector<double> make_delta_ladder(double lo, double hi, double ratio) {
  if (!(lo > 0) || !(hi >= lo) || !(ratio > 1))
    throw std::invalid_argument("make_delta_ladder: need 0 < lo <= hi and ratio > 1");
  std::vector<double> ladder;
  for (double d = hi; d >= lo * (1.0 - 1e-12); d /= ratio) ladder.push_back(d);
  return ladder;
}

HitAccumulator::HitAccumulator(const std::vector<double>& deltas, const PowerScale& scale,
                               double dt, double horizon)
    : dt_(dt), horizon_(horizon) {
  if (deltas.empty()) throw std::invalid_argument("HitAccumulator: empty ladder");
  deltas_ = deltas;
  std::sort(deltas_.begin(), deltas_.end(), std::greater<double>());
  for (double d : deltas_) {
    if (d < dt * (1.0 - 1e-12))
      throw std::invalid_argument("extract_hits: ladder scale below path resolution dt");
    eps_.push_back(scale.invert(d));
    inv_deltas_.push_back(1.0 / d);
  }
  for (double d : deltas_)
    box_limit_.push_back(static_cast<std::uint64_t>(std::ceil(horizon / d)));
  last_box_.assign(deltas_.size(), std::numeric_limits<std::uint64_t>::max());
  boxes_.resize(deltas_.size());
}

void HitAccumulator::add(std::uint64_t sample_index, double distance) {
  const double t = static_cast<double>(sample_index) * dt_;
  for (std::size_t j = 0; j < deltas_.size(); ++j) {
    if (distance > eps_[j]) break;  // eps decreasing along the ladder
    std::uint64_t box = static_cast<std::uint64_t>(t * inv_deltas_[j]);
    if (box >= box_limit_[j]) box = box_limit_[j] - 1;  // closed right endpoint t = T
    if (boxes_[j].empty() || last_box_[j] != box) {
      boxes_[j].push_back(box);
      last_box_[j] = box;
    }
  }
}

TimeSetHits HitAccumulator::finish() {
  TimeSetHits out;
  out.horizon = horizon_;
  out.deltas = deltas_;
  out.boxes = std::move(boxes_);
  boxes_.assign(deltas_.size(), {});
  last_box_.assign(deltas_.size(), std::numeric_limits<std::uint64_t>::max());
  return out;
}

TimeSetHits extract_hits(const SamplePath& path, const TargetSet& target,
                         const PowerScale& scale, const std::vector<double>& delta_ladder) {
  const double horizon = path.dt * static_cast<double>(path.states.size() - 1);
  HitAccumulator acc(delta_ladder, scale, path.dt, horizon);
  for (std::size_t i = 0; i < path.states.size(); ++i)
    acc.add(i, target.distance(path.states[i]));
  return acc.finish();
}

TimeSetHits collision_hits(const ProductPath& pp, const PowerScale& scale,
                           const std::vector<double>& delta_ladder, const TargetSet& within) {
  if (pp.first.states.size() != pp.second.states.size() || pp.first.dt != pp.second.dt)
    throw std::invalid_argument("collision_hits: component grids differ");
  const double horizon = pp.first.dt * static_cast<double>(pp.first.states.size() - 1);
  HitAccumulator acc(delta_ladder, scale, pp.first.dt, horizon);
  const bool check_within = within.kind() != TargetSet::Kind::all;
  for (std::size_t i = 0; i < pp.first.states.size(); ++i) {
    const double x1 = pp.first.states[i];
    double d = std::fabs(x1 - pp.second.states[i]);
    if (check_within) d = std::max(d, within.distance(x1));
    acc.add(i, d);
  }
  return acc.finish();
}

DimensionEstimate estimate_dimension(const TimeSetHits& hits, double window_lo,
                                     double window_hi) {
  DimensionEstimate est;
  std::vector<double> in_window;
  std::vector<std::uint64_t> in_counts;
  for (std::size_t j = 0; j < hits.deltas.size(); ++j) {
    const double d = hits.deltas[j];
    if (d < window_lo * (1.0 - 1e-12) || d > window_hi * (1.0 + 1e-12)) continue;
    in_window.push_back(d);
    in_counts.push_back(hits.boxes[j].size());
  }
  if (in_window.size() < 4)
    throw InsufficientScales("estimate_dimension: fewer than 4 ladder scales inside window",
                             in_counts);
  std::vector<double> lx, ly;
  for (std::size_t j = 0; j < in_window.size(); ++j) {
    if (in_counts[j] < 10) continue;
    est.scales_used.push_back(in_window[j]);
    est.counts.push_back(in_counts[j]);
    lx.push_back(std::log(1.0 / in_window[j]));
    ly.push_back(std::log(static_cast<double>(in_counts[j])));
  }
  if (lx.size() < 4) {
    est.empty_verdict = true;
    est.slope = std::numeric_limits<double>::quiet_NaN();
    est.std_error = std::numeric_limits<double>::quiet_NaN();
    est.counts = in_counts;
    est.scales_used = in_window;
    return est;
  }
  const LinearFit fit = linear_fit(lx, ly);
  est.slope = std::clamp(fit.slope, 0.0, 1.0);  // time sets live in [0,T]
  est.std_error = fit.slope_stderr;
  return est;
}

}  // namespace haudim
