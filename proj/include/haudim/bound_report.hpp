#pragma once

#include <string>
#include <vector>

namespace haudim {

// Declarative record of a two-sided (or one-sided) comparison against an
// envelope: extreme ratios plus the log-log trend of the ratio along the
// sweep variable. Thresholds are applied by the caller.
struct BoundReport {
  std::string name;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  double trend_slope = 0.0;
  std::size_t n_points = 0;
  std::string note;

  std::vector<double> sweep;   // abscissae of the trend fit
  std::vector<double> ratios;  // ratio at each sweep point
};

}  // namespace haudim
