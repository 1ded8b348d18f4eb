#pragma once

#include <cmath>
#include <stdexcept>

namespace haudim {

// Uniform volume function V(r) = r^d_local on [0,1], r^d_global on [1,inf).
struct VolumeProfile {
  double d_local = 1.0;
  double d_global = 1.0;

  VolumeProfile() = default;
  VolumeProfile(double dl, double dg) : d_local(dl), d_global(dg) {
    if (!(dl > 0) || !(dg > 0))
      throw std::domain_error("VolumeProfile: dimensions must be positive");
  }

  double eval(double r) const {
    if (r < 0) throw std::domain_error("VolumeProfile::eval: negative input");
    if (r == 0) return 0.0;
    return std::exp2((r <= 1.0 ? d_local : d_global) * std::log2(r));
  }

  bool operator==(const VolumeProfile& o) const {
    return d_local == o.d_local && d_global == o.d_global;
  }
};

}  // namespace haudim
