#pragma once

#include <stdexcept>
#include <string>

#include "haudim/power_scale.hpp"
#include "haudim/volume_profile.hpp"

namespace haudim {

enum class ProcessKind { diffusion, stable_jump, diffusion_with_jumps };

// Heat-kernel bound classes assumed for a process.
struct BoundFlags {
  bool odhk = false;   // two-sided on-diagonal
  bool ndlhk = false;  // near-diagonal lower
  bool wuhk = false;   // weak upper
  bool hr = false;     // Hoelder regularity

  static BoundFlags all() { return {true, true, true, true}; }
};

struct ProcessClass {
  VolumeProfile volume;
  PowerScale scale;
  ProcessKind kind = ProcessKind::stable_jump;
  BoundFlags assumed_bounds = BoundFlags::all();

  ProcessClass() = default;
  ProcessClass(VolumeProfile v, PowerScale s, ProcessKind k,
               BoundFlags flags = BoundFlags::all())
      : volume(v), scale(s), kind(k), assumed_bounds(flags) {
    // Walk-dimension convention: a diffusion scales at least like r^2.
    if (kind == ProcessKind::diffusion && scale.alpha_local < 2.0)
      throw std::domain_error("ProcessClass: diffusion requires alpha_local >= 2");
  }
};

inline ProcessClass brownian_class(double d = 1.0) {
  return ProcessClass(VolumeProfile(d, d), PowerScale(2.0, 2.0), ProcessKind::diffusion);
}

inline ProcessClass stable_class(double alpha, double d = 1.0) {
  return ProcessClass(VolumeProfile(d, d), PowerScale(alpha, alpha), ProcessKind::stable_jump);
}

inline void require_flag(const ProcessClass& p, const std::string& flag) {
  const BoundFlags& f = p.assumed_bounds;
  const bool have = (flag == "ODHK" && f.odhk) || (flag == "NDLHK" && f.ndlhk) ||
                    (flag == "WUHK" && f.wuhk) || (flag == "HR" && f.hr);
  if (!have) throw std::invalid_argument("required heat-kernel bound not flagged: " + flag);
}

}  // namespace haudim
