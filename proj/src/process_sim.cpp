#include "haudim/process_sim.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "haudim/rng.hpp"
#include "haudim/subordinator.hpp"

namespace haudim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Chambers-Mallows-Stuck draw of a standard symmetric alpha-stable variable
// (characteristic function exp(-|xi|^alpha)), alpha in (0,2).
double cms_symmetric(double alpha, double u, double v) {
  const double theta = kPi * (u - 0.5);
  if (alpha == 1.0) return std::tan(theta);
  const double e = -std::log(v);
  const double c = std::cos(theta);
  return std::sin(alpha * theta) / std::pow(c, 1.0 / alpha) *
         std::pow(std::cos((alpha - 1.0) * theta) / e, (1.0 - alpha) / alpha);
}

}  // namespace

double stable_increment(double alpha, double elapsed, std::uint64_t key, std::uint64_t i) {
  CounterRng rng(key, 2 * i);
  if (alpha == 2.0) {
    // generator Delta: variance 2 * elapsed
    return std::sqrt(2.0 * elapsed) * rng.next_normal();
  }
  const double u = rng.next_unit();
  const double v = rng.next_unit();
  return std::pow(elapsed, 1.0 / alpha) * cms_symmetric(alpha, u, v);
}

double subordinator_increment(double gamma, double dt, std::uint64_t key, std::uint64_t i) {
  if (gamma == 1.0) return dt;
  CounterRng rng(key, 2 * i);
  const double u = rng.next_unit();
  const double v = rng.next_unit();
  return std::pow(dt, 1.0 / gamma) * kanter_draw(gamma, u, v);
}

SamplePath sample_stable_path(const PathSpec& spec, std::uint64_t seed) {
  SamplePath path;
  path.dt = spec.dt();
  path.states.resize(spec.n_steps + 1);
  path.states[0] = spec.x0;
  double x = spec.x0;
  for (std::size_t i = 0; i < spec.n_steps; ++i) {
    x += stable_increment(spec.alpha, path.dt, seed, i);
    path.states[i + 1] = x;
  }
  return path;
}

SamplePath subordinate_path(const PathSpec& base, double gamma, std::uint64_t seed) {
  if (!(gamma > 0) || gamma > 1)
    throw std::domain_error("subordinate_path: gamma must lie in (0,1]");
  SamplePath path;
  path.dt = base.dt();
  path.states.resize(base.n_steps + 1);
  path.states[0] = base.x0;
  PathStream stream(base, gamma, seed);
  for (std::size_t i = 0; i < base.n_steps; ++i) {
    stream.advance();
    path.states[i + 1] = stream.x();
  }
  return path;
}

ProductPath product_path(const PathSpec& spec1, const PathSpec& spec2, std::uint64_t seed) {
  if (spec1.horizon != spec2.horizon || spec1.n_steps != spec2.n_steps)
    throw std::invalid_argument("product_path: component time grids must match");
  ProductPath pp;
  pp.first = sample_stable_path(spec1, derive_seed(seed, 0));
  pp.second = sample_stable_path(spec2, derive_seed(seed, 1));
  return pp;
}

PathStream::PathStream(const PathSpec& spec, double gamma, std::uint64_t seed)
    : spec_(spec), gamma_(gamma), x_(spec.x0) {
  if (!(gamma > 0) || gamma > 1)
    throw std::domain_error("PathStream: gamma must lie in (0,1]");
  if (gamma == 1.0) {
    key_tau_ = 0;
    key_base_ = seed;  // matches sample_stable_path exactly
  } else {
    key_tau_ = derive_seed(seed, 0);
    key_base_ = derive_seed(seed, 1);
  }
}

void PathStream::advance() {
  const double elapsed = gamma_ == 1.0
                             ? spec_.dt()
                             : subordinator_increment(gamma_, spec_.dt(), key_tau_, i_);
  x_ += stable_increment(spec_.alpha, elapsed, key_base_, i_);
  ++i_;
}

void write_path(const std::string& filename, const SamplePath& path, const PathDumpMeta& meta) {
  std::FILE* f = std::fopen(filename.c_str(), "wb");
  if (!f) throw std::runtime_error("write_path: cannot open " + filename);
  const char magic[4] = {'H', 'D', 'L', 'B'};
  const std::uint32_t version = 1;
  const std::uint64_t n_steps = path.states.size() - 1;
  bool ok = std::fwrite(magic, 1, 4, f) == 4;
  ok = ok && std::fwrite(&version, sizeof version, 1, f) == 1;
  ok = ok && std::fwrite(&n_steps, sizeof n_steps, 1, f) == 1;
  ok = ok && std::fwrite(&path.dt, sizeof path.dt, 1, f) == 1;
  ok = ok && std::fwrite(&meta.alpha, sizeof meta.alpha, 1, f) == 1;
  ok = ok && std::fwrite(&meta.gamma, sizeof meta.gamma, 1, f) == 1;
  ok = ok && std::fwrite(&meta.seed, sizeof meta.seed, 1, f) == 1;
  ok = ok && std::fwrite(path.states.data(), sizeof(double), path.states.size(), f) ==
                 path.states.size();
  std::fclose(f);
  if (!ok) throw std::runtime_error("write_path: short write to " + filename);
}

SamplePath read_path(const std::string& filename, PathDumpMeta* meta) {
  std::FILE* f = std::fopen(filename.c_str(), "rb");
  if (!f) throw std::runtime_error("read_path: cannot open " + filename);
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t n_steps = 0;
  PathDumpMeta m;
  SamplePath path;
  bool ok = std::fread(magic, 1, 4, f) == 4 && std::memcmp(magic, "HDLB", 4) == 0;
  ok = ok && std::fread(&version, sizeof version, 1, f) == 1 && version == 1;
  ok = ok && std::fread(&n_steps, sizeof n_steps, 1, f) == 1;
  ok = ok && std::fread(&path.dt, sizeof path.dt, 1, f) == 1;
  ok = ok && std::fread(&m.alpha, sizeof m.alpha, 1, f) == 1;
  ok = ok && std::fread(&m.gamma, sizeof m.gamma, 1, f) == 1;
  ok = ok && std::fread(&m.seed, sizeof m.seed, 1, f) == 1;
  if (ok) {
    path.states.resize(n_steps + 1);
    ok = std::fread(path.states.data(), sizeof(double), path.states.size(), f) ==
         path.states.size();
  }
  std::fclose(f);
  if (!ok) throw std::runtime_error("read_path: malformed dump " + filename);
  if (meta) *meta = m;
  return path;
}

}  // namespace haudim
