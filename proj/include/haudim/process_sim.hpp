#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace haudim {

// One path specification on R. Brownian normalization is by the generator
// Laplacian: increments over dt have variance 2 dt, i.e. characteristic
// function exp(-t |xi|^alpha) uniformly in alpha.
struct PathSpec {
  double alpha = 2.0;
  double horizon = 1.0;
  std::size_t n_steps = 1000;
  double x0 = 0.0;

  PathSpec() = default;
  PathSpec(double a, double T, std::size_t n, double start = 0.0)
      : alpha(a), horizon(T), n_steps(n), x0(start) {
    if (!(a > 0) || a > 2) throw std::domain_error("PathSpec: alpha must lie in (0,2]");
    if (!(T > 0)) throw std::domain_error("PathSpec: horizon must be positive");
    if (n < 2) throw std::domain_error("PathSpec: need at least 2 steps");
  }

  double dt() const { return horizon / static_cast<double>(n_steps); }
};

struct SamplePath {
  double dt = 0.0;
  std::vector<double> states;  // n_steps + 1 values, states[0] = x0
};

struct ProductPath {
  SamplePath first;
  SamplePath second;
};

// Stationary increment of a symmetric alpha-stable process over elapsed time
// `elapsed`, drawn from counter slots [2i, 2i+2) of `key`. Pure in (key, i).
double stable_increment(double alpha, double elapsed, std::uint64_t key, std::uint64_t i);

// Subordinator increment over outer time dt (Laplace exponent lambda^gamma).
double subordinator_increment(double gamma, double dt, std::uint64_t key, std::uint64_t i);

SamplePath sample_stable_path(const PathSpec& spec, std::uint64_t seed);

// X^gamma_t = X_{tau_t}: outer clock stays uniform, base increments run over
// the subordinator increments.
SamplePath subordinate_path(const PathSpec& base, double gamma, std::uint64_t seed);

ProductPath product_path(const PathSpec& spec1, const PathSpec& spec2, std::uint64_t seed);

// Streaming equivalents used by the experiment runner (no path materialized).
class PathStream {
 public:
  // gamma = 1 reproduces sample_stable_path(seed) state-for-state.
  PathStream(const PathSpec& spec, double gamma, std::uint64_t seed);
  double x() const { return x_; }
  std::size_t step() const { return i_; }
  bool done() const { return i_ >= spec_.n_steps; }
  void advance();

 private:
  PathSpec spec_;
  double gamma_;
  std::uint64_t key_tau_, key_base_;
  std::size_t i_ = 0;
  double x_;
};

// Binary dump: "HDLB", u32 version, u64 n_steps, f64 dt, f64 alpha, f64 gamma,
// u64 seed, then the n_steps+1 states as little-endian f64.
struct PathDumpMeta {
  double alpha = 2.0;
  double gamma = 1.0;
  std::uint64_t seed = 0;
};

void write_path(const std::string& filename, const SamplePath& path, const PathDumpMeta& meta);
SamplePath read_path(const std::string& filename, PathDumpMeta* meta = nullptr);

}  // namespace haudim
