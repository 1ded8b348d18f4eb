#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace haudim {

struct ProcessBlock {
  double d_local = 1.0;
  double d_global = 1.0;
  double alpha_local = 2.0;
  double alpha_global = 2.0;
  std::string kind = "diffusion";
};

// Flat key = value configuration with [process] and [params] sections.
// '#' starts a comment; top-level keys are name, kind, master_seed, out_dir.
struct ExperimentConfig {
  std::string name = "experiment";
  std::string kind;
  std::uint64_t master_seed = 1;
  std::string out_dir = "out";
  std::vector<ProcessBlock> processes;
  std::map<std::string, std::string> params;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Canonical re-emission; `effective_params` replaces the raw params section
// so defaulted values are recorded for provenance.
std::string echo_config(const ExperimentConfig& cfg,
                        const std::map<std::string, std::string>& effective_params);

// Typed access that records every effective value (defaults included).
class ParamReader {
 public:
  explicit ParamReader(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  double get_double(const std::string& key, double fallback);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
  std::size_t get_size(const std::string& key, std::size_t fallback);
  std::string get_string(const std::string& key, const std::string& fallback);

  const std::map<std::string, std::string>& effective() const { return effective_; }

 private:
  const std::map<std::string, std::string>& raw_;
  std::map<std::string, std::string> effective_;
};

std::string format_double(double v);

}  // namespace haudim
