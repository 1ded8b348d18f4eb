#include "haudim/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace haudim {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  enum class Section { top, process, params } section = Section::top;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t == "[process]") {
        section = Section::process;
        cfg.processes.emplace_back();
      } else if (t == "[params]") {
        section = Section::params;
      } else {
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unknown section " + t);
      }
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key or value");
    switch (section) {
      case Section::top:
        if (key == "name")
          cfg.name = value;
        else if (key == "kind")
          cfg.kind = value;
        else if (key == "master_seed")
          cfg.master_seed = std::stoull(value);
        else if (key == "out_dir")
          cfg.out_dir = value;
        else
          throw std::invalid_argument("config line " + std::to_string(lineno) +
                                      ": unknown top-level key " + key);
        break;
      case Section::process: {
        ProcessBlock& p = cfg.processes.back();
        if (key == "d_local")
          p.d_local = std::stod(value);
        else if (key == "d_global")
          p.d_global = std::stod(value);
        else if (key == "alpha_local")
          p.alpha_local = std::stod(value);
        else if (key == "alpha_global")
          p.alpha_global = std::stod(value);
        else if (key == "kind")
          p.kind = value;
        else
          throw std::invalid_argument("config line " + std::to_string(lineno) +
                                      ": unknown process key " + key);
        break;
      }
      case Section::params:
        cfg.params[key] = value;
        break;
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string echo_config(const ExperimentConfig& cfg,
                        const std::map<std::string, std::string>& effective_params) {
  std::ostringstream out;
  out << "name = " << cfg.name << "\n";
  out << "kind = " << cfg.kind << "\n";
  out << "master_seed = " << cfg.master_seed << "\n";
  out << "out_dir = " << cfg.out_dir << "\n";
  for (const auto& p : cfg.processes) {
    out << "\n[process]\n";
    out << "d_local = " << format_double(p.d_local) << "\n";
    out << "d_global = " << format_double(p.d_global) << "\n";
    out << "alpha_local = " << format_double(p.alpha_local) << "\n";
    out << "alpha_global = " << format_double(p.alpha_global) << "\n";
    out << "kind = " << p.kind << "\n";
  }
  out << "\n[params]\n";
  for (const auto& [k, v] : effective_params) out << k << " = " << v << "\n";
  return out.str();
}

double ParamReader::get_double(const std::string& key, double fallback) {
  const auto it = raw_.find(key);
  const double v = it == raw_.end() ? fallback : std::stod(it->second);
  effective_[key] = format_double(v);
  return v;
}

std::uint64_t ParamReader::get_u64(const std::string& key, std::uint64_t fallback) {
  const auto it = raw_.find(key);
  const std::uint64_t v = it == raw_.end() ? fallback : std::stoull(it->second);
  effective_[key] = std::to_string(v);
  return v;
}

std::size_t ParamReader::get_size(const std::string& key, std::size_t fallback) {
  return static_cast<std::size_t>(get_u64(key, fallback));
}

std::string ParamReader::get_string(const std::string& key, const std::string& fallback) {
  const auto it = raw_.find(key);
  const std::string v = it == raw_.end() ? fallback : it->second;
  effective_[key] = v;
  return v;
}

}  // namespace haudim
