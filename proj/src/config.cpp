#include "octrack/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace octrack::config {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  const char* p = value.c_str();
  char* end = nullptr;
  const double v = std::strtod(p, &end);
  if (end == p || *end != '\0')
    throw std::invalid_argument("config: bad number for " + key + ": " + value);
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const char* p = value.c_str();
  char* end = nullptr;
  const long v = std::strtol(p, &end, 10);
  if (end == p || *end != '\0')
    throw std::invalid_argument("config: bad integer for " + key + ": " + value);
  return static_cast<int>(v);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

tracker::TrackerMode parse_mode(const std::string& name) {
  if (name == "kcf") return tracker::TrackerMode::kcf;
  if (name == "oct-kcf" || name == "oct_kcf") return tracker::TrackerMode::oct_kcf;
  throw std::invalid_argument("config: unknown mode: " + name);
}

std::string mode_name(tracker::TrackerMode mode) {
  return mode == tracker::TrackerMode::kcf ? "kcf" : "oct-kcf";
}

features::FeatureMode parse_feature_mode(const std::string& name) {
  if (name == "fhog") return features::FeatureMode::fhog;
  if (name == "gray") return features::FeatureMode::gray;
  throw std::invalid_argument("config: unknown feature_mode: " + name);
}

std::string feature_mode_name(features::FeatureMode mode) {
  return mode == features::FeatureMode::fhog ? "fhog" : "gray";
}

void apply_entry(tracker::TrackerConfig& cfg, const std::string& key,
                 const std::string& value) {
  if (key == "lambda")
    cfg.lambda = parse_double(key, value);
  else if (key == "s")
    cfg.s = parse_double(key, value);
  else if (key == "kernel_sigma")
    cfg.kernel_sigma = parse_double(key, value);
  else if (key == "t_g")
    cfg.t_g = parse_double(key, value);
  else if (key == "n_r")
    cfg.n_r = parse_int(key, value);
  else if (key == "n_t")
    cfg.n_t = parse_int(key, value);
  else if (key == "search_scale")
    cfg.search_scale = parse_double(key, value);
  else if (key == "warmup_frames")
    cfg.warmup_frames = parse_int(key, value);
  else if (key == "cell_size")
    cfg.cell_size = parse_int(key, value);
  else if (key == "feature_mode")
    cfg.feature_mode = parse_feature_mode(value);
  else if (key == "mode")
    cfg.mode = parse_mode(value);
  else if (key == "kcf_rate")
    cfg.kcf_rate = parse_double(key, value);
  else if (key == "redetect_radius_factor")
    cfg.redetect_radius_factor = parse_double(key, value);
  else
    throw std::invalid_argument("config: unknown key: " + key);
}

tracker::TrackerConfig parse_file(const std::string& path,
                                  tracker::TrackerConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: " + path + ":" +
                                  std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    try {
      apply_entry(base, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  base.validate();
  return base;
}

std::string to_string(const tracker::TrackerConfig& cfg) {
  std::ostringstream out;
  out << "lambda=" << fmt_double(cfg.lambda) << '\n'
      << "s=" << fmt_double(cfg.s) << '\n'
      << "kernel_sigma=" << fmt_double(cfg.kernel_sigma) << '\n'
      << "t_g=" << fmt_double(cfg.t_g) << '\n'
      << "n_r=" << cfg.n_r << '\n'
      << "n_t=" << cfg.n_t << '\n'
      << "search_scale=" << fmt_double(cfg.search_scale) << '\n'
      << "warmup_frames=" << cfg.warmup_frames << '\n'
      << "cell_size=" << cfg.cell_size << '\n'
      << "feature_mode=" << feature_mode_name(cfg.feature_mode) << '\n'
      << "mode=" << mode_name(cfg.mode) << '\n'
      << "kcf_rate=" << fmt_double(cfg.kcf_rate) << '\n'
      << "redetect_radius_factor=" << fmt_double(cfg.redetect_radius_factor)
      << '\n';
  return out.str();
}

}  // namespace octrack::config
