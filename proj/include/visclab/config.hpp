#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "visclab/problem.hpp"

namespace visclab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Minimal structured-text config: [section] headers, key = value lines,
// '#' comments. Values are kept as strings and parsed on demand.
class Config {
  public:
    static Config parse_file(const std::filesystem::path& file);
    static Config parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;
    long get_int_or(const std::string& section, const std::string& key, long fallback) const;
    std::vector<double> get_list(const std::string& section, const std::string& key) const;

  private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

// [problem] section: flux, diffusion, initial, domain, horizon, class.
// flux      = burgers | linear_advection(a) | polynomial(c0,c1,...)
// diffusion = constant(v) | rational_bump(base,amplitude)
// initial   = compact_bump(center,width,height)
//           | mollified_riemann(left,right,jump,smoothing)
//           | sine_pocket(a1,a2,...)
// domain    = (a, b)
ProblemSpec problem_from_config(const Config& cfg);

}  // namespace visclab
