#include "fracmorrey/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "fracmorrey/error.hpp"
#include "fracmorrey/grammar.hpp"

namespace fracmorrey {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct LineError {
  int line;
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("config line " + std::to_string(line) + ": " + what);
  }
  double real(const std::string& v) const {
    double x = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) fail("expected a number, got '" + v + "'");
    return x;
  }
  long long integer(const std::string& v) const {
    long long x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) fail("expected an integer, got '" + v + "'");
    return x;
  }
  bool boolean(const std::string& v) const {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail("expected true or false, got '" + v + "'");
  }
  template <class F>
  auto wrap(F&& f) const {
    try {
      return f();
    } catch (const ValidationError& e) {
      fail(e.what());
    }
  }
};

struct GridDefaults {
  std::optional<int> dimension, cells, levels;
  std::optional<double> half_width;
};

}  // namespace

std::string default_output_dir() {
  if (const char* env = std::getenv("FMORREY_OUT"); env && *env) return env;
  return "fmorrey_out";
}

Config parse_config(std::string_view text) {
  Config cfg;
  GridDefaults grid;
  struct Pending {
    ExperimentSpec spec;
    GridDefaults own;
  };
  std::vector<Pending> exps;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const LineError at{lineno};
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') at.fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.rfind("experiment", 0) == 0) {
        const std::string id = trim(section.substr(10));
        if (id.empty()) at.fail("experiment section needs an id, e.g. [experiment thm41]");
        exps.push_back({at.wrap([&] { return default_experiment(id); }), {}});
        section = "experiment";
      } else if (section != "output" && section != "grid" && section != "oracle") {
        at.fail("unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) at.fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty()) at.fail("key '" + key + "' outside any section");

    auto grid_key = [&](GridDefaults& g) {
      if (key == "dimension") g.dimension = static_cast<int>(at.integer(val));
      else if (key == "cells") g.cells = static_cast<int>(at.integer(val));
      else if (key == "levels") g.levels = static_cast<int>(at.integer(val));
      else if (key == "half_width") g.half_width = at.real(val);
      else return false;
      return true;
    };

    if (section == "output") {
      if (key == "dir") cfg.output_dir = val;
      else if (key == "format") cfg.format = at.wrap([&] { return parse_format(val); });
      else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(at.integer(val));
      else at.fail("unknown key '" + key + "' in [output]");
    } else if (section == "grid") {
      if (!grid_key(grid)) at.fail("unknown key '" + key + "' in [grid]");
    } else if (section == "oracle") {
      if (key == "mesh") cfg.oracle.mesh = static_cast<int>(at.integer(val));
      else if (key == "shells") cfg.oracle.shells = static_cast<int>(at.integer(val));
      else if (key == "max_shells") cfg.oracle.max_shells = static_cast<int>(at.integer(val));
      else if (key == "first_shell") cfg.oracle.first_shell = at.real(val);
      else if (key == "shell_ratio") cfg.oracle.shell_ratio = at.real(val);
      else at.fail("unknown key '" + key + "' in [oracle]");
    } else {
      auto& pe = exps.back();
      auto& s = pe.spec;
      if (grid_key(pe.own)) continue;
      if (key == "functions") {
        s.functions.clear();
        for (const auto& f : split_list(val)) s.functions.push_back(at.wrap([&] { return parse_function(f); }));
      } else if (key == "regions") {
        s.regions.clear();
        for (const auto& r : split_list(val)) s.regions.push_back(at.wrap([&] { return parse_shape(r); }));
      } else if (key == "weight") {
        s.weight = at.wrap([&] { return parse_weight(val); });
      } else if (key == "omega") {
        s.omega = at.wrap([&] { return parse_weight(val); });
      } else if (key == "p") {
        s.p = at.real(val);
      } else if (key == "q") {
        s.q = at.real(val);
      } else if (key == "alpha") {
        s.alpha = at.real(val);
      } else if (key == "lambda") {
        s.lambda = at.real(val);
      } else if (key == "central") {
        s.central = at.boolean(val);
      } else if (key == "spread_bound") {
        s.spread_bound = at.real(val);
      } else if (key == "drift_bound") {
        s.drift_bound = at.real(val);
      } else if (key == "side_tolerance") {
        s.side_tolerance = at.real(val);
      } else if (key == "seed") {
        s.seed = static_cast<std::uint64_t>(at.integer(val));
      } else {
        at.fail("unknown key '" + key + "' in [experiment " + s.id + "]");
      }
    }
  }
  for (auto& pe : exps) {
    auto& s = pe.spec;
    s.dimension = pe.own.dimension.value_or(grid.dimension.value_or(s.dimension));
    s.cells = pe.own.cells.value_or(grid.cells.value_or(s.cells));
    s.levels = pe.own.levels.value_or(grid.levels.value_or(s.levels));
    s.half_width = pe.own.half_width.value_or(grid.half_width.value_or(s.half_width));
    cfg.experiments.push_back(std::move(s));
  }
  if (cfg.output_dir.empty()) cfg.output_dir = default_output_dir();
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace fracmorrey
