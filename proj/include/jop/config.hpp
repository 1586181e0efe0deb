#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "jop/forms.hpp"
#include "jop/mep.hpp"

namespace jop {

struct PresetConfig {
  std::string name;          // "heun", "lame", "ince", "sextic", "heine-stieltjes"
  std::vector<double> e;     // heun/lame/heine-stieltjes nodes
  std::vector<double> a;     // heun a_i; ince (a1, a2)
  std::vector<double> m;     // heine-stieltjes exponents
  double alpha = -1.0;       // ince
  double ell = 0.0;          // sextic
  int nu = -1;               // lame
};

/// Parsed problem description: either k measure blocks or a preset (the
/// preset overrides the measures), plus degree and solver options.
struct ProblemConfig {
  int k = 0;
  int n = -1;
  int n_max = -1;
  std::vector<IntervalMeasure> measures;
  SolveOptions solver;
  PresetConfig preset;
  std::string format = "json";

  bool has_preset() const { return !preset.name.empty(); }
  int degree() const { return n >= 0 ? n : (n_max >= 0 ? n_max : 0); }
  /// Measures, preset-aware. Throws ConfigError on inconsistency.
  std::vector<IntervalMeasure> build_measures() const;
  InnerProductFamily family(int support_degree) const;
};

/// Parse the key-value config format (a small TOML subset: tables,
/// arrays-of-tables, inline arrays, strings, booleans, numbers) into JSON.
nlohmann::json config_text_to_json(const std::string& text);

/// Interpret a JSON config document.
ProblemConfig config_from_json(const nlohmann::json& doc);

/// Load a config file; .json files (or documents starting with '{') parse as
/// JSON, everything else as the key-value format.
ProblemConfig load_config(const std::string& path);

} // namespace jop
