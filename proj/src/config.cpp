#include "jop/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "jop/classical.hpp"
#include "jop/errors.hpp"

namespace jop {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Strip a comment starting at an unquoted '#'.
std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

struct ValueParser {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  json parse() {
    skip_ws();
    if (pos >= s.size()) throw ConfigError("config: missing value");
    const char c = s[pos];
    if (c == '[') return parse_array();
    if (c == '"') return parse_string();
    return parse_scalar();
  }

  json parse_array() {
    ++pos; // '['
    json arr = json::array();
    skip_ws();
    if (pos < s.size() && s[pos] == ']') {
      ++pos;
      return arr;
    }
    while (true) {
      arr.push_back(parse());
      skip_ws();
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < s.size() && s[pos] == ']') {
        ++pos;
        return arr;
      }
      throw ConfigError("config: malformed array");
    }
  }

  json parse_string() {
    ++pos; // '"'
    std::string out;
    while (pos < s.size() && s[pos] != '"') out.push_back(s[pos++]);
    if (pos >= s.size()) throw ConfigError("config: unterminated string");
    ++pos;
    return json(out);
  }

  json parse_scalar() {
    size_t end = pos;
    while (end < s.size() && s[end] != ',' && s[end] != ']' &&
           !std::isspace(static_cast<unsigned char>(s[end])))
      ++end;
    const std::string tok = s.substr(pos, end - pos);
    pos = end;
    if (tok == "true") return json(true);
    if (tok == "false") return json(false);
    char* parsed_end = nullptr;
    const double v = std::strtod(tok.c_str(), &parsed_end);
    if (parsed_end == tok.c_str() + tok.size() && !tok.empty()) {
      if (std::floor(v) == v && std::isfinite(v) && std::abs(v) < 9.0e15 &&
          tok.find_first_of(".eE") == std::string::npos)
        return json(static_cast<long long>(v));
      return json(v);
    }
    throw ConfigError("config: cannot parse value '" + tok + "'");
  }
};

} // namespace

nlohmann::json config_text_to_json(const std::string& text) {
  json root = json::object();
  json* current = &root;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    try {
      if (line.size() > 4 && line.substr(0, 2) == "[[" && line.substr(line.size() - 2) == "]]") {
        const std::string name = trim(line.substr(2, line.size() - 4));
        if (!root.contains(name)) root[name] = json::array();
        root[name].push_back(json::object());
        current = &root[name].back();
      } else if (line.front() == '[' && line.back() == ']') {
        const std::string name = trim(line.substr(1, line.size() - 2));
        root[name] = json::object();
        current = &root[name];
      } else {
        const size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config: expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        ValueParser vp{val};
        (*current)[key] = vp.parse();
      }
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
    }
  }
  return root;
}

namespace {

double endpoint_from_json(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw ConfigError("config: interval endpoint string must be \"inf\" or \"-inf\"");
  }
  if (v.is_number()) return v.get<double>();
  throw ConfigError("config: interval endpoint must be a number or inf sentinel");
}

IntervalMeasure measure_from_json(const json& b) {
  if (!b.contains("interval") || !b["interval"].is_array() || b["interval"].size() != 2)
    throw ConfigError("config: measure needs interval = [lo, hi]");
  const double lo = endpoint_from_json(b["interval"][0]);
  const double hi = endpoint_from_json(b["interval"][1]);
  std::vector<SingularFactor> sf;
  if (b.contains("exponents")) {
    for (const auto& pair : b["exponents"]) {
      if (!pair.is_array() || pair.size() != 2)
        throw ConfigError("config: exponents entries must be [location, exponent] pairs");
      sf.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
  }
  const double c = b.value("exp_linear", 0.0);
  const bool gauss = b.value("gauss", false);
  Polynomial smooth = Polynomial::one();
  if (b.contains("smooth")) {
    std::vector<double> coeffs;
    for (const auto& v : b["smooth"]) coeffs.push_back(v.get<double>());
    smooth = Polynomial(std::move(coeffs));
  }
  try {
    return IntervalMeasure(lo, hi, std::move(sf), c, gauss, std::move(smooth));
  } catch (const NonIntegrable& e) {
    throw ConfigError(std::string("config: invalid measure: ") + e.what());
  }
}

std::vector<double> doubles_from_json(const json& arr) {
  std::vector<double> out;
  for (const auto& v : arr) out.push_back(v.get<double>());
  return out;
}

} // namespace

ProblemConfig config_from_json(const nlohmann::json& doc) {
  ProblemConfig cfg;
  cfg.k = doc.value("k", 0);
  cfg.n = doc.value("n", -1);
  cfg.n_max = doc.value("n_max", -1);
  cfg.format = doc.value("format", std::string("json"));
  if (doc.contains("seed")) cfg.solver.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (s.contains("seed")) cfg.solver.seed = s["seed"].get<std::uint64_t>();
    cfg.solver.max_newton_iters = s.value("max_newton_iters", cfg.solver.max_newton_iters);
    cfg.solver.accept_residual = s.value("accept_residual", cfg.solver.accept_residual);
    cfg.solver.dedup_angle = s.value("dedup_angle", cfg.solver.dedup_angle);
  }
  if (doc.contains("preset")) {
    const json& p = doc["preset"];
    if (p.is_string()) {
      cfg.preset.name = p.get<std::string>();
    } else {
      cfg.preset.name = p.value("name", std::string());
      if (p.contains("e")) cfg.preset.e = doubles_from_json(p["e"]);
      if (p.contains("a")) cfg.preset.a = doubles_from_json(p["a"]);
      if (p.contains("m")) cfg.preset.m = doubles_from_json(p["m"]);
      cfg.preset.alpha = p.value("alpha", cfg.preset.alpha);
      cfg.preset.ell = p.value("ell", cfg.preset.ell);
      cfg.preset.nu = p.value("nu", cfg.preset.nu);
    }
  }
  const char* mkey = doc.contains("measure") ? "measure" : "measures";
  if (doc.contains(mkey)) {
    for (const auto& b : doc[mkey]) cfg.measures.push_back(measure_from_json(b));
  }
  if (!cfg.has_preset()) {
    if (cfg.measures.empty()) throw ConfigError("config: needs measure blocks or a preset");
    if (cfg.k == 0) cfg.k = static_cast<int>(cfg.measures.size());
    if (cfg.k != static_cast<int>(cfg.measures.size()))
      throw ConfigError("config: k does not match the number of measure blocks");
  }
  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const size_t first = text.find_first_not_of(" \t\r\n");
  const bool is_json = path.size() > 5 && path.substr(path.size() - 5) == ".json";
  if (is_json || (first != std::string::npos && text[first] == '{')) {
    try {
      return config_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
  }
  return config_from_json(config_text_to_json(text));
}

std::vector<IntervalMeasure> ProblemConfig::build_measures() const {
  if (!has_preset()) return measures;
  const PresetConfig& p = preset;
  const int deg = degree();
  if (p.name == "heun" || p.name == "lame") {
    std::array<double, 3> e{0.0, 1.0, 2.0}, a{0.5, 0.5, 0.5};
    if (p.e.size() == 3) std::copy(p.e.begin(), p.e.end(), e.begin());
    if (p.a.size() == 3) std::copy(p.a.begin(), p.a.end(), a.begin());
    HeunSpec spec(e, a, deg);
    (void)spec;
    std::vector<IntervalMeasure> ms;
    std::vector<SingularFactor> sf;
    for (int i = 0; i < 3; ++i) sf.push_back({e[static_cast<size_t>(i)], a[static_cast<size_t>(i)] - 1.0});
    ms.emplace_back(e[0], e[1], sf);
    ms.emplace_back(e[1], e[2], sf);
    return ms;
  }
  if (p.name == "ince") {
    const double a1 = p.a.size() == 2 ? p.a[0] : 0.5;
    const double a2 = p.a.size() == 2 ? p.a[1] : 0.5;
    InceSpec spec(p.alpha, a1, a2, deg);
    (void)spec;
    std::vector<SingularFactor> sf{{1.0, a1 - 1.0}, {-1.0, a2 - 1.0}};
    std::vector<IntervalMeasure> ms;
    ms.emplace_back(-1.0, 1.0, sf, 2.0 * p.alpha);
    ms.emplace_back(1.0, kInf, sf, 2.0 * p.alpha);
    return ms;
  }
  if (p.name == "sextic") {
    SexticSpec spec(p.ell, deg);
    (void)spec;
    std::vector<SingularFactor> sf{{0.0, p.ell + 0.5}};
    std::vector<IntervalMeasure> ms;
    ms.emplace_back(-kInf, 0.0, sf, 0.0, true);
    ms.emplace_back(0.0, kInf, sf, 0.0, true);
    return ms;
  }
  if (p.name == "heine-stieltjes") {
    std::vector<double> e = p.e.empty() ? std::vector<double>{0.0, 1.0, 2.0, 3.0} : p.e;
    std::vector<double> m = p.m.empty() ? std::vector<double>(e.size(), 1.0) : p.m;
    HeineStieltjesSpec spec(e, m, deg);
    (void)spec;
    std::vector<IntervalMeasure> ms;
    std::vector<SingularFactor> sf;
    for (size_t i = 0; i < e.size(); ++i) sf.push_back({e[i], m[i] - 1.0});
    for (size_t j = 0; j + 1 < e.size(); ++j) ms.emplace_back(e[j], e[j + 1], sf);
    return ms;
  }
  throw ConfigError("config: unknown preset '" + p.name + "'");
}

InnerProductFamily ProblemConfig::family(int support_degree) const {
  std::vector<IntervalMeasure> ms = build_measures();
  try {
    return InnerProductFamily(std::move(ms), support_degree);
  } catch (const NonIntegrable& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

} // namespace jop
