#include "jop/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "jop/errors.hpp"

namespace jop {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

nlohmann::ordered_json measure_to_json(const IntervalMeasure& m) {
  nlohmann::ordered_json j;
  auto endpoint = [](double v) -> nlohmann::ordered_json {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return fmt17(v);
  };
  j["interval"] = nlohmann::ordered_json::array({endpoint(m.lower()), endpoint(m.upper())});
  auto exps = nlohmann::ordered_json::array();
  for (const auto& f : m.singular_factors())
    exps.push_back(nlohmann::ordered_json::array({fmt17(f.location), fmt17(f.exponent)}));
  j["exponents"] = exps;
  j["exp_linear"] = fmt17(m.exp_linear());
  j["gauss"] = m.exp_gauss();
  auto smooth = nlohmann::ordered_json::array();
  for (double c : m.smooth_factor().coeffs()) smooth.push_back(fmt17(c));
  j["smooth"] = smooth;
  return j;
}

} // namespace

nlohmann::ordered_json system_to_json(const JointSystem& sys, const ProblemConfig& cfg) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["kind"] = "joint_system";
  j["k"] = sys.k;
  j["n"] = sys.n;
  j["seed"] = cfg.solver.seed;
  auto measures = nlohmann::ordered_json::array();
  for (const auto& m : cfg.build_measures()) measures.push_back(measure_to_json(m));
  j["measures"] = measures;
  auto members = nlohmann::ordered_json::array();
  for (const auto& p : sys.members) {
    nlohmann::ordered_json e;
    auto coeffs = nlohmann::ordered_json::array();
    for (int i = 0; i <= p.vector.degree(); ++i) coeffs.push_back(fmt17(p.vector.coeff(i)));
    e["coeffs"] = coeffs;
    auto lambda = nlohmann::ordered_json::array();
    for (int i = 0; i < p.lambda.size(); ++i) lambda.push_back(fmt17(p.lambda(i)));
    e["lambda"] = lambda;
    e["residual"] = fmt17(p.residual);
    e["signature"] = p.signature;
    members.push_back(e);
  }
  j["members"] = members;
  j["min_lambda_angle"] = fmt17(sys.min_lambda_angle);
  j["max_orthogonality_residual"] = fmt17(sys.max_orthogonality_residual);
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

ParsedSystem read_system_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open system file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("system file parse error: ") + e.what());
  }
  ParsedSystem out;
  out.schema = j.value("schema", 0);
  if (out.schema != 1) throw ConfigError("system file: unsupported schema");
  out.n = j.value("n", 0);
  out.k = j.value("k", 0);
  for (const auto& e : j["members"]) {
    std::vector<double> c;
    for (const auto& v : e["coeffs"])
      c.push_back(v.is_string() ? std::strtod(v.get<std::string>().c_str(), nullptr)
                                : v.get<double>());
    out.vectors.push_back(Polynomial(std::move(c)));
    Eigen::VectorXd lam(static_cast<int>(e["lambda"].size()));
    int i = 0;
    for (const auto& v : e["lambda"])
      lam(i++) = v.is_string() ? std::strtod(v.get<std::string>().c_str(), nullptr)
                               : v.get<double>();
    out.lambdas.push_back(lam);
  }
  return out;
}

} // namespace jop
