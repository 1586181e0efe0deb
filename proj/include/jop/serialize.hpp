#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "jop/config.hpp"
#include "jop/mep.hpp"

namespace jop {

/// Decimal string with 17 significant digits (round-trips a 64-bit float).
std::string fmt17(double v);

/// Deterministic system.json document (schema 1). All floating values are
/// serialized as fmt17 strings.
nlohmann::ordered_json system_to_json(const JointSystem& sys, const ProblemConfig& cfg);

void write_text_file(const std::string& path, const std::string& content);

/// The parts of a system.json document needed to re-verify it.
struct ParsedSystem {
  int schema = 0;
  int n = 0;
  int k = 0;
  std::vector<Polynomial> vectors;
  std::vector<Eigen::VectorXd> lambdas;
};

ParsedSystem read_system_json(const std::string& path);

} // namespace jop
