#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace jop {

/// Log levels selected by the JOP_LOG environment variable
/// (error | info | debug); default error.
enum class LogLevel { error = 0, info = 1, debug = 2 };

inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("JOP_LOG");
    if (!env) return LogLevel::error;
    const std::string s(env);
    if (s == "debug") return LogLevel::debug;
    if (s == "info") return LogLevel::info;
    return LogLevel::error;
  }();
  return level;
}

inline void log_error(const std::string& msg) { std::cerr << "[jop] error: " << msg << "\n"; }

inline void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::info) std::cerr << "[jop] " << msg << "\n";
}

inline void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::debug) std::cerr << "[jop] debug: " << msg << "\n";
}

} // namespace jop
