#include "ell/log.hpp"

#include <cstdlib>
#include <iostream>

namespace ell {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("ELLIPTIC_LOG");
    if (!env) return LogLevel::Quiet;
    const std::string s(env);
    if (s == "debug") return LogLevel::Debug;
    if (s == "info") return LogLevel::Info;
    return LogLevel::Quiet;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::Debug) std::cerr << "[debug] " << msg << "\n";
}

}  // namespace ell
