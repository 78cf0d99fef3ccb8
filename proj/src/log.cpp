#include "symflux/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace symflux {

bool log_enabled() {
  static const bool enabled = [] {
    const char* v = std::getenv("SYMFLUX_LOG");
    return v != nullptr && v[0] != '\0';
  }();
  return enabled;
}

void log_line(const std::string& message) {
  if (!log_enabled()) return;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[symflux] " << message << "\n";
}

}  // namespace symflux
