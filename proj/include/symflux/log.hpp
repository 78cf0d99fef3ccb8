#pragma once

#include <string>

namespace symflux {

// Diagnostics are opt-in via the SYMFLUX_LOG environment variable (any
// nonempty value) and go to stderr, keeping stdout byte-stable.
bool log_enabled();
void log_line(const std::string& message);

}  // namespace symflux
