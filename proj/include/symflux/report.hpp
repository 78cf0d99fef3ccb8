#pragma once

#include "symflux/analysis.hpp"

#include <string>

namespace symflux {

enum class EmitKind { ModifiedEquation, Determining, Generators, All };

// Renderings are deterministic: same problem and options, same bytes,
// regardless of thread count.  Timings are only included on request since
// they vary run to run.
std::string render_text(const AnalysisResult& result, EmitKind what, bool with_timings);
std::string render_json(const AnalysisResult& result, EmitKind what, bool with_timings);

}  // namespace symflux
