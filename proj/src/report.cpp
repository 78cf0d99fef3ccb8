#include "symflux/report.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace symflux {

namespace {

using ordered_json = nlohmann::ordered_json;

bool want(EmitKind what, EmitKind section) {
  return what == EmitKind::All || what == section;
}

std::string grading_str(const Grading& g) {
  std::string out;
  if (g.first > 0) {
    out += "tau";
    if (g.first > 1) out += "^" + std::to_string(g.first);
  }
  if (g.second > 0) {
    if (!out.empty()) out += "*";
    out += "h";
    if (g.second > 1) out += "^" + std::to_string(g.second);
  }
  return out.empty() ? "1" : out;
}

std::string flow_kind_str(FlowKind kind) {
  switch (kind) {
    case FlowKind::Affine: return "affine";
    case FlowKind::NonAffine: return "non-affine";
    case FlowKind::NonTriangular: return "non-triangular";
  }
  return "?";
}

// "x*d/dx + 2*t*d/dt - u*d/du"; multi-term components are parenthesised.
std::string vector_field_str(const InfinitesimalSet& inf) {
  std::string out;
  for (InfSlot s : kAllSlots) {
    const Expr& comp = inf[s];
    if (comp.is_zero()) continue;
    std::string body = comp.str();
    bool negative = false;
    if (body.find(' ') != std::string::npos) {
      body = "(" + body + ")";
    } else if (body.front() == '-') {
      negative = true;
      body.erase(0, 1);
    }
    std::string piece = std::string("d/d") + slot_variable(s).name();
    if (body != "1") piece = body + "*" + piece;
    if (out.empty())
      out = (negative ? "-" : "") + piece;
    else
      out += (negative ? " - " : " + ") + piece;
  }
  return out.empty() ? "0" : out;
}

// The residual row as a linear form over the ansatz coefficients.
Expr row_form(const DeterminingSystem& system, size_t row) {
  Expr form;
  for (size_t c = 0; c < system.coeffs.size(); ++c) {
    Rat v = system.matrix.at(row, c);
    if (v != 0) form = form + Expr::term(v, Monomial::of(system.coeffs[c]));
  }
  return form;
}

std::vector<std::string> equation_lines(const ModifiedEquation& modeq) {
  std::vector<std::string> lines;
  lines.push_back(modeq.da.pde_part.str());
  for (const auto& [g, coeff] : split_by_steps(modeq.da.error_part))
    lines.push_back("  + " + grading_str(g) + " * (" + coeff.str() + ")");
  lines.back() += " = 0";
  return lines;
}

std::string timing_str(double seconds) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << seconds << "s";
  return os.str();
}

void render_scheme_text(std::ostream& os, const SchemeAnalysis& s, EmitKind what,
                        bool with_timings, bool pde_only) {
  os << (pde_only ? "equation " : "scheme ") << s.name << "\n";

  if (want(what, EmitKind::ModifiedEquation)) {
    if (pde_only) {
      os << "  equation:\n";
    } else {
      os << "  modified equation (taylor order " << s.modeq.taylor_order
         << ", approximation order " << s.modeq.approximation_order << "):\n";
    }
    for (const std::string& line : equation_lines(s.modeq)) os << "    " << line << "\n";
    if (!s.modeq.leading.empty()) {
      os << "    leading error gradings:";
      bool first = true;
      for (const Grading& g : s.modeq.leading) {
        os << (first ? " " : ", ") << grading_str(g);
        first = false;
      }
      os << "\n";
    }
  }

  if (want(what, EmitKind::Determining)) {
    os << "  determining system: " << s.ansatz.coeffs.size() << " unknowns, "
       << s.system.matrix.rows << " equations\n";
    for (InfSlot slot : kAllSlots) {
      const Expr& comp = s.ansatz.inf[slot];
      if (comp.is_zero()) continue;
      os << "    " << slot_name(slot) << " = " << comp.str() << "\n";
    }
    for (size_t r = 0; r < s.system.matrix.rows; ++r)
      os << "    [" << s.system.tags[r].str() << "] " << row_form(s.system, r).str()
         << " = 0\n";
  }

  if (want(what, EmitKind::Generators)) {
    os << "  symmetry algebra (dimension " << s.generators.size() << "):\n";
    for (size_t i = 0; i < s.generators.size(); ++i) {
      const LieGenerator& g = s.generators[i];
      os << "    " << g.label << ": " << vector_field_str(g.inf) << "\n";
      const FlowResult& flow = s.flows[i];
      if (flow.kind != FlowKind::Affine) {
        os << "      flow: " << flow_kind_str(flow.kind)
           << " generator, no closed form emitted\n";
        continue;
      }
      os << "      exp(a*" << g.label << "):";
      bool first = true;
      for (const auto& [var, image] : flow.images) {
        if (image == var.name()) continue;  // unchanged
        os << (first ? " " : ", ") << var.name() << " -> " << image;
        first = false;
      }
      if (first) os << " identity";
      os << "\n";
    }
  }

  if (with_timings) {
    os << "  timings: modified equation " << timing_str(s.timings.modified_equation_s)
       << ", determining " << timing_str(s.timings.determining_s) << ", solve "
       << timing_str(s.timings.solve_s) << ", total " << timing_str(s.timings.total_s)
       << "\n";
  }
}

ordered_json grading_json(const Grading& g) {
  return ordered_json{{"tau_power", g.first}, {"h_power", g.second}};
}

ordered_json term_list_json(const Expr& e) {
  ordered_json arr = ordered_json::array();
  for (const auto& [m, c] : e.terms())
    arr.push_back(ordered_json{{"coefficient", rat_str(c)}, {"monomial", m.str()}});
  return arr;
}

ordered_json scheme_json(const SchemeAnalysis& s, EmitKind what, bool with_timings,
                         bool pde_only) {
  ordered_json out;
  out["name"] = s.name;

  if (want(what, EmitKind::ModifiedEquation)) {
    ordered_json me;
    me["pde_terms"] = term_list_json(s.modeq.da.pde_part);
    me["error_terms"] = term_list_json(s.modeq.da.error_part);
    me["leading_gradings"] = ordered_json::array();
    for (const Grading& g : s.modeq.leading) me["leading_gradings"].push_back(grading_json(g));
    if (!pde_only) {
      me["taylor_order"] = s.modeq.taylor_order;
      me["approximation_order"] = s.modeq.approximation_order;
    }
    out[pde_only ? "equation" : "modified_equation"] = std::move(me);
  }

  if (want(what, EmitKind::Determining)) {
    ordered_json ds;
    ds["unknowns"] = ordered_json::array();
    for (size_t i = 0; i < s.ansatz.coeffs.size(); ++i) {
      ds["unknowns"].push_back(ordered_json{{"name", s.ansatz.coeffs[i].name()},
                                            {"slot", slot_name(s.ansatz.shape[i].first)},
                                            {"monomial", s.ansatz.shape[i].second.str()}});
    }
    ds["equations"] = ordered_json::array();
    for (size_t r = 0; r < s.system.matrix.rows; ++r) {
      ds["equations"].push_back(
          ordered_json{{"tag", s.system.tags[r].str()},
                       {"relation", row_form(s.system, r).str()}});
    }
    out["determining_system"] = std::move(ds);
  }

  if (want(what, EmitKind::Generators)) {
    ordered_json sym;
    sym["dimension"] = s.generators.size();
    sym["generators"] = ordered_json::array();
    for (size_t i = 0; i < s.generators.size(); ++i) {
      const LieGenerator& g = s.generators[i];
      ordered_json jg;
      jg["label"] = g.label;
      ordered_json comps = ordered_json::array();
      for (InfSlot slot : kAllSlots) {
        if (g.inf[slot].is_zero()) continue;
        comps.push_back(ordered_json{{"variable", slot_variable(slot).name()},
                                     {"coefficient", g.inf[slot].str()}});
      }
      jg["components"] = std::move(comps);
      jg["vector_field"] = vector_field_str(g.inf);
      ordered_json flow;
      flow["kind"] = flow_kind_str(s.flows[i].kind);
      if (s.flows[i].kind == FlowKind::Affine) {
        ordered_json map;
        for (const auto& [var, image] : s.flows[i].images) map[var.name()] = image;
        flow["map"] = std::move(map);
      }
      jg["flow"] = std::move(flow);
      sym["generators"].push_back(std::move(jg));
    }
    out["symmetries"] = std::move(sym);
  }

  if (with_timings) {
    out["timings"] = ordered_json{{"modified_equation_s", s.timings.modified_equation_s},
                                  {"determining_s", s.timings.determining_s},
                                  {"solve_s", s.timings.solve_s},
                                  {"total_s", s.timings.total_s}};
  }
  return out;
}

}  // namespace

std::string render_text(const AnalysisResult& result, EmitKind what, bool with_timings) {
  std::ostringstream os;
  os << "problem: u_t = " << result.pde_rhs.str() << "\n";
  os << "ansatz degree: " << result.ansatz_degree << "\n";
  for (const SchemeAnalysis& s : result.schemes) {
    os << "\n";
    render_scheme_text(os, s, what, with_timings, result.pde_only);
  }
  return os.str();
}

std::string render_json(const AnalysisResult& result, EmitKind what, bool with_timings) {
  ordered_json out;
  out["pde_rhs"] = result.pde_rhs.str();
  out["ansatz_degree"] = result.ansatz_degree;
  out["pde_only"] = result.pde_only;
  out["schemes"] = ordered_json::array();
  for (const SchemeAnalysis& s : result.schemes)
    out["schemes"].push_back(scheme_json(s, what, with_timings, result.pde_only));
  return out.dump(2) + "\n";
}

}  // namespace symflux
