#include "symflux/analysis.hpp"
#include "symflux/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace {

// 0: success; 1: bad input (file, syntax, analysis); 2: broken internal
// guarantee (a certified result failed its own check) or unexpected failure.
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie point symmetries of finite difference schemes via their "
               "differential approximation"};
  app.require_subcommand(1);

  CLI::App* analyze = app.add_subcommand("analyze", "Analyze a problem file");
  std::string file;
  analyze->add_option("file", file, "Problem file")->required();

  bool pde_only = false;
  analyze->add_flag("--pde-only", pde_only,
                    "Analyze the continuous equation, ignoring the schemes");

  std::string emit = "all";
  analyze->add_option("--emit", emit, "Sections to emit")
      ->check(CLI::IsMember({"modified-equation", "determining", "generators", "all"}))
      ->capture_default_str();

  std::string format = "text";
  analyze->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::optional<int> taylor_order;
  analyze->add_option("--taylor-order", taylor_order,
                      "Expansion order for the grid samples (default: automatic)");

  std::optional<int> ansatz_degree;
  analyze->add_option("--ansatz-degree", ansatz_degree,
                      "Polynomial degree of the infinitesimal ansatz (default 3)");

  int jobs = 1;
  analyze->add_option("--jobs", jobs, "Schemes analyzed concurrently")
      ->capture_default_str();

  std::string out_path;
  analyze->add_option("--out", out_path, "Write the report to a file instead of stdout");

  bool timings = false;
  analyze->add_flag("--timings", timings,
                    "Include per-stage wall-clock timings (non-deterministic bytes)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints usage/help; 0 for --help and --version
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::map<std::string, symflux::EmitKind> emit_kinds = {
      {"modified-equation", symflux::EmitKind::ModifiedEquation},
      {"determining", symflux::EmitKind::Determining},
      {"generators", symflux::EmitKind::Generators},
      {"all", symflux::EmitKind::All},
  };

  try {
    symflux::Problem problem = symflux::parse_problem(read_file(file));
    symflux::RunOptions options;
    options.pde_only = pde_only;
    options.taylor_order = taylor_order;
    options.ansatz_degree = ansatz_degree;
    options.jobs = jobs;
    symflux::AnalysisResult result = symflux::run_analysis(problem, options);
    symflux::EmitKind what = emit_kinds.at(emit);
    std::string report = format == "json" ? symflux::render_json(result, what, timings)
                                          : symflux::render_text(result, what, timings);
    return write_output(report, out_path);
  } catch (const symflux::ParseError& e) {
    std::cerr << "error: " << file << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const symflux::AnalysisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const symflux::VerificationError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
