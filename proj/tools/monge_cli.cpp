// monge: verify scenarios, generate corpora, run sweeps, draw figures.
//
// Exit codes: 0 success (verdict matches the expectation), 1 verdict
// mismatch or unclean sweep, 2 input or usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include <CLI11.hpp>

#include "monge/figure.hpp"
#include "monge/generators.hpp"
#include "monge/scenario.hpp"
#include "monge/sweep.hpp"

namespace fs = std::filesystem;
using namespace monge;

namespace {

constexpr int kInputError = 2;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ScenarioError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Writes through a temporary file in the same directory, then renames, so
/// a failed run never leaves a partial file behind.
void write_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << text;
    out.close();
    if (!out) {
      fs::remove(tmp);
      throw std::runtime_error("cannot write '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, path);
}

void emit(const std::string& output, const std::string& text) {
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    write_atomic(output, text);
  }
}

int fail(const std::exception& e) {
  std::cout << error_json(e).dump(2) << "\n";
  return kInputError;
}

double default_tolerance() {
  if (const char* env = std::getenv("MONGE_TOLERANCE")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
    std::cerr << "ignoring malformed MONGE_TOLERANCE='" << env << "'\n";
  }
  return 1e-9;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homothety centers, Menelaus ratio products and their spherical/hyperbolic analogs"};
  app.require_subcommand(1);

  // verify
  std::string input;
  std::string output;
  double tolerance = default_tolerance();
  bool exact = false;
  auto* verify = app.add_subcommand("verify", "Verify a scenario file and write a report");
  verify->add_option("--input", input, "Scenario JSON file")->required();
  verify->add_option("--tolerance", tolerance, "Absolute and relative tolerance (env MONGE_TOLERANCE sets the default)")
      ->capture_default_str();
  verify->add_flag("--exact", exact, "Use exact rational arithmetic (Euclidean only)");
  verify->add_option("--output", output, "Report path (stdout when omitted)");

  // generate
  std::string geometry = "euclidean";
  std::string kind;
  int dim = 2;
  int count = 1;
  std::uint64_t seed = 0;
  double ratio_gap = 1.5;
  std::optional<double> perturb;
  bool rational = false;
  std::string out_dir;
  auto* generate = app.add_subcommand("generate", "Write seeded scenario files");
  generate->add_option("--geometry", geometry, "euclidean | spherical | hyperbolic")->capture_default_str();
  generate->add_option("--dim", dim, "Dimension n")->capture_default_str();
  generate->add_option("--kind", kind, "balls | vertex_sets | edge_points (default: balls in E^n, else edge_points)");
  generate->add_option("--count", count, "Number of scenarios")->capture_default_str();
  generate->add_option("--seed", seed, "Corpus seed")->capture_default_str();
  generate->add_option("--ratio-gap", ratio_gap, "Minimum ratio between consecutive sizes or weights")
      ->capture_default_str();
  generate->add_option("--perturb", perturb, "Relative perturbation; produces negative edge-point cases");
  generate->add_flag("--rational", rational, "Small-denominator rational coordinates (Euclidean only)");
  generate->add_option("--out", out_dir, "Output directory")->required();

  // sweep
  std::string dims = "2..4";
  int per_cell = 100;
  double sweep_perturb = 1e-2;
  auto* sweep = app.add_subcommand("sweep", "Generate and verify positive and negative corpora per dimension");
  sweep->add_option("--geometry", geometry, "euclidean | spherical | hyperbolic")->capture_default_str();
  sweep->add_option("--dims", dims, "Dimension range LO..HI")->capture_default_str();
  sweep->add_option("--per-cell", per_cell, "Positive (and negative) cases per cell")->capture_default_str();
  sweep->add_option("--seed", seed, "Sweep seed")->capture_default_str();
  sweep->add_option("--tolerance", tolerance, "Verification tolerance")->capture_default_str();
  sweep->add_option("--perturb", sweep_perturb, "Relative perturbation of negative cases")->capture_default_str();
  sweep->add_option("--ratio-gap", ratio_gap, "Minimum ratio between consecutive sizes or weights")
      ->capture_default_str();

  // figure
  auto* figure = app.add_subcommand("figure", "Draw a planar shapes scenario as SVG");
  figure->add_option("--input", input, "Scenario JSON file (Euclidean shapes, n = 2)")->required();
  figure->add_option("--output", output, "SVG path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*verify) {
      VerifyOptions options;
      options.tol = Tolerance::uniform(tolerance);
      options.exact = exact;
      const VerifyOutcome outcome = verify_scenario(read_json(input), options);
      emit(output, outcome.report.dump(2) + "\n");
      return outcome.exit_code();
    }
    if (*generate) {
      GenSpec spec;
      spec.geometry = parse_geometry(geometry);
      spec.dimension = dim;
      spec.count = count;
      spec.seed = seed;
      spec.kind = kind.empty() ? (spec.geometry == Geometry::Euclidean ? GenKind::Balls : GenKind::EdgePoints)
                               : parse_gen_kind(kind);
      spec.ratio_gap = ratio_gap;
      spec.perturb = perturb;
      spec.rational = rational;
      spec.validate();
      fs::create_directories(out_dir);
      for (int k = 0; k < count; ++k) {
        const fs::path path = fs::path(out_dir) / ("scenario-" + std::to_string(seed) + "-" + std::to_string(k) + ".json");
        write_atomic(path, generate_scenario(spec, k).dump(2) + "\n");
        std::cout << path.string() << "\n";
      }
      return 0;
    }
    if (*sweep) {
      SweepSpec spec;
      spec.geometry = parse_geometry(geometry);
      std::tie(spec.dim_lo, spec.dim_hi) = parse_dims(dims);
      spec.per_cell = per_cell;
      spec.seed = seed;
      spec.tol = Tolerance::uniform(tolerance);
      spec.perturb = sweep_perturb;
      spec.ratio_gap = ratio_gap;
      const auto rows = run_sweep(spec);
      std::cout << format_sweep(rows);
      return sweep_clean(rows) ? 0 : 1;
    }
    if (*figure) {
      emit(output, render_figure(read_json(input)));
      return 0;
    }
  } catch (const std::exception& e) {
    return fail(e);
  }
  return kInputError;
}
