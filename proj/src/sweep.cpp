#include "monge/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace monge {

namespace {

double case_residual(const Json& report) {
  if (report.at("kind") == "shapes") return report.at("residual").get<double>();
  return std::max(report.at("max_triple_residual").get<double>(), report.at("hyperplane_residual").get<double>());
}

double negative_residual(const Json& report) {
  return std::min(report.at("max_triple_residual").get<double>(), report.at("hyperplane_residual").get<double>());
}

std::string sci(double v) {
  if (std::isinf(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::pair<int, int> parse_dims(const std::string& text) {
  std::size_t pos = text.find("..");
  std::size_t skip = 2;
  if (pos == std::string::npos) {
    pos = text.find('-');
    skip = 1;
  }
  try {
    std::size_t used = 0;
    if (pos == std::string::npos) {
      const int d = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {d, d};
    }
    const int lo = std::stoi(text.substr(0, pos), &used);
    if (used != pos) throw std::invalid_argument(text);
    const std::string rest = text.substr(pos + skip);
    const int hi = std::stoi(rest, &used);
    if (used != rest.size() || lo > hi) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad dimension range '" + text + "' (expected LO..HI)");
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.per_cell < 0) throw std::invalid_argument("per-cell count must be non-negative");
  if (spec.per_cell == 0) return {};
  std::vector<GenKind> kinds{GenKind::EdgePoints};
  if (spec.geometry == Geometry::Euclidean) kinds = {GenKind::Balls, GenKind::VertexSets, GenKind::EdgePoints};

  VerifyOptions options;
  options.tol = spec.tol;
  std::vector<SweepRow> rows;
  for (int n = spec.dim_lo; n <= spec.dim_hi; ++n) {
    for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
      SweepRow row;
      row.geometry = spec.geometry;
      row.kind = kinds[ki];
      row.dimension = n;
      row.min_neg_residual = std::numeric_limits<double>::infinity();

      GenSpec gen;
      gen.geometry = spec.geometry;
      gen.dimension = n;
      gen.kind = kinds[ki];
      gen.ratio_gap = spec.ratio_gap;
      gen.seed = spec.seed + static_cast<std::uint64_t>(n) * 1000 + ki;
      gen.validate();

      for (int k = 0; k < spec.per_cell; ++k) {
        try {
          const VerifyOutcome out = verify_scenario(generate_scenario(gen, k), options);
          (out.verdict ? row.pos_pass : row.pos_fail)++;
          row.max_pos_residual = std::max(row.max_pos_residual, case_residual(out.report));
        } catch (const std::exception&) {
          row.pos_fail++;
        }
      }
      if (kinds[ki] == GenKind::EdgePoints) {
        GenSpec neg = gen;
        neg.perturb = spec.perturb;
        for (int k = 0; k < spec.per_cell; ++k) {
          try {
            const VerifyOutcome out = verify_scenario(generate_scenario(neg, spec.per_cell + k), options);
            (out.verdict ? row.neg_fail : row.neg_pass)++;
            row.min_neg_residual = std::min(row.min_neg_residual, negative_residual(out.report));
          } catch (const std::exception&) {
            row.neg_fail++;
          }
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string format_sweep(const std::vector<SweepRow>& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s %-12s %4s %9s %9s %9s %9s %13s %13s\n", "geometry", "kind", "dim", "pos_pass",
                "pos_fail", "neg_pass", "neg_fail", "max_pos_res", "min_neg_res");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-10s %-12s %4d %9d %9d %9d %9d %13s %13s\n", to_string(r.geometry),
                  to_string(r.kind), r.dimension, r.pos_pass, r.pos_fail, r.neg_pass, r.neg_fail,
                  sci(r.max_pos_residual).c_str(), sci(r.min_neg_residual).c_str());
    out += buf;
  }
  return out;
}

}  // namespace monge
