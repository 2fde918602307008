#pragma once

// Seeded scenario generation for positive and negative instances in all
// three geometries.
//
// The random source is SplitMix64 with a fixed output contract, so any
// implementation can regenerate a scenario from (spec, seed, index):
//   state += 0x9e3779b97f4a7c15
//   z = state; z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb; return z ^ (z >> 31)
// uniform01() = (next() >> 11) * 2^-53, below(n) = next() % n.

#include <cstdint>
#include <optional>

#include "monge/menelaus.hpp"
#include "monge/monge.hpp"
#include "monge/noneuclid.hpp"
#include "monge/scenario.hpp"

namespace monge {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  /// Integer in [lo, hi].
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

/// Seed of scenario k: the (k+1)-th output of SplitMix64(seed).
std::uint64_t scenario_seed(std::uint64_t seed, int k);

enum class GenKind { Balls, VertexSets, EdgePoints };

const char* to_string(GenKind k);
GenKind parse_gen_kind(const std::string& name);

/// Generator settings. ratio_gap is the minimum ratio between consecutive
/// sizes (shapes) or consecutive sorted weights (edge points).
struct GenSpec {
  Geometry geometry = Geometry::Euclidean;
  int dimension = 2;
  int count = 1;
  std::uint64_t seed = 0;
  GenKind kind = GenKind::Balls;
  double ratio_gap = 1.5;
  std::optional<double> perturb;
  /// Euclidean only: small-denominator rational coordinates.
  bool rational = false;

  void validate() const;
};

/// Rejection-sampling cap for independence and construction retries.
inline constexpr int kMaxRetries = 1000;

template <Scalar T>
MongeConfig<T> gen_ball_config(const GenSpec& spec, std::uint64_t seed);

template <Scalar T>
MongeConfig<T> gen_vertex_config(const GenSpec& spec, std::uint64_t seed);

/// Weight-constructed edge points. Negative cases move one b_ij along a
/// transversal edge line by spec.perturb times the diameter of the edge
/// points' bounding box.
template <Scalar T>
EdgePointSet<T> gen_euclid_menelaus_case(const GenSpec& spec, bool positive, std::uint64_t seed);

/// Spherical/hyperbolic analog; negative cases rescale |a_i b_ij| by
/// 1 +- spec.perturb along the geodesic.
XnConfig gen_xn_menelaus_case(const GenSpec& spec, bool positive, std::uint64_t seed);

/// Scenario k of the corpus described by spec, as a scenario document with
/// "expect" set (negative iff spec.perturb is present).
Json generate_scenario(const GenSpec& spec, int k);

}  // namespace monge
