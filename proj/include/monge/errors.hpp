#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace monge {

enum class ErrorKind {
  InvalidInput,
  DimensionMismatch,
  NonRectangular,
  DegenerateConfiguration,
  NearParallel,
  NotOnLine,
  CoincidesWithVertex,
  EqualWeights,
  DependentVertices,
  NotHomothetic,
  RatioNotGreaterThanOne,
  NonUniqueHomothety,
  UnboundedShape,
  InfeasibleShape,
  DegenerateShape,
  GeometryMismatch,
  AntipodalPoints,
  ArcOrderViolation,
  NotTimelike,
  NotSpacelike,
  ParameterOutOfRange,
  ExactModeUnsupported,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for every geometric failure. `indices` carries the
/// 1-based pair (i, j) or triple the failure belongs to, when there is one.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<int>& indices() const noexcept { return indices_; }
  /// Achieved affine span dimension, set for DegenerateConfiguration.
  std::optional<int> span_dimension() const noexcept { return span_dim_; }

  GeometryError with_indices(std::vector<int> idx) const {
    GeometryError copy = *this;
    copy.indices_ = std::move(idx);
    return copy;
  }
  GeometryError with_span_dimension(int dim) const {
    GeometryError copy = *this;
    copy.span_dim_ = dim;
    return copy;
  }

 private:
  ErrorKind kind_;
  std::vector<int> indices_;
  std::optional<int> span_dim_;
};

}  // namespace monge
