#pragma once

#include <stdexcept>
#include <string>

namespace geocenter {

enum class ErrorKind {
  Parse,
  TooFewVertices,
  DegenerateEdge,
  SelfIntersecting,
  ZeroArea,
  PointOutside,
  NegativeRadius,
  CoincidentPoints,
  DegeneratePartition,
  ContextMismatch,
};

const char* to_string(ErrorKind kind);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  /// Input errors are malformed data; domain errors are well-formed queries
  /// that fall outside the polygon.
  bool is_domain_error() const { return kind_ == ErrorKind::PointOutside; }

 private:
  ErrorKind kind_;
};

}  // namespace geocenter
