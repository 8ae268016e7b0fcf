#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nbp {

enum class ErrorKind {
  parse_error,
  unknown_vertex,
  invalid_graph,
  invalid_rotation,
  euler_violation,
  disconnected,
  not_a_cycle,
  adjacent_identification,
  edge_exists,
  endpoint_deleted,
  partial_coloring,
  inconsistent_partial,
  invalid_precoloring,
  too_large,
  outer_mismatch,
  euler_charge_mismatch,
  invalid_hit,
  lift_failed,
  generation_failed,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::unknown_vertex: return "UnknownVertex";
    case ErrorKind::invalid_graph: return "InvalidGraph";
    case ErrorKind::invalid_rotation: return "InvalidRotation";
    case ErrorKind::euler_violation: return "EulerViolation";
    case ErrorKind::disconnected: return "Disconnected";
    case ErrorKind::not_a_cycle: return "NotACycle";
    case ErrorKind::adjacent_identification: return "AdjacentIdentification";
    case ErrorKind::edge_exists: return "EdgeExists";
    case ErrorKind::endpoint_deleted: return "EndpointDeleted";
    case ErrorKind::partial_coloring: return "PartialColoring";
    case ErrorKind::inconsistent_partial: return "InconsistentPartial";
    case ErrorKind::invalid_precoloring: return "InvalidPrecoloring";
    case ErrorKind::too_large: return "TooLarge";
    case ErrorKind::outer_mismatch: return "OuterMismatch";
    case ErrorKind::euler_charge_mismatch: return "EulerChargeMismatch";
    case ErrorKind::invalid_hit: return "InvalidHit";
    case ErrorKind::lift_failed: return "LiftFailed";
    case ErrorKind::generation_failed: return "GenerationFailed";
  }
  return "Unknown";
}

/// Every library failure carries a kind so callers (and the CLI exit-code
/// mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nbp
