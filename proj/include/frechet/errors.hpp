#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace frechet {

enum class errc {
  dimension_mismatch,
  nonfinite_coordinate,
  invalid_polyline,
  degenerate_segment,
  negative_delta,
  unknown_endpoint,
  self_loop,
  duplicate_edge,
  degenerate_edge,
  contraction_self_loop,
  contraction_multigraph,
  not_a_tree,
  unknown_vertex,
  missing_dp_entry,
  undefined_witness,
  size_guard,
  infeasible_spec,
  parse_error,
  internal_error,
};

class error : public std::runtime_error {
public:
  error(errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

}  // namespace frechet
