#pragma once

// JSON state files. Exactly one of three forms:
//
//   {"matrix": {"d_A": 2, "entries": [[re, im], ...]}}      row-major, (2 d_A)^2 pairs
//   {"bloch":  {"d_A": 2, "r_A": [...], "r_B": [x, y, z], "C": [[..3..], ...]}}
//   {"x_state": {"r_A": .., "r_B": .., "J_x": .., "J_y": .., "J_z": ..}}
//
// "entries" may also be nested by rows.

#include <optional>
#include <string>

#include "json.hpp"

#include "corrlab/states.hpp"

namespace corrlab {

struct StateSpec {
  enum class Form { Matrix, Bloch, XState };
  Form form = Form::Bloch;
  BlochDecomposition state;
  std::optional<XStateParams> x;
  nlohmann::json source;  // the parsed document, echoed in results
};

std::string to_string(StateSpec::Form f);

/// Throws ParseError for schema violations and InvalidStateError when the
/// state is not positive within `positivity_tol`.
StateSpec parse_state(const nlohmann::json& doc, double positivity_tol = kPositivityTol);

/// Reads and parses a file; ParseError on I/O or JSON syntax errors.
StateSpec load_state_file(const std::string& path, double positivity_tol = kPositivityTol);

/// Serializes a decomposition in the "bloch" form.
nlohmann::json to_json(const BlochDecomposition& b);

}  // namespace corrlab
