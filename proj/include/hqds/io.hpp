#pragma once

#include "hqds/structure_constants.hpp"

#include <optional>
#include <string>

namespace hqds {

/// Input document: {"label": "...", "structure_constants": c} where c[i][j][k]
/// is the coefficient of e_k in e_i e_j. Indices are 0-based in the arrays and
/// read as 1-based in the documentation (c[0][0][2] is a_{11}^3).
struct InputDocument {
  std::optional<std::string> label;
  StructureConstants constants;

  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

/// Throws ParseError on malformed text, wrong shape, non-numeric or
/// non-finite entries, and on any asymmetry c[i][j][k] != c[j][i][k].
InputDocument parse_input(const std::string& text);

InputDocument read_input_file(const std::string& path);

std::string serialize_input(const InputDocument& doc);

}  // namespace hqds
