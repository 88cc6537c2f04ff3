#include "hqds/io.hpp"

#include "hqds/core.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace hqds {

namespace {

using nlohmann::json;

const json& expect_array(const json& node, std::size_t size, const std::string& where) {
  if (!node.is_array() || node.size() != size)
    throw ParseError(where + ": expected an array of length " + std::to_string(size));
  return node;
}

}  // namespace

InputDocument parse_input(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("document must be an object");

  InputDocument doc;
  if (auto it = root.find("label"); it != root.end()) {
    if (!it->is_string()) throw ParseError("label must be a string");
    doc.label = it->get<std::string>();
  }
  const auto it = root.find("structure_constants");
  if (it == root.end()) throw ParseError("missing structure_constants");

  const json& c = expect_array(*it, 3, "structure_constants");
  for (int i = 0; i < 3; ++i) {
    const std::string row = "structure_constants[" + std::to_string(i) + "]";
    expect_array(c[i], 3, row);
    for (int j = 0; j < 3; ++j) {
      const std::string cell = row + "[" + std::to_string(j) + "]";
      expect_array(c[i][j], 3, cell);
      for (int k = 0; k < 3; ++k) {
        const json& v = c[i][j][k];
        if (!v.is_number()) throw ParseError(cell + "[" + std::to_string(k) + "] is not a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw ParseError(cell + " holds a non-finite value");
        doc.constants(i, j, k) = x;
      }
    }
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (doc.constants(i, j, k) != doc.constants(j, i, k))
          throw ParseError("asymmetric constants: c[" + std::to_string(i) + "][" +
                           std::to_string(j) + "][" + std::to_string(k) + "] != c[" +
                           std::to_string(j) + "][" + std::to_string(i) + "][" +
                           std::to_string(k) + "]");
  return doc;
}

InputDocument read_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_input(buffer.str());
}

std::string serialize_input(const InputDocument& doc) {
  json root = json::object();
  if (doc.label) root["label"] = *doc.label;
  json c = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) {
      json cell = json::array();
      for (int k = 0; k < 3; ++k) cell.push_back(doc.constants(i, j, k));
      row.push_back(cell);
    }
    c.push_back(row);
  }
  root["structure_constants"] = c;
  return root.dump(2);
}

}  // namespace hqds
