#pragma once

#include <string>
#include <variant>
#include <vector>

#include "sdsk/bundled_models.hpp"
#include "sdsk/error.hpp"
#include "sdsk/graph.hpp"
#include "sdsk/model.hpp"

namespace sdsk {

using Builtin = std::variant<NetworkModel, SimpleGraph>;

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"bithreshold-example", "lac-operon", "celegans",
                                                 "celegans-extended", "q3"};
  return names;
}

inline bool is_builtin(const std::string& name) {
  for (const auto& n : builtin_names())
    if (n == name) return true;
  return false;
}

inline Builtin builtin(const std::string& name) {
  if (name == "bithreshold-example") return parse_model(bundled::bithreshold_example);
  if (name == "lac-operon") return parse_model(bundled::lac_operon);
  if (name == "celegans") return parse_model(bundled::celegans);
  if (name == "celegans-extended") return promote_parameters(parse_model(bundled::celegans));
  if (name == "q3") return parse_edge_list(std::string(bundled::q3_edges));
  throw InputError("unknown built-in '" + name + "'");
}

inline NetworkModel builtin_model(const std::string& name) {
  auto b = builtin(name);
  if (auto* m = std::get_if<NetworkModel>(&b)) return std::move(*m);
  throw InputError("built-in '" + name + "' is a graph, not a model");
}

}  // namespace sdsk
