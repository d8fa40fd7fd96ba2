#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "sdsk/analysis.hpp"

namespace sdsk {

inline nlohmann::ordered_json to_json(const CycleClassReport& r) {
  using json = nlohmann::ordered_json;
  json meta = {
      {"model", r.model_name},
      {"model_hash", r.model_hash},
      {"graph", to_string(r.graph)},
      {"graph_fingerprint", r.graph_fingerprint},
      {"base_graph_fingerprint", r.base_graph_fingerprint},
      {"source_vertex", r.source_vertex},
      {"cycle_basis", r.cycle_basis},
      {"alpha", r.alpha},
      {"kappa", r.kappa},
      {"kappa_F", r.kappa_f()},
      {"alpha_multiplier", r.alpha_multiplier},
      {"kappa_multiplier", r.kappa_multiplier},
      {"parameter_sets", r.parameter_sets},
  };
  json classes = json::array();
  for (const auto& c : r.classes) {
    json entry = {{"multiset", c.multiset},
                  {"frequency", c.frequency},
                  {"representative", c.representative.sequence}};
    entry["orientation_mass"] = c.orientation_mass ? json(*c.orientation_mass) : json(nullptr);
    classes.push_back(std::move(entry));
  }
  json sizes = json::object();
  for (auto [k, v] : multiset_size_histogram(r)) sizes[std::to_string(k)] = v;
  json per = json::array();
  for (const auto& p : r.per_parameter)
    per.push_back({{"parameters", p.parameters}, {"kappa_F", p.kappa_f}, {"bistable", p.bistable}});
  return {{"meta", meta},
          {"classes", classes},
          {"histograms", {{"multiset_size", sizes}}},
          {"per_parameter", per}};
}

// One row per class; the representative is space-separated inside quotes.
inline std::string to_csv(const CycleClassReport& r) {
  std::ostringstream os;
  os << "multiset,frequency,representative,orientation_mass\n";
  for (const auto& c : r.classes) {
    os << '"' << c.multiset << "\"," << c.frequency << ",\"";
    for (std::size_t i = 0; i < c.representative.sequence.size(); ++i)
      os << (i ? " " : "") << c.representative.sequence[i];
    os << "\",";
    if (c.orientation_mass) os << *c.orientation_mass;
    os << '\n';
  }
  return os.str();
}

}  // namespace sdsk
