#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "apaver/lattice.hpp"
#include "apaver/oracle.hpp"
#include "apaver/paving.hpp"
#include "apaver/springer.hpp"

namespace apaver::io {

using json = nlohmann::ordered_json;

// ---- JSON ------------------------------------------------------------

inline json to_json(const StandardForm& m) {
  json out;
  out["s"] = m.vertex.s;
  out["t"] = m.vertex.t;
  out["a"] = m.a;
  for (Coord c : kAllCoords) {
    json entries = json::array();
    for (auto [e, cf] : m.coord(c).support()) entries.push_back({e, cf});
    out[std::string(1, coord_name(c))] = entries;
  }
  return out;
}

inline json to_json(const CellDescriptor& d) {
  json out;
  out["s"] = d.vertex.s;
  out["t"] = d.vertex.t;
  out["region"] = std::string(1, region_name(d.region));
  out["a"] = d.a;
  out["level"] = d.level();
  out["dimension"] = d.dimension;
  json ws;
  for (Coord c : kAllCoords) {
    const CoordWindow& w = window_for(d.window_set, c);
    ws[std::string(1, coord_name(c))] = {w.lo, w.hi};
  }
  out["windows"] = ws;
  return out;
}

inline json to_json(const oracle::VerificationReport& r) {
  json out;
  out["scope"] = r.scope;
  out["passed"] = r.passed();
  out["elapsed_seconds"] = r.elapsed_seconds;
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"expected", c.expected},
                      {"actual", c.actual}});
  }
  out["checks"] = checks;
  return out;
}

inline json to_json(const std::vector<oracle::VerificationReport>& reports) {
  json out;
  bool all = true;
  json items = json::array();
  for (const auto& r : reports) {
    all = all && r.passed();
    items.push_back(to_json(r));
  }
  out["passed"] = all;
  out["reports"] = items;
  return out;
}

inline json classification_json(int N, int a) {
  json rows = json::array();
  for (Vertex v : triangle_vertices(N)) {
    rows.push_back({{"s", v.s},
                    {"t", v.t},
                    {"triangle", triangle_index(v)},
                    {"type", type_code(classify(v, a))},
                    {"region", std::string(1, region_name(region_of(v)))}});
  }
  return rows;
}

inline json cells_json(int N, int a) {
  json rows = json::array();
  for (Vertex v : triangle_vertices(N)) rows.push_back(to_json(cell(v, a)));
  return rows;
}

inline json dims_json(int N, int m, int n) {
  json rows = json::array();
  for (const auto& e : filtration_order(N, n - m)) {
    rows.push_back({{"rank", e.rank},
                    {"s", e.vertex.s},
                    {"t", e.vertex.t},
                    {"region", std::string(1, region_name(region_of(e.vertex)))},
                    {"dim", fixed_cell_dimension(e.vertex, m, n)}});
  }
  return rows;
}

inline json poincare_json(int N, int m, int n) {
  json out;
  out["m"] = m;
  out["n"] = n;
  out["N"] = N;
  out["coeffs"] = poincare(N, m, n);
  return out;
}

inline json order_json(int N, int a) {
  json rows = json::array();
  for (const auto& e : filtration_order(N, a)) {
    rows.push_back({{"rank", e.rank},
                    {"s", e.vertex.s},
                    {"t", e.vertex.t},
                    {"triangle", e.triangle},
                    {"stage", stage_name(e.stage)},
                    {"sort_key", e.sort_key}});
  }
  return rows;
}

// ---- CSV -------------------------------------------------------------

inline std::string classification_csv(int N, int a) {
  std::string out = "s,t,triangle,type,region\n";
  for (Vertex v : triangle_vertices(N)) {
    out += std::to_string(v.s) + "," + std::to_string(v.t) + "," +
           std::to_string(triangle_index(v)) + "," + std::to_string(type_code(classify(v, a))) +
           "," + region_name(region_of(v)) + "\n";
  }
  return out;
}

inline std::string cells_csv(int N, int a) {
  std::string out = "s,t,triangle,region,level,dim";
  for (Coord c : kAllCoords) {
    out += std::string(",") + coord_name(c) + "_lo," + coord_name(c) + "_hi";
  }
  out += "\n";
  for (Vertex v : triangle_vertices(N)) {
    CellDescriptor d = cell(v, a);
    out += std::to_string(v.s) + "," + std::to_string(v.t) + "," +
           std::to_string(triangle_index(v)) + "," + region_name(d.region) + "," +
           std::to_string(d.level()) + "," + std::to_string(d.dimension);
    for (Coord c : kAllCoords) {
      const CoordWindow& w = window_for(d.window_set, c);
      out += "," + std::to_string(w.lo) + "," + std::to_string(w.hi);
    }
    out += "\n";
  }
  return out;
}

inline std::string dims_csv(int N, int m, int n) {
  std::string out = "rank,s,t,region,dim\n";
  for (const auto& e : filtration_order(N, n - m)) {
    out += std::to_string(e.rank) + "," + std::to_string(e.vertex.s) + "," +
           std::to_string(e.vertex.t) + "," + region_name(region_of(e.vertex)) + "," +
           std::to_string(fixed_cell_dimension(e.vertex, m, n)) + "\n";
  }
  return out;
}

inline std::string poincare_csv(int N, int m, int n) {
  std::string out = "dim,count\n";
  auto coeffs = poincare(N, m, n);
  for (size_t d = 0; d < coeffs.size(); ++d) {
    out += std::to_string(d) + "," + std::to_string(coeffs[d]) + "\n";
  }
  return out;
}

inline std::string order_csv(int N, int a) {
  std::string out = "rank,s,t,triangle,stage,sort_key\n";
  for (const auto& e : filtration_order(N, a)) {
    out += std::to_string(e.rank) + "," + std::to_string(e.vertex.s) + "," +
           std::to_string(e.vertex.t) + "," + std::to_string(e.triangle) + "," +
           stage_name(e.stage) + "," + std::to_string(e.sort_key) + "\n";
  }
  return out;
}

}  // namespace apaver::io
