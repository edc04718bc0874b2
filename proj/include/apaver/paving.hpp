#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "apaver/errors.hpp"
#include "apaver/lattice.hpp"

namespace apaver {

// Which of the three movement regions a vertex belongs to.  S collects the
// level-0 types 1/2/3 (s < t, s < 0), T the types 5/6/7 (t < s, t < 0); every
// other vertex sits still and keeps its level-0 orbit as its cell.
enum class Region { S, T, V };

inline char region_name(Region r) {
  switch (r) {
    case Region::S: return 'S';
    case Region::T: return 'T';
    case Region::V: return 'V';
  }
  throw InvalidCombinationError("unhandled region");
}

inline Region region_of(Vertex v) {
  switch (classify(v, 0)) {
    case VertexType::t1:
    case VertexType::t2:
    case VertexType::t3:
      return Region::S;
    case VertexType::t5:
    case VertexType::t6:
    case VertexType::t7:
      return Region::T;
    default:
      return Region::V;
  }
}

// Whether a level-0 representative already is the level-a representative of
// its point.  Types 2/3 and 5/6 never move; a type-1 point moves iff its y
// coordinate has valuation <= a, a type-7 point iff its x coordinate does.
inline bool is_stationary(const StandardForm& M, int a) {
  if (M.a != 0) {
    throw InvalidCombinationError("stationarity is asked of level-0 representatives");
  }
  Region reg = region_of(M.vertex);
  if (reg == Region::V) {
    throw NotApplicableError("stationarity concerns the moving regions S and T only");
  }
  VertexType ty = classify(M.vertex, 0);
  if (ty == VertexType::t2 || ty == VertexType::t3 || ty == VertexType::t5 ||
      ty == VertexType::t6) {
    return true;
  }
  const LaurentSeries& lead =
      ty == VertexType::t1 ? M.coord(Coord::y) : M.coord(Coord::x);
  auto val = lead.valuation();
  return !val.has_value() || *val > a;
}

// Result of one full retraction: the level-a vertex w the point settles at,
// the step count d, and the standard form there.
struct Retraction {
  Vertex target;
  int d = 0;
  StandardForm form;
};

namespace detail {

// Wrap a series whose support must already lie inside the window; unlike a
// truncation this refuses to discard mass, so a construction bug cannot
// vanish quietly.
inline LaurentSeries confine(const LaurentSeries& s, const CoordWindow& w, int prec) {
  for (auto [e, c] : s.support()) {
    (void)c;
    if (e < w.lo || e >= w.hi) {
      throw InvalidCombinationError("coefficient at pi^" + std::to_string(e) +
                                    " escapes window [" + std::to_string(w.lo) + ", " +
                                    std::to_string(w.hi) + ")");
    }
  }
  return s.to_window(w.lo, w.hi, prec);
}

}  // namespace detail

// Move a non-stationary type-1 point to its level-a vertex in one closed-form
// jump.  For v(y) = t - d the point lands at w = (s - d, t - 2d), which is
// type 3 relative to a; the new coordinates are
//   z' = z - [z],  i' = i - [z]/y,  j' = 1/y,
// where [z] keeps the top d coefficients of z, and i', j' are truncated to
// the w windows (the discarded tails are absorbed by the stabilizer).
inline Retraction retract_type1(const StandardForm& M, int a, int prec) {
  if (M.a != 0 || classify(M.vertex, 0) != VertexType::t1) {
    throw NotApplicableError("retract_type1 expects a level-0 type-1 representative");
  }
  const int s = M.vertex.s, t = M.vertex.t;
  const LaurentSeries& y = M.coord(Coord::y);
  auto vy = y.valuation();
  if (!vy.has_value() || *vy > a) {
    throw NotApplicableError("point is stationary; nothing to retract");
  }
  const int d = t - *vy;
  Vertex w{s - d, t - 2 * d};
  PrimeField f = y.field();

  const LaurentSeries& z = M.coord(Coord::z);
  const LaurentSeries& i = M.coord(Coord::i);
  LaurentSeries z_top = z.slice(t - s - d, t - s);
  LaurentSeries y_inv = invert_unit(y);

  WindowSet wws = windows(w, a);
  StandardForm out = make_zero_form(w, a, wws, f, prec);
  const CoordWindow& wi = window_for(wws, Coord::i);
  const CoordWindow& wj = window_for(wws, Coord::j);
  const CoordWindow& wz = window_for(wws, Coord::z);
  out.coord(Coord::z) = detail::confine(z - z_top, wz, prec);
  out.coord(Coord::i) = (i - z_top * y_inv).to_window(wi.lo, wi.hi, prec);
  out.coord(Coord::j) = y_inv.to_window(wj.lo, wj.hi, prec);
  return Retraction{w, d, std::move(out)};
}

// Mirror image of retract_type1 for type-7 points: v(x) = s - d lands at
// w = (s - 2d, t - d) of type 5, with
//   k' = k - [k],  j' = j - [k]/x,  i' = 1/x.
inline Retraction retract_type7(const StandardForm& M, int a, int prec) {
  if (M.a != 0 || classify(M.vertex, 0) != VertexType::t7) {
    throw NotApplicableError("retract_type7 expects a level-0 type-7 representative");
  }
  const int s = M.vertex.s, t = M.vertex.t;
  const LaurentSeries& x = M.coord(Coord::x);
  auto vx = x.valuation();
  if (!vx.has_value() || *vx > a) {
    throw NotApplicableError("point is stationary; nothing to retract");
  }
  const int d = s - *vx;
  Vertex w{s - 2 * d, t - d};
  PrimeField f = x.field();

  const LaurentSeries& k = M.coord(Coord::k);
  const LaurentSeries& j = M.coord(Coord::j);
  LaurentSeries k_top = k.slice(s - t - d, s - t);
  LaurentSeries x_inv = invert_unit(x);

  WindowSet wws = windows(w, a);
  StandardForm out = make_zero_form(w, a, wws, f, prec);
  const CoordWindow& wi = window_for(wws, Coord::i);
  const CoordWindow& wj = window_for(wws, Coord::j);
  const CoordWindow& wk = window_for(wws, Coord::k);
  out.coord(Coord::k) = detail::confine(k - k_top, wk, prec);
  out.coord(Coord::j) = (j - k_top * x_inv).to_window(wj.lo, wj.hi, prec);
  out.coord(Coord::i) = x_inv.to_window(wi.lo, wi.hi, prec);
  return Retraction{w, d, std::move(out)};
}

// One cell of the level-a paving.  V-region cells are plain level-0 orbits;
// S and T cells collect the stationary locus of the vertex's own orbit plus
// everything retracted onto it, which widens exactly one window.
struct CellDescriptor {
  Vertex vertex;
  Region region = Region::V;
  int a = 0;
  WindowSet window_set;
  int dimension = 0;

  // The stabilizer level the cell's forms live at.
  int level() const { return region == Region::V ? 0 : a; }
};

inline CellDescriptor cell(Vertex v, int a) {
  if (a < 0) throw InvalidCombinationError("level a must be nonnegative, got " + std::to_string(a));
  CellDescriptor d;
  d.vertex = v;
  d.region = region_of(v);
  d.a = a;
  const int s = v.s, t = v.t;
  if (d.region == Region::V) {
    d.window_set = windows(v, 0);
  } else if (d.region == Region::S) {
    WindowSet ws;
    for (Coord c : kAllCoords) ws[static_cast<size_t>(c)] = CoordWindow(c, 0, 0);
    auto set = [&](Coord c, int lo, int hi) { ws[static_cast<size_t>(c)] = CoordWindow(c, lo, hi); };
    switch (classify(v, a)) {
      case VertexType::t1:
        set(Coord::i, 0, -s);
        set(Coord::y, a + 1, t);
        set(Coord::z, 1, t - s);
        break;
      case VertexType::t2:
        set(Coord::i, 0, -s);
        set(Coord::z, 1, t - s);
        break;
      case VertexType::t3: {
        const int X = std::min(a, t - s - 1);
        set(Coord::i, 0, -s);
        set(Coord::j, -X, -t);
        set(Coord::z, 1, t - s);
        break;
      }
      default:
        throw InvalidCombinationError("S-region vertex " + v.to_string() +
                                      " classifies outside types 1/2/3 at level " +
                                      std::to_string(a));
    }
    d.window_set = ws;
  } else {
    WindowSet ws;
    for (Coord c : kAllCoords) ws[static_cast<size_t>(c)] = CoordWindow(c, 0, 0);
    auto set = [&](Coord c, int lo, int hi) { ws[static_cast<size_t>(c)] = CoordWindow(c, lo, hi); };
    switch (classify(v, a)) {
      case VertexType::t7:
        set(Coord::j, 0, -t);
        set(Coord::k, 0, s - t);
        set(Coord::x, a + 1, s);
        break;
      case VertexType::t6:
        set(Coord::j, 0, -t);
        set(Coord::k, 0, s - t);
        break;
      case VertexType::t5: {
        const int X = std::min(a, s - t - 1);
        set(Coord::i, -X, -s);
        set(Coord::j, 0, -t);
        set(Coord::k, 0, s - t);
        break;
      }
      default:
        throw InvalidCombinationError("T-region vertex " + v.to_string() +
                                      " classifies outside types 5/6/7 at level " +
                                      std::to_string(a));
    }
    d.window_set = ws;
  }
  d.dimension = window_dimension(d.window_set);
  return d;
}

inline OrbitEnumerator enumerate_cell(const CellDescriptor& d, PrimeField f, int prec,
                                      std::uint64_t budget = default_budget()) {
  return OrbitEnumerator(d.vertex, d.level(), d.window_set, f, prec, budget);
}

// Index of the smallest triangle Delta_i containing the vertex: Delta_i has
// corners (i, 0), (0, i), (-i, -i).
inline int triangle_index(Vertex v) {
  return std::max({v.s + v.t, v.t - 2 * v.s, v.s - 2 * v.t});
}

inline std::array<Vertex, 3> triangle_corners(int i) {
  return {Vertex{i, 0}, Vertex{0, i}, Vertex{-i, -i}};
}

// The 3i vertices with triangle index exactly i (i >= 1), or the base point
// for i = 0.  Returned sorted for deterministic sweeps.
inline std::vector<Vertex> ring_vertices(int i) {
  if (i < 0) throw InvalidCombinationError("triangle index must be nonnegative");
  if (i == 0) return {Vertex{0, 0}};
  std::vector<Vertex> out;
  for (auto c : triangle_corners(i)) out.push_back(c);
  for (int k = 1; k < i; ++k) {
    out.push_back(Vertex{i - k, k});        // edge (i,0) -- (0,i)
    out.push_back(Vertex{-k, i - 2 * k});   // edge (0,i) -- (-i,-i)
    out.push_back(Vertex{i - 2 * k, -k});   // edge (-i,-i) -- (i,0)
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Vertex> triangle_vertices(int N) {
  std::vector<Vertex> out;
  for (int i = 0; i <= N; ++i) {
    auto ring = ring_vertices(i);
    out.insert(out.end(), ring.begin(), ring.end());
  }
  return out;
}

// Position of a vertex inside the three-stage sweep of its ring.
enum class Stage { base, one, two, three };

inline std::string stage_name(Stage st) {
  switch (st) {
    case Stage::base: return "base";
    case Stage::one: return "i";
    case Stage::two: return "ii";
    case Stage::three: return "iii";
  }
  throw InvalidCombinationError("unhandled stage");
}

struct FiltrationEntry {
  Vertex vertex;
  int triangle = 0;
  Stage stage = Stage::base;
  int rank = 0;
  int sort_key = 0;  // the orbit dimension the stage sorts by
};

// Total order on the vertices of Delta_N used to attach cells one at a time:
// base point first, then ring by ring; inside ring i first the interior of
// the edge (i,0)--(0,i) by level-0 orbit dimension, then the interiors of the
// other two edges by level-a orbit dimension, then the three corners by
// level-0 orbit dimension.  Ties break lexicographically by (s, t).
inline std::vector<FiltrationEntry> filtration_order(int N, int a) {
  if (N < 0) throw InvalidCombinationError("triangle index must be nonnegative");
  std::vector<FiltrationEntry> out;
  out.push_back(FiltrationEntry{Vertex{0, 0}, 0, Stage::base, 0, 0});
  auto append_sorted = [&](std::vector<Vertex> vs, int ring, Stage st, int level) {
    std::vector<std::pair<int, Vertex>> keyed;
    for (Vertex v : vs) keyed.emplace_back(orbit_dimension(v, level), v);
    std::sort(keyed.begin(), keyed.end());
    for (auto& [key, v] : keyed) {
      out.push_back(FiltrationEntry{v, ring, st, static_cast<int>(out.size()), key});
    }
  };
  for (int i = 1; i <= N; ++i) {
    std::vector<Vertex> edge_ab, edge_rest;
    for (int k = 1; k < i; ++k) {
      edge_ab.push_back(Vertex{i - k, k});
      edge_rest.push_back(Vertex{-k, i - 2 * k});
      edge_rest.push_back(Vertex{i - 2 * k, -k});
    }
    append_sorted(std::move(edge_ab), i, Stage::one, 0);
    append_sorted(std::move(edge_rest), i, Stage::two, a);
    auto cs = triangle_corners(i);
    append_sorted(std::vector<Vertex>(cs.begin(), cs.end()), i, Stage::three, 0);
  }
  return out;
}

}  // namespace apaver
