#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apaver/errors.hpp"
#include "apaver/series.hpp"

namespace apaver {

// A vertex (s, t) of the standard apartment, i.e. the lattice class of
// diag(1, pi^s, pi^t).
struct Vertex {
  int s = 0;
  int t = 0;
  auto operator<=>(const Vertex&) const = default;
  std::string to_string() const {
    return "(" + std::to_string(s) + ", " + std::to_string(t) + ")";
  }
};

// The thirteen classes a vertex can fall into relative to the level a:
// twelve sectors plus the base point s = t = a.
enum class VertexType : int {
  base_point = 0,
  t1 = 1, t2 = 2, t3 = 3, t4 = 4, t5 = 5, t6 = 6,
  t7 = 7, t8 = 8, t9 = 9, t10 = 10, t11 = 11, t12 = 12,
};

inline int type_code(VertexType ty) { return static_cast<int>(ty); }

inline VertexType classify(Vertex v, int a) {
  if (a < 0) throw InvalidCombinationError("level a must be nonnegative, got " + std::to_string(a));
  const int s = v.s, t = v.t;
  if (s == t && t == a) return VertexType::base_point;
  if (s < t) {
    if (a < s) return VertexType::t11;
    if (a == s) return VertexType::t12;
    if (a < t) return VertexType::t1;
    if (a == t) return VertexType::t2;
    return VertexType::t3;
  }
  if (t < s) {
    if (a < t) return VertexType::t9;
    if (a == t) return VertexType::t8;
    if (a < s) return VertexType::t7;
    if (a == s) return VertexType::t6;
    return VertexType::t5;
  }
  // s == t != a
  return s < a ? VertexType::t4 : VertexType::t10;
}

// The six unipotent coordinates, in the fixed order used everywhere
// (enumeration, serialization, matrix placement).
enum class Coord : int { i = 0, j = 1, k = 2, x = 3, y = 4, z = 5 };

inline constexpr std::array<Coord, 6> kAllCoords = {Coord::i, Coord::j, Coord::k,
                                                    Coord::x, Coord::y, Coord::z};

inline char coord_name(Coord c) { return "ijkxyz"[static_cast<int>(c)]; }

// Half-open exponent window [lo, hi) for one coordinate.  An empty window
// means the coordinate is identically zero; it is normalized to [0, 0) so
// window equality is semantic.
struct CoordWindow {
  Coord coord = Coord::i;
  int lo = 0;
  int hi = 0;

  CoordWindow() = default;
  CoordWindow(Coord c, int lo_, int hi_) : coord(c), lo(lo_), hi(hi_) {
    if (hi <= lo) {
      lo = 0;
      hi = 0;
    }
  }
  int length() const { return hi - lo; }
  bool empty() const { return hi <= lo; }
  auto operator<=>(const CoordWindow&) const = default;
};

using WindowSet = std::array<CoordWindow, 6>;

inline const CoordWindow& window_for(const WindowSet& ws, Coord c) {
  return ws[static_cast<size_t>(c)];
}

// Coordinate windows of the level-a orbit representative at v: which
// coefficients of which unipotent entries parameterize the orbit.
inline WindowSet windows(Vertex v, int a) {
  WindowSet ws;
  for (Coord c : kAllCoords) ws[static_cast<size_t>(c)] = CoordWindow(c, 0, 0);
  const int s = v.s, t = v.t;
  auto set = [&](Coord c, int lo, int hi) { ws[static_cast<size_t>(c)] = CoordWindow(c, lo, hi); };
  switch (classify(v, a)) {
    case VertexType::base_point:
      break;
    case VertexType::t1:
      set(Coord::i, -a, -s);
      set(Coord::y, a + 1, t);
      set(Coord::z, 1, t - s);
      break;
    case VertexType::t2:
      set(Coord::i, -a, -s);
      set(Coord::z, 1, t - s);
      break;
    case VertexType::t3:
      set(Coord::i, -a, -s);
      set(Coord::j, -a, -t);
      set(Coord::z, 1, t - s);
      break;
    case VertexType::t4:
      set(Coord::i, -a, -s);
      set(Coord::j, -a, -t);
      break;
    case VertexType::t5:
      set(Coord::i, -a, -s);
      set(Coord::j, -a, -t);
      set(Coord::k, 0, s - t);
      break;
    case VertexType::t6:
      set(Coord::j, -a, -t);
      set(Coord::k, 0, s - t);
      break;
    case VertexType::t7:
      set(Coord::j, -a, -t);
      set(Coord::k, 0, s - t);
      set(Coord::x, a + 1, s);
      break;
    case VertexType::t8:
      set(Coord::k, 0, s - t);
      set(Coord::x, a + 1, s);
      break;
    case VertexType::t9:
      set(Coord::k, 0, s - t);
      set(Coord::x, a + 1, s);
      set(Coord::y, a + 1, t);
      break;
    case VertexType::t10:
      set(Coord::x, a + 1, s);
      set(Coord::y, a + 1, t);
      break;
    case VertexType::t11:
      set(Coord::x, a + 1, s);
      set(Coord::y, a + 1, t);
      set(Coord::z, 1, t - s);
      break;
    case VertexType::t12:
      set(Coord::y, a + 1, t);
      set(Coord::z, 1, t - s);
      break;
  }
  return ws;
}

inline int window_dimension(const WindowSet& ws) {
  int d = 0;
  for (const auto& w : ws) d += w.length();
  return d;
}

inline int orbit_dimension(Vertex v, int a) { return window_dimension(windows(v, a)); }

// A unipotent coset representative at a vertex: the matrix
//   [ 1  i  j ]
//   [ x  1  k ]
//   [ y  z  1 ]
// with each coordinate a polynomial supported on its window.  For every
// vertex type at most three coordinates are active and the determinant is
// exactly 1.
struct StandardForm {
  Vertex vertex;
  int a = 0;
  std::array<LaurentSeries, 6> coords;

  const LaurentSeries& coord(Coord c) const { return coords[static_cast<size_t>(c)]; }
  LaurentSeries& coord(Coord c) { return coords[static_cast<size_t>(c)]; }

  // Canonical content key: vertex plus the support of every coordinate.
  // Two forms get the same key iff they agree as tracked series.
  std::string key() const {
    std::string out = std::to_string(vertex.s) + "," + std::to_string(vertex.t);
    for (Coord c : kAllCoords) {
      out += '|';
      for (auto [e, cf] : coord(c).support()) {
        out += std::to_string(e) + ":" + std::to_string(cf) + ";";
      }
    }
    return out;
  }
};

inline StandardForm make_zero_form(Vertex v, int a, const WindowSet& ws, PrimeField f, int prec) {
  StandardForm m;
  m.vertex = v;
  m.a = a;
  for (Coord c : kAllCoords) {
    const CoordWindow& w = window_for(ws, c);
    m.coord(c) = w.empty() ? LaurentSeries::zero(f, prec)
                           : LaurentSeries(f, w.lo, prec);
  }
  return m;
}

// 3x3 matrix of truncated series, row-major, 0-indexed entries.
struct SeriesMatrix {
  std::array<LaurentSeries, 9> e;

  const LaurentSeries& at(int r, int c) const { return e[static_cast<size_t>(3 * r + c)]; }
  LaurentSeries& at(int r, int c) { return e[static_cast<size_t>(3 * r + c)]; }

  static SeriesMatrix identity(PrimeField f, int prec) {
    SeriesMatrix m;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        m.at(r, c) = r == c ? LaurentSeries::one(f, prec) : LaurentSeries::zero(f, prec);
      }
    }
    return m;
  }

  friend SeriesMatrix operator*(const SeriesMatrix& A, const SeriesMatrix& B) {
    SeriesMatrix C;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        LaurentSeries acc = A.at(r, 0) * B.at(0, c);
        acc = acc + A.at(r, 1) * B.at(1, c);
        acc = acc + A.at(r, 2) * B.at(2, c);
        C.at(r, c) = acc;
      }
    }
    return C;
  }

  LaurentSeries det() const {
    auto m2 = [&](int r0, int c0, int r1, int c1) {
      return at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
    };
    return at(0, 0) * m2(1, 1, 2, 2) - at(0, 1) * m2(1, 0, 2, 2) + at(0, 2) * m2(1, 0, 2, 1);
  }

  // Inverse via the adjugate, valid because every standard form has
  // determinant exactly 1; that is verified, not assumed.
  SeriesMatrix unimodular_inverse() const {
    LaurentSeries d = det();
    if (d.prec() <= 0) {
      throw PrecisionExhaustedError("determinant window too small to certify det = 1");
    }
    LaurentSeries one = LaurentSeries::one(d.field(), d.prec());
    if (!(d == one)) {
      throw InvalidCombinationError("matrix determinant is not 1: " + d.to_string());
    }
    SeriesMatrix adj;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        int r0 = (c + 1) % 3, r1 = (c + 2) % 3;
        int c0 = (r + 1) % 3, c1 = (r + 2) % 3;
        // adj(r,c) = cofactor(c,r); the cyclic index choice bakes in the sign.
        adj.at(r, c) = at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
      }
    }
    return adj;
  }
};

inline SeriesMatrix matrix_of(const StandardForm& m) {
  PrimeField f = m.coord(Coord::i).field();
  int prec = m.coord(Coord::i).prec();
  for (Coord c : kAllCoords) prec = std::min(prec, m.coord(c).prec());
  SeriesMatrix M = SeriesMatrix::identity(f, prec);
  M.at(0, 1) = m.coord(Coord::i);
  M.at(0, 2) = m.coord(Coord::j);
  M.at(1, 2) = m.coord(Coord::k);
  M.at(1, 0) = m.coord(Coord::x);
  M.at(2, 0) = m.coord(Coord::y);
  M.at(2, 1) = m.coord(Coord::z);
  return M;
}

// One entrywise valuation constraint of a membership pattern.
struct EntryConstraint {
  enum class Kind { any, min_val, unit };
  Kind kind = Kind::any;
  int bound = 0;

  static EntryConstraint at_least(int b) { return {Kind::min_val, b}; }
  static EntryConstraint unit() { return {Kind::unit, 0}; }
  auto operator<=>(const EntryConstraint&) const = default;
};

struct ValuationPattern {
  std::array<EntryConstraint, 9> e;

  const EntryConstraint& at(int r, int c) const { return e[static_cast<size_t>(3 * r + c)]; }
  EntryConstraint& at(int r, int c) { return e[static_cast<size_t>(3 * r + c)]; }
  auto operator<=>(const ValuationPattern&) const = default;
};

// The level-a Iwahori subgroup I^a = diag(1, pi^a, pi^a) I diag(1, pi^-a, pi^-a).
inline ValuationPattern iwahori_pattern(int a) {
  if (a < 0) throw InvalidCombinationError("level a must be nonnegative, got " + std::to_string(a));
  ValuationPattern p;
  for (int d = 0; d < 3; ++d) p.at(d, d) = EntryConstraint::unit();
  p.at(0, 1) = EntryConstraint::at_least(-a);
  p.at(0, 2) = EntryConstraint::at_least(-a);
  p.at(1, 0) = EntryConstraint::at_least(a + 1);
  p.at(1, 2) = EntryConstraint::at_least(0);
  p.at(2, 0) = EntryConstraint::at_least(a + 1);
  p.at(2, 1) = EntryConstraint::at_least(1);
  return p;
}

// x_v K x_v^{-1} for x_v = diag(1, pi^s, pi^t): entry (r,c) has valuation
// at least d_r - d_c with (d_1, d_2, d_3) = (0, s, t).
inline ValuationPattern vertex_conjugate_pattern(Vertex v) {
  ValuationPattern p;
  const int d[3] = {0, v.s, v.t};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) p.at(r, c) = EntryConstraint::at_least(d[r] - d[c]);
  }
  return p;
}

// Stabilizer I^a_{(s,t)} = I^a  intersect  x_v K x_v^{-1}: off-diagonal
// bounds combine by max, diagonal entries stay units.
inline ValuationPattern stabilizer_pattern(Vertex v, int a) {
  ValuationPattern iw = iwahori_pattern(a);
  ValuationPattern cj = vertex_conjugate_pattern(v);
  ValuationPattern p;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (r == c) {
        p.at(r, c) = EntryConstraint::unit();
      } else {
        p.at(r, c) = EntryConstraint::at_least(std::max(iw.at(r, c).bound, cj.at(r, c).bound));
      }
    }
  }
  return p;
}

// Valuation bounds for pi^{-d} x_v K x_w^{-1}: entry (r,c) has valuation at
// least dv_r - dw_c - d.  This is the coset-equality certificate a retraction
// step must satisfy: M at v and M' at w name the same point iff
// M^{-1} M' lies in this set.
inline ValuationPattern transport_pattern(Vertex v, Vertex w, int d) {
  ValuationPattern p;
  const int dv[3] = {0, v.s, v.t};
  const int dw[3] = {0, w.s, w.t};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) p.at(r, c) = EntryConstraint::at_least(dv[r] - dw[c] - d);
  }
  return p;
}

// Tri-state entry check: satisfied / violated / not decidable at this window.
inline std::optional<bool> entry_satisfies(const LaurentSeries& s, const EntryConstraint& c) {
  switch (c.kind) {
    case EntryConstraint::Kind::any:
      return true;
    case EntryConstraint::Kind::min_val: {
      if (!s.valuation_at_least(std::min(c.bound, s.prec()))) return false;
      if (c.bound > s.prec()) return std::nullopt;
      return true;
    }
    case EntryConstraint::Kind::unit: {
      if (!s.valuation_at_least(std::min(0, s.prec()))) return false;
      if (s.prec() <= 0) return std::nullopt;
      return s.coeff(0) != 0;
    }
  }
  throw InvalidCombinationError("unhandled entry constraint kind");
}

// Entrywise membership.  A certain violation wins over an undecidable entry;
// if nothing is violated but some entry cannot be decided, that is loud.
inline bool pattern_member(const SeriesMatrix& M, const ValuationPattern& p) {
  bool undecided = false;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      auto ok = entry_satisfies(M.at(r, c), p.at(r, c));
      if (ok.has_value() && !*ok) return false;
      if (!ok.has_value()) undecided = true;
    }
  }
  if (undecided) {
    throw PrecisionExhaustedError("pattern membership not decidable at this precision");
  }
  return true;
}

// Enumeration point budget: APAVER_BUDGET in the environment, default 2^24.
inline std::uint64_t default_budget() {
  static const std::uint64_t cached = [] {
    if (const char* env = std::getenv("APAVER_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != nullptr && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{1} << 24;
  }();
  return cached;
}

// Streams the q^dim coordinate tuples of a window set as standard forms, in
// lexicographic order over the coefficient slots (coordinates in i..z order,
// exponents ascending, last slot varying fastest).
class OrbitEnumerator {
 public:
  OrbitEnumerator(Vertex v, int a, const WindowSet& ws, PrimeField f, int prec,
                  std::uint64_t budget = default_budget())
      : v_(v), a_(a), ws_(ws), f_(f), prec_(prec) {
    for (Coord c : kAllCoords) {
      const CoordWindow& w = window_for(ws, c);
      for (int e = w.lo; e < w.hi; ++e) slots_.emplace_back(c, e);
    }
    size_ = 1;
    for (size_t s = 0; s < slots_.size(); ++s) {
      if (size_ > budget / static_cast<std::uint64_t>(f.q)) {
        throw BudgetExceededError("enumeration of " + std::to_string(f.q) + "^" +
                                  std::to_string(slots_.size()) + " points at " + v.to_string() +
                                  " exceeds budget " + std::to_string(budget));
      }
      size_ *= static_cast<std::uint64_t>(f.q);
    }
    places_.assign(slots_.size(), 1);
    for (size_t s = slots_.size(); s-- > 1;) {
      places_[s - 1] = places_[s] * static_cast<std::uint64_t>(f.q);
    }
  }

  std::uint64_t size() const { return size_; }
  int dimension() const { return static_cast<int>(slots_.size()); }
  const WindowSet& window_set() const { return ws_; }

  StandardForm form(std::uint64_t index) const {
    if (index >= size_) {
      throw WindowViolationError("enumeration index " + std::to_string(index) + " out of range");
    }
    StandardForm m = make_zero_form(v_, a_, ws_, f_, prec_);
    // Big-endian digit decomposition makes increasing index = lexicographic
    // order on the slot tuple.
    std::uint64_t rem = index;
    for (size_t s = 0; s < slots_.size(); ++s) {
      int digit = static_cast<int>(rem / places_[s]);
      rem %= places_[s];
      m.coord(slots_[s].first).set_coeff(slots_[s].second, digit);
    }
    return m;
  }

 private:
  Vertex v_;
  int a_;
  WindowSet ws_;
  PrimeField f_;
  int prec_;
  std::vector<std::pair<Coord, int>> slots_;
  std::vector<std::uint64_t> places_;
  std::uint64_t size_ = 1;
};

inline OrbitEnumerator enumerate_orbit(Vertex v, int a, PrimeField f, int prec,
                                       std::uint64_t budget = default_budget()) {
  return OrbitEnumerator(v, a, windows(v, a), f, prec, budget);
}

}  // namespace apaver
