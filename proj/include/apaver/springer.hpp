#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apaver/errors.hpp"
#include "apaver/lattice.hpp"
#include "apaver/paving.hpp"
#include "apaver/series.hpp"

namespace apaver {

// A regular split compact element gamma = diag(u1, u2, u3), normalized so
// that v(1 - u1/u2) = v(1 - u1/u3) = m and v(1 - u2/u3) = n with m <= n.
struct SplitElement {
  LaurentSeries u1, u2, u3;
  int m = 0;
  int n = 0;

  int a() const { return n - m; }
  PrimeField field() const { return u1.field(); }
  int prec() const { return u1.prec(); }
};

// Explains why no split element with the requested valuations exists over
// F_q, or nullopt if one does.  These are the only obstructions; the
// exhaustive constructor search in make_gamma double-checks that claim.
inline std::optional<std::string> gamma_infeasibility_reason(int m, int n, int q) {
  if (m < 0 || n < m) throw InvalidCombinationError("need 0 <= m <= n");
  if (q == 2 && m == 0) {
    return std::string("every unit of F_2[[pi]] has constant term 1, so v(1 - u1/u2) >= 1 "
                       "and m = 0 is unreachable over F_2");
  }
  if (m == 0 && n == 0 && q < 5) {
    return std::string("m = n = 0 needs three pairwise-distinct unit constant terms, "
                       "so q - 1 >= 3");
  }
  if (m == n && q == 2) {
    return std::string("over F_2 the pi^m coefficients of u2 - 1 and u3 - 1 are both forced "
                       "to 1, so v(u3 - u2) > m and n = m is unreachable");
  }
  return std::nullopt;
}

// Builds gamma by searching scalars c2, c3 in F_q^*: u2 = 1 + c2 pi^m,
// u3 = u2 (1 + c3 pi^n).  Each candidate's three valuations are recomputed
// from scratch and asserted; the first candidate that passes wins, so the
// result is deterministic.  If every pair fails the requested profile is
// unrealizable over this field.
inline SplitElement make_gamma(int m, int n, PrimeField f, int prec) {
  if (m < 0 || n < m) throw InvalidCombinationError("need 0 <= m <= n");
  if (prec < n + 2) {
    throw InvalidCombinationError("precision " + std::to_string(prec) +
                                  " too small to certify valuations up to n = " +
                                  std::to_string(n));
  }
  LaurentSeries one = LaurentSeries::one(f, prec);
  for (int c2 = 1; c2 < f.q; ++c2) {
    for (int c3 = 1; c3 < f.q; ++c3) {
      LaurentSeries u2 = one + LaurentSeries::monomial(f, c2, m, prec);
      LaurentSeries u3 = u2 * (one + LaurentSeries::monomial(f, c3, n, prec));
      if (u2.valuation() != std::optional<int>(0) || u3.valuation() != std::optional<int>(0)) {
        continue;  // not a unit; try the next scalars
      }
      auto v12 = (one - one * invert_unit(u2)).valuation();
      auto v13 = (one - one * invert_unit(u3)).valuation();
      auto v23 = (one - u2 * invert_unit(u3)).valuation();
      if (v12 == std::optional<int>(m) && v13 == std::optional<int>(m) &&
          v23 == std::optional<int>(n)) {
        return SplitElement{one, u2, u3, m, n};
      }
    }
  }
  std::string why = "no (c2, c3) in F_" + std::to_string(f.q) +
                    "^* realizes valuations (m, m, n) = (" + std::to_string(m) + ", " +
                    std::to_string(m) + ", " + std::to_string(n) + ")";
  if (auto reason = gamma_infeasibility_reason(m, n, f.q)) why += ": " + *reason;
  throw ValuationMismatchError(why);
}

// Decides whether a point of the paving lies on the fixed-point locus of
// gamma: M is fixed iff M^{-1} (gamma M gamma^{-1}) lies in the stabilizer
// of the cell's vertex at the cell's level.  Caches the nine entry ratios
// u_r/u_c so sweeps do not refactor gamma per point.
class FixedPointTester {
 public:
  explicit FixedPointTester(const SplitElement& g) : g_(g) {
    const LaurentSeries* u[3] = {&g.u1, &g.u2, &g.u3};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        ratios_.at(r, c) = r == c ? LaurentSeries::one(g.field(), g.prec())
                                  : (*u[r]) * invert_unit(*u[c]);
      }
    }
  }

  const SplitElement& gamma() const { return g_; }

  bool is_fixed(const StandardForm& M) const {
    const int level = region_of(M.vertex) == Region::V ? 0 : g_.a();
    if (M.a != level) {
      throw InvalidCombinationError("form at " + M.vertex.to_string() + " carries level " +
                                    std::to_string(M.a) + " but the paving needs level " +
                                    std::to_string(level));
    }
    SeriesMatrix mat = matrix_of(M);
    SeriesMatrix conj;  // gamma M gamma^{-1}
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) conj.at(r, c) = mat.at(r, c) * ratios_.at(r, c);
    }
    return pattern_member(mat.unimodular_inverse() * conj, stabilizer_pattern(M.vertex, level));
  }

 private:
  SplitElement g_;
  SeriesMatrix ratios_;
};

inline bool is_fixed(const StandardForm& M, const SplitElement& g) {
  return FixedPointTester(g).is_fixed(M);
}

inline bool is_fixed(const StandardForm& M, const SplitElement& g, Region region) {
  if (region != region_of(M.vertex)) {
    throw InvalidCombinationError("vertex " + M.vertex.to_string() + " is not in the region "
                                  "named by the caller");
  }
  return is_fixed(M, g);
}

// The per-type fixed-cell dimension formulas, kept as explicit term lists so
// each min(...) summand can be addressed (and deliberately mutated) on its
// own.  Dispatch: V-region vertices by their level-0 type, S/T vertices by
// their type relative to a = n - m.  The base point has no terms.
struct DimensionTerms {
  VertexType dispatch = VertexType::base_point;
  std::vector<int> terms;
};

inline int formula_term_count(VertexType ty) {
  switch (ty) {
    case VertexType::t1: case VertexType::t3: case VertexType::t5:
    case VertexType::t7: case VertexType::t9: case VertexType::t11:
      return 3;
    case VertexType::t2: case VertexType::t4: case VertexType::t6:
    case VertexType::t8: case VertexType::t10: case VertexType::t12:
      return 2;
    case VertexType::base_point:
      return 0;
  }
  throw InvalidCombinationError("unhandled vertex type");
}

inline std::optional<DimensionTerms> dimension_terms(Vertex v, int m, int n) {
  if (m < 0 || n < m) throw InvalidCombinationError("need 0 <= m <= n");
  const int a = n - m, s = v.s, t = v.t;
  const Region reg = region_of(v);
  const VertexType ty = reg == Region::V ? classify(v, 0) : classify(v, a);
  DimensionTerms out;
  out.dispatch = ty;
  switch (ty) {
    case VertexType::base_point:
      return std::nullopt;
    // --- still vertices, level-0 types ---
    case VertexType::t4:
      out.terms = {std::min(m, -s), std::min(m, -t)};
      break;
    case VertexType::t8:
      out.terms = {std::min(m, s - 1), std::min(n, s - t)};
      break;
    case VertexType::t9:
      out.terms = {std::min(n, s - t), std::min(m, t - 1), std::min(m, s - 1)};
      break;
    case VertexType::t10:
      out.terms = {std::min(m, s - 1), std::min(m, t - 1)};
      break;
    case VertexType::t11:
      out.terms = {std::min(n, t - s - 1), std::min(m, s - 1), std::min(m, t - 1)};
      break;
    case VertexType::t12:
      out.terms = {std::min(n, t - s - 1), std::min(m, t - 1)};
      break;
    // --- S-region vertices, types relative to a ---
    case VertexType::t1:
      out.terms = {std::min(m, -s), std::min(m, t - (a + 1)), std::min(n, t - s - 1)};
      break;
    case VertexType::t2:
      out.terms = {std::min(m, -s), std::min(n, t - s - 1)};
      break;
    case VertexType::t3:
      out.terms = {std::min(m, -s), std::min(n, t - s - 1), std::min({m, a - t, -s - 1})};
      break;
    // --- T-region vertices, types relative to a ---
    case VertexType::t7:
      out.terms = {std::min(m, -t), std::min(m, s - (a + 1)), std::min(n, s - t)};
      break;
    case VertexType::t6:
      out.terms = {std::min(m, -t), std::min(n, s - t)};
      break;
    case VertexType::t5:
      out.terms = {std::min(m, -t), std::min(n, s - t), std::min({m, a - s, -t - 1})};
      break;
  }
  for (int term : out.terms) {
    if (term < 0) {
      throw InvalidCombinationError("negative dimension term at " + v.to_string() +
                                    " for (m, n) = (" + std::to_string(m) + ", " +
                                    std::to_string(n) + "); dispatch is inconsistent");
    }
  }
  return out;
}

inline int fixed_cell_dimension(Vertex v, int m, int n) {
  auto dt = dimension_terms(v, m, n);
  if (!dt) return 0;
  int sum = 0;
  for (int term : dt->terms) sum += term;
  return sum;
}

inline int fixed_cell_dimension(Vertex v, const SplitElement& g) {
  return fixed_cell_dimension(v, g.m, g.n);
}

// Handle to one summand of one per-type formula, for sensitivity testing.
struct TermRef {
  VertexType dispatch = VertexType::base_point;
  int index = 0;
  auto operator<=>(const TermRef&) const = default;
};

inline std::vector<TermRef> all_formula_terms() {
  std::vector<TermRef> out;
  for (int code = 1; code <= 12; ++code) {
    VertexType ty = static_cast<VertexType>(code);
    for (int idx = 0; idx < formula_term_count(ty); ++idx) out.push_back(TermRef{ty, idx});
  }
  return out;
}

// The formula value with one summand shifted by delta wherever the vertex
// dispatches to ref's type.  May go negative; the caller treats a negative
// dimension as "no such cell size".
inline int fixed_cell_dimension_mutated(Vertex v, int m, int n, TermRef ref, int delta) {
  auto dt = dimension_terms(v, m, n);
  if (!dt) return 0;
  int sum = 0;
  for (size_t idx = 0; idx < dt->terms.size(); ++idx) {
    int term = dt->terms[idx];
    if (dt->dispatch == ref.dispatch && static_cast<int>(idx) == ref.index) term += delta;
    sum += term;
  }
  return sum;
}

// Closed-form description of the fixed locus inside one cell: every
// coordinate keeps a (possibly clipped) window of free coefficients, and in
// the three-coordinate cases one coordinate is pinned to
//   factor * (product of the two free coordinates)
// up to a free tail window.
struct FreeCoordinate {
  Coord coord = Coord::i;
  int lo = 0;
  int hi = 0;
  int length() const { return hi > lo ? hi - lo : 0; }
};

struct DeterminedCoordinate {
  Coord coord = Coord::i;
  Coord dep_a = Coord::i;
  Coord dep_b = Coord::i;
  LaurentSeries factor;
  CoordWindow window;    // the coordinate's full cell window
  FreeCoordinate tail;   // residual freedom on top of the determined part
};

struct CellParameterization {
  Vertex vertex;
  Region region = Region::V;
  int a = 0;
  std::vector<FreeCoordinate> free;
  std::optional<DeterminedCoordinate> determined;

  int dimension() const {
    int d = 0;
    for (const auto& fc : free) d += fc.length();
    if (determined) d += determined->tail.length();
    return d;
  }
};

inline CellParameterization fixed_cell_parameterization(Vertex v, const SplitElement& g) {
  const int m = g.m, n = g.n, a = g.a(), s = v.s, t = v.t;
  CellParameterization out;
  out.vertex = v;
  out.region = region_of(v);
  out.a = a;
  auto dt = dimension_terms(v, m, n);
  if (!dt) return out;  // base point: the single reduced point

  PrimeField f = g.field();
  const int prec = g.prec();
  LaurentSeries one = LaurentSeries::one(f, prec);
  auto ratio = [&](const LaurentSeries& num, const LaurentSeries& den) {
    return num * invert_unit(den);
  };
  // factor = -(1 - u_p/u_q) / (u_r/u_q - 1), assembled per case below.
  auto factor_of = [&](const LaurentSeries& up, const LaurentSeries& ur,
                       const LaurentSeries& uq) {
    return -(one - ratio(up, uq)) * invert_unit(ratio(ur, uq) - one);
  };
  const CellDescriptor cd = cell(v, a);
  auto win = [&](Coord c) { return window_for(cd.window_set, c); };
  auto free_part = [&](Coord c, int lo) {
    const CoordWindow& w = win(c);
    return FreeCoordinate{c, std::max(lo, w.lo), w.hi};
  };
  auto set_determined = [&](Coord c, Coord da, Coord db, LaurentSeries fac, int tail_lo) {
    DeterminedCoordinate det;
    det.coord = c;
    det.dep_a = da;
    det.dep_b = db;
    det.factor = std::move(fac);
    det.window = win(c);
    det.tail = free_part(c, tail_lo);
    out.determined = std::move(det);
  };

  switch (dt->dispatch) {
    case VertexType::t4:
      out.free = {free_part(Coord::i, -s - m), free_part(Coord::j, -t - m)};
      break;
    case VertexType::t8:
      out.free = {free_part(Coord::k, s - t - n), free_part(Coord::x, s - m)};
      break;
    case VertexType::t10:
      out.free = {free_part(Coord::x, s - m), free_part(Coord::y, t - m)};
      break;
    case VertexType::t12:
      out.free = {free_part(Coord::y, t - m), free_part(Coord::z, t - s - n)};
      break;
    case VertexType::t2:
      out.free = {free_part(Coord::i, -s - m), free_part(Coord::z, t - s - n)};
      break;
    case VertexType::t6:
      out.free = {free_part(Coord::j, -t - m), free_part(Coord::k, s - t - n)};
      break;
    case VertexType::t9:
      out.free = {free_part(Coord::k, s - t - n), free_part(Coord::y, t - m)};
      set_determined(Coord::x, Coord::k, Coord::y, factor_of(g.u3, g.u2, g.u1), s - m);
      break;
    case VertexType::t11:
      out.free = {free_part(Coord::x, s - m), free_part(Coord::z, t - s - n)};
      set_determined(Coord::y, Coord::z, Coord::x, factor_of(g.u2, g.u3, g.u1), t - m);
      break;
    case VertexType::t1:
      out.free = {free_part(Coord::i, -s - m), free_part(Coord::y, t - m)};
      set_determined(Coord::z, Coord::y, Coord::i, factor_of(g.u1, g.u3, g.u2), t - s - n);
      break;
    case VertexType::t3:
      out.free = {free_part(Coord::j, -t - m), free_part(Coord::z, t - s - n)};
      set_determined(Coord::i, Coord::j, Coord::z, factor_of(g.u3, g.u1, g.u2), -s - m);
      break;
    case VertexType::t7:
      out.free = {free_part(Coord::j, -t - m), free_part(Coord::x, s - m)};
      set_determined(Coord::k, Coord::x, Coord::j, factor_of(g.u1, g.u2, g.u3), s - t - n);
      break;
    case VertexType::t5:
      out.free = {free_part(Coord::i, -s - m), free_part(Coord::k, s - t - n)};
      set_determined(Coord::j, Coord::k, Coord::i, factor_of(g.u2, g.u1, g.u3), -t - m);
      break;
    case VertexType::base_point:
      break;
  }
  return out;
}

// The determined part of the pinned coordinate for a concrete point,
// truncated to the coordinate's cell window.
inline LaurentSeries determined_value(const DeterminedCoordinate& det, const StandardForm& M,
                                      int prec) {
  LaurentSeries raw = det.factor * M.coord(det.dep_a) * M.coord(det.dep_b);
  return raw.to_window(det.window.lo, det.window.hi, prec);
}

// Coefficients of the counting polynomial: entry d is the number of vertices
// of Delta_N whose fixed cell is an affine space of dimension d.
inline std::vector<std::uint64_t> poincare(int N, int m, int n) {
  std::vector<std::uint64_t> coeffs(1, 0);
  for (Vertex v : triangle_vertices(N)) {
    int d = fixed_cell_dimension(v, m, n);
    if (d >= static_cast<int>(coeffs.size())) coeffs.resize(static_cast<size_t>(d) + 1, 0);
    ++coeffs[static_cast<size_t>(d)];
  }
  return coeffs;
}

inline std::vector<std::uint64_t> poincare(int N, const SplitElement& g) {
  return poincare(N, g.m, g.n);
}

}  // namespace apaver
