#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apaver/errors.hpp"
#include "apaver/lattice.hpp"
#include "apaver/paving.hpp"
#include "apaver/springer.hpp"

namespace apaver::oracle {

struct Check {
  std::string name;
  bool passed = false;
  std::string expected;
  std::string actual;
};

struct VerificationReport {
  std::string scope;
  std::vector<Check> checks;
  double elapsed_seconds = 0.0;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }

  void expect_eq(const std::string& name, const std::string& expected, const std::string& actual) {
    checks.push_back(Check{name, expected == actual, expected, actual});
  }
  void expect_eq(const std::string& name, std::uint64_t expected, std::uint64_t actual) {
    expect_eq(name, std::to_string(expected), std::to_string(actual));
  }
  void expect_true(const std::string& name, bool ok, const std::string& detail) {
    checks.push_back(Check{name, ok, "ok", ok ? "ok" : detail});
  }
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::optional<std::uint64_t> checked_pow(int q, int d) {
  if (d < 0) return std::nullopt;
  std::uint64_t r = 1;
  for (int i = 0; i < d; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(q)) {
      return std::nullopt;
    }
    r *= static_cast<std::uint64_t>(q);
  }
  return r;
}

inline bool form_fits(const StandardForm& M, const WindowSet& ws) {
  for (Coord c : kAllCoords) {
    const CoordWindow& w = window_for(ws, c);
    for (auto [e, cf] : M.coord(c).support()) {
      (void)cf;
      if (e < w.lo || e >= w.hi) return false;
    }
  }
  return true;
}

}  // namespace detail

// Streams every level-0 orbit point of the S and T vertices on ring `ring`,
// resolves it to its level-a vertex (identity for stationary points, the
// closed-form retraction otherwise) and hands (source form, result) to the
// visitor.  Shared by the partition and retraction verifiers.
template <typename Visitor>
void sweep_moving_ring(int ring, int a, PrimeField f, int prec, std::uint64_t budget,
                       Visitor&& visit) {
  for (Vertex v : ring_vertices(ring)) {
    Region reg = region_of(v);
    if (reg == Region::V) continue;
    OrbitEnumerator en = enumerate_orbit(v, 0, f, prec, budget);
    VertexType ty = classify(v, 0);
    for (std::uint64_t idx = 0; idx < en.size(); ++idx) {
      StandardForm M = en.form(idx);
      if (is_stationary(M, a)) {
        visit(M, std::optional<Retraction>());
      } else {
        Retraction r = ty == VertexType::t1 ? retract_type1(M, a, prec)
                                            : retract_type7(M, a, prec);
        visit(M, std::optional<Retraction>(std::move(r)));
      }
    }
  }
}

// Counts and deduplicates the standard forms of one orbit enumeration.
inline VerificationReport verify_uniqueness(Vertex v, int a, int q,
                                            std::uint64_t budget = default_budget()) {
  detail::Stopwatch timer;
  VerificationReport rep;
  rep.scope = "uniqueness " + v.to_string() + " a=" + std::to_string(a) +
              " q=" + std::to_string(q);
  PrimeField f(q);
  const int prec = precision_budget(triangle_index(v), a, a);
  OrbitEnumerator en = enumerate_orbit(v, a, f, prec, budget);
  auto expected = detail::checked_pow(q, orbit_dimension(v, a));
  if (!expected) {
    throw BudgetExceededError("orbit size overflows at " + v.to_string());
  }
  rep.expect_eq("orbit size matches q^dimension", *expected, en.size());
  std::vector<std::string> keys;
  keys.reserve(en.size());
  for (std::uint64_t idx = 0; idx < en.size(); ++idx) keys.push_back(en.form(idx).key());
  std::sort(keys.begin(), keys.end());
  std::uint64_t distinct =
      static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
  rep.expect_eq("all representatives distinct", en.size(), distinct);
  rep.elapsed_seconds = timer.seconds();
  return rep;
}

// Ring by ring, redistributes every moving-region orbit point to its level-a
// vertex and checks the buckets reproduce the claimed cells exactly: right
// size, no collisions, every arrival inside the cell windows.
inline VerificationReport verify_partition(int ring_max, int a, int q,
                                           std::uint64_t budget = default_budget()) {
  detail::Stopwatch timer;
  VerificationReport rep;
  rep.scope = "partition rings<=" + std::to_string(ring_max) + " a=" + std::to_string(a) +
              " q=" + std::to_string(q);
  PrimeField f(q);
  const int prec = precision_budget(ring_max, a, a);
  for (int ring = 1; ring <= ring_max; ++ring) {
    std::map<Vertex, std::vector<std::string>> buckets;
    std::uint64_t moving_points = 0;
    int window_violations = 0;
    sweep_moving_ring(ring, a, f, prec, budget,
                      [&](const StandardForm& M, const std::optional<Retraction>& r) {
                        ++moving_points;
                        const StandardForm& arrived = r ? r->form : M;
                        Vertex w = r ? r->target : M.vertex;
                        if (!detail::form_fits(arrived, cell(w, a).window_set)) {
                          ++window_violations;
                        }
                        buckets[w].push_back(arrived.key());
                      });
    std::uint64_t cell_points = 0;
    bool sizes_ok = true;
    bool distinct_ok = true;
    std::string first_mismatch;
    for (Vertex w : ring_vertices(ring)) {
      if (region_of(w) == Region::V) continue;
      auto expected = detail::checked_pow(q, cell(w, a).dimension);
      if (!expected) throw BudgetExceededError("cell size overflows at " + w.to_string());
      cell_points += *expected;
      auto it = buckets.find(w);
      std::vector<std::string> keys = it == buckets.end() ? std::vector<std::string>{} : it->second;
      if (keys.size() != *expected && first_mismatch.empty()) {
        sizes_ok = false;
        first_mismatch = w.to_string() + " got " + std::to_string(keys.size()) + " expected " +
                         std::to_string(*expected);
      }
      std::sort(keys.begin(), keys.end());
      if (std::unique(keys.begin(), keys.end()) != keys.end()) distinct_ok = false;
      buckets.erase(w);
    }
    const std::string tag = "ring " + std::to_string(ring) + ": ";
    rep.expect_eq(tag + "orbit points = cell points", moving_points, cell_points);
    rep.expect_true(tag + "every bucket has its cell's size", sizes_ok, first_mismatch);
    rep.expect_true(tag + "no two points share a representative", distinct_ok, "collision");
    rep.expect_eq(tag + "arrivals outside cell windows", std::uint64_t{0},
                  static_cast<std::uint64_t>(window_violations));
    rep.expect_true(tag + "no arrivals at foreign vertices", buckets.empty(),
                    buckets.empty() ? "" : buckets.begin()->first.to_string());
  }
  rep.elapsed_seconds = timer.seconds();
  return rep;
}

// Certifies every non-stationary point's jump: the target form fits the
// level-a orbit windows, both forms name the same point of the quotient
// (transport-pattern membership), and the jump stays on the movement line.
inline VerificationReport verify_retractions(int ring_max, int a, int q,
                                             std::uint64_t budget = default_budget()) {
  detail::Stopwatch timer;
  VerificationReport rep;
  rep.scope = "retractions rings<=" + std::to_string(ring_max) + " a=" + std::to_string(a) +
              " q=" + std::to_string(q);
  PrimeField f(q);
  const int prec = precision_budget(ring_max, a, a);
  for (int ring = 1; ring <= ring_max; ++ring) {
    std::uint64_t moved = 0;
    int window_bad = 0, pattern_bad = 0, line_bad = 0;
    sweep_moving_ring(ring, a, f, prec, budget,
                      [&](const StandardForm& M, const std::optional<Retraction>& r) {
                        if (!r) return;
                        ++moved;
                        if (!detail::form_fits(r->form, windows(r->target, a))) ++window_bad;
                        SeriesMatrix lhs = matrix_of(M).unimodular_inverse() * matrix_of(r->form);
                        if (!pattern_member(lhs, transport_pattern(M.vertex, r->target, r->d))) {
                          ++pattern_bad;
                        }
                        bool on_line = region_of(M.vertex) == Region::S
                                           ? r->target.t - 2 * r->target.s == M.vertex.t - 2 * M.vertex.s
                                           : r->target.s - 2 * r->target.t == M.vertex.s - 2 * M.vertex.t;
                        if (!on_line) ++line_bad;
                      });
    const std::string tag = "ring " + std::to_string(ring) + ": ";
    rep.expect_eq(tag + "targets outside level-a windows", std::uint64_t{0},
                  static_cast<std::uint64_t>(window_bad));
    rep.expect_eq(tag + "coset certificates failed", std::uint64_t{0},
                  static_cast<std::uint64_t>(pattern_bad));
    rep.expect_eq(tag + "jumps off the movement line", std::uint64_t{0},
                  static_cast<std::uint64_t>(line_bad));
    rep.expect_true(tag + "swept " + std::to_string(moved) + " moving points", true, "");
  }
  rep.elapsed_seconds = timer.seconds();
  return rep;
}

// Fixed-point counts per vertex, produced purely by pointwise is_fixed tests
// over enumerated cells.  The dimension formulas are never consulted here;
// they are the claim this count is checked against.
struct FixedCounts {
  std::map<Vertex, std::uint64_t> counts;
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto& [v, c] : counts) t += c;
    return t;
  }
};

inline FixedCounts brute_fixed_counts(int N, const SplitElement& g,
                                      std::uint64_t budget = default_budget()) {
  FixedCounts out;
  PrimeField f = g.field();
  FixedPointTester tester(g);
  const int prec = g.prec();
  for (Vertex v : triangle_vertices(N)) {
    CellDescriptor cd = cell(v, g.a());
    OrbitEnumerator en = enumerate_cell(cd, f, prec, budget);
    std::uint64_t count = 0;
    for (std::uint64_t idx = 0; idx < en.size(); ++idx) {
      if (tester.is_fixed(en.form(idx))) ++count;
    }
    out.counts[v] = count;
  }
  return out;
}

// Per-vertex comparison of the brute-force fixed-point count against the
// dimension formulas, plus the total against the counting polynomial.
// prec_override > 0 replaces the automatic precision budget.
inline VerificationReport verify_springer(int N, int m, int n, int q,
                                          std::uint64_t budget = default_budget(),
                                          int prec_override = -1) {
  detail::Stopwatch timer;
  VerificationReport rep;
  rep.scope = "springer N=" + std::to_string(N) + " m=" + std::to_string(m) +
              " n=" + std::to_string(n) + " q=" + std::to_string(q);
  PrimeField f(q);
  const int prec = prec_override > 0 ? prec_override : precision_budget(N, n, n - m);
  SplitElement g = make_gamma(m, n, f, prec);
  FixedCounts counts = brute_fixed_counts(N, g, budget);
  for (auto& [v, count] : counts.counts) {
    int d = fixed_cell_dimension(v, m, n);
    auto expected = detail::checked_pow(q, d);
    if (!expected) throw BudgetExceededError("expected count overflows at " + v.to_string());
    rep.expect_eq("cell " + v.to_string() + " has q^" + std::to_string(d) + " fixed points",
                  *expected, count);
  }
  std::uint64_t poly_at_q = 0;
  auto coeffs = poincare(N, m, n);
  for (size_t d = 0; d < coeffs.size(); ++d) {
    auto p = detail::checked_pow(q, static_cast<int>(d));
    if (!p) throw BudgetExceededError("counting polynomial overflows");
    poly_at_q += coeffs[d] * *p;
  }
  rep.expect_eq("counting polynomial at q matches total", poly_at_q, counts.total());
  rep.elapsed_seconds = timer.seconds();
  return rep;
}

}  // namespace apaver::oracle
