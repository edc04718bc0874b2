#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include <apaver/errors.hpp>
#include <apaver/springer.hpp>

using namespace apaver;

namespace {

std::uint64_t ipow(int q, int e) {
  std::uint64_t r = 1;
  for (int k = 0; k < e; ++k) r *= static_cast<unsigned>(q);
  return r;
}

// Brute count of fixed points in the cell at v, straight from the definition.
std::uint64_t count_fixed(Vertex v, const SplitElement& g) {
  CellDescriptor cd = cell(v, g.a());
  OrbitEnumerator en = enumerate_cell(cd, g.field(), g.prec());
  FixedPointTester tester(g);
  std::uint64_t hits = 0;
  for (std::uint64_t idx = 0; idx < en.size(); ++idx) {
    if (tester.is_fixed(en.form(idx))) ++hits;
  }
  return hits;
}

}  // namespace

TEST_CASE("split element construction") {
  SUBCASE("the first admissible scalar pair wins") {
    PrimeField f2(2);
    SplitElement g = make_gamma(1, 2, f2, 8);
    CHECK(g.m == 1);
    CHECK(g.n == 2);
    CHECK(g.a() == 1);
    CHECK(g.u1 == LaurentSeries::one(f2, 8));
    CHECK(g.u2.support() == std::vector<std::pair<int, int>>{{0, 1}, {1, 1}});
    // u3 = (1 + p)(1 + p^2) = 1 + p + p^2 + p^3
    CHECK(g.u3.support() ==
          std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {2, 1}, {3, 1}});

    PrimeField f3(3);
    SplitElement h = make_gamma(1, 1, f3, 8);
    CHECK(h.u2.support() == std::vector<std::pair<int, int>>{{0, 1}, {1, 1}});
    // u3 = (1 + p)^2 = 1 + 2p + p^2
    CHECK(h.u3.support() ==
          std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 1}});
  }

  SUBCASE("recomputed valuations hold for every feasible profile") {
    for (int q : {2, 3, 5, 7}) {
      PrimeField f(q);
      for (int m = 0; m <= 3; ++m) {
        for (int n = m; n <= 4; ++n) {
          auto reason = gamma_infeasibility_reason(m, n, q);
          if (reason) {
            CHECK_THROWS_AS(make_gamma(m, n, f, n + 6), ValuationMismatchError);
          } else {
            SplitElement g = make_gamma(m, n, f, n + 6);
            LaurentSeries one = LaurentSeries::one(f, g.prec());
            CHECK((one - invert_unit(g.u2)).valuation() == m);
            CHECK((one - invert_unit(g.u3)).valuation() == m);
            CHECK((one - g.u2 * invert_unit(g.u3)).valuation() == n);
          }
        }
      }
    }
  }

  SUBCASE("argument validation") {
    PrimeField f(3);
    CHECK_THROWS_AS(make_gamma(2, 1, f, 8), InvalidCombinationError);
    CHECK_THROWS_AS(make_gamma(-1, 0, f, 8), InvalidCombinationError);
    CHECK_THROWS_AS(make_gamma(1, 2, f, 3), InvalidCombinationError);  // prec < n + 2
    CHECK_THROWS_AS(gamma_infeasibility_reason(3, 1, 5), InvalidCombinationError);
  }
}

TEST_CASE("fixed point membership") {
  PrimeField f(2);
  int prec = precision_budget(3, 2, 1);
  SplitElement g = make_gamma(1, 2, f, prec);

  SUBCASE("the base point is always fixed") {
    StandardForm m0 = make_zero_form({0, 0}, 0, windows({0, 0}, 0), f, prec);
    CHECK(is_fixed(m0, g));
  }

  SUBCASE("valuation thresholds in a still V cell") {
    Vertex v{-2, -2};
    CellDescriptor cd = cell(v, g.a());
    StandardForm m = make_zero_form(v, cd.level(), cd.window_set, f, prec);
    m.coord(Coord::i).set_coeff(0, 1);  // v(i) = 0 < -s - m = 1
    CHECK_FALSE(is_fixed(m, g));
    m.coord(Coord::i).set_coeff(0, 0);
    m.coord(Coord::i).set_coeff(1, 1);  // v(i) = 1 passes the threshold
    CHECK(is_fixed(m, g));
  }

  SUBCASE("both coordinates must clear their thresholds") {
    Vertex v{0, 3};
    CellDescriptor cd = cell(v, g.a());
    StandardForm m = make_zero_form(v, cd.level(), cd.window_set, f, prec);
    m.coord(Coord::y).set_coeff(2, 1);  // v(y) = 2 >= t - m = 2
    m.coord(Coord::z).set_coeff(1, 1);  // v(z) = 1 >= t - s - n = 1
    CHECK(is_fixed(m, g));
    m.coord(Coord::y).set_coeff(1, 1);  // v(y) = 1 < 2
    CHECK_FALSE(is_fixed(m, g));
  }

  SUBCASE("level mismatches are rejected") {
    // S-region cells live at level a = 1; a level-0 form is an error here.
    StandardForm m = make_zero_form({-1, 2}, 0, windows({-1, 2}, 0), f, prec);
    CHECK_THROWS_AS(is_fixed(m, g), InvalidCombinationError);
    CHECK_THROWS_AS(is_fixed(m, g, Region::V), InvalidCombinationError);
  }
}

TEST_CASE("fixed cell dimension formulas") {
  CHECK(fixed_cell_dimension({0, 0}, 1, 2) == 0);
  CHECK(fixed_cell_dimension({-2, -2}, 1, 1) == 2);
  CHECK(fixed_cell_dimension({-2, -2}, 1, 2) == 2);
  CHECK(fixed_cell_dimension({-2, 2}, 1, 2) == 3);
  CHECK(fixed_cell_dimension({0, 1}, 1, 1) == 0);
  CHECK(fixed_cell_dimension({1, 0}, 1, 1) == 1);
  CHECK(fixed_cell_dimension({0, -1}, 1, 1) == 2);

  SUBCASE("terms stay nonnegative across the whole grid") {
    for (const Vertex& v : triangle_vertices(6)) {
      for (int m = 0; m <= 3; ++m) {
        for (int n = m; n <= 4; ++n) {
          int d = fixed_cell_dimension(v, m, n);
          CHECK(d >= 0);
          CHECK(d <= cell(v, n - m).dimension);
          auto dt = dimension_terms(v, m, n);
          if (v == Vertex{0, 0} && n == m) {
            CHECK_FALSE(dt.has_value());
          } else if (dt) {
            CHECK(static_cast<int>(dt->terms.size()) == formula_term_count(dt->dispatch));
          }
        }
      }
    }
  }

  SUBCASE("dimensions grow along the diagonal direction (m, n) -> (m+1, n+1)") {
    for (const Vertex& v : triangle_vertices(4)) {
      for (int m = 0; m <= 3; ++m) {
        for (int n = m; n <= 4; ++n) {
          CHECK(fixed_cell_dimension(v, m, n) <= fixed_cell_dimension(v, m + 1, n + 1));
        }
      }
    }
  }

  SUBCASE("V-region dimensions grow in each argument separately") {
    for (const Vertex& v : triangle_vertices(4)) {
      if (region_of(v) != Region::V) continue;
      for (int m = 0; m <= 3; ++m) {
        for (int n = m; n <= 4; ++n) {
          CHECK(fixed_cell_dimension(v, m, n) <= fixed_cell_dimension(v, m, n + 1));
          if (n > m) CHECK(fixed_cell_dimension(v, m, n) <= fixed_cell_dimension(v, m + 1, n));
        }
      }
    }
  }

  SUBCASE("moving-region dimensions can drop when n grows alone") {
    // Raising n widens the level a = n - m, which can empty a stationary
    // window faster than the min-terms grow.
    CHECK(fixed_cell_dimension({-1, 3}, 2, 3) == 5);
    CHECK(fixed_cell_dimension({-1, 3}, 2, 4) == 4);
    // Brute confirmation at q = 3.
    PrimeField f(3);
    int prec = precision_budget(4, 4, 2);
    CHECK(count_fixed({-1, 3}, make_gamma(2, 3, f, prec)) == ipow(3, 5));
    CHECK(count_fixed({-1, 3}, make_gamma(2, 4, f, prec)) == ipow(3, 4));
  }
}

TEST_CASE("formula term handles") {
  auto refs = all_formula_terms();
  CHECK(refs.size() == 30);
  // One handle per summand: 3 for odd-coded types, 2 for even-coded ones.
  for (int code = 1; code <= 12; ++code) {
    VertexType ty = static_cast<VertexType>(code);
    int cnt = 0;
    for (const TermRef& r : refs)
      if (r.dispatch == ty) ++cnt;
    CHECK(cnt == formula_term_count(ty));
  }
  // A mutation only moves vertices that dispatch to its type.
  TermRef t4_first{VertexType::t4, 0};
  CHECK(fixed_cell_dimension_mutated({-2, -2}, 1, 1, t4_first, 1) == 3);
  CHECK(fixed_cell_dimension_mutated({-2, -2}, 1, 1, t4_first, -1) == 1);
  CHECK(fixed_cell_dimension_mutated({0, 2}, 1, 1, t4_first, 1) ==
        fixed_cell_dimension({0, 2}, 1, 1));
}

TEST_CASE("fixed locus parameterization agrees with the membership test") {
  PrimeField f(2);
  int prec = precision_budget(3, 2, 1);
  SplitElement g = make_gamma(1, 2, f, prec);
  // One vertex per dispatch type at a = 1.
  std::vector<Vertex> reps = {{-1, -1}, {2, 0}, {3, 2}, {1, 1}, {1, 2}, {0, 2},
                              {-1, 2}, {-1, 1}, {-2, -1}, {0, -1}, {1, -1}, {2, -1}};
  std::set<VertexType> covered;
  for (const Vertex& v : reps) {
    covered.insert(dimension_terms(v, g.m, g.n)->dispatch);
  }
  CHECK(covered.size() == 12);
  for (const Vertex& v : reps) {
    CAPTURE(v.s);
    CAPTURE(v.t);
    CellParameterization par = fixed_cell_parameterization(v, g);
    CHECK(par.dimension() == fixed_cell_dimension(v, g));

    CellDescriptor cd = cell(v, g.a());
    OrbitEnumerator en = enumerate_cell(cd, f, prec);
    FixedPointTester tester(g);
    std::uint64_t fixed_count = 0;
    for (std::uint64_t idx = 0; idx < en.size(); ++idx) {
      StandardForm M = en.form(idx);
      bool brute = tester.is_fixed(M);

      bool described = true;
      for (const FreeCoordinate& fc : par.free) {
        for (auto [e, c] : M.coord(fc.coord).support()) {
          (void)c;
          if (e < fc.lo || e >= fc.hi) described = false;
        }
      }
      if (par.determined) {
        LaurentSeries diff =
            M.coord(par.determined->coord) - determined_value(*par.determined, M, prec);
        for (auto [e, c] : diff.support()) {
          (void)c;
          if (e < par.determined->tail.lo || e >= par.determined->tail.hi) described = false;
        }
      }
      CHECK(brute == described);
      if (brute) ++fixed_count;
    }
    CHECK(fixed_count == ipow(f.q, fixed_cell_dimension(v, g)));
  }
}

TEST_CASE("counting polynomial") {
  CHECK(poincare(0, 0, 0) == std::vector<std::uint64_t>{1});
  CHECK(poincare(0, 1, 2) == std::vector<std::uint64_t>{1});
  CHECK(poincare(1, 0, 0) == std::vector<std::uint64_t>{4});
  CHECK(poincare(2, 1, 1) == std::vector<std::uint64_t>{3, 2, 5});

  SUBCASE("coefficients always count the vertices of the triangle") {
    for (int N : {0, 1, 2, 3, 4}) {
      for (auto [m, n] : std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {1, 2}, {0, 2}}) {
        auto pc = poincare(N, m, n);
        std::uint64_t sum = 0;
        for (auto c : pc) sum += c;
        CHECK(sum == triangle_vertices(N).size());
      }
    }
  }

  SUBCASE("gamma overload matches the profile overload") {
    PrimeField f(3);
    SplitElement g = make_gamma(1, 2, f, 10);
    CHECK(poincare(3, g) == poincare(3, 1, 2));
  }
}
