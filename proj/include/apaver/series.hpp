#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "apaver/errors.hpp"
#include "apaver/fq.hpp"

namespace apaver {

// Truncated Laurent series over F_q in the uniformizer pi.
//
// A series tracks coefficients on the half-open exponent window [lo, prec).
// Exponents below lo are known to be zero; exponents at or beyond prec are
// unknown.  Every operation computes the exact window on which its result is
// certain and never fabricates coefficients beyond it.
class LaurentSeries {
 public:
  LaurentSeries() : field_(2), lo_(0), prec_(0) {}

  LaurentSeries(PrimeField field, int lo, int prec)
      : field_(field), lo_(lo), prec_(prec) {
    if (lo > prec) {
      throw WindowViolationError("series window [" + std::to_string(lo) + ", " +
                                 std::to_string(prec) + ") is inverted");
    }
    coeffs_.assign(static_cast<size_t>(prec - lo), 0);
  }

  // Zero, certified up to (but not including) exponent prec.
  static LaurentSeries zero(PrimeField field, int prec) {
    return LaurentSeries(field, prec, prec);
  }

  static LaurentSeries monomial(PrimeField field, int c, int e, int prec) {
    if (e >= prec) {
      throw WindowViolationError("monomial exponent " + std::to_string(e) +
                                 " not below precision " + std::to_string(prec));
    }
    LaurentSeries r(field, e, prec);
    r.coeffs_[0] = field.reduce(c);
    return r;
  }

  static LaurentSeries one(PrimeField field, int prec) { return monomial(field, 1, 0, prec); }

  const PrimeField& field() const { return field_; }
  int lo() const { return lo_; }
  int prec() const { return prec_; }

  // Coefficient of pi^e.  Exponents below the window are known zero; asking
  // beyond the tracked precision is an error, never a silent zero.
  int coeff(int e) const {
    if (e >= prec_) {
      throw PrecisionExhaustedError("coefficient of pi^" + std::to_string(e) +
                                    " requested beyond precision " + std::to_string(prec_));
    }
    if (e < lo_) return 0;
    return coeffs_[static_cast<size_t>(e - lo_)];
  }

  void set_coeff(int e, int c) {
    if (e < lo_ || e >= prec_) {
      throw WindowViolationError("coefficient of pi^" + std::to_string(e) +
                                 " outside window [" + std::to_string(lo_) + ", " +
                                 std::to_string(prec_) + ")");
    }
    coeffs_[static_cast<size_t>(e - lo_)] = field_.reduce(c);
  }

  // Least exponent with a nonzero tracked coefficient; nullopt if every
  // tracked coefficient vanishes (i.e. the series is 0 as far as the window
  // can tell).
  std::optional<int> valuation() const {
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) return lo_ + static_cast<int>(i);
    }
    return std::nullopt;
  }

  int finite_valuation() const {
    auto v = valuation();
    if (!v) {
      throw PrecisionExhaustedError("series is zero on its tracked window [" +
                                    std::to_string(lo_) + ", " + std::to_string(prec_) +
                                    "); no finite valuation certified");
    }
    return *v;
  }

  bool is_zero() const { return !valuation().has_value(); }

  // Raise lo to the true valuation (or to prec for a tracked zero).
  LaurentSeries normalized() const {
    int v = valuation().value_or(prec_);
    LaurentSeries r(field_, v, prec_);
    for (int e = v; e < prec_; ++e) r.coeffs_[static_cast<size_t>(e - v)] = coeff(e);
    return r;
  }

  // Keep coefficients with exponents in [from, to), zero elsewhere; the
  // result lives on the same window, so a == slice + (a - slice) exactly.
  LaurentSeries slice(int from, int to) const {
    if (from > to || from < lo_ || to > prec_) {
      throw WindowViolationError("slice [" + std::to_string(from) + ", " + std::to_string(to) +
                                 ") outside window [" + std::to_string(lo_) + ", " +
                                 std::to_string(prec_) + ")");
    }
    LaurentSeries r(field_, lo_, prec_);
    for (int e = from; e < to; ++e) r.coeffs_[static_cast<size_t>(e - lo_)] = coeff(e);
    return r;
  }

  // Restrict to the polynomial part supported on [from, to) and certify the
  // result as known-zero up to prec.  Used for standard-form coordinates,
  // which are by definition polynomials supported on their window.
  LaurentSeries to_window(int from, int to, int prec) const {
    if (from > to || to > prec) {
      throw WindowViolationError("target window [" + std::to_string(from) + ", " +
                                 std::to_string(to) + ") with precision " +
                                 std::to_string(prec) + " is malformed");
    }
    if (to > prec_) {
      throw PrecisionExhaustedError("window [" + std::to_string(from) + ", " +
                                    std::to_string(to) + ") exceeds tracked precision " +
                                    std::to_string(prec_));
    }
    LaurentSeries r(field_, from, prec);
    for (int e = std::max(from, lo_); e < to; ++e) {
      r.coeffs_[static_cast<size_t>(e - r.lo_)] = coeff(e);
    }
    return r;
  }

  // True if every tracked coefficient below e vanishes.
  bool valuation_at_least(int e) const {
    for (int x = lo_; x < std::min(e, prec_); ++x) {
      if (coeff(x) != 0) return false;
    }
    return true;
  }

  LaurentSeries operator-() const {
    LaurentSeries r(field_, lo_, prec_);
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = field_.neg(coeffs_[i]);
    return r;
  }

  LaurentSeries scaled(int c) const {
    LaurentSeries r(field_, lo_, prec_);
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = field_.mul(coeffs_[i], c);
    return r;
  }

  // Multiply by pi^k.
  LaurentSeries shifted(int k) const {
    LaurentSeries r(field_, lo_ + k, prec_ + k);
    r.coeffs_ = coeffs_;
    return r;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    a.require_same_field(b);
    int lo = std::min(a.lo_, b.lo_);
    int prec = std::min(a.prec_, b.prec_);
    LaurentSeries r(a.field_, lo, prec);
    for (int e = r.lo_; e < prec; ++e) {
      r.coeffs_[static_cast<size_t>(e - r.lo_)] =
          a.field_.add(e < a.prec_ ? a.coeff(e) : 0, e < b.prec_ ? b.coeff(e) : 0);
    }
    return r;
  }

  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    return a + (-b);
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    a.require_same_field(b);
    // The product is certain only while unknown tails cannot reach: the tail
    // of a lands at exponent >= a.prec + b.lo and symmetrically.
    int lo = a.lo_ + b.lo_;
    int prec = std::min(a.prec_ + b.lo_, b.prec_ + a.lo_);
    LaurentSeries r(a.field_, lo, prec);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      int ea = a.lo_ + static_cast<int>(i);
      for (size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (b.coeffs_[j] == 0) continue;
        int e = ea + b.lo_ + static_cast<int>(j);
        if (e >= prec) break;
        size_t idx = static_cast<size_t>(e - r.lo_);
        r.coeffs_[idx] = a.field_.add(r.coeffs_[idx], a.field_.mul(a.coeffs_[i], b.coeffs_[j]));
      }
    }
    return r;
  }

  // Agreement everywhere both windows are certain.
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.field_.q != b.field_.q) return false;
    int prec = std::min(a.prec_, b.prec_);
    for (int e = std::min(a.lo_, b.lo_); e < prec; ++e) {
      if ((e < a.prec_ ? a.coeff(e) : 0) != (e < b.prec_ ? b.coeff(e) : 0)) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (int e = lo_; e < prec_; ++e) {
      int c = coeff(e);
      if (c == 0) continue;
      if (!s.empty()) s += " + ";
      s += std::to_string(c) + "*p^" + std::to_string(e);
    }
    if (s.empty()) s = "0";
    return s + " + O(p^" + std::to_string(prec_) + ")";
  }

  // Canonical (exponent, coefficient) support listing; identical for any two
  // representations that agree as tracked series.
  std::vector<std::pair<int, int>> support() const {
    std::vector<std::pair<int, int>> out;
    for (int e = lo_; e < prec_; ++e) {
      if (coeff(e) != 0) out.emplace_back(e, coeff(e));
    }
    return out;
  }

 private:
  void require_same_field(const LaurentSeries& b) const {
    if (field_.q != b.field_.q) {
      throw InvalidCombinationError("mixed fields F_" + std::to_string(field_.q) + " and F_" +
                                    std::to_string(b.field_.q));
    }
  }

  PrimeField field_;
  int lo_;
  int prec_;
  std::vector<int> coeffs_;
};

// Working precision for a computation touching triangles up to index N with
// split-element valuations (m, n) at level a = n - m.  Generous enough that
// every membership bound the engine ever tests stays decidable; if a caller
// strays outside that envelope the arithmetic complains loudly rather than
// returning a guess.
inline int precision_budget(int N, int n, int a) { return 3 * N + n + a + 4; }

// Inverse of a unit times a power of pi.  For valuation(a) = v the inverse is
// certain on [-v, prec(a) - 2v): the unknown tail of a perturbs the inverse
// starting at relative order prec(a) - v.
inline LaurentSeries invert_unit(const LaurentSeries& a) {
  auto val = a.valuation();
  if (!val) {
    throw ZeroSeriesError("invert_unit on a series that is zero on its window");
  }
  int v = *val;
  int len = a.prec() - v;  // >= 1
  const PrimeField& f = a.field();
  std::vector<int> u(static_cast<size_t>(len));
  for (int k = 0; k < len; ++k) u[static_cast<size_t>(k)] = a.coeff(v + k);
  std::vector<int> w(static_cast<size_t>(len), 0);
  int u0inv = f.inv(u[0]);
  w[0] = u0inv;
  for (int k = 1; k < len; ++k) {
    int acc = 0;
    for (int j = 1; j <= k; ++j) {
      acc = f.add(acc, f.mul(u[static_cast<size_t>(j)], w[static_cast<size_t>(k - j)]));
    }
    w[static_cast<size_t>(k)] = f.neg(f.mul(u0inv, acc));
  }
  LaurentSeries r(f, -v, a.prec() - 2 * v);
  for (int k = 0; k < len; ++k) r.set_coeff(-v + k, w[static_cast<size_t>(k)]);
  return r;
}

}  // namespace apaver
