#pragma once

#include <string>

#include "apaver/errors.hpp"

namespace apaver {

// Arithmetic in the prime field F_q.  Scalars are plain ints in [0, q).
// Only small primes are supported; everything downstream enumerates points
// over F_q, so large q would blow every budget anyway.
struct PrimeField {
  int q;

  static bool supported(int q) {
    return q == 2 || q == 3 || q == 5 || q == 7 || q == 11 || q == 13 || q == 17;
  }

  explicit PrimeField(int q_) : q(q_) {
    if (!supported(q_)) {
      throw InvalidCombinationError("unsupported field size q=" + std::to_string(q_) +
                                    " (expected a prime <= 17)");
    }
  }

  int reduce(int a) const {
    int r = a % q;
    return r < 0 ? r + q : r;
  }

  int add(int a, int b) const { return reduce(a + b); }
  int sub(int a, int b) const { return reduce(a - b); }
  int mul(int a, int b) const { return reduce(a * b); }
  int neg(int a) const { return reduce(-a); }

  int inv(int a) const {
    a = reduce(a);
    if (a == 0) throw ZeroSeriesError("inverse of 0 in F_" + std::to_string(q));
    // Fermat: a^(q-2).  q <= 17, so the loop is trivial.
    int r = 1;
    for (int e = 0; e < q - 2; ++e) r = mul(r, a);
    return r;
  }

  bool operator==(const PrimeField&) const = default;
};

}  // namespace apaver
