#pragma once

// Hirzebruch-Jung (negative) continued fractions
//
//   m/k = a1 - 1/(a2 - 1/(... - 1/an)),   every ai >= 2.
//
// The expansion with all terms >= 2 is unique. Reversing the terms gives the
// expansion of m/k' where k*k' = 1 (mod m). The smooth case m = 1 is the empty
// expansion, stored with residue 1 so that numerator/residue still evaluates
// to the value hj_eval reports for the empty list.

#include <algorithm>
#include <span>
#include <vector>

#include "hjtoric/arith.hpp"

namespace hjtoric {

struct HJExpansion {
  Integer numerator{1};
  Integer residue{1};
  std::vector<Integer> terms;

  bool smooth() const { return terms.empty(); }
  friend bool operator==(const HJExpansion&, const HJExpansion&) = default;
};

inline HJExpansion hj_expand(const Integer& m, const Integer& k) {
  if (m < 1) throw DomainError("hj_expand: m must be positive");
  if (m == 1) {
    if (k != 0 && k != 1) throw DomainError("hj_expand: m = 1 requires k in {0, 1}");
    return {};
  }
  if (k < 1 || k >= m) throw DomainError("hj_expand: need 1 <= k < m");
  if (gcd(m, k) != 1) throw DomainError("hj_expand: gcd(m, k) must be 1");

  HJExpansion e{m, k, {}};
  Integer num = m, den = k;
  while (den != 0) {
    Integer a = (num + den - 1) / den;  // ceil, den > 0
    e.terms.push_back(a);
    Integer next = a * den - num;
    num = std::move(den);
    den = std::move(next);
  }
  return e;
}

/// Evaluates a1 - 1/(a2 - ...) exactly. Terms below 2 are allowed as long as
/// no intermediate value is zero. The empty list evaluates to the unit 1.
inline Rational hj_eval(std::span<const Integer> terms) {
  if (terms.empty()) return Rational(1);
  Rational v(terms.back());
  for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) {
    if (v == 0) throw EvaluationError("hj_eval: zero intermediate denominator");
    v = Rational(*it) - 1 / v;
  }
  return v;
}

inline Rational hj_eval(const HJExpansion& e) { return hj_eval(std::span<const Integer>(e.terms)); }

inline HJExpansion hj_reverse(const HJExpansion& e) {
  if (e.smooth()) return e;
  HJExpansion r{e.numerator, mod_inverse(e.residue, e.numerator), e.terms};
  std::reverse(r.terms.begin(), r.terms.end());
  return r;
}

}  // namespace hjtoric
