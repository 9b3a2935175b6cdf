#pragma once

// Resolution of isolated cyclic quotient singularities C^2/Z_r, where the
// generator acts by (z1, z2) -> (xi^p z1, xi^q z2), into chains of spheres.

#include <algorithm>
#include <string>
#include <vector>

#include "hjtoric/hj.hpp"

namespace hjtoric {

struct CyclicSingularity {
  Integer order{1};
  Integer p{1};
  Integer q{1};

  bool smooth() const { return order == 1; }
  friend bool operator==(const CyclicSingularity&, const CyclicSingularity&) = default;
};

inline void validate(const CyclicSingularity& s) {
  if (s.order < 1) throw DomainError("singularity order must be positive");
  if (gcd(s.p, s.order) != 1) throw DomainError("gcd(p, r) must be 1");
  if (gcd(s.q, s.order) != 1) throw DomainError("gcd(q, r) must be 1");
}

/// Type (1, q p^-1 mod r). Smooth points canonicalize to (1, 1).
inline CyclicSingularity canonical(const CyclicSingularity& s) {
  validate(s);
  if (s.smooth()) return {1, 1, 1};
  return {s.order, 1, mod(s.q * mod_inverse(s.p, s.order), s.order)};
}

/// A chain of spheres Z1..Zn with Zi.Zi = self_intersections[i] and
/// consecutive spheres meeting once.
struct Chain {
  std::vector<Integer> self_intersections;
  std::vector<std::string> labels;

  std::size_t size() const { return self_intersections.size(); }
  bool empty() const { return self_intersections.empty(); }

  Integer pairing(std::size_t i, std::size_t j) const {
    if (i == j) return self_intersections.at(i);
    return (i + 1 == j || j + 1 == i) ? 1 : 0;
  }

  friend bool operator==(const Chain&, const Chain&) = default;
};

inline std::vector<std::string> chain_labels(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(stem + "[" + std::to_string(i) + "]");
  return out;
}

/// Chain with self-intersections -a_i for the given expansion, labeled
/// stem[1]..stem[n] from the left.
inline Chain chain_from_expansion(const HJExpansion& e, const std::string& stem = "Z") {
  Chain c;
  for (const auto& a : e.terms) c.self_intersections.push_back(-a);
  c.labels = chain_labels(stem, c.size());
  return c;
}

/// Reverses the chain; labels are reassigned left to right.
inline Chain reversed(const Chain& c, const std::string& stem = "Z") {
  Chain r;
  r.self_intersections.assign(c.self_intersections.rbegin(), c.self_intersections.rend());
  r.labels = chain_labels(stem, r.size());
  return r;
}

/// |det| of the chain's intersection matrix, which equals the order of the
/// singularity it resolves.
inline Integer chain_order(const Chain& c) {
  if (c.empty()) return 1;
  std::vector<Integer> terms;
  for (const auto& s : c.self_intersections) terms.push_back(-s);
  return boost::multiprecision::numerator(hj_eval(std::span<const Integer>(terms)));
}

struct ResolutionReport {
  Chain chain;
  Integer k;
  Integer alpha;
};

inline ResolutionReport resolve_cyclic(const CyclicSingularity& s) {
  validate(s);
  if (s.smooth()) return {{}, 1, ext_gcd(s.p, 1).x};

  Integer alpha = ext_gcd(s.p, s.order).x;
  Integer k = mod(s.q * alpha, s.order);
  HJExpansion e = hj_expand(s.order, k);
  if (hj_eval(e) != Rational(s.order, k)) throw StructuralError("resolution chain does not evaluate to r/k");
  return {chain_from_expansion(e), k, alpha};
}

/// Equivalence of singularity types under local diffeomorphisms. Unoriented:
/// q' = +-q or q q' = +-1 (mod r); oriented: q' = q or q q' = 1 (mod r).
inline bool type_equivalent(const CyclicSingularity& s1, const CyclicSingularity& s2, bool oriented) {
  if (s1.order != s2.order) return false;
  CyclicSingularity a = canonical(s1), b = canonical(s2);
  if (a.smooth()) return true;
  const Integer& r = a.order;
  auto eq = [&](const Integer& x, const Integer& y) { return mod(x - y, r) == 0; };
  if (eq(b.q, a.q) || eq(a.q * b.q, 1)) return true;
  if (oriented) return false;
  return eq(b.q, -a.q) || eq(a.q * b.q, -1);
}

/// Same resolution chain up to reversal: q alpha = q' alpha' or
/// (q alpha)(q' alpha') = 1 (mod r).
inline bool same_resolution(const CyclicSingularity& s1, const CyclicSingularity& s2) {
  if (s1.order != s2.order) return false;
  ResolutionReport a = resolve_cyclic(s1), b = resolve_cyclic(s2);
  if (s1.smooth()) return true;
  const Integer& r = s1.order;
  if (chain_order(a.chain) != r || chain_order(b.chain) != r) throw StructuralError("chain determinant differs from r");
  return mod(a.k - b.k, r) == 0 || mod(a.k * b.k - 1, r) == 0;
}

}  // namespace hjtoric
