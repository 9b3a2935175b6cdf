#pragma once

// (p,q)-weighted blowups of smooth points, resolved two ways:
//
//  * the toric vertex route: the orbifold points at the corners of the
//    removed triangle resolve into Hirzebruch-Jung chains for p/(p-q) and
//    q/k with k = q - p (mod q);
//  * the iterated route: a sequence of ordinary blowups, one corner cut at a
//    time, whose multiplicities follow the Euclidean algorithm on (p, q).
//
// Both must give the same lattice; cross_check compares them.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hjtoric/homology.hpp"
#include "hjtoric/toric.hpp"

namespace hjtoric {

inline void validate_weights(const Integer& p, const Integer& q) {
  if (p < 1 || q < 1) throw DomainError("weights must be positive");
  if (gcd(p, q) != 1) throw DomainError("weights must be coprime");
  if (!(p > q || (p == 1 && q == 1))) throw DomainError("weights need p > q (or p = q = 1)");
}

inline BlowupConfig fulton_config(const Integer& p, const Integer& q, const Rational& size = 1,
                                  const std::string& tag = {}) {
  validate_weights(p, q);
  if (size <= 0) throw DomainError("blowup size must be positive");

  BlowupConfig c;
  c.p = p;
  c.q = q;
  c.size = size;
  c.tag = tag;
  c.exceptional = tag + "E~";
  c.fulton_p = hj_expand(p, p - q);
  c.fulton_q = q == 1 ? HJExpansion{} : hj_expand(q, mod(q - p, q));
  c.chain_p = chain_from_expansion(c.fulton_p, tag + "Zp");
  c.chain_q = reversed(chain_from_expansion(c.fulton_q), tag + "Zq");
  return c;
}

/// Rejects blowups centered at an orbifold point of order r > 1.
inline BlowupConfig fulton_config_at(const CyclicSingularity& center, const Integer& p, const Integer& q,
                                     const Rational& size = 1, const std::string& tag = {}) {
  validate(center);
  if (!center.smooth()) {
    throw UnsupportedError("unsupported: weighted blowup of an orbifold point (r > 1) is an open problem");
  }
  return fulton_config(p, q, size, tag);
}

inline IntersectionLattice config_lattice(const BlowupConfig& c) {
  IntersectionLattice lat;
  lat.add_class(c.exceptional, -1, 1);
  IntersectionLattice out = direct_sum(direct_sum(lat, chain_lattice(c.chain_p)), chain_lattice(c.chain_q));
  if (!c.chain_p.empty()) out.set_pairing(0, 1 + c.contact_p(), 1);
  if (!c.chain_q.empty()) out.set_pairing(0, 1 + c.chain_p.size() + c.contact_q(), 1);
  return out;
}

/// Adds the configuration's classes to an existing lattice, orthogonal to it.
inline IntersectionLattice install_config(const IntersectionLattice& lat, const BlowupConfig& c) {
  return direct_sum(lat, config_lattice(c));
}

struct McDuffSequence {
  Integer q;
  Integer p;
  /// q1 repeated a1 times, q2 repeated a2 times, ...
  std::vector<Integer> multiplicities;
  /// a1, a2, ...
  std::vector<Integer> runs;
  /// Negated conormals of the successive cuts; the last one is (q, p).
  std::vector<LatticeVec> cuts;
  std::vector<Rational> cut_sizes;
  /// Vertex of the polygon at which each cut was made.
  std::vector<std::size_t> cut_vertices;
  /// The quadrant after all cuts.
  Polygon polygon;
};

namespace detail {

inline std::vector<std::size_t> run_lengths(const std::vector<bool>& sides) {
  std::vector<std::size_t> runs;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (i == 0 || sides[i] != sides[i - 1]) runs.push_back(0);
    ++runs.back();
  }
  return runs;
}

}  // namespace detail

/// Multiplicity sequence of E(q, p) and its corner cuts. Arguments are in
/// ellipsoid order: q first.
inline McDuffSequence mcduff_sequence(const Integer& q, const Integer& p) {
  validate_weights(p, q);
  McDuffSequence s{q, p, {}, {}, {}, {}, {}, standard_quadrant()};

  Integer prev = p, cur = q;
  while (true) {
    Integer a = prev / cur;
    s.runs.push_back(a);
    for (Integer i = 0; i < a; ++i) s.multiplicities.push_back(cur);
    Integer rest = prev - a * cur;
    if (rest == 0) break;
    prev = cur;
    cur = rest;
  }

  // Cut at the corner between the vertical-side edge and the
  // horizontal-side edge; the new edge replaces whichever side keeps (q, p)
  // strictly between the two. Cut sizes halve so every cut fits.
  const LatticeVec target{q, p};
  const std::size_t n = s.multiplicities.size();
  std::size_t vertical_side = 0;  // edge index; the horizontal side is always the next edge
  std::vector<bool> replaced_vertical;
  for (std::size_t i = 0; i < n; ++i) {
    Integer scale = Integer(1) << static_cast<unsigned>(n - 1 - i);
    Rational size(scale);
    s.polygon = corner_cut(s.polygon, vertical_side, size);
    LatticeVec dir = -s.polygon.conormals()[vertical_side + 1];
    s.cuts.push_back(dir);
    s.cut_sizes.push_back(size);
    s.cut_vertices.push_back(vertical_side);
    if (dir == target) break;
    bool toward_horizontal = det(dir, target) > 0;
    replaced_vertical.push_back(toward_horizontal);
    if (toward_horizontal) vertical_side += 1;
  }
  if (s.cuts.size() != n || s.cuts.back() != target) {
    throw StructuralError("corner cuts do not end at (q, p) after the expected number of cuts");
  }
  // The final cut belongs to the last run.
  std::vector<std::size_t> runs = detail::run_lengths(replaced_vertical);
  if (runs.size() < s.runs.size()) runs.push_back(0);
  runs.back() += 1;
  bool agree = runs.size() == s.runs.size();
  for (std::size_t i = 0; agree && i < runs.size(); ++i) agree = Integer(runs[i]) == s.runs[i];
  if (!agree) throw StructuralError("corner cut alternation disagrees with the multiplicity runs");
  return s;
}

/// Replays the cuts as ordinary blowups. Each cut adds an exceptional class;
/// the classes of the bounded edges (proper transforms) form the result,
/// labeled "C(a,b)" by cut direction.
inline IntersectionLattice mcduff_lattice(const McDuffSequence& s) {
  IntersectionLattice blown;
  // class of every edge of the evolving polygon; nullopt for the two rays
  std::vector<std::optional<std::vector<Integer>>> edges(2);
  Polygon poly = standard_quadrant();
  for (std::size_t i = 0; i < s.cuts.size(); ++i) {
    const std::size_t v = s.cut_vertices[i];
    blown = blow_up(blown, "E" + std::to_string(i + 1));
    for (auto& e : edges) {
      if (e) e->push_back(0);
    }
    for (std::size_t side : {v, v + 1}) {
      if (edges[side]) edges[side]->back() -= 1;
    }
    std::vector<Integer> fresh(blown.size(), Integer(0));
    fresh.back() = 1;
    edges.insert(edges.begin() + static_cast<std::ptrdiff_t>(v) + 1, fresh);
    poly = corner_cut(poly, v, s.cut_sizes[i]);
  }
  if (!(poly == s.polygon)) throw StructuralError("cut replay diverged from the recorded polygon");

  std::vector<std::string> labels;
  std::vector<std::vector<Integer>> combos;
  for (std::size_t e = 1; e + 1 < edges.size(); ++e) {
    const LatticeVec& n = poly.conormals()[e];
    labels.push_back("C(" + (-n.x).str() + "," + (-n.y).str() + ")");
    combos.push_back(*edges[e]);
  }
  return sublattice(blown, labels, combos);
}

/// Permutation isomorphism: a bijection of classes preserving pairings and c1.
inline std::optional<std::vector<std::size_t>> find_isomorphism(const IntersectionLattice& a,
                                                                const IntersectionLattice& b) {
  const std::size_t n = a.size();
  if (b.size() != n) return std::nullopt;

  auto invariant = [](const IntersectionLattice& l, std::size_t i) {
    std::vector<Integer> nb;
    for (std::size_t j = 0; j < l.size(); ++j) {
      if (j != i && l.pairing(i, j) != 0) nb.push_back(l.pairing(i, j));
    }
    std::sort(nb.begin(), nb.end());
    nb.push_back(l.self_intersection(i));
    nb.push_back(l.c1(i));
    return nb;
  };
  std::vector<std::vector<Integer>> inv_a(n), inv_b(n);
  std::map<std::vector<Integer>, std::size_t> count_a, count_b;
  for (std::size_t i = 0; i < n; ++i) {
    inv_a[i] = invariant(a, i);
    inv_b[i] = invariant(b, i);
    ++count_a[inv_a[i]];
    ++count_b[inv_b[i]];
  }
  if (count_a != count_b) return std::nullopt;

  // Visit a's classes breadth-first, each component started from its rarest
  // invariant, so most classes are pinned by an already mapped neighbor.
  std::vector<std::size_t> order;
  std::vector<bool> seen(n, false);
  while (order.size() < n) {
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen[i] && (start == n || count_a[inv_a[i]] < count_a[inv_a[start]])) start = i;
    }
    std::vector<std::size_t> queue{start};
    seen[start] = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      std::size_t u = queue[h];
      order.push_back(u);
      for (std::size_t w = 0; w < n; ++w) {
        if (!seen[w] && a.pairing(u, w) != 0) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
  }

  std::vector<std::size_t> image(n, n);
  std::vector<bool> used(n, false);
  auto consistent = [&](std::size_t depth, std::size_t cand) {
    const std::size_t u = order[depth];
    if (inv_a[u] != inv_b[cand]) return false;
    for (std::size_t d = 0; d < depth; ++d) {
      const std::size_t w = order[d];
      if (a.pairing(u, w) != b.pairing(cand, image[w])) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    for (std::size_t cand = 0; cand < n; ++cand) {
      if (used[cand] || !consistent(depth, cand)) continue;
      used[cand] = true;
      image[order[depth]] = cand;
      if (self(self, depth + 1)) return true;
      used[cand] = false;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return image;
}

inline bool isomorphic(const IntersectionLattice& a, const IntersectionLattice& b) {
  return find_isomorphism(a, b).has_value();
}

struct CrossCheckReport {
  BlowupConfig config;
  McDuffSequence sequence;
  IntersectionLattice fulton;
  IntersectionLattice mcduff;
  bool lengths_agree = false;
  bool lattices_isomorphic = false;

  bool ok() const { return lengths_agree && lattices_isomorphic; }
};

inline CrossCheckReport cross_check_report(const Integer& p, const Integer& q) {
  CrossCheckReport r;
  r.config = fulton_config(p, q);
  r.sequence = mcduff_sequence(q, p);
  r.fulton = config_lattice(r.config);
  r.mcduff = mcduff_lattice(r.sequence);
  r.lengths_agree = r.sequence.multiplicities.size() == r.config.class_count();
  r.lattices_isomorphic = isomorphic(r.fulton, r.mcduff);
  return r;
}

inline bool cross_check(const Integer& p, const Integer& q) { return cross_check_report(p, q).ok(); }

struct BlowdownStep {
  std::string label;
  Integer self_intersection;
};

struct BlowdownResult {
  IntersectionLattice lattice;
  std::vector<BlowdownStep> steps;
};

/// Contracts E~ and then, one at a time, whichever configuration class has
/// become exceptional, until the whole configuration is gone.
inline BlowdownResult weighted_blowdown(const IntersectionLattice& lat, const BlowupConfig& config) {
  std::vector<std::string> pending = config.labels();
  for (const auto& l : pending) lat.index_of(l);
  if (!lat.is_exceptional(lat.index_of(config.exceptional))) {
    throw DomainError("weighted_blowdown: " + config.exceptional + " is not exceptional");
  }

  BlowdownResult out{lat, {}};
  while (!pending.empty()) {
    auto next = std::find_if(pending.begin(), pending.end(), [&](const std::string& l) {
      return out.lattice.is_exceptional(out.lattice.index_of(l));
    });
    if (next == pending.end()) {
      throw StructuralError("weighted_blowdown: no exceptional class left among " + std::to_string(pending.size()) +
                            " remaining configuration classes");
    }
    const std::size_t i = out.lattice.index_of(*next);
    out.steps.push_back({*next, out.lattice.self_intersection(i)});
    out.lattice = blow_down(out.lattice, i);
    pending.erase(next);
  }
  return out;
}

}  // namespace hjtoric
