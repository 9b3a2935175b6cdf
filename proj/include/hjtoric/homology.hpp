#pragma once

// Intersection lattices: labeled classes with a symmetric integer pairing
// and a c1 label per class. Embedded spheres satisfy c1 = 2 + C.C, so an
// exceptional class (C.C = -1) has c1 = 1.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hjtoric/blowup_config.hpp"

namespace hjtoric {

using IntMatrix = std::vector<std::vector<Integer>>;

class IntersectionLattice {
 public:
  IntersectionLattice() = default;

  IntersectionLattice(std::vector<std::string> labels, IntMatrix pairing, std::vector<Integer> c1)
      : labels_(std::move(labels)), pairing_(std::move(pairing)), c1_(std::move(c1)) {
    const std::size_t n = labels_.size();
    if (pairing_.size() != n || c1_.size() != n) throw DomainError("lattice: size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (pairing_[i].size() != n) throw DomainError("lattice: pairing is not square");
      for (std::size_t j = 0; j < i; ++j) {
        if (pairing_[i][j] != pairing_[j][i]) throw DomainError("lattice: pairing is not symmetric");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (labels_[i] == labels_[j]) throw DomainError("lattice: duplicate label " + labels_[i]);
      }
    }
  }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const IntMatrix& pairing() const { return pairing_; }
  const std::vector<Integer>& c1() const { return c1_; }

  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const Integer& pairing(std::size_t i, std::size_t j) const { return pairing_.at(i).at(j); }
  const Integer& self_intersection(std::size_t i) const { return pairing(i, i); }
  const Integer& c1(std::size_t i) const { return c1_.at(i); }

  std::optional<std::size_t> find(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  std::size_t index_of(const std::string& label) const {
    auto i = find(label);
    if (!i) throw DomainError("lattice has no class " + label);
    return *i;
  }

  bool is_exceptional(std::size_t i) const { return self_intersection(i) == -1 && c1(i) == 1; }

  /// Appends a class orthogonal to everything.
  std::size_t add_class(std::string label, Integer self, Integer c1) {
    if (find(label)) throw DomainError("lattice: duplicate label " + label);
    for (auto& row : pairing_) row.push_back(0);
    labels_.push_back(std::move(label));
    pairing_.emplace_back(labels_.size(), Integer(0));
    pairing_.back().back() = std::move(self);
    c1_.push_back(std::move(c1));
    return labels_.size() - 1;
  }

  void set_pairing(std::size_t i, std::size_t j, const Integer& v) {
    pairing_.at(i).at(j) = v;
    pairing_.at(j).at(i) = v;
  }

  void remove_class(std::size_t i) {
    if (i >= size()) throw DomainError("lattice: no such class");
    labels_.erase(labels_.begin() + static_cast<std::ptrdiff_t>(i));
    c1_.erase(c1_.begin() + static_cast<std::ptrdiff_t>(i));
    pairing_.erase(pairing_.begin() + static_cast<std::ptrdiff_t>(i));
    for (auto& row : pairing_) row.erase(row.begin() + static_cast<std::ptrdiff_t>(i));
  }

  friend bool operator==(const IntersectionLattice&, const IntersectionLattice&) = default;

 private:
  std::vector<std::string> labels_;
  IntMatrix pairing_;
  std::vector<Integer> c1_;
};

/// Direct sum; labels must not collide.
inline IntersectionLattice direct_sum(const IntersectionLattice& a, const IntersectionLattice& b) {
  IntersectionLattice out = a;
  const std::size_t base = a.size();
  for (std::size_t i = 0; i < b.size(); ++i) out.add_class(b.label(i), b.self_intersection(i), b.c1(i));
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) out.set_pairing(base + i, base + j, b.pairing(i, j));
  }
  return out;
}

/// Lattice of the chain with c1 given by adjunction.
inline IntersectionLattice chain_lattice(const Chain& chain) {
  IntersectionLattice lat;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    lat.add_class(chain.labels.at(i), chain.self_intersections[i], 2 + chain.self_intersections[i]);
  }
  for (std::size_t i = 1; i < chain.size(); ++i) lat.set_pairing(i - 1, i, 1);
  return lat;
}

/// Classes spanned by integer combinations of an existing basis. c1 is
/// extended linearly.
inline IntersectionLattice sublattice(const IntersectionLattice& base, const std::vector<std::string>& labels,
                                      const std::vector<std::vector<Integer>>& combos) {
  const std::size_t n = labels.size(), m = base.size();
  if (combos.size() != n) throw DomainError("sublattice: one combination per label required");
  IntMatrix gram(n, std::vector<Integer>(n, Integer(0)));
  std::vector<Integer> c1(n, Integer(0));
  std::vector<std::vector<Integer>> images(n, std::vector<Integer>(m, Integer(0)));
  for (std::size_t a = 0; a < n; ++a) {
    if (combos[a].size() != m) throw DomainError("sublattice: combination has wrong length");
    for (std::size_t j = 0; j < m; ++j) {
      if (combos[a][j] == 0) continue;
      c1[a] += combos[a][j] * base.c1(j);
      for (std::size_t k = 0; k < m; ++k) images[a][k] += combos[a][j] * base.pairing(j, k);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Integer s = 0;
      for (std::size_t k = 0; k < m; ++k) s += images[a][k] * combos[b][k];
      gram[a][b] = s;
    }
  }
  return IntersectionLattice(labels, std::move(gram), std::move(c1));
}

struct Signature {
  std::size_t b_plus = 0;
  std::size_t b_minus = 0;
  std::size_t b_zero = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of a symmetric integer matrix by exact congruence
/// diagonalization over Q. A zero diagonal with a nonzero off-diagonal entry
/// a_ij is handled by the basis change e_i -> e_i + e_j, which puts 2 a_ij on
/// the diagonal.
inline Signature signature(const IntMatrix& pairing) {
  const std::size_t n = pairing.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (pairing[i].size() != n) throw DomainError("signature: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(pairing[i][j]);
  }

  std::vector<std::size_t> live(n);
  for (std::size_t i = 0; i < n; ++i) live[i] = i;
  Signature sig;

  while (!live.empty()) {
    auto piv = std::find_if(live.begin(), live.end(), [&](std::size_t i) { return a[i][i] != 0; });
    if (piv == live.end()) {
      std::optional<std::pair<std::size_t, std::size_t>> hit;
      for (std::size_t i : live) {
        for (std::size_t j : live) {
          if (i != j && a[i][j] != 0) {
            hit = {i, j};
            break;
          }
        }
        if (hit) break;
      }
      if (!hit) {
        sig.b_zero += live.size();
        break;
      }
      auto [i, j] = *hit;
      for (std::size_t k : live) a[i][k] += a[j][k];
      for (std::size_t k : live) a[k][i] = a[i][k];
      a[i][i] += a[i][j];  // a[i][j] already absorbed a[j][j]
      piv = std::find(live.begin(), live.end(), i);
    }

    const std::size_t p = *piv;
    const Rational d = a[p][p];
    (d > 0 ? sig.b_plus : sig.b_minus) += 1;
    live.erase(piv);
    for (std::size_t r : live) {
      if (a[r][p] == 0) continue;
      const Rational f = a[r][p] / d;
      for (std::size_t c : live) {
        if (a[p][c] != 0) a[r][c] -= f * a[p][c];
      }
    }
  }
  return sig;
}

inline Signature signature(const IntersectionLattice& lat) { return signature(lat.pairing()); }

/// Adjoins an exceptional class orthogonal to every existing class.
inline IntersectionLattice blow_up(const IntersectionLattice& lat, std::string label = {}) {
  IntersectionLattice out = lat;
  if (label.empty()) {
    std::size_t n = lat.size() + 1;
    do label = "E" + std::to_string(n++);
    while (lat.find(label));
  }
  out.add_class(std::move(label), -1, 1);
  return out;
}

/// Contracts an exceptional class. A survivor C meeting it m times gets
/// C.C += m^2 and c1 += m; survivors C, D get C.D += (C.E)(D.E).
inline IntersectionLattice blow_down(const IntersectionLattice& lat, std::size_t cls) {
  if (cls >= lat.size()) throw DomainError("blow_down: no such class");
  if (!lat.is_exceptional(cls)) {
    throw DomainError("blow_down: " + lat.label(cls) + " is not exceptional (needs C.C = -1, c1 = 1)");
  }
  IntersectionLattice out = lat;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (i == cls) continue;
    const Integer& mi = lat.pairing(i, cls);
    if (mi == 0) continue;
    for (std::size_t j = 0; j < lat.size(); ++j) {
      if (j == cls) continue;
      const Integer& mj = lat.pairing(j, cls);
      if (mj != 0 && j <= i) out.set_pairing(i, j, lat.pairing(i, j) + mi * mj);
    }
  }
  std::vector<Integer> c1 = lat.c1();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (i != cls) c1[i] += lat.pairing(i, cls);
  }
  IntMatrix pairing = out.pairing();
  out = IntersectionLattice(lat.labels(), std::move(pairing), std::move(c1));
  out.remove_class(cls);
  return out;
}

inline IntersectionLattice blow_down(const IntersectionLattice& lat, const std::string& label) {
  return blow_down(lat, lat.index_of(label));
}

/// Two exceptional classes with E1.E2 >= 1 force b2+ = 1: E1 + E2 is a class
/// of nonnegative square with c1 = 2.
inline bool exceptional_pair_criterion(const IntersectionLattice& lat, const std::string& e1, const std::string& e2) {
  const std::size_t i = lat.index_of(e1), j = lat.index_of(e2);
  if (i == j) throw DomainError("exceptional_pair_criterion: classes must differ");
  if (!lat.is_exceptional(i) || !lat.is_exceptional(j)) {
    throw DomainError("exceptional_pair_criterion: both classes must be exceptional");
  }
  if (lat.pairing(i, j) < 1) return false;
  if (lat.c1(i) + lat.c1(j) != 2) throw StructuralError("c1(E1 + E2) != 2");
  return true;
}

struct ContactReplay {
  bool holds = false;
  /// Contracted classes, in order.
  std::vector<std::string> contracted;
  /// The exceptional pair found at the end of the replay, if any.
  std::optional<std::pair<std::string, std::string>> pair;
  Integer pair_intersection{0};
  Integer c1_sum{0};
  /// The lattice at the moment the pair was found.
  IntersectionLattice final_lattice;

  explicit operator bool() const { return holds; }
};

/// An exceptional class E' other than E~ that meets E~ or a chain class of a
/// resolved weighted blowup forces b2+ = 1. Contact through a chain class is
/// replayed: config classes are contracted in blowdown order (E~ first, then
/// whichever config class is exceptional) until a class met by E' becomes
/// exceptional, and the pair criterion is applied to it.
inline ContactReplay chain_contact_criterion(const IntersectionLattice& lat, const std::string& eprime,
                                             const BlowupConfig& config) {
  ContactReplay out;
  out.final_lattice = lat;
  if (eprime == config.exceptional) throw DomainError("chain_contact_criterion: E' must differ from E~");
  const std::size_t ep = lat.index_of(eprime);
  if (!lat.is_exceptional(ep)) throw DomainError("chain_contact_criterion: E' is not exceptional");

  std::vector<std::string> pending = config.labels();
  for (const auto& l : pending) lat.index_of(l);

  auto meets = [](const IntersectionLattice& l, const std::string& a, const std::string& b) {
    return l.pairing(l.index_of(a), l.index_of(b)) != 0;
  };

  auto finish = [&](const IntersectionLattice& l, const std::string& other) {
    out.holds = true;
    out.pair = {eprime, other};
    out.pair_intersection = l.pairing(l.index_of(eprime), l.index_of(other));
    out.c1_sum = l.c1(l.index_of(eprime)) + l.c1(l.index_of(other));
    out.final_lattice = l;
    if (out.pair_intersection >= 1) exceptional_pair_criterion(l, eprime, other);
  };

  if (meets(lat, eprime, config.exceptional)) {
    finish(lat, config.exceptional);
    return out;
  }
  bool any = std::any_of(pending.begin(), pending.end(), [&](const auto& l) { return meets(lat, eprime, l); });
  if (!any) return out;

  IntersectionLattice cur = lat;
  while (!pending.empty()) {
    for (const auto& l : pending) {
      std::size_t i = cur.index_of(l);
      if (meets(cur, eprime, l) && cur.is_exceptional(i)) {
        finish(cur, l);
        return out;
      }
    }
    auto next = std::find_if(pending.begin(), pending.end(),
                             [&](const auto& l) { return cur.is_exceptional(cur.index_of(l)); });
    if (next == pending.end()) throw StructuralError("replay stalled: no exceptional config class");
    cur = blow_down(cur, *next);
    out.contracted.push_back(*next);
    pending.erase(next);
  }
  throw StructuralError("replay contracted every config class without an exceptional contact");
}

}  // namespace hjtoric
