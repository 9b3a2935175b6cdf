#pragma once

// Two-dimensional lattice geometry of moment polygons.
//
// A Polygon is a boundary path traversed counterclockwise (interior on the
// left). Edges carry outward primitive conormals; vertex i joins edge i and
// edge i + 1. An open polygon has one more conormal than vertices (its first
// and last edges are rays); a closed polygon has as many conormals as
// vertices and vertex n-1 joins edge n-1 to edge 0. A wedge is an open
// polygon with a single vertex (its apex); the truncated local model carries
// two vertices and three conormals.

#include <cstddef>
#include <vector>

#include "hjtoric/arith.hpp"

namespace hjtoric {

struct LatticeVec {
  Integer x;
  Integer y;

  friend bool operator==(const LatticeVec&, const LatticeVec&) = default;
  friend LatticeVec operator+(const LatticeVec& a, const LatticeVec& b) { return {a.x + b.x, a.y + b.y}; }
  friend LatticeVec operator-(const LatticeVec& a, const LatticeVec& b) { return {a.x - b.x, a.y - b.y}; }
  friend LatticeVec operator-(const LatticeVec& a) { return {-a.x, -a.y}; }
};

struct LatticeVec3 {
  Integer x;
  Integer y;
  Integer z;

  friend bool operator==(const LatticeVec3&, const LatticeVec3&) = default;
};

struct RationalPoint {
  Rational x;
  Rational y;

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

struct RationalPoint3 {
  Rational x;
  Rational y;
  Rational z;

  friend bool operator==(const RationalPoint3&, const RationalPoint3&) = default;
};

inline Integer det(const LatticeVec& a, const LatticeVec& b) { return a.x * b.y - a.y * b.x; }
inline Integer dot(const LatticeVec& a, const LatticeVec& b) { return a.x * b.x + a.y * b.y; }

inline bool is_primitive(const LatticeVec& v) { return gcd(v.x, v.y) == 1; }

inline LatticeVec primitive(const LatticeVec& v) {
  Integer g = gcd(v.x, v.y);
  if (g == 0) throw DomainError("zero vector has no primitive direction");
  return {v.x / g, v.y / g};
}

/// 2x2 integer matrix with rows (a b) and (c d).
struct IntMatrix2 {
  Integer a{1}, b{0}, c{0}, d{1};

  Integer determinant() const { return a * d - b * c; }
  LatticeVec operator*(const LatticeVec& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  IntMatrix2 operator*(const IntMatrix2& m) const {
    return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
  }
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

/// An element of GL(2,Z) plus a rational translation. The matrix acts on
/// conormals; points move by its inverse transpose followed by the
/// translation, which keeps every edge's conormal consistent with its points.
class UnimodularAffineMap {
 public:
  UnimodularAffineMap() = default;
  explicit UnimodularAffineMap(IntMatrix2 m, RationalPoint t = {}) : matrix_(std::move(m)), translation_(std::move(t)) {
    Integer dt = matrix_.determinant();
    if (dt != 1 && dt != -1) throw DomainError("matrix is not unimodular (det " + dt.str() + ")");
  }

  const IntMatrix2& matrix() const { return matrix_; }
  const RationalPoint& translation() const { return translation_; }

  LatticeVec apply_conormal(const LatticeVec& n) const { return matrix_ * n; }

  RationalPoint apply_point(const RationalPoint& p) const {
    // inverse transpose of a unimodular matrix: (1/det) [[d, -c], [-b, a]]
    const Integer dt = matrix_.determinant();
    const IntMatrix2& m = matrix_;
    Rational x = Rational(m.d * dt) * p.x - Rational(m.c * dt) * p.y;
    Rational y = -Rational(m.b * dt) * p.x + Rational(m.a * dt) * p.y;
    return {x + translation_.x, y + translation_.y};
  }

  /// this after other
  UnimodularAffineMap compose(const UnimodularAffineMap& other) const {
    RationalPoint t = apply_point(other.translation_);
    return UnimodularAffineMap(matrix_ * other.matrix_, t);
  }

  friend bool operator==(const UnimodularAffineMap&, const UnimodularAffineMap&) = default;

 private:
  IntMatrix2 matrix_{};
  RationalPoint translation_{};
};

class Polygon {
 public:
  Polygon() = default;
  Polygon(std::vector<RationalPoint> vertices, std::vector<LatticeVec> conormals)
      : vertices_(std::move(vertices)), conormals_(std::move(conormals)) {
    for (auto& n : conormals_) n = primitive(n);
    if (conormals_.size() != vertices_.size() && conormals_.size() != vertices_.size() + 1) {
      throw DomainError("polygon needs n or n+1 conormals for n vertices");
    }
    if (closed() && vertices_.size() < 3) throw DomainError("closed polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (det(incoming(i), outgoing(i)) == 0) throw DomainError("parallel conormals at a vertex");
    }
  }

  bool closed() const { return conormals_.size() == vertices_.size(); }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return conormals_.size(); }
  const std::vector<RationalPoint>& vertices() const { return vertices_; }
  const std::vector<LatticeVec>& conormals() const { return conormals_; }

  /// Conormal of the edge arriving at vertex i.
  const LatticeVec& incoming(std::size_t i) const { return conormals_.at(i); }
  /// Conormal of the edge leaving vertex i.
  const LatticeVec& outgoing(std::size_t i) const { return conormals_.at((i + 1) % conormals_.size()); }

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  std::vector<RationalPoint> vertices_;
  std::vector<LatticeVec> conormals_;
};

using Wedge = Polygon;

inline Wedge make_wedge(RationalPoint apex, LatticeVec first, LatticeVec second) {
  return Wedge({std::move(apex)}, {std::move(first), std::move(second)});
}

inline Polygon apply_map(const UnimodularAffineMap& m, const Polygon& poly) {
  std::vector<RationalPoint> vs;
  std::vector<LatticeVec> ns;
  for (const auto& v : poly.vertices()) vs.push_back(m.apply_point(v));
  for (const auto& n : poly.conormals()) ns.push_back(m.apply_conormal(n));
  return Polygon(std::move(vs), std::move(ns));
}

inline LatticeVec apply_map(const UnimodularAffineMap& m, const LatticeVec& conormal) {
  return m.apply_conormal(conormal);
}

/// Order of the cyclic quotient singularity at a vertex: |det| of its conormals.
inline Integer vertex_order(const Polygon& poly, std::size_t vertex = 0) {
  if (vertex >= poly.vertex_count()) throw DomainError("no such vertex");
  return abs_value(det(poly.incoming(vertex), poly.outgoing(vertex)));
}

inline bool is_smooth_vertex(const Polygon& poly, std::size_t vertex = 0) { return vertex_order(poly, vertex) == 1; }

enum class Anchor { incoming, outgoing };

struct VertexNormalization {
  UnimodularAffineMap map;
  Wedge standard;
  Integer order;
  Integer k;
};

/// Maps the vertex to the origin with the anchor conormal sent to (0,1) and
/// the other one to (r,-k), 1 <= k < r (k = 0 when r = 1). The map may
/// reverse orientation; which edge plays the anchor decides between k and
/// its inverse mod r.
inline VertexNormalization normalize_vertex(const Polygon& poly, std::size_t vertex = 0,
                                            Anchor anchor = Anchor::incoming) {
  if (vertex >= poly.vertex_count()) throw DomainError("no such vertex");
  const bool in_first = anchor == Anchor::incoming;
  const LatticeVec& a = in_first ? poly.incoming(vertex) : poly.outgoing(vertex);
  const LatticeVec& b = in_first ? poly.outgoing(vertex) : poly.incoming(vertex);

  Bezout bz = ext_gcd(a.x, a.y);  // a is primitive, so bz.g == 1
  IntMatrix2 m{a.y, -a.x, bz.x, bz.y};
  LatticeVec img = m * b;  // img.x == -det(a, b)
  if (img.x < 0) {
    m.a = -m.a;
    m.b = -m.b;
    img.x = -img.x;
  }
  const Integer r = img.x;
  const Integer k = mod(-img.y, r);
  // shear (0,1) -> (0,1), (r, w) -> (r, w + c r) with w + c r = -k
  const Integer c = (-k - img.y) / r;
  IntMatrix2 shear{1, 0, c, 1};
  IntMatrix2 full = shear * m;

  UnimodularAffineMap linear(full);
  RationalPoint moved = linear.apply_point(poly.vertices()[vertex]);
  UnimodularAffineMap map(full, {-moved.x, -moved.y});
  Wedge standard = in_first ? make_wedge({0, 0}, {0, 1}, {r, -k}) : make_wedge({0, 0}, {r, -k}, {0, 1});
  return {map, standard, r, k};
}

/// Primitive direction of the edge leaving/arriving at a vertex, pointing
/// away from the vertex.
inline LatticeVec edge_direction_away(const LatticeVec& edge, const LatticeVec& other_at_vertex) {
  LatticeVec d{-edge.y, edge.x};
  if (dot(other_at_vertex, d) > 0) d = -d;
  return d;
}

/// Lattice length of a bounded edge; edges are primitive multiples.
inline Rational lattice_length(const RationalPoint& from, const RationalPoint& to, const LatticeVec& conormal) {
  LatticeVec dir{-conormal.y, conormal.x};
  Rational dx = to.x - from.x, dy = to.y - from.y;
  Rational t = dir.x != 0 ? dx / Rational(dir.x) : dy / Rational(dir.y);
  return t < 0 ? Rational(-t) : t;
}

/// Replaces a smooth vertex by an edge whose conormal is the sum of the two
/// conormals at the vertex, cutting lattice length `size` off each incident
/// edge. The new edge is inserted at index vertex + 1; the vertex becomes two
/// vertices at indices vertex and vertex + 1.
inline Polygon corner_cut(const Polygon& poly, std::size_t vertex, const Rational& size) {
  if (vertex >= poly.vertex_count()) throw DomainError("corner_cut: no such vertex");
  if (size <= 0) throw DomainError("corner_cut: size must be positive");
  if (!is_smooth_vertex(poly, vertex)) throw DomainError("corner_cut: vertex is not smooth");

  const std::size_t n = poly.vertex_count();
  const LatticeVec& in = poly.incoming(vertex);
  const LatticeVec& out = poly.outgoing(vertex);
  const RationalPoint& v = poly.vertices()[vertex];

  auto check_fits = [&](std::size_t edge, std::size_t other_vertex, bool bounded) {
    if (!bounded) return;
    Rational len = lattice_length(v, poly.vertices()[other_vertex], poly.conormals()[edge]);
    if (size > len) throw DomainError("corner_cut: size exceeds an incident edge");
  };
  const bool in_bounded = poly.closed() || vertex > 0;
  const bool out_bounded = poly.closed() || vertex + 1 < n;
  check_fits(vertex, (vertex + n - 1) % n, in_bounded);
  check_fits((vertex + 1) % poly.edge_count(), (vertex + 1) % n, out_bounded);

  LatticeVec back = edge_direction_away(in, out);
  LatticeVec fwd = edge_direction_away(out, in);
  RationalPoint v1{v.x + size * Rational(back.x), v.y + size * Rational(back.y)};
  RationalPoint v2{v.x + size * Rational(fwd.x), v.y + size * Rational(fwd.y)};

  std::vector<RationalPoint> vs = poly.vertices();
  std::vector<LatticeVec> ns = poly.conormals();
  vs[vertex] = v1;
  vs.insert(vs.begin() + static_cast<std::ptrdiff_t>(vertex) + 1, v2);
  ns.insert(ns.begin() + static_cast<std::ptrdiff_t>(vertex) + 1, in + out);
  return Polygon(std::move(vs), std::move(ns));
}

/// Self-intersection of the sphere over a bounded edge with smooth endpoints:
/// prev + next = -s * n.
inline Integer edge_self_intersection(const Polygon& poly, std::size_t edge) {
  const std::size_t m = poly.edge_count();
  if (!poly.closed() && (edge == 0 || edge + 1 >= m)) throw DomainError("edge is unbounded");
  const LatticeVec& prev = poly.conormals()[(edge + m - 1) % m];
  const LatticeVec& cur = poly.conormals()[edge];
  const LatticeVec& next = poly.conormals()[(edge + 1) % m];
  LatticeVec sum = prev + next;
  if (det(sum, cur) != 0) throw DomainError("edge endpoints are not smooth");
  Integer s = cur.x != 0 ? sum.x / cur.x : sum.y / cur.y;
  return -s;
}

struct LocalModelData {
  Integer alpha;
  Integer beta;
};

inline LocalModelData local_model_data(const Integer& p, const Integer& q, const Integer& r) {
  if (p < 1 || q < 1 || r < 1) throw DomainError("weights must be positive");
  if (gcd(p, r) != 1 || gcd(q, r) != 1 || gcd(p, q) != 1) throw DomainError("weights must be pairwise coprime");
  Bezout bz = ext_gcd(p, r);
  return {bz.x, bz.y};
}

/// Moment wedge of the reduced space of the (p, q, -r) circle action on C^3
/// at level eps. eps = 0 gives the wedge with conormals (0,-1), (-r, q*alpha);
/// eps > 0 truncates it by the conormal (-p, -q*beta) where
/// alpha*p + beta*r = 1.
inline Wedge local_model_wedge(const Integer& p, const Integer& q, const Integer& r, const Rational& eps) {
  if (eps < 0) throw DomainError("local_model_wedge: level must be nonnegative");
  auto [alpha, beta] = local_model_data(p, q, r);
  LatticeVec bottom{0, -1};
  LatticeVec side{-r, q * alpha};
  if (eps == 0) return make_wedge({0, 0}, side, bottom);
  LatticeVec cut{-p, -q * beta};
  RationalPoint top{-eps * Rational(beta) / Rational(p), eps / Rational(q)};
  return Wedge({top, {0, 0}}, {side, cut, bottom});
}

/// The affine embedding (a, b) -> (a r - b q alpha + eps/p, b, a p + b q beta)
/// of the wedge plane onto px + qy - rz = eps.
inline RationalPoint3 phi_embed(const Integer& p, const Integer& q, const Integer& r, const Rational& eps,
                                const Rational& a, const Rational& b) {
  auto [alpha, beta] = local_model_data(p, q, r);
  return {a * Rational(r) - b * Rational(q * alpha) + eps / Rational(p), b, a * Rational(p) + b * Rational(q * beta)};
}

inline Polygon standard_quadrant() { return make_wedge({0, 0}, {-1, 0}, {0, -1}); }

}  // namespace hjtoric
