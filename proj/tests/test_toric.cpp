#include <gtest/gtest.h>

#include <random>

#include "hjtoric/toric.hpp"

using namespace hjtoric;

namespace {

UnimodularAffineMap random_map(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> t(-3, 3), pick(0, 2), num(-9, 9), den(1, 5);
  IntMatrix2 m{1, 0, 0, 1};
  for (int i = 0; i < 6; ++i) {
    switch (pick(rng)) {
      case 0: m = IntMatrix2{1, t(rng), 0, 1} * m; break;
      case 1: m = IntMatrix2{1, 0, t(rng), 1} * m; break;
      default: m = IntMatrix2{0, 1, 1, 0} * m; break;
    }
  }
  return UnimodularAffineMap(m, {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))});
}

// every bounded edge keeps a constant value of <conormal, point> along it
bool edges_consistent(const Polygon& poly) {
  const std::size_t n = poly.vertex_count();
  for (std::size_t i = 0; i + 1 < n || (poly.closed() && i < n); ++i) {
    const auto& a = poly.vertices()[i];
    const auto& b = poly.vertices()[(i + 1) % n];
    const LatticeVec& c = poly.outgoing(i);
    if (Rational(c.x) * a.x + Rational(c.y) * a.y != Rational(c.x) * b.x + Rational(c.y) * b.y) return false;
  }
  return true;
}

}  // namespace

TEST(Polygon, PrimitivizesAndValidates) {
  Polygon w = make_wedge({0, 0}, {-2, 0}, {0, -3});
  EXPECT_EQ(w.conormals()[0], (LatticeVec{-1, 0}));
  EXPECT_EQ(w.conormals()[1], (LatticeVec{0, -1}));
  EXPECT_THROW(make_wedge({0, 0}, {1, 2}, {-2, -4}), DomainError);
  EXPECT_THROW(Polygon({{0, 0}, {1, 0}}, {{0, -1}, {1, 0}}), DomainError);
  EXPECT_THROW(Polygon({{0, 0}}, {{0, -1}, {1, 0}, {1, 1}}), DomainError);
  EXPECT_THROW(UnimodularAffineMap(IntMatrix2{2, 0, 0, 1}), DomainError);
}

TEST(ApplyMap, Identity) {
  UnimodularAffineMap id(IntMatrix2{1, 0, 0, 1});
  Polygon w = make_wedge({Rational(1, 2), 3}, {0, 1}, {5, -2});
  EXPECT_EQ(apply_map(id, w), w);
}

TEST(ApplyMap, ShearToStandardForm) {
  for (int r = 2; r <= 25; ++r) {
    for (int p = 1; p < r; ++p) {
      for (int q = 1; q < r; ++q) {
        if (gcd(p, r) != 1 || gcd(q, r) != 1 || gcd(p, q) != 1) continue;
        const Integer alpha = ext_gcd(p, r).x;
        const Integer k = mod(q * alpha, r);
        int hits = 0;
        for (int c = -3 * r; c <= 3 * r; ++c) {
          LatticeVec img = apply_map(UnimodularAffineMap(IntMatrix2{-1, 0, c, -1}), LatticeVec{-r, q * alpha});
          EXPECT_EQ(img.x, r);
          if (img.y <= -1 && img.y > -r) {
            ++hits;
            EXPECT_EQ(img.y, -k);
          }
        }
        EXPECT_EQ(hits, 1);
      }
    }
  }
}

TEST(ApplyMap, FultonRouteMatrix) {
  UnimodularAffineMap m(IntMatrix2{0, -1, -1, 1});
  for (int p = 2; p < 30; ++p) {
    for (int q = 1; q < p; ++q) {
      if (gcd(p, q) != 1) continue;
      EXPECT_EQ(apply_map(m, LatticeVec{-q, -p}), (LatticeVec{p, -(p - q)}));
    }
  }
}

TEST(SmoothVertex, Examples) {
  EXPECT_TRUE(is_smooth_vertex(standard_quadrant()));
  for (int r = 2; r < 10; ++r) EXPECT_FALSE(is_smooth_vertex(make_wedge({0, 0}, {0, 1}, {r, -1})));
  EXPECT_FALSE(is_smooth_vertex(make_wedge({0, 0}, {0, -1}, {-4, -7})));
  EXPECT_EQ(vertex_order(make_wedge({0, 0}, {0, -1}, {-4, -7})), 4);
}

TEST(NormalizeVertex, LocalModelBottomAnchor) {
  for (int r = 2; r <= 30; ++r) {
    for (int p = 1; p < r; ++p) {
      for (int q = 1; q <= r; ++q) {
        if (gcd(p, r) != 1 || gcd(q, r) != 1 || gcd(p, q) != 1) continue;
        Wedge w = local_model_wedge(p, q, r, 0);
        auto n = normalize_vertex(w, 0, Anchor::outgoing);
        const Integer alpha = ext_gcd(p, r).x;
        EXPECT_EQ(n.order, r);
        EXPECT_EQ(n.k, mod(q * alpha, r));
        EXPECT_GE(n.k, 1);
        EXPECT_LT(n.k, r);
        EXPECT_EQ(apply_map(n.map, w), n.standard);
        EXPECT_EQ(n.standard.conormals()[1], (LatticeVec{0, 1}));
      }
    }
  }
}

TEST(NormalizeVertex, AlreadyStandardIsIdentity) {
  for (int r = 2; r < 20; ++r) {
    for (int k = 1; k < r; ++k) {
      if (gcd(r, k) != 1) continue;
      Wedge w = make_wedge({0, 0}, {0, 1}, {r, -k});
      auto n = normalize_vertex(w);
      EXPECT_EQ(n.map, UnimodularAffineMap(IntMatrix2{1, 0, 0, 1}));
      EXPECT_EQ(n.standard, w);
      EXPECT_EQ(n.k, k);
    }
  }
}

TEST(NormalizeVertex, WeightedBlowupCorner) {
  Wedge w = make_wedge({0, 0}, {-1, 0}, {-4, -7});
  auto n = normalize_vertex(w);
  EXPECT_EQ(n.standard, make_wedge({0, 0}, {0, 1}, {7, -3}));
  EXPECT_EQ(apply_map(n.map, w), n.standard);
  EXPECT_EQ(n.map.matrix().determinant(), -1);
}

TEST(NormalizeVertex, AnchorsGiveInverseResidues) {
  std::mt19937_64 rng(9001);
  for (int r = 2; r <= 40; ++r) {
    for (int k = 1; k < r; ++k) {
      if (gcd(r, k) != 1) continue;
      auto g = random_map(rng);
      Wedge w = apply_map(g, make_wedge({0, 0}, {0, 1}, {r, -k}));
      auto a = normalize_vertex(w, 0, Anchor::incoming);
      auto b = normalize_vertex(w, 0, Anchor::outgoing);
      EXPECT_EQ(a.k, k);
      EXPECT_EQ(mod(a.k * b.k, r), 1);
      EXPECT_EQ(apply_map(a.map, w), a.standard);
      EXPECT_EQ(apply_map(b.map, w), b.standard);
      // idempotent
      auto again = normalize_vertex(a.standard);
      EXPECT_EQ(again.map, UnimodularAffineMap(IntMatrix2{1, 0, 0, 1}));
    }
  }
}

TEST(ApplyMap, DeterminantAndEdgesInvariant) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> d(-12, 12);
  for (int t = 0; t < 300; ++t) {
    LatticeVec a{d(rng), d(rng)}, b{d(rng), d(rng)};
    if (det(a, b) == 0 || a == LatticeVec{0, 0} || b == LatticeVec{0, 0}) continue;
    Wedge w = make_wedge({Rational(d(rng), 3), Rational(d(rng), 7)}, a, b);
    auto g = random_map(rng);
    Wedge img = apply_map(g, w);
    EXPECT_EQ(vertex_order(img), vertex_order(w));
  }
  Polygon tri({{0, 0}, {3, 0}, {0, 3}}, {{-1, 0}, {0, -1}, {1, 1}});
  for (int t = 0; t < 50; ++t) {
    Polygon img = apply_map(random_map(rng), tri);
    EXPECT_TRUE(edges_consistent(img));
    for (std::size_t v = 0; v < 3; ++v) EXPECT_TRUE(is_smooth_vertex(img, v));
  }
}

TEST(ApplyMap, Composition) {
  std::mt19937_64 rng(5);
  Polygon w = make_wedge({1, 2}, {0, 1}, {5, -2});
  for (int t = 0; t < 50; ++t) {
    auto f = random_map(rng), g = random_map(rng);
    EXPECT_EQ(apply_map(f.compose(g), w), apply_map(f, apply_map(g, w)));
  }
}

TEST(CornerCut, QuadrantGivesMinusOneMinusOne) {
  Polygon cut = corner_cut(standard_quadrant(), 0, 1);
  ASSERT_EQ(cut.edge_count(), 3u);
  EXPECT_EQ(cut.conormals()[1], (LatticeVec{-1, -1}));
  EXPECT_EQ(cut.vertices()[0], (RationalPoint{0, 1}));
  EXPECT_EQ(cut.vertices()[1], (RationalPoint{1, 0}));
  EXPECT_EQ(edge_self_intersection(cut, 1), -1);
}

TEST(CornerCut, SecondCutAtRecreatedCorner) {
  Polygon once = corner_cut(standard_quadrant(), 0, 2);
  Polygon twice = corner_cut(once, 1, 1);
  EXPECT_EQ(twice.conormals()[2], (LatticeVec{-1, -2}));
  EXPECT_EQ(edge_self_intersection(twice, 1), -2);
  EXPECT_EQ(edge_self_intersection(twice, 2), -1);
}

TEST(CornerCut, Rejections) {
  Polygon once = corner_cut(standard_quadrant(), 0, 2);
  EXPECT_THROW(corner_cut(once, 1, 3), DomainError);
  EXPECT_THROW(corner_cut(once, 1, 0), DomainError);
  EXPECT_THROW(corner_cut(once, 5, 1), DomainError);
  EXPECT_THROW(corner_cut(make_wedge({0, 0}, {0, 1}, {3, -1}), 0, 1), DomainError);
  EXPECT_NO_THROW(corner_cut(once, 1, 2));
}

TEST(CornerCut, AddsOneEdgeWithSmoothEnds) {
  std::mt19937_64 rng(31337);
  Polygon poly = standard_quadrant();
  Rational size = 1;
  for (int step = 0; step < 12; ++step) {
    for (std::size_t v = 0; v < poly.vertex_count(); ++v) ASSERT_TRUE(is_smooth_vertex(poly, v));
    std::uniform_int_distribution<std::size_t> pick(0, poly.vertex_count() - 1);
    const std::size_t v = pick(rng);
    size /= 2;
    Polygon next = corner_cut(poly, v, size);
    EXPECT_EQ(next.edge_count(), poly.edge_count() + 1);
    EXPECT_TRUE(is_smooth_vertex(next, v));
    EXPECT_TRUE(is_smooth_vertex(next, v + 1));
    EXPECT_TRUE(edges_consistent(next));
    poly = next;
  }
  Polygon tri({{0, 0}, {4, 0}, {0, 4}}, {{-1, 0}, {0, -1}, {1, 1}});
  Polygon hex = corner_cut(corner_cut(corner_cut(tri, 0, 1), 2, 1), 4, 1);
  EXPECT_EQ(hex.edge_count(), 6u);
  for (std::size_t e = 0; e < 6; ++e) EXPECT_EQ(edge_self_intersection(hex, e), -1);
}

TEST(LocalModel, UnitOrderConormals) {
  for (int p = 1; p < 12; ++p) {
    for (int q = 1; q < 12; ++q) {
      if (gcd(p, q) != 1) continue;
      auto [alpha, beta] = local_model_data(p, q, 1);
      EXPECT_EQ(alpha, 0);
      EXPECT_EQ(beta, 1);
      Wedge w = local_model_wedge(p, q, 1, Rational(1, 3));
      ASSERT_EQ(w.edge_count(), 3u);
      EXPECT_EQ(w.conormals()[0], (LatticeVec{-1, 0}));
      EXPECT_EQ(w.conormals()[1], primitive(LatticeVec{-p, -q}));
      EXPECT_EQ(w.conormals()[2], (LatticeVec{0, -1}));
      EXPECT_EQ(local_model_wedge(p, q, 1, 0), standard_quadrant());
    }
  }
}

TEST(LocalModel, LevelZeroConormals) {
  for (int r = 2; r <= 15; ++r) {
    for (int p = 1; p < r; ++p) {
      for (int q = 1; q < r; ++q) {
        if (gcd(p, r) != 1 || gcd(q, r) != 1 || gcd(p, q) != 1) continue;
        Wedge w = local_model_wedge(p, q, r, 0);
        const Integer alpha = ext_gcd(p, r).x;
        EXPECT_EQ(w.conormals()[0], primitive(LatticeVec{-r, q * alpha}));
        EXPECT_EQ(w.conormals()[1], (LatticeVec{0, -1}));
        EXPECT_EQ(vertex_order(w), r);
      }
    }
  }
  EXPECT_THROW(local_model_wedge(2, 3, 4, 0), DomainError);
  EXPECT_THROW(local_model_wedge(2, 3, 5, -1), DomainError);
}

TEST(LocalModel, TruncatedWedgeEdges) {
  // the eps > 0 wedge is consistent, and its two vertices embed on the plane
  for (int r = 1; r <= 9; ++r) {
    for (int p = 1; p <= 9; ++p) {
      for (int q = 1; q <= 9; ++q) {
        if (gcd(p, r) != 1 || gcd(q, r) != 1 || gcd(p, q) != 1) continue;
        const Rational eps(1, 5);
        Wedge w = local_model_wedge(p, q, r, eps);
        EXPECT_TRUE(edges_consistent(w));
        for (const auto& v : w.vertices()) {
          auto x = phi_embed(p, q, r, eps, v.x, v.y);
          EXPECT_EQ(Rational(p) * x.x + Rational(q) * x.y - Rational(r) * x.z, eps);
        }
      }
    }
  }
}

TEST(PhiEmbed, QuotedImages) {
  for (int r = 1; r <= 12; ++r) {
    for (int p = 1; p <= 12; ++p) {
      for (int q = 1; q <= 12; ++q) {
        if (gcd(p, r) != 1 || gcd(q, r) != 1 || gcd(p, q) != 1) continue;
        const Integer alpha = ext_gcd(p, r).x;
        EXPECT_EQ(phi_embed(p, q, r, 0, 1, 0), (RationalPoint3{r, 0, p}));
        EXPECT_EQ(phi_embed(p, q, r, 0, Rational(q * alpha), r), (RationalPoint3{0, r, q}));
        EXPECT_EQ(phi_embed(p, q, r, Rational(3, 7), 0, 0), (RationalPoint3{Rational(3, 7 * p), 0, 0}));
      }
    }
  }
}

TEST(PhiEmbed, PlaneIdentityRandom) {
  std::mt19937_64 rng(123456789);
  std::uniform_int_distribution<int> num(-1000, 1000), den(1, 97);
  const int triples[][3] = {{1, 1, 1}, {2, 1, 3}, {3, 2, 5}, {4, 7, 1}, {7, 4, 9}, {5, 3, 11}};
  for (const auto& t : triples) {
    for (int i = 0; i < 100; ++i) {
      Rational eps(std::abs(num(rng)), den(rng)), a(num(rng), den(rng)), b(num(rng), den(rng));
      auto x = phi_embed(t[0], t[1], t[2], eps, a, b);
      EXPECT_EQ(Rational(t[0]) * x.x + Rational(t[1]) * x.y - Rational(t[2]) * x.z, eps);
    }
  }
}
