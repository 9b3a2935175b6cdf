#include <gtest/gtest.h>

#include "hjtoric/weighted_blowup.hpp"

using namespace hjtoric;

namespace {

std::vector<Integer> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

template <class F>
void for_coprime_pairs(int max_p, F f) {
  for (int p = 2; p <= max_p; ++p)
    for (int q = 1; q < p; ++q)
      if (gcd(p, q) == 1) f(p, q);
}

}  // namespace

TEST(FultonConfig, Examples) {
  auto a = fulton_config(2, 1);
  EXPECT_EQ(a.chain_p.self_intersections, ints({-2}));
  EXPECT_TRUE(a.chain_q.empty());
  auto b = fulton_config(7, 4);
  EXPECT_EQ(b.chain_p.self_intersections, ints({-3, -2, -2}));
  EXPECT_EQ(b.chain_q.self_intersections, ints({-4}));
  EXPECT_EQ(b.fulton_p.terms, ints({3, 2, 2}));
  EXPECT_EQ(b.fulton_q.terms, ints({4}));
  EXPECT_EQ(b.class_count(), 5u);
  auto c = fulton_config(1, 1);
  EXPECT_TRUE(c.chain_p.empty());
  EXPECT_TRUE(c.chain_q.empty());
  EXPECT_EQ(config_lattice(c).pairing(), (IntMatrix{{-1}}));
}

TEST(FultonConfig, Errors) {
  EXPECT_THROW(fulton_config(4, 7), DomainError);
  EXPECT_THROW(fulton_config(6, 4), DomainError);
  EXPECT_THROW(fulton_config(3, 3), DomainError);
  EXPECT_THROW(fulton_config(0, 1), DomainError);
  EXPECT_THROW(fulton_config(3, 1, 0), DomainError);
  EXPECT_THROW(fulton_config_at({3, 1, 1}, 2, 1), UnsupportedError);
  EXPECT_NO_THROW(fulton_config_at({1, 1, 1}, 2, 1));
}

TEST(FultonConfig, LatticeInvariants) {
  for_coprime_pairs(40, [](int p, int q) {
    const BlowupConfig c = fulton_config(p, q, 1, "t:");
    const IntersectionLattice lat = config_lattice(c);
    const std::size_t e = lat.index_of(c.exceptional);
    EXPECT_TRUE(lat.is_exceptional(e));
    std::size_t minus_one = 0, contacts = 0;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      minus_one += lat.self_intersection(i) == -1;
      EXPECT_EQ(lat.c1(i), 2 + lat.self_intersection(i));
      if (i != e) contacts += lat.pairing(e, i) != 0;
    }
    EXPECT_EQ(minus_one, 1u);
    EXPECT_EQ(contacts, (c.chain_p.empty() ? 0u : 1u) + (c.chain_q.empty() ? 0u : 1u));
    if (!c.chain_p.empty()) {
      EXPECT_EQ(lat.pairing(e, lat.index_of(c.chain_p.labels[c.contact_p()])), 1);
    }
    if (!c.chain_q.empty()) {
      EXPECT_EQ(lat.pairing(e, lat.index_of(c.chain_q.labels[c.contact_q()])), 1);
    }
    for (const auto& a : c.chain_p.labels)
      for (const auto& b : c.chain_q.labels) EXPECT_EQ(lat.pairing(lat.index_of(a), lat.index_of(b)), 0);
    EXPECT_EQ(signature(lat), (Signature{0, lat.size(), 0}));
    // the chains resolve the two orbifold points
    EXPECT_EQ(chain_order(c.chain_p), p);
    EXPECT_EQ(chain_order(c.chain_q), q);
  });
}

TEST(FultonConfig, OtherEndOfChainPStalls) {
  // E~ meeting the first (-3) class of 7/3 = [3,2,2] cannot be blown down
  BlowupConfig c = fulton_config(7, 4);
  IntersectionLattice lat = config_lattice(c);
  const std::size_t e = lat.index_of(c.exceptional);
  lat.set_pairing(e, lat.index_of(c.chain_p.labels.back()), 0);
  lat.set_pairing(e, lat.index_of(c.chain_p.labels.front()), 1);
  EXPECT_THROW(weighted_blowdown(lat, c), StructuralError);
}

TEST(McDuff, FourSeven) {
  auto s = mcduff_sequence(4, 7);
  EXPECT_EQ(s.multiplicities, ints({4, 3, 1, 1, 1}));
  EXPECT_EQ(s.runs, ints({1, 1, 3}));
  const std::vector<LatticeVec> cuts{{1, 1}, {1, 2}, {2, 3}, {3, 5}, {4, 7}};
  EXPECT_EQ(s.cuts, cuts);
}

TEST(McDuff, QEqualsOne) {
  for (int p = 1; p < 20; ++p) {
    auto s = mcduff_sequence(1, p);
    EXPECT_EQ(s.multiplicities, std::vector<Integer>(p, 1));
    EXPECT_EQ(s.cuts.back(), (LatticeVec{1, p}));
  }
  EXPECT_THROW(mcduff_sequence(7, 4), DomainError);
  EXPECT_THROW(mcduff_sequence(2, 4), DomainError);
}

TEST(McDuff, RecursionAndSumRule) {
  for_coprime_pairs(60, [](int p, int q) {
    auto s = mcduff_sequence(q, p);
    // a_i q_i <= q_{i-1} < (a_i + 1) q_i with q_0 = p, q_1 = q, ending when a_n q_n = q_{n-1}
    std::vector<Integer> distinct;
    for (const auto& m : s.multiplicities)
      if (distinct.empty() || distinct.back() != m) distinct.push_back(m);
    ASSERT_EQ(distinct.size(), s.runs.size());
    Integer prev = p;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      EXPECT_LE(s.runs[i] * distinct[i], prev);
      EXPECT_LT(prev, (s.runs[i] + 1) * distinct[i]);
      const Integer next = prev - s.runs[i] * distinct[i];
      if (i + 1 == distinct.size()) {
        EXPECT_EQ(next, 0);
      }
      prev = distinct[i];
    }
    Integer sum = 0;
    for (const auto& m : s.multiplicities) sum += m * m;
    EXPECT_EQ(sum, Integer(p) * q);
    EXPECT_EQ(s.cuts.back(), (LatticeVec{q, p}));
  });
}

TEST(McDuff, ToricSelfIntersectionsMatchReplay) {
  for_coprime_pairs(30, [](int p, int q) {
    auto s = mcduff_sequence(q, p);
    IntersectionLattice lat = mcduff_lattice(s);
    ASSERT_EQ(lat.size() + 2, s.polygon.edge_count());
    for (std::size_t e = 1; e + 1 < s.polygon.edge_count(); ++e) {
      EXPECT_EQ(lat.self_intersection(e - 1), edge_self_intersection(s.polygon, e));
      // neighbouring edges meet once, others are disjoint
      for (std::size_t f = 1; f + 1 < s.polygon.edge_count(); ++f) {
        if (f == e) continue;
        EXPECT_EQ(lat.pairing(e - 1, f - 1), (f + 1 == e || e + 1 == f) ? 1 : 0);
      }
    }
  });
}

TEST(McDuff, LatticeLabels) {
  auto lat = mcduff_lattice(mcduff_sequence(4, 7));
  EXPECT_EQ(lat.labels(), (std::vector<std::string>{"C(1,1)", "C(2,3)", "C(3,5)", "C(4,7)", "C(1,2)"}));
  EXPECT_EQ(lat.self_intersection(lat.index_of("C(4,7)")), -1);
}

TEST(CrossCheck, Examples) {
  auto a = cross_check_report(7, 4);
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(a.fulton.size(), 5u);
  EXPECT_EQ(a.mcduff.size(), 5u);
  auto b = cross_check_report(2, 1);
  EXPECT_TRUE(b.ok());
  EXPECT_EQ(b.mcduff.size(), 2u);
  auto c = cross_check_report(1, 1);
  EXPECT_TRUE(c.ok());
  EXPECT_EQ(c.mcduff.size(), 1u);
}

TEST(CrossCheck, AllToSixty) {
  for_coprime_pairs(60, [](int p, int q) { ASSERT_TRUE(cross_check(p, q)) << p << "," << q; });
}

TEST(Isomorphism, DetectsDifferences) {
  Chain a{{-1, -2, -3}, {"a", "b", "c"}};
  Chain b{{-2, -1, -3}, {"a", "b", "c"}};
  Chain c{{-3, -2, -1}, {"x", "y", "z"}};
  EXPECT_FALSE(isomorphic(chain_lattice(a), chain_lattice(b)));
  EXPECT_TRUE(isomorphic(chain_lattice(a), chain_lattice(c)));
  auto iso = find_isomorphism(chain_lattice(a), chain_lattice(c));
  ASSERT_TRUE(iso);
  EXPECT_EQ(*iso, (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_FALSE(isomorphic(config_lattice(fulton_config(7, 4)), config_lattice(fulton_config(7, 3))));
  EXPECT_FALSE(isomorphic(chain_lattice(a), IntersectionLattice{}));
}

TEST(WeightedBlowdown, Examples) {
  auto a = fulton_config(2, 1);
  auto ra = weighted_blowdown(config_lattice(a), a);
  EXPECT_TRUE(ra.lattice.empty());
  EXPECT_EQ(ra.steps.size(), 2u);
  auto b = fulton_config(7, 4);
  auto rb = weighted_blowdown(config_lattice(b), b);
  EXPECT_TRUE(rb.lattice.empty());
  EXPECT_EQ(rb.steps.size(), 5u);
  auto c = fulton_config(1, 1);
  auto rc = weighted_blowdown(config_lattice(c), c);
  EXPECT_TRUE(rc.lattice.empty());
  EXPECT_EQ(rc.steps.size(), 1u);
  for (const auto& s : rb.steps) EXPECT_EQ(s.self_intersection, -1);
  EXPECT_EQ(rb.steps.front().label, b.exceptional);
}

TEST(WeightedBlowdown, Errors) {
  auto c = fulton_config(7, 4);
  IntersectionLattice lat = config_lattice(c);
  IntersectionLattice bad = lat;
  bad.set_pairing(0, 0, -2);
  EXPECT_THROW(weighted_blowdown(bad, c), DomainError);
  EXPECT_THROW(weighted_blowdown(IntersectionLattice{}, c), DomainError);
  IntersectionLattice corrupt = lat;
  corrupt.set_pairing(1, 1, -5);  // first class of chain_p
  EXPECT_THROW(weighted_blowdown(corrupt, c), StructuralError);
}

TEST(WeightedBlowdown, AllToSixtyAndRoundTrip) {
  const IntersectionLattice base({"H1", "H2"}, {{0, 1}, {1, 0}}, {2, 0});
  for_coprime_pairs(60, [&](int p, int q) {
    auto report = cross_check_report(p, q);
    const BlowupConfig& c = report.config;
    auto r = weighted_blowdown(config_lattice(c), c);
    ASSERT_TRUE(r.lattice.empty());
    ASSERT_EQ(r.steps.size(), c.class_count());
    for (const auto& s : r.steps) ASSERT_EQ(s.self_intersection, -1);

    // McDuff replay, relabeled onto the config's classes, next to a base lattice
    auto iso = find_isomorphism(report.fulton, report.mcduff);
    ASSERT_TRUE(iso);
    const std::size_t n = report.fulton.size();
    IntMatrix m(n, std::vector<Integer>(n));
    std::vector<Integer> c1(n);
    for (std::size_t i = 0; i < n; ++i) {
      c1[i] = report.mcduff.c1((*iso)[i]);
      for (std::size_t j = 0; j < n; ++j) m[i][j] = report.mcduff.pairing((*iso)[i], (*iso)[j]);
    }
    IntersectionLattice replay = direct_sum(base, IntersectionLattice(report.fulton.labels(), m, c1));
    auto back = weighted_blowdown(replay, c);
    ASSERT_EQ(back.lattice.pairing(), base.pairing());
    ASSERT_EQ(back.lattice.c1(), base.c1());
  });
}
