#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gon/gon_format.hpp"
#include "gon/metrics.hpp"
#include "gon/polygon.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using gon::IncidenceGraph;
using gon::Part;
using gon::Ternary;

namespace {

// 8-cycle x0..x7 with four arcs x_i -- m_i -- x_{i+4}
IncidenceGraph make_odd_witness_n3() {
  gon::GraphBuilder b(3);
  for (int i = 0; i < 8; ++i)
    b.add_vertex("x" + std::to_string(i), i % 2 == 0 ? Part::Point : Part::Line);
  for (int i = 0; i < 8; ++i)
    b.add_edge("x" + std::to_string(i), "x" + std::to_string((i + 1) % 8));
  for (int i = 0; i < 4; ++i) {
    std::string m = "m" + std::to_string(i);
    b.add_vertex(m, i % 2 == 0 ? Part::Line : Part::Point);
    b.add_edge(m, "x" + std::to_string(i));
    b.add_edge(m, "x" + std::to_string(i + 4));
  }
  return b.build();
}

IncidenceGraph make_two_hexagons_shared_edge() {
  gon::GraphBuilder b = gon::GraphBuilder::from(testutil::make_cycle(3, 6));
  for (int i = 2; i <= 5; ++i)
    b.add_vertex("d" + std::to_string(i), i % 2 == 0 ? Part::Point : Part::Line);
  b.add_edge("c1", "d2").add_edge("d2", "d3").add_edge("d3", "d4").add_edge("d4", "d5");
  b.add_edge("d5", "c0");
  return b.build();
}

TEST(Axioms, Partial) {
  EXPECT_TRUE(gon::check_partial(testutil::make_cycle(3, 6)).verdict);
  auto four = gon::check_partial(testutil::make_cycle(3, 4));
  EXPECT_FALSE(four.verdict);
  ASSERT_EQ(four.failures.size(), 1u);
  EXPECT_EQ(four.failures[0].axiom, "girth");
  EXPECT_EQ(four.failures[0].witness.size(), 5u);  // closed walk of length 4
  EXPECT_FALSE(gon::check_partial(testutil::make_cycle(4, 6)).verdict);

  gon::GraphBuilder disc(3);
  disc.add_vertex("a", Part::Point).add_vertex("b", Part::Line);
  auto r = gon::check_partial(disc.build());
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(r.failures[0].axiom, "connected");
}

TEST(Axioms, Weak) {
  EXPECT_TRUE(gon::check_weak(testutil::make_fano()).verdict);
  EXPECT_TRUE(gon::check_weak(testutil::make_cycle(3, 6)).verdict);
  auto path = gon::check_weak(testutil::make_path(3, 6));
  EXPECT_FALSE(path.verdict);
  EXPECT_EQ(path.failures[0].axiom, "diameter");
  EXPECT_EQ(path.failures[0].witness.size(), 7u);
}

TEST(Axioms, Thick) {
  EXPECT_TRUE(gon::check_thick(testutil::make_fano()).verdict);
  auto hex = gon::check_thick(testutil::make_cycle(3, 6));
  EXPECT_FALSE(hex.verdict);
  EXPECT_EQ(hex.failures.size(), 6u);
  gon::GraphBuilder e(3);
  e.add_vertex("a", Part::Point).add_vertex("b", Part::Line).add_edge("a", "b");
  EXPECT_FALSE(gon::check_thick(e.build()).verdict);
}

TEST(Axioms, Nondegenerate) {
  auto yes = gon::check_nondegenerate(testutil::make_path(3, 6), 1000000);
  EXPECT_EQ(yes.verdict, Ternary::Yes);
  EXPECT_EQ(yes.witness.length(), 6);  // d(x0,x6) = 6 = n+3

  EXPECT_EQ(gon::check_nondegenerate(testutil::make_cycle(3, 6), 1000000).verdict, Ternary::No);
  auto two = gon::check_nondegenerate(make_two_hexagons_shared_edge(), 1000000);
  EXPECT_EQ(two.verdict, Ternary::Yes);
  EXPECT_GE(two.witness.length(), 8);
}

TEST(Arcs, LooseEnds) {
  EXPECT_EQ(gon::loose_ends(testutil::make_path(3, 6)),
            (std::vector<std::string>{"x0", "x6"}));
  EXPECT_TRUE(gon::loose_ends(testutil::make_cycle(3, 6)).empty());
  gon::GraphBuilder one(3);
  one.add_vertex("v", Part::Point);
  EXPECT_EQ(gon::loose_ends(one.build()), (std::vector<std::string>{"v"}));
}

TEST(Arcs, CleanArcsKnown) {
  auto hex = gon::clean_arcs(testutil::make_cycle(3, 6));
  EXPECT_EQ(hex.size(), 6u);
  for (const auto& a : hex) EXPECT_EQ(a.interior.size(), 1u);

  EXPECT_TRUE(gon::clean_arcs(testutil::make_fano()).empty());

  auto eight = gon::clean_arcs(testutil::make_cycle(4, 8));
  EXPECT_EQ(eight.size(), 8u);
  for (const auto& a : eight) EXPECT_EQ(a.interior.size(), 2u);

  EXPECT_EQ(gon::clean_arcs(testutil::make_path(3, 6)).size(), 5u);
}

TEST(Arcs, CleanArcsMatchOracle) {
  std::mt19937_64 rng(21);
  for (int n : {3, 4}) {
    for (int it = 0; it < 200; ++it) {
      int p = 1 + static_cast<int>(rng() % 5), l = 1 + static_cast<int>(rng() % 5);
      IncidenceGraph g = testutil::random_bipartite(rng, n, p, l, 0.3 + 0.1 * (it % 5));
      oracle::SmallGraph s = oracle::SmallGraph::from(g);
      std::set<std::vector<std::string>> expect;
      for (const auto& path : oracle::clean_arcs(s, n, s.full_mask())) {
        std::vector<std::string> ids;
        for (int v : path) ids.push_back(g.id_of(v));
        expect.insert(ids);
      }
      std::set<std::vector<std::string>> got;
      for (const auto& arc : gon::clean_arcs(g)) {
        std::vector<std::string> ids{arc.a};
        ids.insert(ids.end(), arc.interior.begin(), arc.interior.end());
        ids.push_back(arc.b);
        got.insert(ids);
      }
      EXPECT_EQ(got, expect) << gon::serialize_gon(g);
    }
  }
}

TEST(Open, HexagonCertificate) {
  IncidenceGraph hex = testutil::make_cycle(3, 6);
  auto r = gon::is_open(hex);
  ASSERT_TRUE(r.open);
  ASSERT_EQ(r.cert.steps.size(), 6u);
  EXPECT_EQ(r.cert.steps.back().kind, gon::HFStep::Kind::AddCleanArc);
  EXPECT_FALSE(r.cert.steps.back().relative);
  for (size_t i = 0; i + 1 < r.cert.steps.size(); ++i)
    EXPECT_EQ(r.cert.steps[i].kind, gon::HFStep::Kind::AddLooseEnd);
  gon::GraphBuilder empty(3);
  EXPECT_TRUE(gon::verify_hf_certificate(r.cert, empty.build(), hex).ok);
}

TEST(Open, FanoStuck) {
  auto r = gon::is_open(testutil::make_fano());
  EXPECT_FALSE(r.open);
  EXPECT_EQ(r.stuck.size(), 14u);
}

TEST(Open, EmptyGraph) {
  gon::GraphBuilder b(3);
  auto r = gon::is_open(b.build());
  EXPECT_TRUE(r.open);
  EXPECT_TRUE(r.cert.steps.empty());
}

TEST(Open, TenCycleNeedsRelativeArc) {
  IncidenceGraph ten = testutil::make_cycle(3, 10);
  auto r = gon::is_open(ten);
  ASSERT_TRUE(r.open);
  bool has_relative = false;
  for (const auto& s : r.cert.steps)
    if (s.kind == gon::HFStep::Kind::AddCleanArc && s.relative) has_relative = true;
  EXPECT_TRUE(has_relative);
  gon::GraphBuilder empty(3);
  EXPECT_TRUE(gon::verify_hf_certificate(r.cert, empty.build(), ten).ok);
}

TEST(Open, OverBase) {
  IncidenceGraph hex = testutil::make_cycle(3, 6);
  auto r = gon::is_open_over({"c2", "c3", "c4", "c5"}, {"c0", "c1"}, hex);
  EXPECT_TRUE(r.open);
  EXPECT_TRUE(gon::verify_hf_certificate(r.cert, hex.induced({"c0", "c1"}), hex).ok);

  IncidenceGraph wit = make_odd_witness_n3();
  std::vector<std::string> cycle, mids;
  for (int i = 0; i < 8; ++i) cycle.push_back("x" + std::to_string(i));
  for (int i = 0; i < 4; ++i) mids.push_back("m" + std::to_string(i));
  auto stuck = gon::is_open_over(cycle, mids, wit);
  EXPECT_FALSE(stuck.open);
  std::vector<std::string> sorted_cycle = cycle;
  std::sort(sorted_cycle.begin(), sorted_cycle.end());
  EXPECT_EQ(stuck.stuck, sorted_cycle);

  EXPECT_TRUE(gon::is_open_over({}, {"c0"}, hex).open);
  EXPECT_THROW(gon::is_open_over({"c0"}, {"c0"}, hex), gon::Error);
}

TEST(Closed, WitnessCycleIsClosedOverMidpoints) {
  IncidenceGraph wit = make_odd_witness_n3();
  std::vector<std::string> cycle, mids;
  for (int i = 0; i < 8; ++i) cycle.push_back("x" + std::to_string(i));
  for (int i = 0; i < 4; ++i) mids.push_back("m" + std::to_string(i));
  EXPECT_TRUE(gon::is_closed_over(cycle, mids, wit));
  EXPECT_FALSE(gon::is_closed_over(mids, cycle, wit));  // midpoints are arc interiors

  IncidenceGraph hex = testutil::make_cycle(3, 6);
  EXPECT_FALSE(gon::is_closed_over({"c1", "c2", "c3", "c4", "c5"}, {"c0"}, hex));
  EXPECT_THROW(gon::is_closed_over({"c0"}, {"c0", "c1"}, hex), gon::Error);

  gon::GraphBuilder iso(3);
  iso.add_vertex("a", Part::Point).add_vertex("b", Part::Line);
  EXPECT_FALSE(gon::is_closed_over({"a"}, {"b"}, iso.build()));  // isolated vertex is loose
}

TEST(Closed, FindClosedSets) {
  IncidenceGraph wit = make_odd_witness_n3();
  std::vector<std::string> mids;
  for (int i = 0; i < 4; ++i) mids.push_back("m" + std::to_string(i));
  auto sets = gon::find_closed_sets(mids, wit, 8);
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_EQ(sets[0].size(), 8u);
  EXPECT_EQ(sets[0][0], "x0");

  EXPECT_TRUE(gon::find_closed_sets(wit.ids(), wit, 8).empty());
  EXPECT_TRUE(gon::find_closed_sets({}, testutil::make_cycle(3, 6), 6).empty());
}

TEST(Closed, ClClosure) {
  IncidenceGraph wit = make_odd_witness_n3();
  std::vector<std::string> mids;
  for (int i = 0; i < 4; ++i) mids.push_back("m" + std::to_string(i));
  auto cl = gon::cl_closure(mids, wit, 8, 4);
  EXPECT_EQ(cl.size(), 12u);
  EXPECT_EQ(gon::cl_closure(cl, wit, 8, 4), cl);  // idempotent

  EXPECT_TRUE(gon::cl_closure({}, testutil::make_cycle(3, 6), 6, 3).empty());
  // rest of the hexagon is open over an edge and nothing is forced
  EXPECT_EQ(gon::cl_closure({"c0", "c1"}, testutil::make_cycle(3, 6), 6, 3),
            (std::vector<std::string>{"c0", "c1"}));

  IncidenceGraph path = testutil::make_path(3, 4);
  auto geo = gon::cl_closure({"x0", "x2"}, path, 4, 3);
  EXPECT_EQ(geo, (std::vector<std::string>{"x0", "x1", "x2"}));
}

TEST(Geodesics, Closure) {
  IncidenceGraph path = testutil::make_path(3, 6);
  EXPECT_EQ(gon::geodesic_closure(path, {"x0", "x2"}),
            (std::vector<std::string>{"x0", "x1", "x2"}));
  // distance 3 = n is not forced
  EXPECT_EQ(gon::geodesic_closure(path, {"x0", "x3"}),
            (std::vector<std::string>{"x0", "x3"}));
  // chained absorption: x0-x2 pulls x1, x2-x4 pulls x3
  EXPECT_EQ(gon::geodesic_closure(path, {"x0", "x2", "x4"}),
            (std::vector<std::string>{"x0", "x1", "x2", "x3", "x4"}));
  EXPECT_EQ(gon::geodesic_closure(path, {"x2"}), (std::vector<std::string>{"x2"}));
  IncidenceGraph hex = testutil::make_cycle(3, 6);
  EXPECT_EQ(gon::geodesic_closure(hex, {"c0", "c3"}),
            (std::vector<std::string>{"c0", "c3"}));
}

TEST(Cert, SerializeParseRoundTrip) {
  IncidenceGraph ten = testutil::make_cycle(3, 10);
  auto r = gon::is_open(ten);
  ASSERT_TRUE(r.open);
  std::string text = gon::serialize_hf_certificate(r.cert);
  gon::HFCertificate back = gon::parse_hf_certificate(text);
  EXPECT_EQ(gon::serialize_hf_certificate(back), text);
  gon::GraphBuilder empty(3);
  EXPECT_TRUE(gon::verify_hf_certificate(back, empty.build(), ten).ok);
}

TEST(Cert, RejectsBadArcDistance) {
  // hexagon minus one vertex is a path c1..c5; adding an arc c1-c3 has
  // endpoint distance 2 = n-1, not n+1
  IncidenceGraph hex = testutil::make_cycle(3, 6);
  gon::HFCertificate cert;
  cert.n = 3;
  cert.base = {"c1", "c2", "c3", "c4", "c5"};
  cert.steps.push_back(gon::HFStep::arc("c1", "c3", {"c0"}, false));
  IncidenceGraph base = hex.induced(cert.base);
  gon::GraphBuilder t = gon::GraphBuilder::from(base);
  t.add_vertex("c0", Part::Point).add_edge("c0", "c1").add_edge("c0", "c3");
  auto v = gon::verify_hf_certificate(cert, base, t.build());
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.failed_step, 0);

  cert.steps[0].relative = true;  // same step, valency-only mode
  EXPECT_TRUE(gon::verify_hf_certificate(cert, base, t.build()).ok);
}

TEST(Cert, EmptyCertificate) {
  IncidenceGraph hex = testutil::make_cycle(3, 6);
  gon::HFCertificate cert;
  cert.n = 3;
  cert.base = hex.ids();
  EXPECT_TRUE(gon::verify_hf_certificate(cert, hex, hex).ok);
  auto bad = gon::verify_hf_certificate(cert, hex, testutil::make_cycle(3, 8));
  EXPECT_FALSE(bad.ok);
}

TEST(Cert, ResultMustMatchTargetExactly) {
  IncidenceGraph hex = testutil::make_cycle(3, 6);
  auto r = gon::is_open(hex);
  gon::GraphBuilder empty(3);
  IncidenceGraph other = testutil::make_cycle(3, 6, "d");
  EXPECT_FALSE(gon::verify_hf_certificate(r.cert, empty.build(), other).ok);
}

TEST(Open, GreedyMatchesExhaustiveOracle) {
  std::mt19937_64 rng(22);
  int opens = 0;
  for (int n : {3, 4}) {
    for (int it = 0; it < 1500; ++it) {
      int p = 1 + static_cast<int>(rng() % 5), l = 1 + static_cast<int>(rng() % 4);
      IncidenceGraph g = testutil::random_bipartite(rng, n, p, l, 0.25 + 0.12 * (it % 5));
      bool expect = oracle::open_exhaustive(g);
      auto got = gon::is_open(g);
      ASSERT_EQ(got.open, expect) << "n=" << n << "\n" << gon::serialize_gon(g);
      opens += expect ? 1 : 0;
      if (got.open) {
        gon::GraphBuilder empty(n);
        EXPECT_TRUE(gon::verify_hf_certificate(got.cert, empty.build(), g).ok);
      }
    }
  }
  EXPECT_GT(opens, 300);
}

TEST(Open, RelativeGreedyMatchesOracle) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 600; ++it) {
    int p = 1 + static_cast<int>(rng() % 4), l = 1 + static_cast<int>(rng() % 4);
    IncidenceGraph g = testutil::random_bipartite(rng, 3, p, l, 0.35);
    auto ids = g.ids();
    uint32_t base_mask = 0;
    std::vector<std::string> A, B;
    for (size_t i = 0; i < ids.size(); ++i) {
      if (rng() % 3 == 0) {
        base_mask |= 1u << i;
        A.push_back(ids[i]);
      } else {
        B.push_back(ids[i]);
      }
    }
    bool expect = oracle::open_over_exhaustive(g, base_mask);
    auto got = gon::is_open_over(B, A, g);
    ASSERT_EQ(got.open, expect) << gon::serialize_gon(g);
    if (!got.open) {
      EXPECT_TRUE(gon::is_closed_over(got.stuck, A, g));
    }
  }
}

TEST(Closed, UnionOfClosedSetsIsClosed) {
  std::mt19937_64 rng(24);
  int pairs_checked = 0;
  for (int it = 0; it < 400 && pairs_checked < 40; ++it) {
    int p = 2 + static_cast<int>(rng() % 4), l = 2 + static_cast<int>(rng() % 4);
    IncidenceGraph g = testutil::random_bipartite(rng, 3, p, l, 0.5);
    auto ids = g.ids();
    std::vector<std::string> A;
    for (const auto& id : ids)
      if (rng() % 4 == 0) A.push_back(id);
    auto sets = gon::find_closed_sets(A, g, 8);
    for (size_t i = 0; i < sets.size(); ++i)
      for (size_t j = i + 1; j < sets.size(); ++j) {
        std::set<std::string> u(sets[i].begin(), sets[i].end());
        u.insert(sets[j].begin(), sets[j].end());
        EXPECT_TRUE(
            gon::is_closed_over({u.begin(), u.end()}, A, g))
            << gon::serialize_gon(g);
        ++pairs_checked;
      }
  }
}

TEST(Closed, ThreeDisjointSetsObstruction) {
  std::mt19937_64 rng(25);
  for (int it = 0; it < 300; ++it) {
    int p = 2 + static_cast<int>(rng() % 4), l = 2 + static_cast<int>(rng() % 4);
    IncidenceGraph g = testutil::random_bipartite(rng, 3, p, l, 0.45);
    if (!gon::is_open(g).open) continue;
    auto ids = g.ids();
    std::vector<std::string> A;
    for (const auto& id : ids)
      if (rng() % 4 == 0) A.push_back(id);
    if (A.empty()) continue;
    auto sets = gon::find_closed_sets(A, g, 6);
    auto neighbours_all = [&](const std::vector<std::string>& B) {
      std::set<std::string> bs(B.begin(), B.end());
      for (const auto& a : A) {
        bool hit = false;
        for (const auto& nb : g.neighbor_ids(a)) hit = hit || bs.count(nb) > 0;
        if (!hit) return false;
      }
      return true;
    };
    for (size_t i = 0; i < sets.size(); ++i)
      for (size_t j = i + 1; j < sets.size(); ++j)
        for (size_t k = j + 1; k < sets.size(); ++k) {
          std::set<std::string> all(sets[i].begin(), sets[i].end());
          all.insert(sets[j].begin(), sets[j].end());
          all.insert(sets[k].begin(), sets[k].end());
          if (all.size() != sets[i].size() + sets[j].size() + sets[k].size()) continue;
          if (!neighbours_all(sets[i]) || !neighbours_all(sets[j]) || !neighbours_all(sets[k]))
            continue;
          std::set<std::string> uni = all;
          uni.insert(A.begin(), A.end());
          EXPECT_FALSE(gon::is_open(g.induced({uni.begin(), uni.end()})).open)
              << gon::serialize_gon(g);
        }
  }
}

TEST(Open, HereditarilyOpenSpotCheck) {
  std::mt19937_64 rng(26);
  int checked = 0;
  for (int it = 0; it < 200 && checked < 30; ++it) {
    IncidenceGraph g = testutil::random_bipartite(rng, 3, 4, 4, 0.4);
    if (!gon::is_open(g).open) continue;
    ++checked;
    auto ids = g.ids();
    int m = static_cast<int>(ids.size());
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
      std::vector<std::string> keep;
      for (int i = 0; i < m; ++i)
        if (mask >> i & 1) keep.push_back(ids[i]);
      EXPECT_TRUE(gon::is_open(g.induced(keep)).open) << gon::serialize_gon(g);
    }
  }
}

}  // namespace
