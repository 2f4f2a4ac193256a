#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gon/gon_format.hpp"
#include "gon/rank.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using gon::IncidenceGraph;
using gon::Part;

namespace {

IncidenceGraph gamma4_plus_arc() {
  gon::GraphBuilder b = gon::GraphBuilder::from(testutil::make_path(3, 4));
  b.add_vertex("a0", Part::Line).add_edge("a0", "x0").add_edge("a0", "x4");
  return b.build();
}

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

IncidenceGraph complete_bipartite(int n, int p, int l) {
  gon::GraphBuilder b(n);
  for (int i = 0; i < p; ++i) b.add_vertex("a" + std::to_string(i), Part::Point);
  for (int j = 0; j < l; ++j) b.add_vertex("b" + std::to_string(j), Part::Line);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < l; ++j)
      b.add_edge("a" + std::to_string(i), "b" + std::to_string(j));
  return b.build();
}

long long rel_oracle(const IncidenceGraph& g, const std::vector<std::string>& base) {
  oracle::SmallGraph s = oracle::SmallGraph::from(g);
  uint32_t bm = 0;
  std::set<std::string> bs(base.begin(), base.end());
  for (int v = 0; v < s.nv; ++v)
    if (bs.count(s.ids[v])) bm |= 1u << v;
  return s.delta(s.full_mask(), g.n()) - s.delta(bm, g.n());
}

TEST(Delta, KnownValues) {
  EXPECT_EQ(gon::delta(testutil::make_path(3, 6)), 8);
  EXPECT_EQ(gon::delta(testutil::make_cycle(3, 6)), 6);
  EXPECT_EQ(gon::delta(testutil::make_path(4, 7)), 10);
}

TEST(Delta, PathFormula) {
  for (int n : {3, 4, 5})
    for (int k = 1; k <= 8; ++k)
      EXPECT_EQ(gon::delta(testutil::make_path(n, k)), n + k - 1) << n << " " << k;
}

TEST(Delta, RelativeKnownValues) {
  gon::GraphBuilder loose = gon::GraphBuilder::from(testutil::make_path(3, 6));
  loose.add_vertex("y", Part::Line).add_edge("y", "x0");
  EXPECT_EQ(gon::delta_relative(loose.build(), testutil::make_path(3, 6).ids()), 1);

  gon::GraphBuilder arc = gon::GraphBuilder::from(testutil::make_path(3, 6));
  arc.add_vertex("a0", Part::Line).add_edge("a0", "x0").add_edge("a0", "x6");
  EXPECT_EQ(gon::delta_relative(arc.build(), testutil::make_path(3, 6).ids()), 0);

  // hexagon over the same six vertices carrying one edge fewer
  IncidenceGraph hex = testutil::make_cycle(3, 6);
  gon::GraphBuilder path_base(3);
  for (const auto& id : hex.ids()) path_base.add_vertex(id, hex.part(id));
  for (int i = 0; i + 1 < 6; ++i)
    path_base.add_edge("c" + std::to_string(i), "c" + std::to_string(i + 1));
  EXPECT_EQ(gon::delta_relative(hex, path_base.build()), -1);
}

TEST(Delta, AdditivityAndLocalMoves) {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 100; ++it) {
    int n = it % 2 ? 3 : 4;
    IncidenceGraph g1 = testutil::random_bipartite(rng, n, 1 + it % 4, 1 + it % 3, 0.4);
    IncidenceGraph g2 = testutil::random_bipartite(rng, n, 1 + it % 3, 1 + it % 4, 0.4);
    gon::GraphBuilder both(n);
    for (const auto& id : g1.ids()) both.add_vertex("p." + id, g1.part(id));
    for (const auto& [a, b] : g1.edges()) both.add_edge("p." + a, "p." + b);
    for (const auto& id : g2.ids()) both.add_vertex("q." + id, g2.part(id));
    for (const auto& [a, b] : g2.edges()) both.add_edge("q." + a, "q." + b);
    EXPECT_EQ(gon::delta(both.build()), gon::delta(g1) + gon::delta(g2));

    gon::GraphBuilder pend = gon::GraphBuilder::from(g1);
    std::string anchor = g1.ids()[rng() % g1.ids().size()];
    pend.add_vertex("zz", gon::opposite(g1.part(anchor))).add_edge("zz", anchor);
    EXPECT_EQ(gon::delta(pend.build()), gon::delta(g1) + 1);
  }
}

TEST(Delta, CleanArcIsFree) {
  std::mt19937_64 rng(32);
  int built = 0;
  for (int it = 0; it < 300 && built < 60; ++it) {
    int n = 3 + static_cast<int>(rng() % 3);
    IncidenceGraph g = testutil::random_bipartite(rng, n, 3, 3, 0.4);
    auto ids = g.ids();
    std::string u = ids[rng() % ids.size()], w = ids[rng() % ids.size()];
    // a path of n-1 edges joins equal parts for odd n, opposite for even
    bool same = g.part(u) == g.part(w);
    if (u == w || same != (g.n() % 2 == 1)) continue;
    gon::GraphBuilder b = gon::GraphBuilder::from(g);
    Part prev_part = g.part(u);
    std::string prev = u;
    for (int i = 0; i < g.n() - 2; ++i) {
      std::string mid = "arc" + std::to_string(i);
      b.add_vertex(mid, gon::opposite(prev_part));
      b.add_edge(prev, mid);
      prev = mid;
      prev_part = gon::opposite(prev_part);
    }
    b.add_edge(prev, w);
    EXPECT_EQ(gon::delta(b.build()), gon::delta(g));
    ++built;
  }
  EXPECT_GE(built, 60);
}

TEST(Delta, RelativeTwoWaysAgree) {
  std::mt19937_64 rng(33);
  for (int it = 0; it < 300; ++it) {
    int n = it % 2 ? 3 : 4;
    IncidenceGraph g = testutil::random_bipartite(rng, n, 2 + it % 4, 2 + it % 4, 0.4);
    auto ids = g.ids();
    std::vector<std::string> base;
    for (const auto& id : ids)
      if (rng() % 2) base.push_back(id);
    long long rel = gon::delta_relative(g, base);  // internally cross-checked
    EXPECT_EQ(rel, rel_oracle(g, base)) << gon::serialize_gon(g);
  }
}

TEST(Strong, KnownCases) {
  IncidenceGraph hex = testutil::make_cycle(3, 6);
  EXPECT_TRUE(gon::is_n_strong({"c0", "c1"}, hex).strong());
  EXPECT_TRUE(gon::is_n_strong(hex.ids(), hex).strong());

  // the base carries five of the six hexagon edges
  gon::GraphBuilder path_base(3);
  for (const auto& id : hex.ids()) path_base.add_vertex(id, hex.part(id));
  for (int i = 0; i + 1 < 6; ++i)
    path_base.add_edge("c" + std::to_string(i), "c" + std::to_string(i + 1));
  auto rep = gon::is_n_strong(path_base.build(), hex);
  EXPECT_FALSE(rep.strong());
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_EQ(*rep.witness, hex.ids());
  EXPECT_EQ(rep.delta, -1);
}

TEST(Strong, DenseBipartiteViolation) {
  IncidenceGraph k55 = complete_bipartite(3, 5, 5);
  EXPECT_EQ(gon::delta(k55), -5);
  auto rep = gon::is_n_strong(std::vector<std::string>{}, k55);
  EXPECT_FALSE(rep.strong());
  EXPECT_EQ(rep.delta, -5);
  ASSERT_TRUE(rep.witness.has_value());
  // inclusion-minimal violation inside: one side loses a vertex
  EXPECT_EQ(rep.witness->size(), 9u);
  EXPECT_LT(gon::delta(k55, *rep.witness), 0);
}

TEST(Strong, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(34);
  int weak_seen = 0;
  for (int n : {3, 4}) {
    for (int it = 0; it < 800; ++it) {
      int p = 1 + static_cast<int>(rng() % 5), l = 1 + static_cast<int>(rng() % 5);
      IncidenceGraph g = testutil::random_bipartite(rng, n, p, l, 0.3 + 0.15 * (it % 4));
      auto ids = g.ids();
      std::vector<std::string> base;
      uint32_t base_mask = 0;
      for (size_t i = 0; i < ids.size(); ++i)
        if (rng() % 3 == 0) {
          base.push_back(ids[i]);
          base_mask |= 1u << i;
        }
      bool expect = oracle::n_strong_exhaustive(g, base_mask);
      auto rep = gon::is_n_strong(base, g);
      ASSERT_EQ(rep.strong(), expect) << "n=" << n << "\n" << gon::serialize_gon(g);
      if (!rep.strong()) {
        ++weak_seen;
        const auto& w = *rep.witness;
        std::set<std::string> bs(base.begin(), base.end()), ws(w.begin(), w.end());
        for (const auto& id : base) EXPECT_TRUE(ws.count(id));
        std::vector<std::string> wb;
        for (const auto& id : w)
          if (bs.count(id)) wb.push_back(id);
        EXPECT_LT(gon::delta(g, w) - gon::delta(g, wb), 0);
        // minimal within the family: no single non-base vertex is removable
        for (size_t i = 0; i < w.size(); ++i) {
          if (bs.count(w[i])) continue;
          std::vector<std::string> smaller = w;
          smaller.erase(smaller.begin() + i);
          std::vector<std::string> sb;
          for (const auto& id : smaller)
            if (bs.count(id)) sb.push_back(id);
          EXPECT_GE(gon::delta(g, smaller) - gon::delta(g, sb), 0)
              << gon::serialize_gon(g);
        }
      }
    }
  }
  EXPECT_GT(weak_seen, 100);
}

TEST(Strong, LargeComplementBranchAndBound) {
  // complements beyond sixteen vertices take the connected-search path
  IncidenceGraph long_path = testutil::make_path(3, 19);
  EXPECT_TRUE(gon::is_n_strong({"x0", "x19"}, long_path).strong());

  gon::GraphBuilder b = gon::GraphBuilder::from(complete_bipartite(3, 5, 5));
  std::string prev = "a0";
  for (int i = 1; i <= 10; ++i) {
    std::string t = "t" + std::to_string(i);
    b.add_vertex(t, i % 2 ? Part::Line : Part::Point);
    b.add_edge(prev, t);
    prev = t;
  }
  IncidenceGraph g = b.build();
  ASSERT_GT(g.vertex_count() - 1, 16);
  auto rep = gon::is_n_strong({"t10"}, g);
  EXPECT_FALSE(rep.strong());
  EXPECT_EQ(rep.delta, -5);
  oracle::SmallGraph s = oracle::SmallGraph::from(g);
  uint32_t bm = 0;
  for (int v = 0; v < s.nv; ++v)
    if (s.ids[v] == "t10") bm |= 1u << v;
  EXPECT_FALSE(oracle::n_strong_exhaustive(g, bm));
  ASSERT_TRUE(rep.witness.has_value());
  std::vector<std::string> wb;
  for (const auto& id : *rep.witness)
    if (id == "t10") wb.push_back(id);
  EXPECT_LT(gon::delta(g, *rep.witness) - gon::delta(g, wb), 0);
}

TEST(Strong, Submodularity) {
  std::mt19937_64 rng(35);
  int verified = 0;
  while (verified < 500) {
    int n = verified % 2 ? 3 : 4;
    IncidenceGraph g = testutil::random_bipartite(rng, n, 2 + static_cast<int>(rng() % 3),
                                                  2 + static_cast<int>(rng() % 3), 0.45);
    auto ids = g.ids();
    std::vector<std::string> A, C;
    for (const auto& id : ids) {
      if (rng() % 3 == 0) A.push_back(id);
      if (rng() % 2 == 0) C.push_back(id);
    }
    if (!gon::is_n_strong(A, g).strong()) continue;
    std::set<std::string> cs(C.begin(), C.end());
    std::vector<std::string> AC;
    for (const auto& id : A)
      if (cs.count(id)) AC.push_back(id);
    IncidenceGraph sub = g.induced(C);
    EXPECT_TRUE(gon::is_n_strong(AC, sub).strong()) << gon::serialize_gon(g);
    ++verified;
  }
}

TEST(Strong, BadBase) {
  IncidenceGraph hex = testutil::make_cycle(3, 6);
  EXPECT_THROW(gon::is_n_strong({"nope"}, hex), gon::Error);
  EXPECT_THROW(gon::is_n_strong(testutil::make_cycle(4, 8), hex), gon::Error);
  gon::GraphBuilder extra(3);
  extra.add_vertex("c0", Part::Point).add_vertex("q9", Part::Line).add_edge("c0", "q9");
  EXPECT_THROW(gon::is_n_strong(extra.build(), hex), gon::Error);
}

TEST(Decompose, SingleArcStep) {
  IncidenceGraph g = gamma4_plus_arc();
  auto chain = gon::minimal_zero_decomposition(testutil::make_path(3, 4).ids(), g);
  ASSERT_EQ(chain.size(), 1u);
  EXPECT_EQ(chain[0].kind, gon::ZeroStep::Kind::CleanArc);
  EXPECT_EQ(chain[0].added, (std::vector<std::string>{"a0"}));
  EXPECT_EQ(chain[0].upto, g.ids());
}

TEST(Decompose, BaseIsWholeGraph) {
  IncidenceGraph hex = testutil::make_cycle(3, 6);
  EXPECT_TRUE(gon::minimal_zero_decomposition(hex.ids(), hex).empty());
}

TEST(Decompose, ClosedStep) {
  IncidenceGraph wit = make_odd_witness_n3();
  std::vector<std::string> mids;
  for (int i = 0; i < 4; ++i) mids.push_back("m" + std::to_string(i));
  auto chain = gon::minimal_zero_decomposition(mids, wit);
  ASSERT_EQ(chain.size(), 1u);
  EXPECT_EQ(chain[0].kind, gon::ZeroStep::Kind::Closed);
  EXPECT_EQ(chain[0].added.size(), 8u);
  EXPECT_EQ(chain[0].added[0], "x0");
  EXPECT_EQ(chain[0].upto, wit.ids());
}

TEST(Decompose, TwoArcSteps) {
  gon::GraphBuilder b = gon::GraphBuilder::from(testutil::make_cycle(3, 6));
  b.add_vertex("a0", Part::Line).add_edge("a0", "c0").add_edge("a0", "c2");
  b.add_vertex("b0", Part::Point).add_edge("b0", "c3").add_edge("b0", "c5");
  IncidenceGraph g = b.build();
  auto chain = gon::minimal_zero_decomposition(testutil::make_cycle(3, 6).ids(), g);
  ASSERT_EQ(chain.size(), 2u);
  EXPECT_EQ(chain[0].added, (std::vector<std::string>{"a0"}));
  EXPECT_EQ(chain[0].kind, gon::ZeroStep::Kind::CleanArc);
  EXPECT_EQ(chain[1].added, (std::vector<std::string>{"b0"}));
  EXPECT_EQ(chain[1].kind, gon::ZeroStep::Kind::CleanArc);
}

TEST(Decompose, ClosedThenArc) {
  gon::GraphBuilder b = gon::GraphBuilder::from(make_odd_witness_n3());
  b.add_vertex("a0", Part::Line).add_edge("a0", "x0").add_edge("a0", "x2");
  IncidenceGraph g = b.build();
  std::vector<std::string> mids;
  for (int i = 0; i < 4; ++i) mids.push_back("m" + std::to_string(i));
  auto chain = gon::minimal_zero_decomposition(mids, g);
  ASSERT_EQ(chain.size(), 2u);
  EXPECT_EQ(chain[0].kind, gon::ZeroStep::Kind::Closed);
  EXPECT_EQ(chain[0].added.size(), 8u);
  EXPECT_EQ(chain[1].kind, gon::ZeroStep::Kind::CleanArc);
  EXPECT_EQ(chain[1].added, (std::vector<std::string>{"a0"}));
}

TEST(Decompose, MissingVertexStep) {
  IncidenceGraph hex = testutil::make_cycle(3, 6);
  auto chain =
      gon::minimal_zero_decomposition({"c0", "c1", "c2", "c3", "c4"}, hex);
  ASSERT_EQ(chain.size(), 1u);
  EXPECT_EQ(chain[0].kind, gon::ZeroStep::Kind::CleanArc);
  EXPECT_EQ(chain[0].added, (std::vector<std::string>{"c5"}));
}

TEST(Decompose, PreconditionErrors) {
  IncidenceGraph k55 = complete_bipartite(3, 5, 5);
  try {
    gon::minimal_zero_decomposition({"a0"}, k55);
    FAIL() << "expected error";
  } catch (const gon::Error& e) {
    EXPECT_EQ(e.code(), "NOT_STRONG");
  }

  gon::GraphBuilder loose = gon::GraphBuilder::from(testutil::make_path(3, 6));
  loose.add_vertex("y", Part::Line).add_edge("y", "x0");
  try {
    gon::minimal_zero_decomposition(testutil::make_path(3, 6).ids(), loose.build());
    FAIL() << "expected error";
  } catch (const gon::Error& e) {
    EXPECT_EQ(e.code(), "NONZERO_DELTA");
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(Decompose, ChainInvariantsOnRandomInputs) {
  std::mt19937_64 rng(36);
  int decomposed = 0;
  for (int it = 0; it < 6000 && decomposed < 120; ++it) {
    int n = it % 2 ? 3 : 4;
    IncidenceGraph g = testutil::random_bipartite(rng, n, 2 + static_cast<int>(rng() % 3),
                                                  2 + static_cast<int>(rng() % 3), 0.4);
    auto ids = g.ids();
    std::vector<std::string> base;
    for (const auto& id : ids)
      if (rng() % 2) base.push_back(id);
    if (!gon::is_n_strong(base, g).strong()) continue;
    if (gon::delta_relative(g, base) != 0) continue;
    auto chain = gon::minimal_zero_decomposition(base, g);
    ++decomposed;
    std::set<std::string> front(base.begin(), base.end());
    for (const auto& step : chain) {
      std::vector<std::string> front_ids(front.begin(), front.end());
      EXPECT_EQ(gon::delta(g, step.upto) - gon::delta(g, front_ids), 0);
      for (const auto& id : step.added) {
        EXPECT_FALSE(front.count(id));
        front.insert(id);
      }
      std::vector<std::string> now(front.begin(), front.end());
      EXPECT_EQ(now, step.upto);
    }
    EXPECT_EQ(front.size(), ids.size());
  }
  EXPECT_GE(decomposed, 120);
}

}  // namespace
