#include "gon/gallery.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "gon/gon_format.hpp"
#include "gon/metrics.hpp"
#include "gon/rank.hpp"
#include "testutil.hpp"

using namespace gon;

namespace {

void expect_error(const std::function<void()>& fn, const std::string& code) {
  try {
    fn();
    FAIL() << "expected error " << code;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code);
  }
}

bool all_pass(const WitnessBundle& b) {
  return std::all_of(b.assertions.begin(), b.assertions.end(),
                     [](const Assertion& a) { return a.checked; });
}

std::string round_trip_reverify(const WitnessBundle& b) {
  WitnessBundle back =
      parse_bundle(serialize_gon(b.graph), serialize_sets(b), serialize_asserts(b));
  if (!(back.graph == b.graph)) return "graph changed";
  if (back.distinguished != b.distinguished) return "sets changed";
  if (back.assertions.size() != b.assertions.size()) return "assertion count changed";
  for (size_t i = 0; i < b.assertions.size(); ++i)
    if (back.assertions[i].name != b.assertions[i].name ||
        back.assertions[i].checked != b.assertions[i].checked)
      return "assertion " + b.assertions[i].name + " changed";
  if (!reverify(back)) return "reverify failed";
  return "";
}

}  // namespace

TEST(AclDcl, OddTriangleCase) {
  WitnessBundle b = acl_dcl_witness(3);
  EXPECT_EQ(b.graph.vertex_count(), 12);
  EXPECT_EQ(b.graph.edge_count(), 16);
  EXPECT_EQ(girth(b.graph), 6);
  EXPECT_EQ(delta(b.graph), 8);

  EXPECT_EQ(b.set("A").size(), 8u);
  EXPECT_EQ(b.set("C").size(), 12u);
  std::vector<std::string> mids = {"g0.1", "g1.1", "g2.1", "g3.1"};
  EXPECT_EQ(b.set("midpoints"), mids);

  ASSERT_EQ(b.assertions.size(), 5u);
  EXPECT_TRUE(all_pass(b));
  EXPECT_TRUE(reverify(b));
}

TEST(AclDcl, LargerOddCase) {
  WitnessBundle b = acl_dcl_witness(5);
  EXPECT_EQ(b.graph.vertex_count(), 30);
  EXPECT_EQ(b.graph.edge_count(), 36);
  EXPECT_EQ(girth(b.graph), 10);
  EXPECT_EQ(delta(b.graph), 12);
  EXPECT_EQ(b.set("midpoints").size(), 6u);
  EXPECT_TRUE(all_pass(b));
  EXPECT_TRUE(reverify(b));
}

TEST(AclDcl, EvenCase) {
  WitnessBundle b = acl_dcl_witness(4);
  EXPECT_EQ(b.graph.vertex_count(), 20);
  EXPECT_EQ(b.graph.edge_count(), 24);
  EXPECT_EQ(girth(b.graph), 8);

  std::vector<std::string> pendants = {"y1", "y2", "y3", "y4"};
  std::vector<std::string> transfers = {"g1.2", "g2.2", "g3.2", "g4.2"};
  EXPECT_EQ(b.set("pendants"), pendants);
  EXPECT_EQ(b.set("transfers"), transfers);
  std::vector<std::string> mids = {"g1.1", "g2.1", "g3.1", "g4.1"};
  EXPECT_EQ(b.set("midpoints"), mids);

  EXPECT_TRUE(all_pass(b));
  EXPECT_TRUE(reverify(b));
}

TEST(AclDcl, SwapSendsPendantsToTransfers) {
  WitnessBundle b = acl_dcl_witness(4);
  // the half-turn exchanges each pendant with the path vertex that hangs
  // off the opposite cycle vertex, so it can fix nothing on the cycle
  EXPECT_TRUE(b.graph.adjacent("y1", "x1"));
  EXPECT_TRUE(b.graph.adjacent("g1.2", "x5"));
  EXPECT_EQ(b.graph.part("y1"), b.graph.part("g1.2"));
}

TEST(AclDcl, RejectsTinyGonality) {
  expect_error([] { acl_dcl_witness(2); }, "BAD_GONALITY");
}

TEST(Ladder, FirstRung) {
  WitnessBundle b = ladder_prefix(3, 1, 1);
  EXPECT_EQ(b.graph.vertex_count(), 14);
  EXPECT_EQ(girth(b.graph), 6);

  std::vector<std::string> joints = {"z0", "z1"};
  EXPECT_EQ(b.set("joints"), joints);
  std::vector<std::string> rungs = {"s1.x0-x4.0"};
  EXPECT_EQ(b.set("rungs"), rungs);
  std::vector<std::string> lam = {"l1.1", "l1.2"};
  EXPECT_EQ(b.set("lambda1"), lam);
  EXPECT_EQ(b.set("seed").size(), 7u);

  EXPECT_TRUE(b.graph.adjacent("z0", "x6"));
  EXPECT_TRUE(b.graph.adjacent("z1", "s1.x0-x4.0"));
  EXPECT_TRUE(b.graph.adjacent("z0", "l1.1"));
  EXPECT_TRUE(b.graph.adjacent("l1.2", "z1"));
  EXPECT_EQ(distance(b.graph, "z0", "z1"), 3);

  EXPECT_TRUE(all_pass(b));
  EXPECT_TRUE(reverify(b));
}

TEST(Ladder, TwoRungsAtGonalityFour) {
  WitnessBundle b = ladder_prefix(4, 2, 2);
  EXPECT_EQ(b.set("joints").size(), 3u);
  EXPECT_EQ(b.set("rungs").size(), 2u);
  EXPECT_FALSE(b.set("lambda1").empty());
  EXPECT_FALSE(b.set("lambda2").empty());

  int gi = girth(b.graph);
  EXPECT_TRUE(gi == -1 || gi >= 8);
  EXPECT_TRUE(all_pass(b));
  EXPECT_TRUE(reverify(b));
}

TEST(Ladder, PlainTraceWithoutRungs) {
  WitnessBundle b = ladder_prefix(3, 0, 1);
  EXPECT_EQ(b.graph.vertex_count(), 11);
  std::vector<std::string> joints = {"z0"};
  EXPECT_EQ(b.set("joints"), joints);
  EXPECT_TRUE(b.set("rungs").empty());
  EXPECT_EQ(b.distinguished.count("lambda1"), 0u);
  EXPECT_TRUE(all_pass(b));
  EXPECT_TRUE(reverify(b));
}

TEST(Ladder, BudgetMustCoverRungs) {
  expect_error([] { ladder_prefix(3, 2, 1); }, "BUDGET");
  expect_error([] { ladder_prefix(3, 1, 0); }, "BUDGET");
  expect_error([] { ladder_prefix(2, 1, 1); }, "BAD_GONALITY");
  expect_error([] { ladder_prefix(3, -1, 1); }, "BAD_RUNGS");
}

TEST(Bundle, SerializeParseReverify) {
  EXPECT_EQ(round_trip_reverify(acl_dcl_witness(3)), "");
  EXPECT_EQ(round_trip_reverify(acl_dcl_witness(4)), "");
  EXPECT_EQ(round_trip_reverify(ladder_prefix(3, 1, 1)), "");
  EXPECT_EQ(round_trip_reverify(ladder_prefix(3, 0, 2)), "");
}

TEST(Bundle, ReverifyCatchesTampering) {
  WitnessBundle b = acl_dcl_witness(3);
  std::string graph_text = serialize_gon(b.graph);
  std::string sets_text = serialize_sets(b);
  std::string asserts_text = serialize_asserts(b);

  // flipping a recorded verdict must be noticed
  std::string flipped = asserts_text;
  size_t at = flipped.find("closed_over_midpoints pass");
  ASSERT_NE(at, std::string::npos);
  flipped.replace(at, std::string("closed_over_midpoints pass").size(),
                  "closed_over_midpoints fail");
  EXPECT_FALSE(reverify(parse_bundle(graph_text, sets_text, flipped)));

  // shrinking the midpoint set leaves an absorbable arc, so the closedness
  // claim stops matching what the graph actually shows
  std::string fewer = sets_text;
  at = fewer.find("midpoints g0.1 g1.1 g2.1 g3.1");
  ASSERT_NE(at, std::string::npos);
  fewer.replace(at, std::string("midpoints g0.1 g1.1 g2.1 g3.1").size(),
                "midpoints g1.1 g2.1 g3.1");
  EXPECT_FALSE(reverify(parse_bundle(graph_text, fewer, asserts_text)));
}

TEST(Bundle, ParseRejectsBadInput) {
  WitnessBundle b = acl_dcl_witness(3);
  std::string graph_text = serialize_gon(b.graph);
  expect_error([&] { parse_bundle(graph_text, "A nosuchvertex\n", ""); }, "PARSE");
  expect_error([&] { parse_bundle(graph_text, "", "open maybe\n"); }, "PARSE");
  expect_error(
      [&] {
        WitnessBundle odd = parse_bundle(graph_text, "", "bogus_claim pass\n");
        reverify(odd);
      },
      "BAD_BUNDLE");
  expect_error([&] { b.set("nosuchset"); }, "BAD_BUNDLE");
}
