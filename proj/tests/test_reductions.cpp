#include <gtest/gtest.h>

#include <sstream>

#include "support/fixtures.hpp"

using namespace allhops;
using namespace allhops::testing;

namespace {

IntMatrix random_int_matrix(std::size_t r, std::size_t c, std::int64_t lo, std::int64_t hi, Rng& rng) {
  IntMatrix m(r, std::vector<std::int64_t>(c));
  for (auto& row : m)
    for (auto& e : row) e = uniform_in(rng, lo, hi);
  return m;
}

bool is_acyclic(const Graph& g) {
  std::vector<std::size_t> indeg(g.n(), 0);
  std::vector<std::vector<Vertex>> out(g.n());
  for (const auto& e : g.edges()) {
    ++indeg[e.head];
    out[e.tail].push_back(e.head);
  }
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < g.n(); ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    const Vertex v = ready.back();
    ready.pop_back();
    ++seen;
    for (auto w : out[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  return seen == g.n();
}

/// Exact-hop row out of s for a graph, recovered from at-most-hop distances
/// of the shifted graph.
AllHopsRow exact_row_via_shift(const Graph& g, Vertex s, std::size_t H) {
  const ShiftReduction red = exact_to_atmost_shift(g);
  const AllHopsRow shifted = bellman_ford_allhops(red.shifted, s, H);
  AllHopsRow row(s, g.n(), H, true);
  for (std::size_t h = 0; h <= H; ++h)
    for (std::size_t v = 0; v < g.n(); ++v) {
      row.ex[h * g.n() + v] = h == 0 ? (v == s ? ExtInt::zero() : kInf) : red.recover(shifted.at_most(h, v), h);
      row.le[h * g.n() + v] = shifted.at_most(h, v);
    }
  return row;
}

Tripartite random_tripartite(std::size_t n, double density, Rng& rng) {
  Tripartite t;
  t.nI = t.nJ = t.nK = n;
  auto fill = [&](auto& list, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b; ++j)
        if (std::uniform_real_distribution<double>(0, 1)(rng) < density) list.emplace_back(i, j);
  };
  fill(t.ij, n, n);
  fill(t.jk, n, n);
  fill(t.ki, n, n);
  return t;
}

}  // namespace

TEST(TreeGadget, ClosedFormsForEveryLeaf) {
  for (unsigned ell = 1; ell <= 6; ++ell) {
    const GadgetGraph gg = build_tree_gadget(ell);
    const std::size_t leaves = std::size_t{1} << ell;
    const std::size_t hops = leaves - 1;
    const Vertex v = gg.vertex("v");
    for (std::size_t i = 1; i <= leaves; ++i) {
      const AllHopsRow r = bellman_ford_allhops(gg.graph, gg.vertex("u" + std::to_string(i)), hops + 1);
      const auto want = static_cast<std::int64_t>(i + leaves - 2);
      EXPECT_EQ(r.exactly(hops, v), ExtInt(want));
      EXPECT_TRUE(r.at_most(hops - 1, v).is_inf());
      EXPECT_TRUE(r.exactly(hops + 1, v).is_inf());
    }
  }
}

TEST(TreeGadget, DistancesForEllTwo) {
  const GadgetGraph gg = build_tree_gadget(2);
  for (std::int64_t i = 1; i <= 4; ++i) {
    const AllHopsRow r = bellman_ford_allhops(gg.graph, gg.vertex("u" + std::to_string(i)), 3);
    EXPECT_EQ(r.at_most(3, gg.vertex("v")), ExtInt(2 + i));
  }
  const GadgetGraph one = build_tree_gadget(1);
  EXPECT_EQ(bellman_ford_allhops(one.graph, one.vertex("u1"), 1).at_most(1, one.vertex("v")), ExtInt(1));
  EXPECT_EQ(bellman_ford_allhops(one.graph, one.vertex("u2"), 1).at_most(1, one.vertex("v")), ExtInt(2));
}

TEST(TreeGadget, ReversedFlipsEveryEdge) {
  const GadgetGraph a = build_tree_gadget(3), b = build_tree_gadget(3, true);
  EXPECT_EQ(reverse(a.graph).n(), b.graph.n());
  auto ea = reverse(a.graph).edges(), eb = b.graph.edges();
  std::ranges::sort(ea);
  std::ranges::sort(eb);
  EXPECT_EQ(ea, eb);
  const AllHopsRow r = bellman_ford_allhops(b.graph, b.vertex("v"), 7);
  EXPECT_EQ(r.exactly(7, b.vertex("u5")), ExtInt(5 + 8 - 2));
}

TEST(TreeGadget, VertexCountIsLinearInEllTimesLeaves) {
  for (unsigned ell = 1; ell <= 12; ++ell) {
    const GadgetGraph gg = build_tree_gadget(ell);
    EXPECT_LE(gg.graph.n(), 2 * ell * (std::size_t{1} << ell));
    EXPECT_TRUE(is_acyclic(gg.graph));
  }
  EXPECT_THROW(build_tree_gadget(0), InputError);
  EXPECT_THROW(build_tree_gadget(20, false, 1000), ResourceError);
}

TEST(MppGadget, SmallExamples) {
  const IntMatrix A{{1}, {2}}, B{{2, 1}};
  const GadgetGraph gg = reduce_mpp_to_exact_hops(A, B, 2);
  const AllHopsRow r = bellman_ford_allhops(gg.graph, gg.vertex("s"), mpp_required_hops(gg));
  EXPECT_EQ(decode_mpp(gg, r), (IntMatrix{{3, 2}, {4, 3}}));
  EXPECT_EQ(naive_minplus(A, B), (IntMatrix{{3, 2}, {4, 3}}));

  const IntMatrix ones3x2(3, std::vector<std::int64_t>(2, 1)), ones2x3(2, std::vector<std::int64_t>(3, 1));
  const GadgetGraph g1 = reduce_mpp_to_exact_hops(ones3x2, ones2x3, 4);
  const AllHopsRow r1 = bellman_ford_allhops(g1.graph, g1.vertex("s"), mpp_required_hops(g1));
  EXPECT_EQ(decode_mpp(g1, r1), IntMatrix(3, std::vector<std::int64_t>(3, 2)));
}

TEST(MppGadget, RejectsBadParameters) {
  EXPECT_THROW(reduce_mpp_to_exact_hops({{1}}, {{1}}, 3), InputError);
  EXPECT_THROW(reduce_mpp_to_exact_hops({{3}}, {{1}}, 2), InputError);
  EXPECT_THROW(reduce_mpp_to_exact_hops({{0}}, {{1}}, 2), InputError);
  EXPECT_THROW(reduce_mpp_to_exact_hops({{1, 1}}, {{1}}, 2), InputError);
}

TEST(MppGadget, RandomInstancesDecodeToNaiveProduct) {
  Rng rng(21);
  for (int it = 0; it < 30; ++it) {
    const std::int64_t x = std::int64_t{1} << uniform_in(rng, 0, 2);
    const std::size_t n = 8, q = static_cast<std::size_t>(uniform_in(rng, 1, 4));
    const IntMatrix A = random_int_matrix(n, q, 1, x, rng), B = random_int_matrix(q, n, 1, x, rng);
    const GadgetGraph gg = reduce_mpp_to_exact_hops(A, B, x);
    EXPECT_TRUE(is_acyclic(gg.graph));
    const IntMatrix want = naive_minplus(A, B);
    const auto H = mpp_required_hops(gg);
    EXPECT_EQ(decode_mpp(gg, bellman_ford_allhops(gg.graph, gg.vertex("s"), H)), want);
    EXPECT_EQ(decode_mpp(gg, exact_row_via_shift(gg.graph, gg.vertex("s"), H)), want);
  }
}

TEST(ConvGadget, ProblemEvaluator) {
  const IntMatrix A{{1, 2}, {3, 4}}, B{{5, 6}, {7, 8}};
  EXPECT_EQ(convolution_problem_value(A, B, 0, 0, 2), ExtInt(6));
  EXPECT_EQ(convolution_problem_value(A, B, 0, 0, 3), ExtInt(7));
  EXPECT_TRUE(convolution_problem_value(A, B, 0, 0, 1).is_inf());
  EXPECT_TRUE(convolution_problem_value(A, B, 0, 0, 5).is_inf());
}

TEST(ConvGadget, SmallExamples) {
  const IntMatrix A{{1, 2}, {3, 4}}, B{{5, 6}, {7, 8}};
  const GadgetGraph gg = reduce_convolution_to_hops(A, B);
  const AllHopsRow r = bellman_ford_allhops(gg.graph, 0, convolution_required_hops(gg));
  EXPECT_EQ(decode_convolution(gg, r, 0, 2), ExtInt(6));
  EXPECT_EQ(decode_convolution(gg, r, 0, 3), ExtInt(7));

  const IntMatrix A3{{4, 1, 9}, {2, 8, 3}, {5, 5, 0}}, Z(3, std::vector<std::int64_t>(3, 0));
  const GadgetGraph gz = reduce_convolution_to_hops(A3, Z);
  for (std::size_t i = 0; i < 3; ++i) {
    const AllHopsRow ri = bellman_ford_allhops(gz.graph, static_cast<Vertex>(i), convolution_required_hops(gz));
    // ell = 4 admits every x in 1..3 with y = ell - x in 1..3.
    EXPECT_EQ(decode_convolution(gz, ri, 1, 4), ExtInt(*std::ranges::min_element(A3[i])));
  }
}

TEST(ConvGadget, RandomInstancesMatchEvaluator) {
  Rng rng(31);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = static_cast<std::size_t>(uniform_in(rng, 1, 6));
    const IntMatrix A = random_int_matrix(n, n, -20, 20, rng), B = random_int_matrix(n, n, -20, 20, rng);
    const GadgetGraph gg = reduce_convolution_to_hops(A, B);
    EXPECT_TRUE(is_acyclic(gg.graph));
    const auto H = convolution_required_hops(gg);
    for (std::size_t i = 0; i < n; ++i) {
      const AllHopsRow direct = bellman_ford_allhops(gg.graph, static_cast<Vertex>(i), H);
      const AllHopsRow shifted = exact_row_via_shift(gg.graph, static_cast<Vertex>(i), H);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t ell = 0; ell <= 2 * n; ++ell) {
          const ExtInt want = convolution_problem_value(A, B, i, j, ell);
          ASSERT_EQ(decode_convolution(gg, direct, j, ell), want);
          ASSERT_EQ(decode_convolution(gg, shifted, j, ell), want);
        }
    }
  }
}

TEST(HopSemantics, ShiftRecoversExactHops) {
  const ShiftReduction red = exact_to_atmost_shift(f1_with_M());
  EXPECT_EQ(red.M, 10);
  EXPECT_EQ(red.shift, 60);
  const AllHopsRow r = bellman_ford_allhops(red.shifted, 0, 3);
  EXPECT_EQ(red.recover(r.at_most(2, 2), 2), ExtInt(2));
  EXPECT_EQ(red.recover(r.at_most(1, 2), 1), ExtInt(10));
  EXPECT_TRUE(red.recover(r.at_most(2, 0), 2).is_inf());
  EXPECT_TRUE(red.recover(r.at_most(3, 2), 3).is_inf());
  EXPECT_THROW(red.recover(ExtInt(0), 4), InputError);
}

TEST(HopSemantics, ShiftMatchesExactHopsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gen_random_graph(9, 20, 6, seed, false);
    const AllHopsRow want = bellman_ford_allhops(g, 0, 9);
    const AllHopsRow got = exact_row_via_shift(g, 0, 9);
    for (std::size_t h = 1; h <= 9; ++h)
      for (Vertex v = 0; v < 9; ++v) ASSERT_EQ(got.exactly(h, v), want.exactly(h, v)) << seed;
  }
  EXPECT_THROW(exact_to_atmost_shift(Graph(4, {{0, 1, std::int64_t{1} << 60}})), InputError);
}

TEST(HopSemantics, SelfLoopsTurnAtMostIntoExact) {
  const Graph loops = atmost_to_exact_selfloops(f1());
  EXPECT_EQ(loops.m(), 6u);
  const AllHopsRow r = bellman_ford_allhops(loops, 0, 2);
  EXPECT_EQ(r.exactly(2, 2), ExtInt(2));
  EXPECT_EQ(r.exactly(2, 1), ExtInt(1));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(10, 25, 5, seed);
    const AllHopsRow a = bellman_ford_allhops(atmost_to_exact_selfloops(g), 3, 9);
    const AllHopsRow b = bellman_ford_allhops(g, 3, 9);
    for (std::size_t h = 0; h <= 9; ++h)
      for (Vertex v = 0; v < 10; ++v) ASSERT_EQ(a.exactly(h, v), b.at_most(h, v));
  }
}

TEST(TriangleGadget, SingleTriangle) {
  Tripartite t;
  t.nI = t.nJ = t.nK = 1;
  t.ij = {{0, 0}};
  t.jk = {{0, 0}};
  t.ki = {{0, 0}};
  const GadgetGraph gg = build_triangle_gadget(t);
  const AllHopsRow r = bellman_ford_allhops(gg.graph, gg.vertex("s"), 5);
  EXPECT_EQ(r.at_most(5, gg.vertex("t")), ExtInt(1));
  EXPECT_TRUE(decide_triangle(gg, r));
  t.ki.clear();
  const GadgetGraph cut = build_triangle_gadget(t);
  EXPECT_FALSE(decide_triangle(cut, bellman_ford_allhops(cut.graph, cut.vertex("s"), 5)));
}

TEST(TriangleGadget, RandomInstancesMatchEnumeration) {
  Rng rng(41);
  int positives = 0;
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = static_cast<std::size_t>(uniform_in(rng, 1, 10));
    const Tripartite t = random_tripartite(n, 0.15, rng);
    const GadgetGraph gg = build_triangle_gadget(t);
    for (const auto& e : gg.graph.edges()) EXPECT_TRUE(e.weight == 1 || e.weight == -1);
    EXPECT_FALSE(detect_negative_cycle(gg.graph));
    const bool want = has_triangle_brute(t);
    positives += want;
    EXPECT_EQ(decide_triangle(gg, bellman_ford_allhops(gg.graph, gg.vertex("s"), n + 4)), want) << it;
  }
  EXPECT_GT(positives, 5);
  EXPECT_LT(positives, 45);
}

TEST(TriangleGadget, ParseAndRenderRoundTrip) {
  Rng rng(5);
  const Tripartite t = random_tripartite(4, 0.4, rng);
  std::istringstream in(render_tripartite(t));
  const Tripartite back = parse_tripartite(in);
  EXPECT_EQ(back.ij, t.ij);
  EXPECT_EQ(back.jk, t.jk);
  EXPECT_EQ(back.ki, t.ki);
  std::istringstream bad("2 2 2\n1\n0 5\n0\n0\n");
  EXPECT_THROW(parse_tripartite(bad), InputError);
}

TEST(Gadgets, NamesRenderOnePerLine) {
  const GadgetGraph gg = build_tree_gadget(1);
  EXPECT_EQ(render_names(gg), "u1 0\nu2 1\nv 2\n");
}
