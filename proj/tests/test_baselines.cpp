#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace allhops;
using namespace allhops::testing;

TEST(BellmanFord, SmallFixture) {
  const AllHopsRow r = bellman_ford_allhops(f1(), 0, 2);
  EXPECT_EQ(r.at_most(1, 0), ExtInt(0));
  EXPECT_EQ(r.at_most(1, 1), ExtInt(1));
  EXPECT_EQ(r.at_most(1, 2), ExtInt(10));
  EXPECT_EQ(r.at_most(2, 2), ExtInt(2));
  EXPECT_EQ(r.exactly(2, 2), ExtInt(2));
  EXPECT_TRUE(r.at_most(0, 1).is_inf());
}

TEST(BellmanFord, TwoCycle) {
  const AllHopsRow r = bellman_ford_allhops(f2(), 0, 3);
  EXPECT_EQ(r.exactly(2, 0), ExtInt(1));
  EXPECT_EQ(r.at_most(3, 0), ExtInt(0));
}

TEST(BellmanFord, SingleVertex) {
  const AllHopsRow r = bellman_ford_allhops(Graph(1), 0, 1);
  EXPECT_EQ(r.at_most(1, 0), ExtInt(0));
  EXPECT_THROW(bellman_ford_allhops(Graph(1), 1, 1), InputError);
  EXPECT_THROW(bellman_ford_allhops(Graph(1), 0, 0), InputError);
}

TEST(BellmanFord, MatchesWalkEnumeration) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const Graph g = gen_random_graph(n, std::min<std::size_t>(n * (n - 1), 2 + seed % 7), 4, seed, false);
    const std::size_t H = 5;
    const auto walks = walk_enumeration(g, 0, H);
    const AllHopsRow r = bellman_ford_allhops(g, 0, H);
    for (std::size_t h = 0; h <= H; ++h)
      for (std::size_t v = 0; v < n; ++v) ASSERT_EQ(r.at_most(h, v), walks[h][v]) << render_graph(g);
  }
}

TEST(BellmanFord, RowInvariants) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gen_random_graph(9, 25, 6, seed, false);
    const AllHopsRow r = bellman_ford_allhops(g, 3, 12);
    for (std::size_t v = 0; v < 9; ++v) {
      EXPECT_EQ(r.at_most(0, v), v == 3 ? ExtInt(0) : kInf);
      ExtInt running = kInf;
      for (std::size_t h = 0; h <= 12; ++h) {
        running = min(running, r.exactly(h, v));
        EXPECT_EQ(r.at_most(h, v), running);
      }
    }
  }
}

TEST(ApahBrute, SmallFixtures) {
  const AllHopsTable t = apah_brute(f1(), 2);
  EXPECT_EQ(t.at_most(0, 2, 2), ExtInt(2));
  EXPECT_TRUE(t.at_most(1, 0, 2).is_inf());
  const AllHopsTable t2 = apah_brute(f2(), 4);
  EXPECT_EQ(t2.at_most(0, 1, 1), ExtInt(-2));
  EXPECT_EQ(t2.at_most(1, 0, 3), ExtInt(3));
  EXPECT_EQ(t2.at_most(0, 0, 2), ExtInt(0));
  const AllHopsTable e = apah_brute(Graph(4), 3);
  for (Vertex u = 0; u < 4; ++u)
    for (Vertex v = 0; v < 4; ++v)
      for (std::size_t h = 0; h <= 3; ++h) EXPECT_EQ(e.at_most(u, v, h), u == v ? ExtInt(0) : kInf);
}

TEST(Powers, AgreeWithBellmanFord) {
  EXPECT_EQ(allhops_from_powers(f1(), 2), apah_brute(f1(), 2));
  const AllHopsTable p = allhops_from_powers(f2(), 2);
  EXPECT_EQ(p.rows[0].exactly(2, 0), ExtInt(1));
  EXPECT_TRUE(p.rows[0].exactly(2, 1).is_inf());
  EXPECT_EQ(p.rows[1].exactly(2, 1), ExtInt(1));
  const AllHopsTable one = allhops_from_powers(f1(), 1);
  const DistMatrix w = weight_matrix(f1());
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ(one.rows[u].exactly(1, v), w(u, v));
  // Including graphs with negative cycles.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 3 + seed % 38;
    const Graph g = gen_random_graph(n, std::min(n * (n - 1), 3 * n), 5, seed, seed % 2 == 0);
    ASSERT_EQ(allhops_from_powers(g, n - 1), apah_brute(g, n - 1));
  }
}

TEST(ApahBrute, StabilizesWithoutNegativeCycles) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const std::size_t n = 10;
    const Graph g = random_graph(n, 30, 5, seed);
    const AllHopsTable t = apah_brute(g, 2 * n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v) {
        for (std::size_t h = n - 1; h <= 2 * n; ++h) EXPECT_EQ(t.at_most(u, v, h), t.at_most(u, v, n - 1));
        if (u == v) {
          for (std::size_t h = 0; h <= 2 * n; ++h) EXPECT_EQ(t.at_most(u, v, h), ExtInt(0));
        }
      }
  }
}

TEST(ApahBrute, TriangleInequalityAcrossHops) {
  Rng rng(6);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen_random_graph(8, 24, 5, seed, false);
    const AllHopsTable t = apah_brute(g, 10);
    for (int rep = 0; rep < 200; ++rep) {
      const auto u = static_cast<Vertex>(uniform_below(rng, 8)), v = static_cast<Vertex>(uniform_below(rng, 8)),
                 w = static_cast<Vertex>(uniform_below(rng, 8));
      const std::size_t h1 = uniform_below(rng, 6), h2 = uniform_below(rng, 5);
      EXPECT_LE(t.at_most(u, w, h1 + h2), t.at_most(u, v, h1) + t.at_most(v, w, h2));
    }
  }
}

TEST(ApahBrute, ThreadCountDoesNotChangeOutput) {
  const Graph g = random_graph(30, 90, 5, 1);
  const AllHopsTable a = apah_brute(g, 29);
  set_kernel_threads(3);
  const AllHopsTable b = apah_brute(g, 29);
  set_kernel_threads(1);
  EXPECT_EQ(a, b);
}
