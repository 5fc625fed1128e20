#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "allhops/allhops.hpp"

namespace allhops::testing {

// 0 -> 1 -> 2 costs 2 in two hops; the direct edge costs 10.
/// Constant c in the resource-counter bounds (cells <= c n^2 log^2 n and so on).
inline constexpr double kCounterConstant = 16.0;

inline Graph f1() { return Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 10}}); }
inline Graph f1_with_M() { return Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 10}}, 10); }
// Two-cycle of weight +1.
inline Graph f2() { return Graph(2, {{0, 1, -2}, {1, 0, 3}}); }
// Two-cycle of weight -1.
inline Graph f3() { return Graph(2, {{0, 1, -2}, {1, 0, 1}}); }
// Diamond where the longer route is cheaper: 0->2->3 costs 1, 0->1->3 costs 2.
inline Graph f4() { return Graph(4, {{0, 1, 1}, {1, 3, 1}, {0, 2, 5}, {2, 3, -4}}); }

/// d_{<=h}(s, v) for h = 0..H by enumerating every walk of at most H hops.
/// Exponential; only for tiny graphs.
inline std::vector<std::vector<ExtInt>> walk_enumeration(const Graph& g, Vertex s, std::size_t H) {
  std::vector<std::vector<ExtInt>> best(H + 1, std::vector<ExtInt>(g.n(), kInf));
  std::function<void(Vertex, std::size_t, std::int64_t)> go = [&](Vertex at, std::size_t hops, std::int64_t w) {
    for (std::size_t h = hops; h <= H; ++h) best[h][at] = min(best[h][at], ExtInt(w));
    if (hops == H) return;
    for (const auto& e : g.edges())
      if (e.tail == at) go(e.head, hops + 1, w + e.weight);
  };
  go(s, 0, 0);
  return best;
}

/// Negative cycle by enumerating simple cycles (each rooted at its smallest vertex).
inline bool negative_cycle_by_enumeration(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<char> on(n, 0);
  bool found = false;
  std::function<void(Vertex, Vertex, std::int64_t)> go = [&](Vertex root, Vertex at, std::int64_t w) {
    for (const auto& e : g.edges()) {
      if (found || e.tail != at || e.head < root) continue;
      if (e.head == root) {
        if (w + e.weight < 0) found = true;
      } else if (!on[e.head]) {
        on[e.head] = 1;
        go(root, e.head, w + e.weight);
        on[e.head] = 0;
      }
    }
  };
  for (Vertex r = 0; r < n && !found; ++r) {
    on[r] = 1;
    go(r, r, 0);
    on[r] = 0;
  }
  return found;
}

/// Triple-loop min-plus product.
inline DistMatrix triple_loop_product(const DistMatrix& a, const DistMatrix& b) {
  DistMatrix c(a.row_labels(), b.col_labels());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) c(i, j) = min(c(i, j), a(i, k) + b(k, j));
  return c;
}

inline DistMatrix random_matrix(std::size_t r, std::size_t c, std::int64_t M, double inf_rate, Rng& rng) {
  DistMatrix m(r, c);
  for (auto& x : m.cells())
    x = static_cast<double>(uniform_below(rng, 1000)) < inf_rate * 1000 ? kInf : ExtInt(uniform_in(rng, -M, M));
  return m;
}

inline MatrixSeq random_matseq(std::size_t rows, std::size_t cols, std::size_t len, std::int64_t offset,
                               std::int64_t M, Rng& rng) {
  MatrixSeq s;
  s.offset = offset;
  for (std::size_t p = 0; p < len; ++p) s.mats.push_back(random_matrix(rows, cols, M, 0.2, rng));
  return s;
}

/// Random graph without negative cycles for seed-indexed suites.
inline Graph random_graph(std::size_t n, std::size_t m, std::int64_t M, std::uint64_t seed) {
  return gen_random_graph(n, std::min(m, n * (n - 1)), M, seed, /*require_no_neg_cycle=*/true);
}

/// D_j as a matrix: d_{<=j}(u, v) over all pairs.
inline DistMatrix at_most_matrix(const AllHopsTable& t, std::size_t h) {
  DistMatrix m(t.n, t.n);
  for (std::size_t u = 0; u < t.n; ++u)
    for (std::size_t v = 0; v < t.n; ++v) m(u, v) = t.rows[u].at_most(h, v);
  return m;
}

}  // namespace allhops::testing
