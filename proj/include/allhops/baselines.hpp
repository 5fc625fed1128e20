#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "allhops/dist_matrix.hpp"
#include "allhops/error.hpp"
#include "allhops/ext_int.hpp"
#include "allhops/graph.hpp"
#include "allhops/minplus.hpp"
#include "allhops/parallel.hpp"

namespace allhops {

/// Distances from one source for every hop budget 0..max_hop, hop-major.
/// `le` holds d_{<=h}(source, v); `ex`, when present, holds d_h(source, v).
struct AllHopsRow {
  Vertex source = 0;
  std::size_t n = 0;
  std::size_t max_hop = 0;
  std::vector<ExtInt> le;
  std::vector<ExtInt> ex;

  AllHopsRow() = default;
  AllHopsRow(Vertex s, std::size_t vertices, std::size_t hops, bool with_exact)
      : source(s), n(vertices), max_hop(hops), le((hops + 1) * vertices, kInf) {
    if (with_exact) ex.assign((hops + 1) * vertices, kInf);
  }

  bool has_exact() const noexcept { return !ex.empty(); }
  ExtInt at_most(std::size_t h, std::size_t v) const { return le.at(h * n + v); }
  ExtInt exactly(std::size_t h, std::size_t v) const { return ex.at(h * n + v); }
  std::span<const ExtInt> at_most_layer(std::size_t h) const { return {le.data() + h * n, n}; }
  std::span<ExtInt> at_most_layer(std::size_t h) { return {le.data() + h * n, n}; }

  friend bool operator==(const AllHopsRow&, const AllHopsRow&) = default;
};

/// AllHopsRow per source, in the order of `sources`.
struct AllHopsTable {
  std::size_t n = 0;
  std::size_t max_hop = 0;
  std::vector<Vertex> sources;
  std::vector<AllHopsRow> rows;

  const AllHopsRow& row_for(Vertex s) const {
    for (std::size_t i = 0; i < sources.size(); ++i)
      if (sources[i] == s) return rows[i];
    throw InputError("AllHopsTable: source not present");
  }
  ExtInt at_most(Vertex u, Vertex v, std::size_t h) const { return row_for(u).at_most(h, v); }

  friend bool operator==(const AllHopsTable&, const AllHopsTable&) = default;
};

/// Hop-bounded Bellman-Ford: ex[h][v] = min over edges (u,v,w) of ex[h-1][u] + w,
/// le[h] = min(le[h-1], ex[h]); h = 0 is the identity row. O(m * max_hop).
/// Values stay exact for bounded hops even when negative cycles exist.
inline AllHopsRow bellman_ford_allhops(const Graph& g, Vertex s, std::size_t max_hop) {
  if (s >= g.n()) throw InputError("bellman_ford_allhops: source out of range");
  if (max_hop < 1) throw InputError("bellman_ford_allhops: hop budget must be >= 1");
  const std::size_t n = g.n();
  AllHopsRow row(s, n, max_hop, /*with_exact=*/true);
  row.ex[s] = ExtInt::zero();
  row.le[s] = ExtInt::zero();
  for (std::size_t h = 1; h <= max_hop; ++h) {
    const ExtInt* prev = row.ex.data() + (h - 1) * n;
    ExtInt* cur = row.ex.data() + h * n;
    for (const auto& e : g.edges()) {
      const ExtInt cand = prev[e.tail] + ExtInt(e.weight);
      if (cand < cur[e.head]) cur[e.head] = cand;
    }
    const ExtInt* le_prev = row.le.data() + (h - 1) * n;
    ExtInt* le_cur = row.le.data() + h * n;
    for (std::size_t v = 0; v < n; ++v) le_cur[v] = min(le_prev[v], cur[v]);
  }
  return row;
}

/// Default hop budget: n - 1, but at least 1.
inline std::size_t default_max_hop(const Graph& g) { return g.n() > 1 ? g.n() - 1 : 1; }

/// Bellman-Ford from every vertex.
inline AllHopsTable apah_brute(const Graph& g, std::size_t max_hop) {
  AllHopsTable t;
  t.n = g.n();
  t.max_hop = max_hop;
  t.sources = iota_labels(g.n());
  t.rows.resize(g.n());
  parallel_for(0, g.n(), [&](std::size_t s) {
    t.rows[s] = bellman_ford_allhops(g, static_cast<Vertex>(s), max_hop);
  });
  return t;
}

/// Exact-hop layers as W, W^2, ..., W^H by iterated min-plus products, with
/// running minima for the at-most layers. Must agree with apah_brute.
inline AllHopsTable allhops_from_powers(const Graph& g, std::size_t max_hop) {
  if (max_hop < 1) throw InputError("allhops_from_powers: hop budget must be >= 1");
  const std::size_t n = g.n();
  AllHopsTable t;
  t.n = n;
  t.max_hop = max_hop;
  t.sources = iota_labels(n);
  t.rows.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    t.rows.emplace_back(static_cast<Vertex>(s), n, max_hop, true);
    t.rows[s].ex[s] = ExtInt::zero();
    t.rows[s].le[s] = ExtInt::zero();
  }
  const DistMatrix w = weight_matrix(g);
  DistMatrix power = w;
  for (std::size_t h = 1; h <= max_hop; ++h) {
    if (h > 1) power = minplus_product(power, w);
    for (std::size_t u = 0; u < n; ++u) {
      auto& row = t.rows[u];
      for (std::size_t v = 0; v < n; ++v) {
        row.ex[h * n + v] = power(u, v);
        row.le[h * n + v] = min(row.le[(h - 1) * n + v], power(u, v));
      }
    }
  }
  return t;
}

}  // namespace allhops
