#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "allhops/dist_matrix.hpp"
#include "allhops/error.hpp"
#include "allhops/ext_int.hpp"
#include "allhops/random.hpp"

namespace allhops {

struct Edge {
  Vertex tail = 0;
  Vertex head = 0;
  std::int64_t weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed weighted graph on vertices 0..n-1. Immutable once built.
///
/// Parallel edges are kept as given; every distance computation uses only the
/// lightest edge per ordered pair. `declared_M`, when set, bounds |weight| of
/// every edge.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n, std::vector<Edge> edges = {},
                 std::optional<std::int64_t> declared_M = std::nullopt)
      : n_(n), edges_(std::move(edges)), declared_M_(declared_M) {
    if (n_ > std::numeric_limits<Vertex>::max()) throw InputError("graph: too many vertices");
    if (declared_M_ && *declared_M_ < 0) throw InputError("graph: declared M must be nonnegative");
    for (const auto& e : edges_) {
      if (e.tail >= n_ || e.head >= n_) throw InputError("graph: edge endpoint out of range");
      if (e.weight == ExtInt::kInfRaw) throw InputError("graph: weight collides with infinity");
      if (declared_M_ && (e.weight > *declared_M_ || e.weight < -*declared_M_))
        throw InputError("graph: edge weight exceeds declared M");
    }
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::optional<std::int64_t> declared_M() const noexcept { return declared_M_; }

  /// max |w| over edges (0 for an edgeless graph).
  std::int64_t max_abs_weight() const noexcept {
    std::int64_t best = 0;
    for (const auto& e : edges_) {
      // |INT64_MIN| does not fit; clamp.
      const auto a = e.weight == ExtInt::kMinRaw ? ExtInt::kInfRaw - 1 : std::llabs(e.weight);
      best = std::max<std::int64_t>(best, a);
    }
    return best;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::optional<std::int64_t> declared_M_;
};

namespace detail {

template <typename T>
bool parse_int(std::string_view token, T& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace detail

/// Reads the edge-list format: a header `n m` (optionally `n m M`, which sets
/// declared_M to the largest |w| read), then exactly m lines `u v w`. Lines
/// starting with '#' and blank lines are skipped.
inline Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<std::size_t, std::size_t>> header;
  bool want_M = false;
  std::vector<Edge> edges;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (!header) {
      std::size_t m = 0;
      if ((tok.size() != 2 && tok.size() != 3) || !detail::parse_int(tok[0], n) ||
          !detail::parse_int(tok[1], m))
        throw ParseError(line_no, "expected header 'n m'");
      if (tok.size() == 3) {
        if (tok[2] != "M") throw ParseError(line_no, "unknown header token '" + std::string(tok[2]) + "'");
        want_M = true;
      }
      if (n > std::numeric_limits<Vertex>::max()) throw ParseError(line_no, "vertex count too large");
      header = std::pair{n, m};
      edges.reserve(m);
      continue;
    }
    if (edges.size() == header->second) throw ParseError(line_no, "more edge lines than declared");
    if (tok.size() != 3) throw ParseError(line_no, "expected 'u v w'");
    std::uint64_t u = 0, v = 0;
    std::int64_t w = 0;
    if (!detail::parse_int(tok[0], u) || !detail::parse_int(tok[1], v))
      throw ParseError(line_no, "malformed vertex index");
    if (!detail::parse_int(tok[2], w)) throw ParseError(line_no, "weight is not a 64-bit integer");
    if (w == ExtInt::kInfRaw) throw ParseError(line_no, "weight collides with the infinity sentinel");
    if (u >= n || v >= n) throw ParseError(line_no, "vertex index out of range");
    edges.push_back(Edge{static_cast<Vertex>(u), static_cast<Vertex>(v), w});
  }
  if (!header) throw ParseError(line_no + 1, "missing header");
  if (edges.size() != header->second)
    throw ParseError(line_no + 1, "expected " + std::to_string(header->second) + " edges, found " +
                                      std::to_string(edges.size()));
  std::optional<std::int64_t> M;
  if (want_M) {
    Graph probe(n, edges);
    M = probe.max_abs_weight();
  }
  return Graph(n, std::move(edges), M);
}

inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

/// Canonical rendering: header (with the `M` token iff declared_M is set),
/// then edges in stored order.
inline std::string render_graph(const Graph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.m());
  if (g.declared_M()) out += " M";
  out += '\n';
  for (const auto& e : g.edges()) {
    out += std::to_string(e.tail);
    out += ' ';
    out += std::to_string(e.head);
    out += ' ';
    out += std::to_string(e.weight);
    out += '\n';
  }
  return out;
}

inline Graph reverse(const Graph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.m());
  for (const auto& e : g.edges()) edges.push_back(Edge{e.head, e.tail, e.weight});
  return Graph(g.n(), std::move(edges), g.declared_M());
}

/// n x n adjacency matrix; cell (u,v) is the lightest u->v edge, inf if none.
/// The diagonal is inf unless a self-loop exists.
inline DistMatrix weight_matrix(const Graph& g) {
  DistMatrix w(g.n(), g.n());
  for (const auto& e : g.edges()) w(e.tail, e.head) = min(w(e.tail, e.head), ExtInt(e.weight));
  return w;
}

/// True iff some directed cycle has negative total weight. Bellman-Ford from
/// a virtual source joined to every vertex by a 0-weight edge, with 128-bit
/// accumulators so arbitrary 64-bit weights cannot overflow.
inline bool detect_negative_cycle(const Graph& g) {
  std::vector<__int128> dist(g.n(), 0);
  for (std::size_t round = 0; round <= g.n(); ++round) {
    bool changed = false;
    for (const auto& e : g.edges()) {
      const __int128 cand = dist[e.tail] + e.weight;
      if (cand < dist[e.head]) {
        dist[e.head] = cand;
        changed = true;
      }
    }
    if (!changed) return false;
  }
  return true;
}

/// Random graph with m distinct ordered pairs (no self-loops).
///
/// Without `require_no_neg_cycle`, weights are uniform in {-M..M}. With it,
/// edges are added one at a time and each weight is drawn uniformly from the
/// part of {-M..M} that closes no negative cycle given the edges so far; a
/// pair whose feasible range is empty is rejected and another pair is drawn.
/// Deterministic for fixed arguments.
inline Graph gen_random_graph(std::size_t n, std::size_t m, std::int64_t M, std::uint64_t seed,
                              bool require_no_neg_cycle, std::size_t retry_budget = 0) {
  if (M < 0) throw InputError("gen: M must be nonnegative");
  const std::size_t pairs = n * (n == 0 ? 0 : n - 1);
  if (m > pairs) throw InputError("gen: m exceeds n(n-1)");
  Rng rng(mix_seed(seed));
  if (retry_budget == 0) retry_budget = 64 * (pairs + 1);

  // Candidate ordered pairs in a seeded random order.
  std::vector<std::uint64_t> order;
  const bool dense = m * 2 > pairs;
  if (dense || require_no_neg_cycle) {
    order.reserve(pairs);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (u != v) order.push_back(u * n + v);
    shuffle_prefix(order, order.size(), rng);
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  if (!require_no_neg_cycle) {
    if (dense) {
      for (std::size_t i = 0; i < m; ++i)
        edges.push_back(Edge{static_cast<Vertex>(order[i] / n), static_cast<Vertex>(order[i] % n), 0});
    } else {
      std::unordered_set<std::uint64_t> used;
      while (edges.size() < m) {
        const auto u = uniform_below(rng, n), v = uniform_below(rng, n);
        if (u == v || !used.insert(u * n + v).second) continue;
        edges.push_back(Edge{static_cast<Vertex>(u), static_cast<Vertex>(v), 0});
      }
    }
    for (auto& e : edges) e.weight = uniform_in(rng, -M, M);
  } else {
    // dist[a][b]: shortest a->b distance over the edges accepted so far.
    std::vector<ExtInt> dist(n * n, kInf);
    for (std::size_t v = 0; v < n; ++v) dist[v * n + v] = ExtInt::zero();
    std::size_t attempts = 0;
    for (std::size_t idx = 0; idx < order.size() && edges.size() < m; ++idx) {
      if (++attempts > retry_budget) break;
      const auto u = static_cast<Vertex>(order[idx] / n);
      const auto v = static_cast<Vertex>(order[idx] % n);
      const ExtInt back = dist[v * n + u];
      std::int64_t lo = -M;
      if (back.is_finite()) lo = std::max(lo, -back.value());
      if (lo > M) continue;
      const std::int64_t w = uniform_in(rng, lo, M);
      edges.push_back(Edge{u, v, w});
      for (std::size_t a = 0; a < n; ++a) {
        const ExtInt au = dist[a * n + u];
        if (au.is_inf()) continue;
        const ExtInt via = au + ExtInt(w);
        for (std::size_t b = 0; b < n; ++b) {
          const ExtInt cand = via + dist[v * n + b];
          if (cand < dist[a * n + b]) dist[a * n + b] = cand;
        }
      }
    }
    if (edges.size() < m) throw ResourceError("gen: retry budget exhausted before placing all edges");
  }
  std::sort(edges.begin(), edges.end());
  return Graph(n, std::move(edges), M);
}

}  // namespace allhops
