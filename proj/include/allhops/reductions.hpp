#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "allhops/baselines.hpp"
#include "allhops/error.hpp"
#include "allhops/ext_int.hpp"
#include "allhops/graph.hpp"

namespace allhops {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// A constructed graph plus named vertices and the integer parameters its
/// decoder needs.
struct GadgetGraph {
  Graph graph;
  std::vector<std::pair<std::string, Vertex>> names;
  std::map<std::string, std::int64_t> params;

  Vertex vertex(const std::string& name) const {
    for (const auto& [k, v] : names)
      if (k == name) return v;
    throw InputError("gadget: no vertex named " + name);
  }
  std::int64_t param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) throw InputError("gadget: no parameter " + name);
    return it->second;
  }
};

/// Side-car name map: one `name index` line per named vertex.
inline std::string render_names(const GadgetGraph& g) {
  std::ostringstream out;
  for (const auto& [k, v] : g.names) out << k << ' ' << v << '\n';
  return out.str();
}

namespace detail {

struct TreeIds {
  std::vector<Vertex> leaves;
  Vertex root = 0;
};

/// Appends a chain-tree with 2^ell leaves to `edges`, allocating fresh vertex
/// ids from `next`. A node at height h reaches its parent through 2^h edges of
/// weight 1 (left child) or 2 (right child). `root`, if given, is reused as
/// the root vertex.
inline TreeIds add_tree(std::vector<Edge>& edges, Vertex& next, unsigned ell, bool reversed,
                        std::optional<Vertex> root = std::nullopt) {
  auto link = [&](Vertex from, Vertex to, std::int64_t w) {
    if (reversed)
      edges.push_back({to, from, w});
    else
      edges.push_back({from, to, w});
  };
  TreeIds ids;
  std::vector<Vertex> level(std::size_t{1} << ell);
  if (ell == 0 && root) {
    level[0] = *root;
  } else {
    for (auto& v : level) v = next++;
  }
  ids.leaves = level;
  for (unsigned h = 0; h < ell; ++h) {
    std::vector<Vertex> parents(level.size() / 2);
    const bool top = h + 1 == ell;
    for (auto& p : parents) p = (top && root) ? *root : next++;
    for (std::size_t j = 0; j < level.size(); ++j) {
      const std::int64_t w = (j % 2 == 0) ? 1 : 2;
      Vertex cur = level[j];
      const std::size_t chain = std::size_t{1} << h;
      for (std::size_t e = 0; e + 1 < chain; ++e) {
        const Vertex mid = next++;
        link(cur, mid, w);
        cur = mid;
      }
      link(cur, parents[j / 2], w);
    }
    level = std::move(parents);
  }
  ids.root = level[0];
  return ids;
}

inline Graph make_graph(std::size_t n, std::vector<Edge> edges, std::optional<std::int64_t> M = std::nullopt) {
  std::int64_t bound = 0;
  for (const auto& e : edges) bound = std::max(bound, e.weight < 0 ? -e.weight : e.weight);
  return Graph(n, std::move(edges), M ? M : std::optional<std::int64_t>(bound));
}

}  // namespace detail

/// Complete binary tree with leaves u1..u{2^ell} and root v, every tree edge
/// from height i to i+1 replaced by a chain of 2^i edges (weight 1 on left
/// children, 2 on right). Each u_i has a unique path to v with 2^ell - 1 hops
/// and weight i + 2^ell - 2. `reversed` flips every edge.
inline GadgetGraph build_tree_gadget(unsigned ell, bool reversed = false, std::size_t max_vertices = 1u << 22) {
  if (ell < 1) throw InputError("tree gadget: ell must be >= 1");
  if (ell > 40 || (std::size_t{ell} + 2) << ell > max_vertices) throw ResourceError("tree gadget: too large");
  std::vector<Edge> edges;
  Vertex next = 0;
  const auto ids = detail::add_tree(edges, next, ell, reversed);
  GadgetGraph out{detail::make_graph(next, std::move(edges)), {}, {}};
  for (std::size_t i = 0; i < ids.leaves.size(); ++i) out.names.emplace_back("u" + std::to_string(i + 1), ids.leaves[i]);
  out.names.emplace_back("v", ids.root);
  out.params["ell"] = ell;
  out.params["reversed"] = reversed ? 1 : 0;
  return out;
}

/// Naive min-plus product of integer matrices.
inline IntMatrix naive_minplus(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), q = b.size(), m = q ? b[0].size() : 0;
  IntMatrix c(n, std::vector<std::int64_t>(m, std::numeric_limits<std::int64_t>::max()));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != q) throw InputError("naive_minplus: shape mismatch");
    for (std::size_t k = 0; k < q; ++k)
      for (std::size_t j = 0; j < m; ++j) c[i][j] = std::min(c[i][j], a[i][k] + b[k][j]);
  }
  return c;
}

/// Gadget turning the min-plus product of A (n x q) and B (q x n') with
/// entries in [1, x] into exact-hop distances from s = a1:
///   C[i][j] = d_{i-1+2x}(a1, b_j) - (i - 3 + 2x)   (1-based i, j).
/// a1 -> ... -> an is a weight-1 chain; for every k two tree gadgets with x
/// leaves share their root, the second reversed; a_i -> c_{k, A[i][k]} and
/// c'_{k, B[k][j]} -> b_j are weight-1 edges.
inline GadgetGraph reduce_mpp_to_exact_hops(const IntMatrix& A, const IntMatrix& B, std::int64_t x) {
  if (x < 1 || !std::has_single_bit(static_cast<std::uint64_t>(x)))
    throw InputError("mpp gadget: x must be a power of two");
  const std::size_t n = A.size();
  const std::size_t q = B.size();
  if (n == 0 || q == 0) throw InputError("mpp gadget: empty matrix");
  const std::size_t nb = B[0].size();
  for (const auto& r : A)
    if (r.size() != q) throw InputError("mpp gadget: A must be n x q with q = rows of B");
  for (const auto& r : B)
    if (r.size() != nb) throw InputError("mpp gadget: B rows differ in length");
  auto check = [&](std::int64_t e) {
    if (e < 1 || e > x) throw InputError("mpp gadget: entry outside [1, x]");
  };
  for (const auto& r : A) std::ranges::for_each(r, check);
  for (const auto& r : B) std::ranges::for_each(r, check);

  const auto ell = static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(x)));
  std::vector<Edge> edges;
  Vertex next = 0;
  std::vector<Vertex> a(n), b(nb);
  for (auto& v : a) v = next++;
  for (auto& v : b) v = next++;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({a[i], a[i + 1], 1});
  std::vector<Vertex> mids(q);
  for (std::size_t k = 0; k < q; ++k) {
    const auto first = detail::add_tree(edges, next, ell, false);
    const auto second = detail::add_tree(edges, next, ell, true, first.root);
    mids[k] = first.root;
    for (std::size_t i = 0; i < n; ++i)
      edges.push_back({a[i], first.leaves[static_cast<std::size_t>(A[i][k] - 1)], 1});
    for (std::size_t j = 0; j < nb; ++j)
      edges.push_back({second.leaves[static_cast<std::size_t>(B[k][j] - 1)], b[j], 1});
  }
  GadgetGraph out{detail::make_graph(next, std::move(edges)), {}, {}};
  out.names.emplace_back("s", a[0]);
  for (std::size_t i = 0; i < n; ++i) out.names.emplace_back("a" + std::to_string(i + 1), a[i]);
  for (std::size_t j = 0; j < nb; ++j) out.names.emplace_back("b" + std::to_string(j + 1), b[j]);
  for (std::size_t k = 0; k < q; ++k) out.names.emplace_back("mid" + std::to_string(k + 1), mids[k]);
  out.params["x"] = x;
  out.params["rows"] = static_cast<std::int64_t>(n);
  out.params["cols"] = static_cast<std::int64_t>(nb);
  return out;
}

/// Hop budget an exact-hop table from s needs for decode_mpp.
inline std::size_t mpp_required_hops(const GadgetGraph& g) {
  return static_cast<std::size_t>(g.param("rows") - 1 + 2 * g.param("x"));
}

/// Decodes C = A * B from exact-hop distances out of s (a row with `ex`).
inline IntMatrix decode_mpp(const GadgetGraph& g, const AllHopsRow& from_s) {
  if (!from_s.has_exact()) throw InputError("decode_mpp: exact-hop values required");
  if (from_s.source != g.vertex("s")) throw InputError("decode_mpp: row must start at s");
  const auto n = g.param("rows"), nb = g.param("cols"), x = g.param("x");
  if (from_s.max_hop < mpp_required_hops(g)) throw InputError("decode_mpp: hop budget too small");
  IntMatrix c(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(nb)));
  for (std::int64_t i = 1; i <= n; ++i)
    for (std::int64_t j = 1; j <= nb; ++j) {
      const auto d = from_s.exactly(static_cast<std::size_t>(i - 1 + 2 * x), g.vertex("b" + std::to_string(j)));
      if (d.is_inf()) throw PreconditionError("decode_mpp: missing exact-hop path");
      c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = d.value() - (i - 3 + 2 * x);
    }
  return c;
}

/// min_{x+y=ell, 1<=x,y<=n} A[i][x] + B[j][y] (1-based x, y; 0-based i, j);
/// inf when no split exists.
inline ExtInt convolution_problem_value(const IntMatrix& A, const IntMatrix& B, std::size_t i, std::size_t j,
                                        std::size_t ell) {
  const std::size_t n = A.at(i).size();
  ExtInt best = kInf;
  for (std::size_t x = 1; x <= n; ++x) {
    if (ell <= x || ell - x > B.at(j).size()) continue;
    best = min(best, ExtInt(A[i][x - 1]) + ExtInt(B[j][ell - x - 1]));
  }
  return best;
}

/// Five-layer graph: layer 1 (i), layer 2 (x), singleton s, layer 4 (y),
/// layer 5 (j). Edges i -> x of weight A[i][x], x -> x-1 and x1 -> s of
/// weight 0, s -> y1 and y-1 -> y of weight 0, y -> j of weight B[j][y].
/// Then d_{ell+2}(i, j) = min_{x+y=ell} A[i][x] + B[j][y].
inline GadgetGraph reduce_convolution_to_hops(const IntMatrix& A, const IntMatrix& B) {
  const std::size_t n = A.size();
  if (n == 0 || B.size() != n) throw InputError("conv gadget: A and B must be n x n");
  for (const auto* m : {&A, &B})
    for (const auto& r : *m)
      if (r.size() != n) throw InputError("conv gadget: A and B must be n x n");
  auto L1 = [&](std::size_t i) { return static_cast<Vertex>(i); };
  auto L2 = [&](std::size_t x) { return static_cast<Vertex>(n + x); };
  const auto s = static_cast<Vertex>(2 * n);
  auto L4 = [&](std::size_t y) { return static_cast<Vertex>(2 * n + 1 + y); };
  auto L5 = [&](std::size_t j) { return static_cast<Vertex>(3 * n + 1 + j); };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < n; ++x) edges.push_back({L1(i), L2(x), A[i][x]});
  for (std::size_t x = 1; x < n; ++x) edges.push_back({L2(x), L2(x - 1), 0});
  edges.push_back({L2(0), s, 0});
  edges.push_back({s, L4(0), 0});
  for (std::size_t y = 1; y < n; ++y) edges.push_back({L4(y - 1), L4(y), 0});
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t j = 0; j < n; ++j) edges.push_back({L4(y), L5(j), B[j][y]});
  GadgetGraph out{detail::make_graph(4 * n + 1, std::move(edges)), {}, {}};
  for (std::size_t i = 0; i < n; ++i) out.names.emplace_back("i" + std::to_string(i + 1), L1(i));
  for (std::size_t x = 0; x < n; ++x) out.names.emplace_back("x" + std::to_string(x + 1), L2(x));
  out.names.emplace_back("s", s);
  for (std::size_t y = 0; y < n; ++y) out.names.emplace_back("y" + std::to_string(y + 1), L4(y));
  for (std::size_t j = 0; j < n; ++j) out.names.emplace_back("j" + std::to_string(j + 1), L5(j));
  out.params["n"] = static_cast<std::int64_t>(n);
  return out;
}

/// Hop budget exact-hop tables need for decode_convolution.
inline std::size_t convolution_required_hops(const GadgetGraph& g) {
  return static_cast<std::size_t>(2 * g.param("n") + 2);
}

/// d_{ell+2}(i, j) read from an exact-hop row out of layer-1 vertex i
/// (0-based i, j).
inline ExtInt decode_convolution(const GadgetGraph& g, const AllHopsRow& from_i, std::size_t j, std::size_t ell) {
  if (!from_i.has_exact()) throw InputError("decode_convolution: exact-hop values required");
  const auto n = static_cast<std::size_t>(g.param("n"));
  if (from_i.source >= n || j >= n) throw InputError("decode_convolution: index out of range");
  if (ell + 2 > from_i.max_hop) throw InputError("decode_convolution: hop budget too small");
  return from_i.exactly(ell + 2, 3 * n + 1 + j);
}

// ---------------------------------------------------------------------------
// Exact-hop <-> at-most-hop
// ---------------------------------------------------------------------------

/// g' with w' = w - 2Mn. For h <= n the exact-h distances of g are
/// d_h = d'_{<=h} + 2Mnh; a recovered value above h*M means no exact-h walk.
struct ShiftReduction {
  Graph shifted;
  std::int64_t M = 1;
  std::size_t n = 0;
  std::int64_t shift = 0;  // 2Mn

  ExtInt recover(ExtInt at_most_shifted, std::size_t h) const {
    if (h > n) throw InputError("shift recovery: h must be <= n");
    if (at_most_shifted.is_inf()) return kInf;
    const auto hh = static_cast<std::int64_t>(h);
    const std::int64_t val = at_most_shifted.value() + shift * hh;
    if (val > M * hh) return kInf;
    return ExtInt(val);
  }
};

/// Uses declared_M when present, else the largest |w|; M = 0 is raised to 1.
inline ShiftReduction exact_to_atmost_shift(const Graph& g) {
  const std::int64_t M = std::max<std::int64_t>(1, g.declared_M().value_or(g.max_abs_weight()));
  const auto n = static_cast<std::int64_t>(std::max<std::size_t>(g.n(), 1));
  constexpr std::int64_t lim = std::int64_t{1} << 62;
  if (M > lim / (2 * n) || 2 * M * n > lim / n) throw InputError("shift reduction: 2*M*n*n overflows");
  ShiftReduction r{Graph(0, {}), M, g.n(), 2 * M * n};
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.weight -= r.shift;
  r.shifted = Graph(g.n(), std::move(edges), M + r.shift);
  return r;
}

/// g plus a zero-weight self-loop at every vertex, so exact-h distances of the
/// result equal at-most-h distances of g.
inline Graph atmost_to_exact_selfloops(const Graph& g) {
  std::vector<Edge> edges = g.edges();
  for (std::size_t v = 0; v < g.n(); ++v) edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v), 0});
  std::ranges::sort(edges);
  return Graph(g.n(), std::move(edges), g.declared_M());
}

// ---------------------------------------------------------------------------
// Triangle detection
// ---------------------------------------------------------------------------

/// Tripartite graph: parts I, J, K and the cross edges I-J, J-K, K-I.
struct Tripartite {
  std::size_t nI = 0, nJ = 0, nK = 0;
  std::vector<std::pair<std::size_t, std::size_t>> ij, jk, ki;
};

/// Text format: `nI nJ nK`, then for each of IJ, JK, KI a count followed by
/// that many `a b` lines (0-based indices into the respective parts).
inline Tripartite parse_tripartite(std::istream& in) {
  Tripartite t;
  if (!(in >> t.nI >> t.nJ >> t.nK)) throw InputError("tripartite: missing part sizes");
  auto read = [&](auto& list, std::size_t na, std::size_t nb, const char* what) {
    std::size_t count = 0;
    if (!(in >> count)) throw InputError(std::string("tripartite: missing ") + what + " edge count");
    for (std::size_t e = 0; e < count; ++e) {
      long long a = -1, b = -1;
      if (!(in >> a >> b)) throw InputError(std::string("tripartite: truncated ") + what + " edge list");
      if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= na || static_cast<std::size_t>(b) >= nb)
        throw InputError(std::string("tripartite: ") + what + " edge index out of range");
      list.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
  };
  read(t.ij, t.nI, t.nJ, "IJ");
  read(t.jk, t.nJ, t.nK, "JK");
  read(t.ki, t.nK, t.nI, "KI");
  std::string extra;
  if (in >> extra) throw InputError("tripartite: trailing input");
  return t;
}

inline std::string render_tripartite(const Tripartite& t) {
  std::ostringstream out;
  out << t.nI << ' ' << t.nJ << ' ' << t.nK << '\n';
  for (const auto* list : {&t.ij, &t.jk, &t.ki}) {
    out << list->size() << '\n';
    for (auto [a, b] : *list) out << a << ' ' << b << '\n';
  }
  return out.str();
}

/// Cubic enumeration.
inline bool has_triangle_brute(const Tripartite& t) {
  std::vector<char> ij(t.nI * t.nJ), jk(t.nJ * t.nK), ki(t.nK * t.nI);
  for (auto [a, b] : t.ij) ij[a * t.nJ + b] = 1;
  for (auto [a, b] : t.jk) jk[a * t.nK + b] = 1;
  for (auto [a, b] : t.ki) ki[a * t.nI + b] = 1;
  for (std::size_t i = 0; i < t.nI; ++i)
    for (std::size_t j = 0; j < t.nJ; ++j)
      if (ij[i * t.nJ + j])
        for (std::size_t k = 0; k < t.nK; ++k)
          if (jk[j * t.nK + k] && ki[k * t.nI + i]) return true;
  return false;
}

/// Vertices s, I1, J', K', I2, t. Paths s -> I1_1 -> ... -> I1_n and
/// I2_1 -> ... -> I2_n -> t of weight -1 edges; each cross edge of H becomes a
/// weight +1 edge I1 -> J', J' -> K', K' -> I2. H has a triangle iff
/// d_{<=n+4}(s, t) = 2 - n with n = |I|.
inline GadgetGraph build_triangle_gadget(const Tripartite& t) {
  if (t.nI == 0) throw InputError("triangle gadget: part I must be nonempty");
  const std::size_t n = t.nI;
  const Vertex s = 0;
  auto I1 = [&](std::size_t p) { return static_cast<Vertex>(1 + p); };
  auto Jv = [&](std::size_t j) { return static_cast<Vertex>(1 + n + j); };
  auto Kv = [&](std::size_t k) { return static_cast<Vertex>(1 + n + t.nJ + k); };
  auto I2 = [&](std::size_t p) { return static_cast<Vertex>(1 + n + t.nJ + t.nK + p); };
  const auto tv = static_cast<Vertex>(1 + 2 * n + t.nJ + t.nK);
  std::vector<Edge> edges;
  edges.push_back({s, I1(0), -1});
  for (std::size_t p = 0; p + 1 < n; ++p) edges.push_back({I1(p), I1(p + 1), -1});
  for (std::size_t p = 0; p + 1 < n; ++p) edges.push_back({I2(p), I2(p + 1), -1});
  edges.push_back({I2(n - 1), tv, -1});
  for (auto [i, j] : t.ij) edges.push_back({I1(i), Jv(j), 1});
  for (auto [j, k] : t.jk) edges.push_back({Jv(j), Kv(k), 1});
  for (auto [k, i] : t.ki) edges.push_back({Kv(k), I2(i), 1});
  std::ranges::sort(edges);
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  GadgetGraph out{Graph(tv + 1, std::move(edges), 1), {}, {}};
  out.names.emplace_back("s", s);
  out.names.emplace_back("t", tv);
  for (std::size_t p = 0; p < n; ++p) out.names.emplace_back("I1_" + std::to_string(p), I1(p));
  for (std::size_t j = 0; j < t.nJ; ++j) out.names.emplace_back("J_" + std::to_string(j), Jv(j));
  for (std::size_t k = 0; k < t.nK; ++k) out.names.emplace_back("K_" + std::to_string(k), Kv(k));
  for (std::size_t p = 0; p < n; ++p) out.names.emplace_back("I2_" + std::to_string(p), I2(p));
  out.params["n"] = static_cast<std::int64_t>(n);
  return out;
}

/// Decides from at-most-hop distances out of s: d_{<=n+4}(s, t) == 2 - n.
inline bool decide_triangle(const GadgetGraph& g, const AllHopsRow& from_s) {
  const auto n = g.param("n");
  const auto h = static_cast<std::size_t>(n + 4);
  if (from_s.source != g.vertex("s")) throw InputError("decide_triangle: row must start at s");
  if (from_s.max_hop < h) throw InputError("decide_triangle: hop budget too small");
  return from_s.at_most(h, g.vertex("t")) == ExtInt(2 - n);
}

}  // namespace allhops
