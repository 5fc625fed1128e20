#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "allhops/baselines.hpp"
#include "allhops/dist_matrix.hpp"
#include "allhops/error.hpp"
#include "allhops/graph.hpp"
#include "allhops/minplus.hpp"
#include "allhops/parallel.hpp"
#include "allhops/sampling.hpp"

namespace allhops {

struct SolverOptions {
  MatSeqStrategy matseq = MatSeqStrategy::naive;
  ScalarConvStrategy scalar = ScalarConvStrategy::monotone;
};

namespace detail {

inline void require_no_negative_cycle(const Graph& g) {
  if (detect_negative_cycle(g)) throw PreconditionError("negative cycle");
}

/// d_{<=0} and d_{<=1} over all of V: identity, and W with a zero diagonal.
inline std::vector<DistMatrix> base_level_table(const Graph& g) {
  const auto all = iota_labels(g.n());
  DistMatrix d0 = DistMatrix::identity(all);
  DistMatrix d1 = weight_matrix(g);
  d1.min_with(d0);
  return {std::move(d0), std::move(d1)};
}

inline std::vector<std::size_t> all_positions(std::size_t count) {
  std::vector<std::size_t> p(count);
  for (std::size_t i = 0; i < count; ++i) p[i] = i;
  return p;
}

/// Window of a level table: hops [max(0, center - radius), center + radius],
/// taken from `known` where available and from `computed` (a self-convolution
/// result) above it.
inline MatrixSeq assemble_window(const std::vector<DistMatrix>& known, std::int64_t center,
                                 std::int64_t radius, const MatrixSeq* computed) {
  MatrixSeq w;
  w.offset = std::max<std::int64_t>(0, center - radius);
  const auto known_top = static_cast<std::int64_t>(known.size()) - 1;
  for (std::int64_t j = w.offset; j <= center + radius; ++j) {
    if (j <= known_top)
      w.mats.push_back(known[static_cast<std::size_t>(j)]);
    else
      w.mats.push_back(computed->at_hop(j));
  }
  return w;
}

inline MatrixSeq slice(const MatrixSeq& s, std::int64_t lo, std::int64_t hi) {
  MatrixSeq out;
  lo = std::max(lo, s.first_hop());
  hi = std::min(hi, s.last_hop());
  out.offset = lo;
  for (std::int64_t h = lo; h <= hi; ++h) out.mats.push_back(s.at_hop(h));
  return out;
}

/// Single-pair all-hops core (no negative-cycle check). Returns the final
/// level table over S_k x S_k for hops 0..(>= n-1) and the S_k labels.
struct PairLevelResult {
  std::vector<Vertex> labels;
  std::vector<DistMatrix> table;
};

inline PairLevelResult single_pair_levels(const Graph& g, std::size_t k, const SamplePlan& plan,
                                          const SolverOptions& options) {
  const std::size_t n = g.n();
  const std::size_t top_hop = n > 1 ? n - 1 : 1;
  const SampleHierarchy hier = build_hierarchy(n, k, plan, HierarchyDirection::shrinking);

  MatSeqOptions conv;
  conv.strategy = options.matseq;

  std::vector<DistMatrix> table = base_level_table(g);  // over S_0 x S_0 = V x V
  for (std::size_t r = 1; r <= k; ++r) {
    const auto& prev = hier.levels[r - 1];
    const auto& cur = hier.levels[r];
    const auto known = static_cast<std::int64_t>(table.size()) - 1;  // H: hops known at level r-1
    const auto target = static_cast<std::int64_t>(
        r == k ? top_hop : std::min(top_hop, ceil_root_power(n, r, k)));
    const auto cur_in_prev = positions_of(prev, cur);

    std::vector<DistMatrix> prefix;  // d_{<=j}(S_r, S_{r-1})
    prefix.reserve(static_cast<std::size_t>(std::max(known, target)) + 1);
    for (const auto& m : table) prefix.push_back(m.select_rows(cur_in_prev));

    if (target > known) {
      const std::int64_t radius = known - 1;
      const int levels = std::bit_width(static_cast<std::uint64_t>(target)) - 1;  // floor(log2)
      // D_0 lies entirely inside the known table.
      MatrixSeq window = assemble_window(table, 1, radius, nullptr);
      std::int64_t have = known;
      for (int i = 0; i <= levels; ++i) {
        const std::int64_t c = std::int64_t{1} << i;
        if (i > 0) {
          // D_i = (D_{i-1} (*) D_{i-1}) restricted to the window; only hops
          // above the known table need the convolution.
          const std::int64_t lo = std::max(known + 1, c - radius);
          MatrixSeq conv_out;
          if (lo <= c + radius) {
            MatSeqOptions o = conv;
            o.output = HopRange{lo, c + radius};
            conv_out = matseq_convolution(window, window, o);
          }
          window = assemble_window(table, c, radius, &conv_out);
        }
        const std::int64_t upto = std::min(2 * c, target);
        if (upto <= have) continue;
        // d_{<=h}(S_r, S_{r-1}) for h in (have, upto] from the prefix up to 2^i
        // convolved with the window tail d_{<=j}(S_{r-1}, S_{r-1}), j in [2^i, 2^i + radius].
        MatrixSeq head;
        head.offset = 0;
        head.mats.assign(prefix.begin(), prefix.begin() + c + 1);
        MatSeqOptions o = conv;
        o.output = HopRange{have + 1, upto};
        MatrixSeq q = matseq_convolution(head, slice(window, c, c + radius), o);
        const DistMatrix best_known = prefix[static_cast<std::size_t>(have)];
        for (std::int64_t h = have + 1; h <= upto; ++h) {
          DistMatrix m = q.at_hop(h);
          m.min_with(best_known);
          prefix.push_back(std::move(m));
        }
        have = upto;
      }
    }

    const auto all_cols = all_positions(cur.size());
    std::vector<DistMatrix> next;
    next.reserve(prefix.size());
    for (const auto& m : prefix) next.push_back(m.select(all_cols, cur_in_prev));
    table = std::move(next);
  }
  return {hier.levels[k], std::move(table)};
}

inline ExtSeq single_pair_unchecked(const Graph& g, Vertex s, Vertex t, std::size_t k,
                                    const SamplePlan& plan, const SolverOptions& options) {
  const std::size_t n = g.n();
  ExtSeq out;
  out.offset = 1;
  const std::size_t hops = n > 0 ? n - 1 : 0;
  if (s == t) {
    out.values.assign(hops, ExtInt::zero());
    return out;
  }
  std::vector<Vertex> pinned = plan.pinned;
  pinned.push_back(s);
  pinned.push_back(t);
  const auto res = single_pair_levels(g, k, plan.with_pinned(pinned), options);
  const auto sp = positions_of(res.labels, std::vector<Vertex>{s}).front();
  const auto tp = positions_of(res.labels, std::vector<Vertex>{t}).front();
  out.values.reserve(hops);
  for (std::size_t h = 1; h <= hops; ++h) out.values.push_back(res.table[h](sp, tp));
  return out;
}

}  // namespace detail

/// d_{<=h}(s, t) for h = 1..n-1 via a shrinking hitting-set hierarchy
/// S_0 = V, S_1, ..., S_k (s and t pinned). Level r knows d_{<=h}(S_r, S_r)
/// for h up to ceil(n^{r/k}); it is built from level r-1 by doubling windowed
/// matrix sequences D_i (self-convolution) and extending prefix sequences
/// d_{<=j}(S_r, S_{r-1}) with them.
///
/// Exact with high probability over plan.seed.
inline ExtSeq single_pair_allhops(const Graph& g, Vertex s, Vertex t, std::size_t k,
                                  const SamplePlan& plan = {}, const SolverOptions& options = {}) {
  if (s >= g.n() || t >= g.n()) throw InputError("single_pair_allhops: vertex out of range");
  if (k < 1) throw InputError("single_pair_allhops: k must be >= 1");
  plan.validate(g.n());
  detail::require_no_negative_cycle(g);
  return detail::single_pair_unchecked(g, s, t, k, plan, options);
}

namespace detail {

/// Stacks equally shaped matrices vertically; row labels become 0..total-1.
inline DistMatrix stack(const std::vector<DistMatrix>& blocks) {
  const std::size_t rows = blocks.empty() ? 0 : blocks[0].rows();
  const auto& cols = blocks.empty() ? std::vector<Vertex>{} : blocks[0].col_labels();
  DistMatrix out(iota_labels(rows * blocks.size()), cols);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t i = 0; i < rows; ++i) std::ranges::copy(blocks[b].row(i), out.row(b * rows + i).begin());
  return out;
}

inline std::vector<DistMatrix> unstack(const DistMatrix& m, std::size_t block_rows,
                                       const std::vector<Vertex>& row_labels) {
  std::vector<DistMatrix> out;
  if (block_rows == 0) return out;
  for (std::size_t b = 0; b * block_rows < m.rows(); ++b) {
    DistMatrix blk(row_labels, m.col_labels());
    for (std::size_t i = 0; i < block_rows; ++i) std::ranges::copy(m.row(b * block_rows + i), blk.row(i).begin());
    out.push_back(std::move(blk));
  }
  return out;
}

/// Exact-hop matrices d_h(rows, V) for h = 1..count by the stacking scheme:
/// compute W, W^2, W^4, ... by squaring, then repeatedly multiply the stack
/// [A_1; ...; A_{2^i}] by W^{2^i} to get [A_{2^i+1}; ...; A_{2^{i+1}}].
inline std::vector<DistMatrix> exact_hop_stack(const DistMatrix& w, const std::vector<Vertex>& rows,
                                               std::size_t count) {
  std::vector<DistMatrix> blocks;
  if (count == 0) return blocks;
  const auto row_pos = positions_of(w.row_labels(), rows);
  blocks.push_back(w.select_rows(row_pos));
  DistMatrix power = w;  // W^{2^i}
  while (blocks.size() < count) {
    const DistMatrix stacked = stack(blocks);
    auto next = unstack(minplus_product(stacked, power), rows.size(), rows);
    for (auto& b : next) {
      if (blocks.size() == count) break;
      blocks.push_back(std::move(b));
    }
    if (blocks.size() < count) power = minplus_product(power, power);
  }
  return blocks;
}

}  // namespace detail

/// Single-source all-hops distances d_{<=h}(s, v), h = 0..n-1, over a growing
/// hierarchy S_0, ..., S_k = V (s pinned). Level r covers v in S_r.
///
/// Levels r <= split use the first algorithm: one single-pair run per new
/// target in S_r. Later levels use the second: exact-hop tables
/// d_h(S_{r-1}, V) for h <= T = ceil(n^{1-(r-1)/k}) by stacking, then one
/// rectangular min-plus product combining them with the level-(r-1) row:
///   d_{<=h}(s,v) = min(d_{<=T}(s,v), min_{h' in [1,T], u in S_{r-1}} d_{<=h-h'}(s,u) + d_{h'}(u,v)).
/// Default split = ceil(k/2).
inline AllHopsRow single_source_allhops(const Graph& g, Vertex s, std::size_t k, const SamplePlan& plan = {},
                                        std::optional<std::size_t> split = std::nullopt,
                                        const SolverOptions& options = {}) {
  const std::size_t n = g.n();
  if (s >= n) throw InputError("single_source_allhops: source out of range");
  if (k < 1) throw InputError("single_source_allhops: k must be >= 1");
  plan.validate(n);
  detail::require_no_negative_cycle(g);
  const std::size_t split_level = split.value_or((k + 1) / 2);
  const std::size_t H = n - 1;

  AllHopsRow row(s, n, H, /*with_exact=*/false);
  std::vector<char> have(n, 0);
  auto set_target = [&](Vertex v, auto&& value_at) {
    for (std::size_t h = 0; h <= H; ++h) row.le[h * n + v] = value_at(h);
    have[v] = 1;
  };
  set_target(s, [](std::size_t) { return ExtInt::zero(); });

  std::vector<Vertex> pinned = plan.pinned;
  pinned.push_back(s);
  const SamplePlan pinned_plan = plan.with_pinned(pinned);
  const SampleHierarchy hier = build_hierarchy(n, k, pinned_plan, HierarchyDirection::growing);
  const DistMatrix w = weight_matrix(g);

  for (std::size_t r = 0; r <= k; ++r) {
    const auto& cur = hier.levels[r];
    std::vector<Vertex> todo;
    for (auto v : cur)
      if (!have[v]) todo.push_back(v);
    if (todo.empty()) continue;

    if (r == 0 || r <= split_level) {
      for (auto t : todo) {
        const SamplePlan sub = plan.with_seed(derive_seed(plan.seed, 0x51u + t));
        const ExtSeq seq = detail::single_pair_unchecked(g, s, t, k, sub, options);
        set_target(t, [&](std::size_t h) { return h == 0 ? kInf : seq.values[h - 1]; });
      }
      continue;
    }

    const auto& prev = hier.levels[r - 1];
    const std::size_t T = std::min(std::max<std::size_t>(H, 1), ceil_root_power(n, k - (r - 1), k));

    // Step 1: exact-hop layers d_h(S_{r-1}, V), h = 1..T.
    const auto exact = detail::exact_hop_stack(w, prev, T);
    const auto s_pos = positions_of(prev, std::vector<Vertex>{s}).front();

    // Short hops straight from the exact layers of s.
    std::vector<ExtInt> short_le((T + 1) * todo.size(), kInf);
    for (std::size_t c = 0; c < todo.size(); ++c) {
      ExtInt best = todo[c] == s ? ExtInt::zero() : kInf;
      short_le[c] = best;
      for (std::size_t h = 1; h <= T; ++h) {
        best = min(best, exact[h - 1](s_pos, todo[c]));
        short_le[h * todo.size() + c] = best;
      }
    }

    // Step 2: C = A * B with A[h, u] = d_{<=h}(s, u) and B[u, (v, h')] = d_{h'}(u, v).
    DistMatrix a(iota_labels(H + 1), prev);
    for (std::size_t h = 0; h <= H; ++h)
      for (std::size_t j = 0; j < prev.size(); ++j) a(h, j) = row.le[h * n + prev[j]];
    DistMatrix b(prev, iota_labels(todo.size() * T));
    for (std::size_t i = 0; i < prev.size(); ++i)
      for (std::size_t c = 0; c < todo.size(); ++c)
        for (std::size_t hp = 1; hp <= T; ++hp) b(i, c * T + (hp - 1)) = exact[hp - 1](i, todo[c]);
    const DistMatrix prod = minplus_product(a, b);

    for (std::size_t c = 0; c < todo.size(); ++c) {
      set_target(todo[c], [&](std::size_t h) {
        if (h <= T) return short_le[h * todo.size() + c];
        ExtInt best = short_le[T * todo.size() + c];
        for (std::size_t hp = 1; hp <= T; ++hp) best = min(best, prod(h - hp, c * T + (hp - 1)));
        return best;
      });
    }
  }
  // Running minimum keeps the row non-increasing in h regardless of which
  // route produced each entry (every route yields upper bounds that are exact w.h.p.).
  for (std::size_t h = 1; h <= H; ++h)
    for (std::size_t v = 0; v < n; ++v) row.le[h * n + v] = min(row.le[h * n + v], row.le[(h - 1) * n + v]);
  return row;
}

namespace detail {

/// Pairwise at-most tables for hop budgets 0..cap, stored per ordered pair:
/// seq(u, v) is contiguous over h.
class PairSequences {
 public:
  PairSequences(std::size_t n, std::size_t cap) : n_(n), stride_(cap + 1), data_(n * n * (cap + 1), kInf) {}

  std::span<ExtInt> seq(std::size_t u, std::size_t v) { return {data_.data() + (u * n_ + v) * stride_, stride_}; }
  std::span<const ExtInt> seq(std::size_t u, std::size_t v) const {
    return {data_.data() + (u * n_ + v) * stride_, stride_};
  }
  std::size_t n() const noexcept { return n_; }
  std::size_t cap() const noexcept { return stride_ - 1; }

 private:
  std::size_t n_;
  std::size_t stride_;
  std::vector<ExtInt> data_;
};

/// Extends at-most sequences of the `rows` x V pairs from hop budget `have` to
/// `upto` through pivots in `pivots`:
///   out(u,v)[h] = min(out(u,v)[have], min_{x in pivots} min_{h'} left(u,x)[h'] + right(x,v)[h - h'])
/// with both factors truncated to hops 0..have. `left(u, x)` and
/// `right(x, v)` return the input sequences; `out(u, v)` the destination.
template <typename Left, typename Right, typename Out>
void extend_through_pivots(std::size_t row_count, std::size_t col_count, const std::vector<Vertex>& pivots,
                           std::size_t have, std::size_t upto, ScalarConvStrategy strategy, Left&& left,
                           Right&& right, Out&& out) {
  parallel_for(0, row_count, [&](std::size_t u) {
    std::vector<std::vector<std::uint32_t>> breaks(pivots.size());
    if (strategy == ScalarConvStrategy::monotone) {
      for (std::size_t xi = 0; xi < pivots.size(); ++xi) {
        const auto a = left(u, pivots[xi]).first(have + 1);
        if (!is_non_increasing(a))
          throw PreconditionError("extend_through_pivots: at-most sequence is not non-increasing");
        breaks[xi] = breakpoints(a);
      }
    }
    std::vector<ExtInt> buf(upto - have);
    for (std::size_t v = 0; v < col_count; ++v) {
      auto dst = out(u, v);
      std::fill(buf.begin(), buf.end(), dst[have]);
      for (std::size_t xi = 0; xi < pivots.size(); ++xi) {
        const auto a = left(u, pivots[xi]).first(have + 1);
        const auto b = right(pivots[xi], v).first(have + 1);
        if (strategy == ScalarConvStrategy::monotone)
          convolve_monotone_into(a, breaks[xi], b, have + 1, upto, buf);
        else
          convolve_naive_into(a, b, have + 1, upto, buf);
      }
      std::ranges::copy(buf, dst.begin() + static_cast<std::ptrdiff_t>(have + 1));
    }
  });
}

}  // namespace detail

/// All-pairs all-hops distances d_{<=h}(u, v), h = 0..n-1.
///
/// Round k grows the known hop budget from K_{k-1} to K_k = ceil((3/2)^k):
/// a sample S_k of size min(n, ceil(C n ln n / K_{k-1})) splits every path
/// of length in (K_{k-1}, K_k] into two halves of at most K_{k-1} hops, so
/// each pair's new entries are the scalar min-plus convolutions through every
/// x in S_k, minimized with the stagnation value d_{<=K_{k-1}}(u, v).
inline AllHopsTable all_pairs_allhops(const Graph& g, const SamplePlan& plan = {}, const SolverOptions& options = {}) {
  const std::size_t n = g.n();
  plan.validate(n);
  detail::require_no_negative_cycle(g);
  const std::size_t H = n > 0 ? n - 1 : 0;

  detail::PairSequences d(n, std::max<std::size_t>(H, 1));
  const auto base = detail::base_level_table(g);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      auto s = d.seq(u, v);
      s[0] = base[0](u, v);
      s[1] = base[1](u, v);
    }

  std::size_t have = 1;
  Rng rng(mix_seed(plan.seed));
  const auto all = iota_labels(n);
  for (std::size_t round = 1; have < H; ++round) {
    const std::size_t upto = std::min(H, ceil_three_halves_pow(round));
    if (upto <= have) continue;
    const auto pivots = sample_subset(all, hitting_set_size(n, plan.C, static_cast<double>(n) / static_cast<double>(have)),
                                      plan.pinned, rng);
    detail::extend_through_pivots(
        n, n, pivots, have, upto, options.scalar,
        [&](std::size_t u, std::size_t x) { return std::span<const ExtInt>(d.seq(u, x)); },
        [&](std::size_t x, std::size_t v) { return std::span<const ExtInt>(d.seq(x, v)); },
        [&](std::size_t u, std::size_t v) { return d.seq(u, v); });
    have = upto;
  }

  AllHopsTable t;
  t.n = n;
  t.max_hop = H;
  t.sources = all;
  t.rows.reserve(n);
  for (std::size_t u = 0; u < n; ++u) {
    AllHopsRow row(static_cast<Vertex>(u), n, H, false);
    for (std::size_t h = 0; h <= H; ++h)
      for (std::size_t v = 0; v < n; ++v) row.le[h * n + v] = d.seq(u, v)[h];
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace allhops
