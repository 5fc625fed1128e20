#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "allhops/baselines.hpp"
#include "allhops/dist_matrix.hpp"
#include "allhops/error.hpp"
#include "allhops/graph.hpp"
#include "allhops/minplus.hpp"
#include "allhops/sampling.hpp"
#include "allhops/solvers.hpp"

namespace allhops {

enum class OracleKind : std::uint32_t { powers = 1, bf = 2, mn = 3, mpp = 4, bounded = 5 };

inline std::string to_string(OracleKind k) {
  switch (k) {
    case OracleKind::powers: return "powers";
    case OracleKind::bf: return "bf";
    case OracleKind::mn: return "mn";
    case OracleKind::mpp: return "mpp";
    case OracleKind::bounded: return "bounded";
  }
  return "unknown";
}

inline OracleKind parse_oracle_kind(std::string_view s) {
  for (auto k : {OracleKind::powers, OracleKind::bf, OracleKind::mn, OracleKind::mpp, OracleKind::bounded})
    if (to_string(k) == s) return k;
  throw InputError("unknown oracle kind: " + std::string(s));
}

struct OracleOptions {
  /// Upper bound on table storage in bytes; exceeded -> ResourceError.
  std::optional<std::size_t> memory_cap;
  /// OracleBounded: levels with K_k <= crossover use the stacking path.
  std::optional<std::size_t> crossover;
};

struct QueryStats {
  std::uint64_t additions = 0;
};

/// One sampled level: for each s in `sample` and every v, the sequences
/// d_{<=h}(s, v) (fwd) and d_{<=h}(v, s) (bwd) for h = 0..K, contiguous in h.
/// Full-table oracles use a single level with sample = V and no bwd.
struct OracleLevel {
  std::vector<Vertex> sample;
  std::size_t K = 0;
  std::vector<ExtInt> fwd;
  std::vector<ExtInt> bwd;

  std::size_t stride() const noexcept { return K + 1; }
  std::span<const ExtInt> fwd_seq(std::size_t i, std::size_t v, std::size_t n) const {
    return {fwd.data() + (i * n + v) * stride(), stride()};
  }
  std::span<ExtInt> fwd_seq(std::size_t i, std::size_t v, std::size_t n) {
    return {fwd.data() + (i * n + v) * stride(), stride()};
  }
  std::span<const ExtInt> bwd_seq(std::size_t i, std::size_t v, std::size_t n) const {
    return {bwd.data() + (i * n + v) * stride(), stride()};
  }
  std::span<ExtInt> bwd_seq(std::size_t i, std::size_t v, std::size_t n) {
    return {bwd.data() + (i * n + v) * stride(), stride()};
  }
  std::size_t cells() const noexcept { return fwd.size() + bwd.size(); }

  friend bool operator==(const OracleLevel&, const OracleLevel&) = default;
};

/// Preprocessed all-hops distance structure. Immutable after build; queries
/// only read, so concurrent queries are safe.
class DistanceOracle {
 public:
  OracleKind kind = OracleKind::bf;
  std::size_t n = 0;
  std::size_t max_hop = 0;
  std::uint64_t seed = 0;
  double C = 4.0;
  std::uint64_t build_relaxations = 0;
  std::vector<OracleLevel> levels;

  std::size_t cells() const noexcept {
    std::size_t c = 0;
    for (const auto& l : levels) c += l.cells();
    return c;
  }

  /// d_{<=h}(u, v) for 1 <= h <= max_hop. `stats`, if given, receives the
  /// number of candidate sums evaluated.
  ExtInt query(Vertex u, Vertex v, std::size_t h, QueryStats* stats = nullptr) const {
    if (u >= n || v >= n) throw InputError("query: vertex out of range");
    if (h < 1 || h > max_hop) throw InputError("query: hop out of range");
    if (u == v) return ExtInt::zero();
    if (kind == OracleKind::powers || kind == OracleKind::bf) return levels[0].fwd_seq(u, v, n)[h];

    // Levels to scan: MN up to i* = floor(log2 h); the 3/2-hierarchies up to
    // the first level whose budget reaches h.
    std::size_t last = levels.size() - 1;
    if (kind == OracleKind::mn) {
      last = std::min(last, static_cast<std::size_t>(std::bit_width(h) - 1));
    } else {
      for (std::size_t j = 0; j < levels.size(); ++j)
        if (levels[j].K >= h) {
          last = j;
          break;
        }
    }
    ExtInt best = kInf;
    std::uint64_t adds = 0;
    for (std::size_t j = 0; j <= last; ++j) {
      const auto& lvl = levels[j];
      const std::size_t top = std::min(h, lvl.K);
      for (std::size_t i = 0; i < lvl.sample.size(); ++i) {
        const auto left = lvl.bwd_seq(i, u, n);   // d_{<=h'}(u, s)
        const auto right = lvl.fwd_seq(i, v, n);  // d_{<=h''}(s, v)
        for (std::size_t hp = 0; hp <= top; ++hp) {
          best = min(best, left[hp] + right[std::min(h - hp, lvl.K)]);
        }
        adds += top + 1;
      }
    }
    if (stats) stats->additions += adds;
    return best;
  }

  friend bool operator==(const DistanceOracle&, const DistanceOracle&) = default;
};

namespace detail {

inline void charge_memory(std::size_t& used, std::size_t cells, const OracleOptions& opt) {
  used += cells * sizeof(ExtInt);
  if (opt.memory_cap && used > *opt.memory_cap) throw ResourceError("oracle: memory cap exceeded");
}

inline std::size_t hierarchy_top(std::size_t n) { return n > 1 ? n - 1 : 1; }

/// Budgets K_k = ceil((3/2)^k) capped at H, strictly increasing, ending at H.
inline std::vector<std::size_t> three_halves_budgets(std::size_t H) {
  std::vector<std::size_t> out{1};
  for (std::size_t k = 1; out.back() < H; ++k) {
    const std::size_t K = std::min(H, ceil_three_halves_pow(k));
    if (K > out.back()) out.push_back(K);
  }
  return out;
}

/// Nested samples S_0 = V, S_k within S_{k-1}, |S_k| = min(n, ceil(C n ln n / K_k)).
inline std::vector<std::vector<Vertex>> nested_samples(std::size_t n, const std::vector<std::size_t>& budgets,
                                                       const SamplePlan& plan) {
  std::vector<std::vector<Vertex>> s(budgets.size());
  Rng rng(mix_seed(plan.seed));
  s[0] = iota_labels(n);
  for (std::size_t k = 1; k < budgets.size(); ++k)
    s[k] = sample_subset(s[k - 1],
                         hitting_set_size(n, plan.C, static_cast<double>(n) / static_cast<double>(budgets[k])),
                         plan.pinned, rng);
  return s;
}

/// Level 0 of the 3/2-hierarchies: hops 0 and 1 over V with a zero diagonal.
inline OracleLevel base_oracle_level(const Graph& g) {
  const std::size_t n = g.n();
  const auto base = base_level_table(g);
  OracleLevel lvl;
  lvl.sample = iota_labels(n);
  lvl.K = 1;
  lvl.fwd.assign(n * n * 2, kInf);
  lvl.bwd.assign(n * n * 2, kInf);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t h = 0; h <= 1; ++h) {
        lvl.fwd_seq(s, v, n)[h] = base[h](s, v);
        lvl.bwd_seq(s, v, n)[h] = base[h](v, s);
      }
  return lvl;
}

inline OracleLevel empty_level(std::vector<Vertex> sample, std::size_t K, std::size_t n) {
  OracleLevel lvl;
  lvl.K = K;
  lvl.fwd.assign(sample.size() * n * (K + 1), kInf);
  lvl.bwd.assign(sample.size() * n * (K + 1), kInf);
  lvl.sample = std::move(sample);
  return lvl;
}

}  // namespace detail

/// Full 3-D table from iterated min-plus products W, W^2, ..., W^H.
inline DistanceOracle build_oracle_powers(const Graph& g, std::size_t H, const OracleOptions& opt = {}) {
  if (H < 1) throw InputError("oracle: hop budget must be >= 1");
  const std::size_t n = g.n();
  std::size_t used = 0;
  detail::charge_memory(used, n * n * (H + 1), opt);
  const auto t = allhops_from_powers(g, H);
  DistanceOracle o;
  o.kind = OracleKind::powers;
  o.n = n;
  o.max_hop = H;
  OracleLevel lvl;
  lvl.sample = iota_labels(n);
  lvl.K = H;
  lvl.fwd.resize(n * n * (H + 1));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      auto seq = lvl.fwd_seq(u, v, n);
      for (std::size_t h = 0; h <= H; ++h) seq[h] = t.rows[u].at_most(h, v);
    }
  o.levels.push_back(std::move(lvl));
  return o;
}

/// Full 3-D table from one hop-bounded Bellman-Ford per source.
inline DistanceOracle build_oracle_bf(const Graph& g, std::size_t H, const OracleOptions& opt = {}) {
  if (H < 1) throw InputError("oracle: hop budget must be >= 1");
  const std::size_t n = g.n();
  std::size_t used = 0;
  detail::charge_memory(used, n * n * (H + 1), opt);
  DistanceOracle o;
  o.kind = OracleKind::bf;
  o.n = n;
  o.max_hop = H;
  OracleLevel lvl;
  lvl.sample = iota_labels(n);
  lvl.K = H;
  lvl.fwd.resize(n * n * (H + 1));
  for (std::size_t u = 0; u < n; ++u) {
    const auto row = bellman_ford_allhops(g, static_cast<Vertex>(u), H);
    o.build_relaxations += g.m() * H;
    for (std::size_t v = 0; v < n; ++v) {
      auto seq = lvl.fwd_seq(u, v, n);
      for (std::size_t h = 0; h <= H; ++h) seq[h] = row.at_most(h, v);
    }
  }
  o.levels.push_back(std::move(lvl));
  return o;
}

/// Levels i = 0..floor(log2 n) with independent samples S_i of size
/// min(n, ceil(C n ln n / 2^i)); for each s in S_i, Bellman-Ford on g and on
/// reverse(g) with hop budget min(2^{i+1}, n-1).
inline DistanceOracle build_oracle_mn(const Graph& g, const SamplePlan& plan = {}, const OracleOptions& opt = {}) {
  const std::size_t n = g.n();
  plan.validate(n);
  detail::require_no_negative_cycle(g);
  DistanceOracle o;
  o.kind = OracleKind::mn;
  o.n = n;
  o.max_hop = detail::hierarchy_top(n);
  o.seed = plan.seed;
  o.C = plan.C;
  const Graph rev = reverse(g);
  const auto all = iota_labels(n);
  Rng rng(mix_seed(plan.seed));
  const std::size_t top_level = n > 0 ? static_cast<std::size_t>(std::bit_width(n) - 1) : 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i <= top_level; ++i) {
    const double scale = static_cast<double>(n) / static_cast<double>(std::size_t{1} << i);
    auto sample = sample_subset(all, hitting_set_size(n, plan.C, scale), plan.pinned, rng);
    const std::size_t K = std::min(std::size_t{2} << i, o.max_hop);
    detail::charge_memory(used, 2 * sample.size() * n * (K + 1), opt);
    OracleLevel lvl = detail::empty_level(std::move(sample), K, n);
    for (std::size_t si = 0; si < lvl.sample.size(); ++si) {
      const auto f = bellman_ford_allhops(g, lvl.sample[si], K);
      const auto b = bellman_ford_allhops(rev, lvl.sample[si], K);
      o.build_relaxations += 2 * g.m() * K;
      for (std::size_t v = 0; v < n; ++v) {
        auto fs = lvl.fwd_seq(si, v, n);
        auto bs = lvl.bwd_seq(si, v, n);
        for (std::size_t h = 0; h <= K; ++h) {
          fs[h] = f.at_most(h, v);
          bs[h] = b.at_most(h, v);
        }
      }
    }
    o.levels.push_back(std::move(lvl));
  }
  return o;
}

/// Levels with budgets K_i = ceil((3/2)^i) and nested samples. Level i
/// extends level i-1 by one rectangular min-plus product per direction:
/// B[(s,h), (s',h')] = d_{<=h-h'}(s, s') (inf unless 0 <= h-h' <= K_{i-1}),
/// C[(s',h'), v] = d_{<=h'}(s', v), and
/// A_{i,h}[s,v] = min(A_{i-1,K_{i-1}}[s,v], (B * C)[(s,h), v]).
inline DistanceOracle build_oracle_mpp(const Graph& g, const SamplePlan& plan = {}, const OracleOptions& opt = {}) {
  const std::size_t n = g.n();
  plan.validate(n);
  detail::require_no_negative_cycle(g);
  DistanceOracle o;
  o.kind = OracleKind::mpp;
  o.n = n;
  o.max_hop = detail::hierarchy_top(n);
  o.seed = plan.seed;
  o.C = plan.C;
  const auto budgets = detail::three_halves_budgets(o.max_hop);
  const auto samples = detail::nested_samples(n, budgets, plan);
  std::size_t used = 0;
  detail::charge_memory(used, 2 * n * n * 2, opt);
  o.levels.push_back(detail::base_oracle_level(g));

  for (std::size_t i = 1; i < budgets.size(); ++i) {
    const OracleLevel& prev = o.levels[i - 1];
    const std::size_t Kp = prev.K, K = budgets[i];
    detail::charge_memory(used, 2 * samples[i].size() * n * (K + 1), opt);
    OracleLevel lvl = detail::empty_level(samples[i], K, n);
    const auto pos = positions_of(prev.sample, lvl.sample);
    const std::size_t sp = prev.sample.size(), sc = lvl.sample.size(), dk = K - Kp;

    for (int dir = 0; dir < 2; ++dir) {
      auto prev_seq = [&](std::size_t i_, std::size_t v) { return dir == 0 ? prev.fwd_seq(i_, v, n) : prev.bwd_seq(i_, v, n); };
      auto cur_seq = [&](std::size_t i_, std::size_t v) { return dir == 0 ? lvl.fwd_seq(i_, v, n) : lvl.bwd_seq(i_, v, n); };
      // fwd: B holds d(s, s'); bwd: B holds d(s', s), i.e. bwd sequence of s at vertex s'.
      DistMatrix b(sc * dk, sp * (Kp + 1));
      for (std::size_t a = 0; a < sc; ++a)
        for (std::size_t h = Kp + 1; h <= K; ++h)
          for (std::size_t c = 0; c < sp; ++c) {
            const auto seq = prev_seq(pos[a], prev.sample[c]);
            for (std::size_t hp = 0; hp <= Kp; ++hp)
              if (h - hp <= Kp) b(a * dk + (h - Kp - 1), c * (Kp + 1) + hp) = seq[h - hp];
          }
      DistMatrix cm(sp * (Kp + 1), n);
      for (std::size_t c = 0; c < sp; ++c)
        for (std::size_t v = 0; v < n; ++v) {
          const auto seq = prev_seq(c, v);
          for (std::size_t hp = 0; hp <= Kp; ++hp) cm(c * (Kp + 1) + hp, v) = seq[hp];
        }
      const DistMatrix d = minplus_product(b, cm);
      for (std::size_t a = 0; a < sc; ++a)
        for (std::size_t v = 0; v < n; ++v) {
          const auto src = prev_seq(pos[a], v);
          auto dst = cur_seq(a, v);
          std::copy(src.begin(), src.end(), dst.begin());
          for (std::size_t h = Kp + 1; h <= K; ++h) dst[h] = min(src[Kp], d(a * dk + (h - Kp - 1), v));
        }
    }
    o.levels.push_back(std::move(lvl));
  }
  return o;
}

/// Default crossover ceil(n^{2/3} / max(1, M)^{1/3}).
inline std::size_t default_crossover(std::size_t n, std::int64_t M) {
  const double v = std::pow(static_cast<double>(n), 2.0 / 3.0) /
                   std::cbrt(static_cast<double>(std::max<std::int64_t>(1, M)));
  return static_cast<std::size_t>(std::ceil(v - 1e-9));
}

/// Same level layout as the MPP oracle (budgets ceil((3/2)^k), nested samples),
/// built by two interchangeable routes: levels with K_k <= crossover take
/// exact-hop tables d_h(S_k, V), h <= K_k, from stacked matrix powers; larger
/// levels extend level k-1 through pivots x in S_{k-1} with scalar min-plus
/// convolutions of the stored non-increasing sequences.
inline DistanceOracle build_oracle_bounded(const Graph& g, const SamplePlan& plan = {}, const OracleOptions& opt = {}) {
  const std::size_t n = g.n();
  plan.validate(n);
  if (!g.declared_M()) throw InputError("bounded oracle: graph has no declared weight bound M");
  detail::require_no_negative_cycle(g);
  DistanceOracle o;
  o.kind = OracleKind::bounded;
  o.n = n;
  o.max_hop = detail::hierarchy_top(n);
  o.seed = plan.seed;
  o.C = plan.C;
  const std::size_t crossover = opt.crossover.value_or(default_crossover(n, *g.declared_M()));
  const auto budgets = detail::three_halves_budgets(o.max_hop);
  const auto samples = detail::nested_samples(n, budgets, plan);
  std::size_t used = 0;
  detail::charge_memory(used, 2 * n * n * 2, opt);
  o.levels.push_back(detail::base_oracle_level(g));

  const DistMatrix w = weight_matrix(g);
  const DistMatrix w_rev = weight_matrix(reverse(g));
  for (std::size_t k = 1; k < budgets.size(); ++k) {
    const std::size_t K = budgets[k];
    detail::charge_memory(used, 2 * samples[k].size() * n * (K + 1), opt);
    OracleLevel lvl = detail::empty_level(samples[k], K, n);
    const std::size_t sc = lvl.sample.size();

    if (K <= crossover) {
      for (int dir = 0; dir < 2; ++dir) {
        const auto exact = detail::exact_hop_stack(dir == 0 ? w : w_rev, lvl.sample, K);
        for (std::size_t a = 0; a < sc; ++a)
          for (std::size_t v = 0; v < n; ++v) {
            auto dst = dir == 0 ? lvl.fwd_seq(a, v, n) : lvl.bwd_seq(a, v, n);
            ExtInt best = lvl.sample[a] == v ? ExtInt::zero() : kInf;
            dst[0] = best;
            for (std::size_t h = 1; h <= K; ++h) {
              best = min(best, exact[h - 1](a, v));
              dst[h] = best;
            }
          }
      }
    } else {
      const OracleLevel& prev = o.levels[k - 1];
      const std::size_t Kp = prev.K;
      const auto pos = positions_of(prev.sample, lvl.sample);
      // Positions of every vertex in S_{k-1} (or none).
      std::vector<std::size_t> prev_pos(n, SIZE_MAX);
      for (std::size_t c = 0; c < prev.sample.size(); ++c) prev_pos[prev.sample[c]] = c;
      for (std::size_t a = 0; a < sc; ++a)
        for (std::size_t v = 0; v < n; ++v) {
          std::ranges::copy(prev.fwd_seq(pos[a], v, n), lvl.fwd_seq(a, v, n).begin());
          std::ranges::copy(prev.bwd_seq(pos[a], v, n), lvl.bwd_seq(a, v, n).begin());
        }
      // fwd: d(s, v) = d(s, x) (*) d(x, v).
      detail::extend_through_pivots(
          sc, n, prev.sample, Kp, K, ScalarConvStrategy::monotone,
          [&](std::size_t a, Vertex x) { return prev.fwd_seq(pos[a], x, n); },
          [&](Vertex x, std::size_t v) { return prev.fwd_seq(prev_pos[x], v, n); },
          [&](std::size_t a, std::size_t v) { return lvl.fwd_seq(a, v, n); });
      // bwd: d(v, s) = d(v, x) (*) d(x, s); rows are v here, columns s.
      std::vector<ExtInt> tmp(n * sc * (K + 1));
      auto tmp_seq = [&](std::size_t v, std::size_t a) {
        return std::span<ExtInt>(tmp.data() + (v * sc + a) * (K + 1), K + 1);
      };
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t a = 0; a < sc; ++a) std::ranges::copy(lvl.bwd_seq(a, v, n), tmp_seq(v, a).begin());
      detail::extend_through_pivots(
          n, sc, prev.sample, Kp, K, ScalarConvStrategy::monotone,
          [&](std::size_t v, Vertex x) { return prev.bwd_seq(prev_pos[x], v, n); },
          [&](Vertex x, std::size_t a) { return prev.bwd_seq(pos[a], x, n); },
          [&](std::size_t v, std::size_t a) { return tmp_seq(v, a); });
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t a = 0; a < sc; ++a) std::ranges::copy(tmp_seq(v, a), lvl.bwd_seq(a, v, n).begin());
    }
    o.levels.push_back(std::move(lvl));
  }
  return o;
}

// ---------------------------------------------------------------------------
// Snapshot files
// ---------------------------------------------------------------------------

namespace detail {

inline void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

inline std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw InputError("oracle snapshot: truncated file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
  return v;
}

inline void put_values(std::ostream& out, const std::vector<ExtInt>& vals) {
  put_u64(out, vals.size());
  for (auto x : vals) put_u64(out, static_cast<std::uint64_t>(x.raw()));
}

inline std::vector<ExtInt> get_values(std::istream& in, std::size_t limit) {
  const auto count = get_u64(in);
  if (count > limit) throw InputError("oracle snapshot: table larger than declared shape");
  std::vector<ExtInt> vals(count);
  for (auto& x : vals) x = ExtInt(static_cast<std::int64_t>(get_u64(in)));
  return vals;
}

inline constexpr char kSnapshotMagic[5] = {'A', 'H', 'D', 'O', '1'};

}  // namespace detail

/// Binary layout (little-endian): magic "AHDO1", kind, n, seed, C (IEEE bits),
/// level count, max_hop, build_relaxations; per level: K, sample size, sample,
/// fwd count + values, bwd count + values. INT64_MAX encodes inf.
inline void write_oracle(std::ostream& out, const DistanceOracle& o) {
  out.write(detail::kSnapshotMagic, 5);
  detail::put_u64(out, static_cast<std::uint64_t>(o.kind));
  detail::put_u64(out, o.n);
  detail::put_u64(out, o.seed);
  detail::put_u64(out, std::bit_cast<std::uint64_t>(o.C));
  detail::put_u64(out, o.levels.size());
  detail::put_u64(out, o.max_hop);
  detail::put_u64(out, o.build_relaxations);
  for (const auto& l : o.levels) {
    detail::put_u64(out, l.K);
    detail::put_u64(out, l.sample.size());
    for (auto v : l.sample) detail::put_u64(out, v);
    detail::put_values(out, l.fwd);
    detail::put_values(out, l.bwd);
  }
  if (!out) throw ResourceError("oracle snapshot: write failed");
}

inline DistanceOracle read_oracle(std::istream& in) {
  char magic[5];
  if (!in.read(magic, 5) || std::memcmp(magic, detail::kSnapshotMagic, 5) != 0)
    throw InputError("oracle snapshot: bad magic");
  DistanceOracle o;
  const auto kind = detail::get_u64(in);
  if (kind < 1 || kind > 5) throw InputError("oracle snapshot: unknown kind");
  o.kind = static_cast<OracleKind>(kind);
  o.n = detail::get_u64(in);
  o.seed = detail::get_u64(in);
  o.C = std::bit_cast<double>(detail::get_u64(in));
  const auto level_count = detail::get_u64(in);
  o.max_hop = detail::get_u64(in);
  o.build_relaxations = detail::get_u64(in);
  if (o.n > (1u << 20) || level_count > 4096) throw InputError("oracle snapshot: implausible header");
  for (std::uint64_t i = 0; i < level_count; ++i) {
    OracleLevel l;
    l.K = detail::get_u64(in);
    const auto ss = detail::get_u64(in);
    if (ss > o.n || l.K > o.n + 1) throw InputError("oracle snapshot: bad level shape");
    l.sample.resize(ss);
    for (auto& v : l.sample) {
      const auto x = detail::get_u64(in);
      if (x >= o.n) throw InputError("oracle snapshot: sample vertex out of range");
      v = static_cast<Vertex>(x);
    }
    const std::size_t full = ss * o.n * (l.K + 1);
    l.fwd = detail::get_values(in, full);
    l.bwd = detail::get_values(in, full);
    if (l.fwd.size() != full || (!l.bwd.empty() && l.bwd.size() != full))
      throw InputError("oracle snapshot: table size mismatch");
    o.levels.push_back(std::move(l));
  }
  if (o.levels.empty()) throw InputError("oracle snapshot: no levels");
  return o;
}

}  // namespace allhops
