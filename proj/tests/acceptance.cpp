// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "support/fixtures.hpp"

using namespace allhops;
using namespace allhops::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

/// Records the first mismatch and counts checks.
class Tally {
 public:
  void check(bool cond, const std::function<std::string()>& what) {
    ++checks_;
    if (!cond && ok_) {
      ok_ = false;
      first_ = what();
    }
  }
  std::size_t checks() const { return checks_; }
  Outcome outcome(const std::string& extra = "") const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (!extra.empty()) s << ", " << extra;
    if (!ok_) s << ", first mismatch: " << first_;
    return {ok_, s.str()};
  }

 private:
  bool ok_ = true;
  std::size_t checks_ = 0;
  std::string first_;
};

SamplePlan plan_with(double C, std::uint64_t seed) {
  SamplePlan p;
  p.C = C;
  p.seed = seed;
  return p;
}

Graph with_declared_M(const Graph& g) { return Graph(g.n(), g.edges(), std::max<std::int64_t>(1, g.max_abs_weight())); }

std::string where(std::uint64_t seed, const std::string& what) {
  return what + " (seed " + std::to_string(seed) + ")";
}

Outcome solver_equivalence() {
  Tally t;
  for (std::int64_t M : {1, 5, 100}) {
    for (std::uint64_t i = 0; i < 100; ++i) {
      const std::uint64_t seed = derive_seed(static_cast<std::uint64_t>(M), i);
      Rng rng(seed);
      const std::size_t n = uniform_in(rng, 5, 60);
      const std::size_t m = uniform_in(rng, static_cast<std::int64_t>(n), static_cast<std::int64_t>(3 * n));
      const Graph g = random_graph(n, m, M, seed);
      const AllHopsTable ref = apah_brute(g, n - 1);

      const auto s = static_cast<Vertex>(uniform_below(rng, n)), tt = static_cast<Vertex>(uniform_below(rng, n));
      const std::size_t k_pair = 1 + i % 3;
      const ExtSeq pair = single_pair_allhops(g, s, tt, k_pair, plan_with(4, seed));
      for (std::size_t h = 1; h < n; ++h)
        t.check(pair.at(static_cast<std::int64_t>(h)) == ref.at_most(s, tt, h),
                [&] { return where(seed, "single_pair h=" + std::to_string(h)); });

      // k = 1 runs the first sub-algorithm only; k = 2, 3 with split 0 run the second above level 0.
      const std::size_t k_src = 1 + i % 3;
      const std::optional<std::size_t> split = k_src == 1 ? std::nullopt : std::optional<std::size_t>(0);
      const AllHopsRow row = single_source_allhops(g, s, k_src, plan_with(4, seed), split);
      for (std::size_t h = 0; h < n; ++h)
        for (Vertex v = 0; v < n; ++v)
          t.check(row.at_most(h, v) == ref.at_most(s, v, h),
                  [&] { return where(seed, "single_source h=" + std::to_string(h)); });

      const AllHopsTable all = all_pairs_allhops(g, plan_with(4, seed));
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
          for (std::size_t h = 0; h < n; ++h)
            t.check(all.at_most(u, v, h) == ref.at_most(u, v, h), [&] { return where(seed, "all_pairs"); });
    }
  }
  return t.outcome("300 graphs");
}

DistanceOracle build_kind(OracleKind kind, const Graph& g, const SamplePlan& plan) {
  const std::size_t H = g.n() > 1 ? g.n() - 1 : 1;
  switch (kind) {
    case OracleKind::powers: return build_oracle_powers(g, H);
    case OracleKind::bf: return build_oracle_bf(g, H);
    case OracleKind::mn: return build_oracle_mn(g, plan);
    case OracleKind::mpp: return build_oracle_mpp(g, plan);
    case OracleKind::bounded: return build_oracle_bounded(g, plan);
  }
  return {};
}

Outcome oracle_equivalence() {
  Tally t;
  const OracleKind kinds[] = {OracleKind::powers, OracleKind::bf, OracleKind::mn, OracleKind::mpp,
                              OracleKind::bounded};
  for (std::uint64_t i = 0; i < 8; ++i) {
    const std::size_t n = 2 + i * 4;
    const Graph g = with_declared_M(random_graph(n, 3 * n, 1 + static_cast<std::int64_t>(i % 5), 900 + i));
    const DistanceOracle ref = build_oracle_bf(g, n - 1);
    for (auto kind : kinds) {
      const DistanceOracle o = build_kind(kind, g, plan_with(4, i));
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
          for (std::size_t h = 1; h < n; ++h)
            t.check(o.query(u, v, h) == ref.query(u, v, h), [&] { return where(i, to_string(kind) + " exhaustive"); });
    }
  }
  const Graph big = with_declared_M(random_graph(120, 360, 5, 4242));
  const DistanceOracle ref = build_oracle_bf(big, 119);
  for (auto kind : kinds) {
    const DistanceOracle o = build_kind(kind, big, plan_with(4, 7));
    Rng rng(derive_seed(4242, static_cast<std::uint64_t>(kind)));
    for (int q = 0; q < 1000; ++q) {
      const auto u = static_cast<Vertex>(uniform_below(rng, 120)), v = static_cast<Vertex>(uniform_below(rng, 120));
      const std::size_t h = 1 + uniform_below(rng, 119);
      t.check(o.query(u, v, h) == ref.query(u, v, h), [&] { return to_string(kind) + " n=120 triple"; });
    }
  }
  return t.outcome("5 kinds");
}

Outcome kernel_equivalence() {
  Tally t;
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const std::size_t rows = uniform_in(rng, 1, 16), inner = uniform_in(rng, 1, 16), cols = uniform_in(rng, 1, 16);
    const std::int64_t M = uniform_in(rng, 0, 8);
    const MatrixSeq a = random_matseq(rows, inner, uniform_in(rng, 1, 16), uniform_in(rng, 0, 3), M, rng);
    const MatrixSeq b = random_matseq(inner, cols, uniform_in(rng, 1, 16), uniform_in(rng, 0, 3), M, rng);
    const MatrixSeq want = matseq_convolution(a, b, MatSeqStrategy::naive);
    const MatrixSeq got = matseq_convolution(a, b, MatSeqStrategy::polynomial, M);
    bool same = want.offset == got.offset && want.mats.size() == got.mats.size();
    for (std::size_t p = 0; same && p < want.mats.size(); ++p) same = want.mats[p] == got.mats[p];
    t.check(same, [&] { return "instance " + std::to_string(i); });
  }
  return t.outcome("200 instances");
}

Outcome d_sequence_identity() {
  Tally t;
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng(derive_seed(77, i));
    const std::size_t n = uniform_in(rng, 2, 30);
    const std::size_t k = uniform_in(rng, 1, 8);
    const Graph g = random_graph(n, uniform_in(rng, static_cast<std::int64_t>(n), static_cast<std::int64_t>(3 * n)),
                                 uniform_in(rng, 1, 8), derive_seed(78, i));
    const AllHopsTable ref = apah_brute(g, 2 * k);
    MatrixSeq head;
    for (std::size_t j = 0; j <= k; ++j) head.mats.push_back(at_most_matrix(ref, j));
    for (auto strategy : {MatSeqStrategy::naive, MatSeqStrategy::polynomial}) {
      const MatrixSeq sq = matseq_convolution(head, head, strategy);
      t.check(sq.offset == 0 && sq.mats.size() == 2 * k + 1, [&] { return where(i, "shape"); });
      for (std::size_t j = 0; j < sq.mats.size() && j <= 2 * k; ++j)
        t.check(sq.mats[j] == at_most_matrix(ref, j), [&] { return where(i, "D_" + std::to_string(j)); });
    }
  }
  return t.outcome("50 graphs, naive and polynomial");
}

Outcome tree_gadget_closed_forms() {
  Tally t;
  for (unsigned ell = 1; ell <= 6; ++ell) {
    const GadgetGraph gg = build_tree_gadget(ell);
    const std::size_t leaves = std::size_t{1} << ell;
    const std::size_t hops = leaves - 1;
    const Vertex v = gg.vertex("v");
    for (std::size_t i = 1; i <= leaves; ++i) {
      const AllHopsRow r = bellman_ford_allhops(gg.graph, gg.vertex("u" + std::to_string(i)), leaves);
      const std::string tag = "ell=" + std::to_string(ell) + " i=" + std::to_string(i);
      // Reachable only with exactly 2^ell - 1 hops: a single path.
      t.check(r.at_most(hops - 1, v).is_inf(), [&] { return tag + " shorter path"; });
      t.check(r.exactly(hops + 1, v).is_inf(), [&] { return tag + " longer walk"; });
      t.check(r.exactly(hops, v) == ExtInt(static_cast<std::int64_t>(i + leaves - 2)), [&] { return tag + " weight"; });
      if (ell == 2) t.check(r.at_most(hops, v) == ExtInt(static_cast<std::int64_t>(2 + i)), [&] { return tag + " distance"; });
    }
  }
  return t.outcome("ell 1..6");
}

Outcome triangle_gadget() {
  Tally t;
  Rng rng(6060);
  std::size_t positives = 0;
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = uniform_in(rng, 1, 10);
    Tripartite h;
    h.nI = h.nJ = h.nK = n;
    const double density = 0.05 + 0.25 * static_cast<double>(uniform_below(rng, 100)) / 100.0;
    for (auto* list : {&h.ij, &h.jk, &h.ki})
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (static_cast<double>(uniform_below(rng, 1000)) < density * 1000) list->emplace_back(a, b);
    const GadgetGraph gg = build_triangle_gadget(h);
    const bool want = has_triangle_brute(h);
    positives += want;
    const bool got = decide_triangle(gg, bellman_ford_allhops(gg.graph, gg.vertex("s"), n + 4));
    t.check(got == want, [&] { return "instance " + std::to_string(it); });
  }
  return t.outcome(std::to_string(positives) + " with triangles");
}

IntMatrix random_int_matrix(std::size_t r, std::size_t c, std::int64_t lo, std::int64_t hi, Rng& rng) {
  IntMatrix m(r, std::vector<std::int64_t>(c));
  for (auto& row : m)
    for (auto& e : row) e = uniform_in(rng, lo, hi);
  return m;
}

Outcome reduction_decoders() {
  Tally t;
  Rng rng(7070);
  for (int it = 0; it < 50; ++it) {
    const std::int64_t x = std::int64_t{1} << uniform_in(rng, 0, 3);
    const std::size_t n = uniform_in(rng, 1, 8), q = uniform_in(rng, 1, 4), nb = uniform_in(rng, 1, 8);
    const IntMatrix A = random_int_matrix(n, q, 1, x, rng), B = random_int_matrix(q, nb, 1, x, rng);
    const GadgetGraph gg = reduce_mpp_to_exact_hops(A, B, x);
    const AllHopsRow r = bellman_ford_allhops(gg.graph, gg.vertex("s"), mpp_required_hops(gg));
    t.check(decode_mpp(gg, r) == naive_minplus(A, B), [&] { return "mpp instance " + std::to_string(it); });
  }
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = uniform_in(rng, 1, 8);
    const IntMatrix A = random_int_matrix(n, n, -50, 50, rng), B = random_int_matrix(n, n, -50, 50, rng);
    const GadgetGraph gg = reduce_convolution_to_hops(A, B);
    for (std::size_t i = 0; i < n; ++i) {
      const AllHopsRow r = bellman_ford_allhops(gg.graph, static_cast<Vertex>(i), convolution_required_hops(gg));
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t ell = 0; ell <= 2 * n; ++ell)
          t.check(decode_convolution(gg, r, j, ell) == convolution_problem_value(A, B, i, j, ell),
                  [&] { return "conv instance " + std::to_string(it); });
    }
  }
  return t.outcome("50 + 50 instances");
}

Outcome resource_counters() {
  Tally t;
  const double c = kCounterConstant;
  double worst_query = 0, worst_cells = 0, worst_relax = 0;
  for (std::size_t n : {32u, 64u, 128u, 256u}) {
    const Graph g = random_graph(n, 4 * n, 8, n);
    const double nn = static_cast<double>(n);
    const double lg2 = std::pow(std::log2(nn), 2);
    const DistanceOracle mn = build_oracle_mn(g);
    const DistanceOracle mpp = build_oracle_mpp(g);
    const double cells = static_cast<double>(std::max(mn.cells(), mpp.cells())) / (nn * nn * lg2);
    const double relax = static_cast<double>(mn.build_relaxations) / (static_cast<double>(g.m()) * nn * lg2);
    t.check(cells <= c, [&] { return "cells at n=" + std::to_string(n); });
    t.check(relax <= c, [&] { return "relaxations at n=" + std::to_string(n); });
    worst_cells = std::max(worst_cells, cells);
    worst_relax = std::max(worst_relax, relax);
    Rng rng(n);
    for (int q = 0; q < 2000; ++q) {
      QueryStats st;
      mn.query(static_cast<Vertex>(uniform_below(rng, n)), static_cast<Vertex>(uniform_below(rng, n)),
               1 + uniform_below(rng, n - 1), &st);
      const double ratio = static_cast<double>(st.additions) / (nn * lg2);
      worst_query = std::max(worst_query, ratio);
      t.check(ratio <= c, [&] { return "query additions at n=" + std::to_string(n); });
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "c=%.0f, worst ratios: query %.2f, cells %.2f, relaxations %.2f", c, worst_query,
                worst_cells, worst_relax);
  return t.outcome(buf);
}

Outcome performance_smoke() {
  Tally t;
  const Graph g = random_graph(256, 1024, 8, 256);
  const auto t0 = std::chrono::steady_clock::now();
  const AllHopsTable all = all_pairs_allhops(g);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  t.check(secs < 60.0, [&] { return "took " + std::to_string(secs) + " s"; });
  for (Vertex u = 0; u < 256; ++u) {
    const AllHopsRow ref = bellman_ford_allhops(g, u, 255);
    for (std::size_t h = 0; h <= 255; ++h)
      for (Vertex v = 0; v < 256; ++v)
        t.check(all.at_most(u, v, h) == ref.at_most(h, v), [&] { return "source " + std::to_string(u); });
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "all_pairs %.1f s", secs);
  return t.outcome(buf);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"solver equivalence", solver_equivalence},
      {"distance oracle equivalence", oracle_equivalence},
      {"polynomial kernel equals naive", kernel_equivalence},
      {"D-sequence identity", d_sequence_identity},
      {"tree gadget closed forms", tree_gadget_closed_forms},
      {"triangle gadget", triangle_gadget},
      {"reduction decoders", reduction_decoders},
      {"resource counters", resource_counters},
      {"performance smoke", performance_smoke},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s: %s [%.1f s]\n", o.ok ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
