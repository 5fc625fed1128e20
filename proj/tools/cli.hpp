#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "allhops/allhops.hpp"

namespace allhops::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kPrecondition = 2, kVerification = 3 };

class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string format = "tsv";
  std::uint64_t seed = 0;
  double C = 4.0;
  std::optional<unsigned> threads;
  std::optional<std::size_t> memory_cap;
  std::string strategy = "naive";
  std::string scalar = "monotone";
  bool paranoid = false;
};

class RecordWriter {
 public:
  RecordWriter(std::ostream& out, std::string format) : out_(out), jsonl_(format == "jsonl") {}

  void header() {
    if (!jsonl_) out_ << "# u v h d\n";
  }

  void record(Vertex u, Vertex v, std::size_t h, ExtInt d) {
    if (jsonl_) {
      nlohmann::ordered_json j;
      j["u"] = u;
      j["v"] = v;
      j["h"] = h;
      put(j, d);
      out_ << j.dump() << '\n';
    } else {
      out_ << u << '\t' << v << '\t' << h << '\t' << d << '\n';
    }
  }

  void hop_value(std::size_t h, ExtInt d) {
    if (jsonl_) {
      nlohmann::ordered_json j;
      j["h"] = h;
      put(j, d);
      out_ << j.dump() << '\n';
    } else {
      out_ << h << '\t' << d << '\n';
    }
  }

 private:
  static void put(nlohmann::ordered_json& j, ExtInt d) {
    if (d.is_inf())
      j["d"] = "inf";
    else
      j["d"] = d.value();
  }

  std::ostream& out_;
  bool jsonl_;
};

inline Graph load_graph(const std::string& path, std::istream& in) {
  if (path == "-") return parse_graph(in);
  std::ifstream f(path);
  if (!f) throw InputError("cannot open graph file " + path);
  return parse_graph(f);
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

inline SolverOptions solver_options(const Settings& s) {
  SolverOptions o;
  o.matseq = s.strategy == "polynomial" ? MatSeqStrategy::polynomial : MatSeqStrategy::naive;
  o.scalar = s.scalar == "naive" ? ScalarConvStrategy::naive : ScalarConvStrategy::monotone;
  return o;
}

inline SamplePlan sample_plan(const Settings& s) {
  SamplePlan p;
  p.C = s.C;
  p.seed = s.seed;
  return p;
}

inline std::size_t hop_limit(const Graph& g, std::optional<std::size_t> max_hop) {
  const std::size_t full = g.n() > 1 ? g.n() - 1 : 0;
  if (!max_hop) return full;
  if (*max_hop > full) throw InputError("--max-hop exceeds n-1");
  return *max_hop;
}

/// Runs `compute(plan)`; with --paranoid also with doubled C and requires equality.
template <typename F>
auto with_paranoia(const Settings& s, F&& compute) {
  auto first = compute(sample_plan(s));
  if (s.paranoid) {
    SamplePlan p = sample_plan(s);
    p.C *= 2;
    if (!(compute(p) == first)) throw VerificationError("paranoid rerun with doubled C disagrees");
  }
  return first;
}

inline IntMatrix read_matrix(std::istream& in, const char* what) {
  std::size_t r = 0, c = 0;
  if (!(in >> r >> c)) throw InputError(std::string("missing shape of ") + what);
  IntMatrix m(r, std::vector<std::int64_t>(c));
  for (auto& row : m)
    for (auto& x : row)
      if (!(in >> x)) throw InputError(std::string("truncated matrix ") + what);
  return m;
}

inline IntMatrix random_matrix(std::size_t r, std::size_t c, std::int64_t lo, std::int64_t hi, Rng& rng) {
  IntMatrix m(r, std::vector<std::int64_t>(c));
  for (auto& row : m)
    for (auto& x : row) x = uniform_in(rng, lo, hi);
  return m;
}

inline Tripartite random_tripartite(std::size_t n, double p, Rng& rng) {
  Tripartite t{n, n, n, {}, {}, {}};
  auto fill = [&](auto& list) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (static_cast<double>(uniform_below(rng, 1000000)) < p * 1e6) list.emplace_back(a, b);
  };
  fill(t.ij);
  fill(t.jk);
  fill(t.ki);
  return t;
}

/// Runs the reduced equivalence suites; returns the number of checks.
inline std::size_t selftest(const Settings& s, std::ostream& out) {
  std::size_t checks = 0;
  auto require = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) throw VerificationError("selftest failed: " + what);
  };
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 4 + seed;
    const Graph g = gen_random_graph(n, 2 * n, 5, derive_seed(s.seed, seed), true);
    const std::size_t H = n - 1;
    const AllHopsTable ref = apah_brute(g, H);
    SamplePlan plan = sample_plan(s).with_seed(seed);
    const ExtSeq pair = single_pair_allhops(g, 0, static_cast<Vertex>(n - 1), 2, plan);
    for (std::size_t h = 1; h <= H; ++h)
      require(pair.at(static_cast<std::int64_t>(h)) == ref.at_most(0, static_cast<Vertex>(n - 1), h), "single-pair");
    const AllHopsRow row = single_source_allhops(g, 0, 2, plan);
    for (std::size_t h = 0; h <= H; ++h)
      for (std::size_t v = 0; v < n; ++v) require(row.at_most(h, v) == ref.rows[0].at_most(h, v), "single-source");
    const AllHopsTable ap = all_pairs_allhops(g, plan);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t h = 0; h <= H; ++h)
        for (std::size_t v = 0; v < n; ++v) require(ap.rows[u].at_most(h, v) == ref.rows[u].at_most(h, v), "all-pairs");
    const std::vector<DistanceOracle> oracles = {build_oracle_powers(g, H), build_oracle_bf(g, H),
                                                 build_oracle_mn(g, plan), build_oracle_mpp(g, plan),
                                                 build_oracle_bounded(g, plan)};
    for (const auto& o : oracles)
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
          for (std::size_t h = 1; h <= H; ++h)
            require(o.query(u, v, h) == ref.at_most(u, v, h), "oracle " + to_string(o.kind));
  }
  out << "selftest: " << checks << " checks passed\n";
  return checks;
}

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"All-hops shortest distances in weighted directed graphs", "allhops"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"tsv", "jsonl"}));
  app.add_option("--seed", s.seed, "RNG seed");
  app.add_option("--C", s.C, "Sampling oversampling constant")->check(CLI::PositiveNumber);
  app.add_option("--threads", s.threads, "Kernel threads (fallback: ALLHOPS_THREADS)");
  app.add_option("--memory-cap", s.memory_cap, "Oracle table budget in bytes");
  app.add_option("--strategy", s.strategy, "Matrix-sequence convolution kernel")
      ->check(CLI::IsMember({"naive", "polynomial"}));
  app.add_option("--scalar", s.scalar, "Scalar convolution kernel")->check(CLI::IsMember({"naive", "monotone"}));
  app.add_flag("--paranoid", s.paranoid, "Re-run with doubled C and compare");

  std::string graph_path;
  std::optional<std::size_t> max_hop;
  std::size_t k = 2;
  std::optional<std::size_t> split;
  Vertex src = 0, dst = 0;

  auto* gen = app.add_subcommand("gen", "Write a random graph");
  std::size_t gn = 10, gm = 20;
  std::int64_t gM = 5;
  bool allow_neg = false;
  std::string out_path;
  gen->add_option("--n", gn)->required();
  gen->add_option("--m", gm)->required();
  gen->add_option("--M", gM);
  gen->add_flag("--allow-negative-cycles", allow_neg);
  gen->add_option("--out", out_path);

  auto* check = app.add_subcommand("check", "Report whether the graph has a negative cycle");
  check->add_option("--graph", graph_path)->required();

  auto* bf = app.add_subcommand("bf", "Single-source table by Bellman-Ford");
  bf->add_option("--graph", graph_path)->required();
  bf->add_option("--s", src)->required();
  bf->add_option("--max-hop", max_hop);

  auto* sp = app.add_subcommand("single-pair", "d<=h(s,t) for every h");
  sp->add_option("--graph", graph_path)->required();
  sp->add_option("--s", src)->required();
  sp->add_option("--t", dst)->required();
  sp->add_option("--k", k)->check(CLI::PositiveNumber);
  sp->add_option("--max-hop", max_hop);

  auto* ss = app.add_subcommand("single-source", "d<=h(s,v) for every v and h");
  ss->add_option("--graph", graph_path)->required();
  ss->add_option("--s", src)->required();
  ss->add_option("--k", k)->check(CLI::PositiveNumber);
  ss->add_option("--split", split);
  ss->add_option("--max-hop", max_hop);

  auto* ap = app.add_subcommand("all-pairs", "d<=h(u,v) for every pair and h");
  ap->add_option("--graph", graph_path)->required();
  ap->add_option("--max-hop", max_hop);

  auto* oracle = app.add_subcommand("oracle", "Build or query a distance oracle");
  oracle->require_subcommand(1);
  auto* ob = oracle->add_subcommand("build", "Preprocess a graph into a snapshot file");
  std::string kind = "mn", oracle_path, queries_path = "-";
  std::optional<std::size_t> crossover;
  ob->add_option("--kind", kind)->check(CLI::IsMember({"powers", "bf", "mn", "mpp", "bounded"}));
  ob->add_option("--graph", graph_path)->required();
  ob->add_option("--out", oracle_path)->required();
  ob->add_option("--crossover", crossover, "Bounded oracle: largest stacking-path budget");
  auto* oq = oracle->add_subcommand("query", "Answer `u v h` queries");
  oq->add_option("--oracle", oracle_path)->required();
  oq->add_option("--queries", queries_path);

  auto* gadget = app.add_subcommand("gadget", "Build reduction gadgets");
  gadget->require_subcommand(1);
  bool verify = false, reversed = false;
  std::string input_path, names_path;
  unsigned ell = 2;
  std::size_t inst_n = 4;
  std::int64_t inst_x = 2;
  for (auto* sub : {gadget->add_subcommand("tree", "Chain tree gadget"),
                    gadget->add_subcommand("triangle", "Triangle-detection gadget"),
                    gadget->add_subcommand("mpp", "Min-plus product gadget"),
                    gadget->add_subcommand("conv", "Five-layer convolution gadget")}) {
    sub->add_flag("--verify", verify, "Check the decoder against brute force");
    sub->add_option("--out", out_path, "Edge-list output (default stdout)");
    sub->add_option("--names", names_path, "Side-car name map output");
    if (sub->get_name() == "tree") {
      sub->add_option("--ell", ell)->check(CLI::Range(1u, 20u));
      sub->add_flag("--reversed", reversed);
    } else {
      sub->add_option("--input", input_path, "Instance file (default: random instance)");
      sub->add_option("--n", inst_n, "Random instance size")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
      if (sub->get_name() == "mpp") sub->add_option("--x", inst_x, "Random instance entry range [1,x]");
    }
  }

  auto* self = app.add_subcommand("selftest", "Run reduced equivalence suites");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (!s.threads) {
      if (const char* env = std::getenv("ALLHOPS_THREADS")) {
        try {
          s.threads = static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
          throw InputError("ALLHOPS_THREADS is not a number");
        }
      }
    }
    set_kernel_threads(s.threads.value_or(1));
    RecordWriter writer(out, s.format);

    if (gen->parsed()) {
      const Graph g = gen_random_graph(gn, gm, gM, s.seed, !allow_neg);
      write_text(out_path, render_graph(g), out);
      return kOk;
    }
    if (check->parsed()) {
      const Graph g = load_graph(graph_path, in);
      if (detect_negative_cycle(g)) {
        out << "negative cycle\n";
        err << "error: negative cycle\n";
        return kPrecondition;
      }
      out << "no negative cycle\n";
      return kOk;
    }
    if (bf->parsed()) {
      const Graph g = load_graph(graph_path, in);
      if (src >= g.n()) throw InputError("--s out of range");
      const std::size_t H = hop_limit(g, max_hop);
      writer.header();
      if (H == 0) return kOk;
      const auto row = bellman_ford_allhops(g, src, H);
      for (std::size_t v = 0; v < g.n(); ++v)
        for (std::size_t h = 1; h <= H; ++h) writer.record(src, static_cast<Vertex>(v), h, row.at_most(h, v));
      return kOk;
    }
    if (sp->parsed()) {
      const Graph g = load_graph(graph_path, in);
      const std::size_t H = hop_limit(g, max_hop);
      const auto seq = with_paranoia(s, [&](const SamplePlan& p) {
        return single_pair_allhops(g, src, dst, k, p, solver_options(s));
      });
      for (std::size_t h = 1; h <= H; ++h) writer.hop_value(h, seq.at(static_cast<std::int64_t>(h)));
      return kOk;
    }
    if (ss->parsed()) {
      const Graph g = load_graph(graph_path, in);
      const std::size_t H = hop_limit(g, max_hop);
      const auto row = with_paranoia(s, [&](const SamplePlan& p) {
        return single_source_allhops(g, src, k, p, split, solver_options(s));
      });
      writer.header();
      for (std::size_t v = 0; v < g.n(); ++v)
        for (std::size_t h = 1; h <= H; ++h) writer.record(src, static_cast<Vertex>(v), h, row.at_most(h, v));
      return kOk;
    }
    if (ap->parsed()) {
      const Graph g = load_graph(graph_path, in);
      const std::size_t H = hop_limit(g, max_hop);
      const auto table =
          with_paranoia(s, [&](const SamplePlan& p) { return all_pairs_allhops(g, p, solver_options(s)); });
      writer.header();
      for (std::size_t u = 0; u < g.n(); ++u)
        for (std::size_t v = 0; v < g.n(); ++v)
          for (std::size_t h = 1; h <= H; ++h)
            writer.record(static_cast<Vertex>(u), static_cast<Vertex>(v), h, table.rows[u].at_most(h, v));
      return kOk;
    }
    if (ob->parsed()) {
      const Graph g = load_graph(graph_path, in);
      OracleOptions opt;
      opt.memory_cap = s.memory_cap;
      opt.crossover = crossover;
      const SamplePlan plan = sample_plan(s);
      const std::size_t H = default_max_hop(g);
      DistanceOracle o;
      switch (parse_oracle_kind(kind)) {
        case OracleKind::powers: o = build_oracle_powers(g, H, opt); break;
        case OracleKind::bf: o = build_oracle_bf(g, H, opt); break;
        case OracleKind::mn: o = build_oracle_mn(g, plan, opt); break;
        case OracleKind::mpp: o = build_oracle_mpp(g, plan, opt); break;
        case OracleKind::bounded: o = build_oracle_bounded(g, plan, opt); break;
      }
      std::ofstream f(oracle_path, std::ios::binary);
      if (!f) throw InputError("cannot write " + oracle_path);
      write_oracle(f, o);
      return kOk;
    }
    if (oq->parsed()) {
      std::ifstream f(oracle_path, std::ios::binary);
      if (!f) throw InputError("cannot open oracle file " + oracle_path);
      const DistanceOracle o = read_oracle(f);
      std::ifstream qf;
      if (queries_path != "-") {
        qf.open(queries_path);
        if (!qf) throw InputError("cannot open query file " + queries_path);
      }
      std::istream& qs = queries_path == "-" ? in : qf;
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(qs, line)) {
        ++line_no;
        std::istringstream ls(line);
        long long u = 0, v = 0, h = 0;
        std::string extra;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
          continue;
        if (!(ls >> u >> v >> h) || (ls >> extra) || u < 0 || v < 0 || h < 0)
          throw ParseError(line_no, "expected 'u v h'");
        const auto d = o.query(static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<std::size_t>(h));
        writer.record(static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<std::size_t>(h), d);
      }
      return kOk;
    }
    if (gadget->parsed()) {
      Rng rng(mix_seed(s.seed));
      std::ifstream inf;
      if (!input_path.empty()) {
        inf.open(input_path);
        if (!inf) throw InputError("cannot open " + input_path);
      }
      GadgetGraph gg;
      bool ok = true;
      if (gadget->got_subcommand("tree")) {
        gg = build_tree_gadget(ell, reversed);
        if (verify) {
          const std::size_t leaves = std::size_t{1} << ell, hops = leaves - 1;
          const Graph& gr = reversed ? reverse(gg.graph) : gg.graph;
          for (std::size_t i = 1; i <= leaves && ok; ++i) {
            const auto row = bellman_ford_allhops(gr, gg.vertex("u" + std::to_string(i)), std::max<std::size_t>(hops, 1));
            const Vertex v = gg.vertex("v");
            ok = row.exactly(hops, v) == ExtInt(static_cast<std::int64_t>(i + leaves - 2)) &&
                 (hops < 2 || row.at_most(hops - 1, v).is_inf());
          }
        }
      } else if (gadget->got_subcommand("triangle")) {
        const Tripartite t = input_path.empty() ? random_tripartite(inst_n, 0.3, rng) : parse_tripartite(inf);
        gg = build_triangle_gadget(t);
        if (verify) {
          const auto row = bellman_ford_allhops(gg.graph, gg.vertex("s"), static_cast<std::size_t>(gg.param("n") + 4));
          ok = decide_triangle(gg, row) == has_triangle_brute(t);
        }
      } else if (gadget->got_subcommand("mpp")) {
        IntMatrix A, B;
        std::int64_t x = inst_x;
        if (input_path.empty()) {
          A = random_matrix(inst_n, std::max<std::size_t>(1, inst_n / static_cast<std::size_t>(std::max<std::int64_t>(1, x))), 1, x, rng);
          B = random_matrix(A[0].size(), inst_n, 1, x, rng);
        } else {
          if (!(inf >> x)) throw InputError("mpp instance: missing x");
          A = read_matrix(inf, "A");
          B = read_matrix(inf, "B");
        }
        gg = reduce_mpp_to_exact_hops(A, B, x);
        if (verify) {
          const auto row = bellman_ford_allhops(gg.graph, gg.vertex("s"), mpp_required_hops(gg));
          ok = decode_mpp(gg, row) == naive_minplus(A, B);
        }
      } else {
        IntMatrix A, B;
        if (input_path.empty()) {
          A = random_matrix(inst_n, inst_n, -10, 10, rng);
          B = random_matrix(inst_n, inst_n, -10, 10, rng);
        } else {
          std::size_t n = 0;
          if (!(inf >> n)) throw InputError("conv instance: missing n");
          A = read_matrix(inf, "A");
          B = read_matrix(inf, "B");
          if (A.size() != n) throw InputError("conv instance: A is not n x n");
        }
        gg = reduce_convolution_to_hops(A, B);
        if (verify) {
          const std::size_t n = A.size();
          for (std::size_t i = 0; i < n && ok; ++i) {
            const auto row = bellman_ford_allhops(gg.graph, static_cast<Vertex>(i), convolution_required_hops(gg));
            for (std::size_t j = 0; j < n; ++j)
              for (std::size_t l = 2; l <= 2 * n; ++l)
                ok = ok && decode_convolution(gg, row, j, l) == convolution_problem_value(A, B, i, j, l);
          }
        }
      }
      if (!ok) throw VerificationError("gadget decode disagrees with brute force");
      write_text(out_path, render_graph(gg.graph), out);
      if (!names_path.empty()) write_text(names_path, render_names(gg), out);
      if (verify) err << "verified\n";
      return kOk;
    }
    if (self->parsed()) {
      selftest(s, out);
      return kOk;
    }
  } catch (const VerificationError& e) {
    err << "error: " << e.what() << '\n';
    return kVerification;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace allhops::cli
