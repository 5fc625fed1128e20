// Hop-bounded distances on a small graph, computed three ways.
#include <iostream>

#include "allhops/allhops.hpp"

int main() {
  using namespace allhops;

  // 0 -> 1 -> 2 is cheap but takes two hops; 0 -> 2 is direct but expensive.
  const Graph g = parse_graph(
      "3 3\n"
      "0 1 1\n"
      "1 2 1\n"
      "0 2 10\n");

  const AllHopsRow bf = bellman_ford_allhops(g, 0, default_max_hop(g));
  const ExtSeq pair = single_pair_allhops(g, 0, 2, /*k=*/2);
  std::cout << "h  bf  single-pair\n";
  for (std::size_t h = 1; h <= 2; ++h)
    std::cout << h << "  " << bf.at_most(h, 2) << "  " << pair.at(static_cast<std::int64_t>(h)) << '\n';

  const DistanceOracle oracle = build_oracle_mn(g);
  std::cout << "oracle d<=1(0,2) = " << oracle.query(0, 2, 1) << '\n';
  std::cout << "oracle d<=2(0,2) = " << oracle.query(0, 2, 2) << '\n';
}
