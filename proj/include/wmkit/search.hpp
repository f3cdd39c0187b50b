#pragma once

// Weighing matrices inside a code: the compatibility graph of its weight-k
// words and the enumeration of its n-cliques up to Aut(C).

#include <cstdint>
#include <string>
#include <vector>

#include "wmkit/codes.hpp"
#include "wmkit/wm.hpp"

namespace wmkit {

struct CompatibilityGraph {
  int length = 0;
  int weight = 0;
  // One integer lift per {x, -x}, first nonzero entry +1, sorted.
  std::vector<std::vector<int>> rows;
  // adjacency[v] is a bitset over vertices (64 per word).
  std::vector<std::vector<std::uint64_t>> adjacency;
  // orbit[v] = smallest vertex in the Aut(C)-orbit of v.
  std::vector<int> orbit;
  BigInt aut_order;

  int size() const { return static_cast<int>(rows.size()); }
  bool adjacent(int u, int v) const { return adjacency[u][v >> 6] >> (v & 63) & 1; }
  std::size_t edge_count() const;
};

// Vertices are the {0, +-1} words of weight k; edges join integer-orthogonal
// lifts. Orbits come from Aut(C) unless with_orbits is false (then every vertex
// is its own orbit).
CompatibilityGraph build_gamma(const Code& c, int k, bool with_orbits = true);

struct CliqueSearchOptions {
  int threads = 0;                // 0: WMKIT_THREADS, or 1 if unset
  std::uint64_t node_budget = 0;  // 0: unlimited
  std::string checkpoint;         // JSON file of finished root branches; resumed if present
  bool dedup_orbits = true;       // keep one clique per Aut(C)-orbit
};

struct CliqueSearchStats {
  std::uint64_t nodes = 0;
  std::size_t roots = 0;
  std::size_t raw_cliques = 0;  // before orbit deduplication
};

// At least one clique from every Aut(C)-orbit of n-cliques, each as a sorted
// vertex list. Throws BudgetExceeded when the node budget runs out; finished
// roots are then in the checkpoint.
std::vector<std::vector<int>> cliques_up_to_aut(const CompatibilityGraph& g, const Code& c, int n,
                                                const CliqueSearchOptions& opt = {},
                                                CliqueSearchStats* stats = nullptr);

// Rows are the vertex lifts in clique order.
WeighingMatrix lift_clique(const std::vector<int>& clique, const CompatibilityGraph& g);

// Worker count from WMKIT_THREADS (at least 1).
int default_threads();

}  // namespace wmkit
