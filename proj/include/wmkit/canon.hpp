#pragma once

// Canonical labeling and automorphism groups of vertex-colored graphs by
// individualization-refinement.
//
// The search tree is the usual one: nodes are equitable ordered partitions,
// children individualize one vertex of the first smallest non-singleton cell.
// Pruning uses (1) a refinement trace compared against the first and best
// paths, (2) orbits of the automorphisms found so far that fix the current
// prefix pointwise, and (3) back-jumping to the common ancestor once a leaf is
// found equivalent to the first or the best leaf. The canonical leaf is the
// maximum over leaves of (trace sequence, relabeled adjacency).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wmkit/perm_group.hpp"

namespace wmkit {

class ColoredGraph {
 public:
  explicit ColoredGraph(int vertices, int color = 0);
  explicit ColoredGraph(std::vector<int> colors);

  int size() const { return static_cast<int>(colors_.size()); }
  int color(int v) const { return colors_[v]; }
  const std::vector<int>& colors() const { return colors_; }
  void set_color(int v, int c) { colors_[v] = c; }
  // Loops are rejected; repeated edges are collapsed.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const;
  std::size_t edge_count() const;

  // The graph with vertex v renamed to perm[v].
  ColoredGraph relabeled(std::span<const int> perm) const;

 private:
  void normalize() const;

  std::vector<int> colors_;
  mutable std::vector<std::vector<int>> adj_;
  mutable bool normalized_ = true;
};

struct CanonStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
};

struct CanonicalForm {
  // Fixed layout, little-endian: u32 vertex count, u32 color per canonical
  // position, then the strict upper triangle of the canonical adjacency matrix
  // row by row, packed LSB-first and zero-padded to a byte.
  std::string certificate;
  // labeling[v] = canonical position of vertex v.
  std::vector<int> labeling;
  PermGroup automorphisms;
  CanonStats stats;
};

CanonicalForm canonical_form(const ColoredGraph& g);
PermGroup automorphism_group(const ColoredGraph& g);

// 64-bit FNV-1a, printed as 16 hex digits; used as a short certificate id.
std::string certificate_digest(std::string_view bytes);
std::string to_hex(std::string_view bytes);
std::string from_hex(std::string_view hex);

}  // namespace wmkit
