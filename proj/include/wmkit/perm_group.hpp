#pragma once

// Permutation groups given by generators, with a base and strong generating
// set built by deterministic Schreier-Sims.

#include <cstdint>
#include <functional>
#include <vector>

#include "wmkit/algebra.hpp"

namespace wmkit {

// perm[v] is the image of v. Products compose left to right: (a*b)[v] = b[a[v]].
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
Permutation compose(const Permutation& a, const Permutation& b);  // a then b
Permutation invert(const Permutation& a);
bool is_identity(const Permutation& a);

class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(int degree, std::vector<Permutation> generators);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  const BigInt& order() const { return order_; }
  const std::vector<int>& base() const { return base_; }

  bool contains(const Permutation& g) const;
  // Orbit representative (smallest point) of every point.
  std::vector<int> orbit_representatives() const;
  // Visits each group element once; the callback returns false to stop.
  void for_each_element(const std::function<bool(const Permutation&)>& visit) const;

 private:
  struct Level {
    int base_point = 0;
    std::vector<Permutation> gens;
    std::vector<int> orbit;
    // transversal[p] maps base_point to p (empty if p is outside the orbit)
    std::vector<Permutation> transversal;
  };

  // Returns the level where sifting stopped (levels_.size() if it went through)
  // and leaves the residue in g.
  std::size_t sift(Permutation& g, std::size_t from) const;
  void add_generator(std::size_t level, const Permutation& g);

  int degree_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Level> levels_;
  std::vector<int> base_;
  BigInt order_ = 1;
};

}  // namespace wmkit
