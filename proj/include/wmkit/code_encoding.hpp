#pragma once

// Colored-graph encoding of codes, so that code equivalence under signed
// permutations becomes graph isomorphism.
//
// Vertices 2i and 2i+1 stand for coordinate i with sign + and -, joined by an
// edge. Each codeword x of the chosen weight layers (x and -x separately) is a
// vertex colored by its weight. A +-1 entry joins x to the matching signed
// coordinate; any other entry c goes through a private vertex colored by |c|,
// attached to coordinate (i, sign c), or to both signs when c = -c.

#include <cstdint>
#include <string>
#include <vector>

#include "wmkit/canon.hpp"
#include "wmkit/codes.hpp"

namespace wmkit {

struct CodeEncoding {
  ColoredGraph graph{0};
  std::vector<int> layers;  // codeword weights included
};

// Adds weight layers in increasing order until they span C, then
// `extra_layers` more. Throws GuardExceeded above max_words codewords.
CodeEncoding encode_code(const Code& c, int extra_layers = 0, std::uint64_t max_words = 20'000'000);

struct CodeCanon {
  std::string certificate;
  BigInt aut_order;
  // Aut(C) as signed permutations, and as permutations of the 2n signed coordinates.
  std::vector<MonomialTransform> aut_generators;
  PermGroup signed_group;
};

CodeCanon canonicalize_code(const Code& c, int extra_layers = 0);

// Converts a permutation of the 2n signed coordinates (2i = +i, 2i+1 = -i)
// into a monomial transform and back.
MonomialTransform signed_to_monomial(const Permutation& p);
Permutation monomial_to_signed(const MonomialTransform& t);

}  // namespace wmkit
