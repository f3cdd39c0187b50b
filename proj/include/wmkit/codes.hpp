#pragma once

// Linear codes over F_p and Z_4.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wmkit/algebra.hpp"

namespace wmkit {

// A Z_m-submodule of Z_m^n, stored as its canonical generator matrix (see
// echelon_form), so equality of codes is equality of generator matrices.
class Code {
 public:
  Code(RingTag ring, int length, std::vector<Row> generators);
  static Code zero(RingTag ring, int length);
  static Code full(RingTag ring, int length);

  const RingTag& ring() const { return ring_; }
  int length() const { return length_; }
  const std::vector<Row>& generators() const { return gens_; }
  const std::vector<int>& pivots() const { return pivots_; }
  RankProfile type() const { return type_; }
  // log_m |C| for fields; free + torsion generator count over Z_4.
  int dimension() const { return type_.free_rank + type_.torsion_rank; }
  BigInt size() const;
  // Number of codewords as a 64-bit value; throws GuardExceeded above 2^62.
  std::uint64_t size_u64() const;

  bool contains(std::span<const Residue> x) const;
  // Canonical representative of the coset x + C.
  Row reduce(std::span<const Residue> x) const;

  // Visits every codeword exactly once (message-space walk).
  void for_each_codeword(const std::function<void(const Row&)>& visit) const;
  // Stops at the first codeword satisfying pred; returns whether one was found.
  bool find_codeword(const std::function<bool(const Row&)>& pred) const;
  std::vector<Row> codewords() const;

  bool operator==(const Code& o) const { return ring_ == o.ring_ && length_ == o.length_ && gens_ == o.gens_; }

 private:
  RingTag ring_;
  int length_;
  std::vector<Row> gens_;
  std::vector<int> pivots_;
  RankProfile type_;
};

Code dual(const Code& c);
bool is_self_orthogonal(const Code& c);
bool is_self_dual(const Code& c);
// No vector of C^perp \ C with x.x = 0 exists (over Z_4 this forces self-duality).
bool is_maximal_so(const Code& c);
// Dimension of a maximal self-orthogonal F_p-code of length n.
int mso_dimension(int p, int n);

// One representative per {x, -x} of the codewords with exactly k nonzero
// entries, all in {1, m-1}. Representatives are the lexicographically smaller
// of x, -x; the list is sorted.
std::vector<Row> enumerate_wm_words(const Code& c, int k);

// Words of C vanishing at coord, with coord deleted.
Code subtract(const Code& c, int coord);
Code monomial_image(const Code& c, const MonomialTransform& t);

// Which coset space coset_weight_profile sweeps.
enum class CosetSpace { kDualQuotient, kAmbient };

// B_j = number of cosets whose minimum Hamming weight is j, for cosets of C in
// Z_m^n (default) or in C^perp.
std::vector<long long> coset_weight_profile(const Code& c, CosetSpace space = CosetSpace::kAmbient,
                                            std::uint64_t max_cosets = 10'000'000);

// Number of codewords of each Hamming weight.
std::vector<long long> weight_distribution(const Code& c);

int hamming_weight(std::span<const Residue> x);
std::uint64_t pack_word(std::span<const Residue> x, int m);

// Text format: "ring <m>", "length <n>", "dim <rows>", then the rows. '#'
// starts a comment, blank lines separate codes.
std::vector<Code> read_codes(std::istream& in);
std::vector<Code> read_code_file(const std::string& path);
void write_code(std::ostream& out, const Code& c, const std::string& comment = {});
void write_code_file(const std::string& path, const std::vector<Code>& codes);

}  // namespace wmkit
