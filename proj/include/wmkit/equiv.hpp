#pragma once

// Equivalence of weighing matrices under W -> P W Q with signed permutation
// matrices P, Q, via the incidence structure D(W).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wmkit/canon.hpp"
#include "wmkit/wm.hpp"

namespace wmkit {

// Points +j and -j (1-based in the literature) are stored as 2j and 2j+1 for
// j = 0..n-1. Block B_i^+ has index 2i and B_i^- has index 2i+1.
struct IncidenceStructure {
  int n = 0;
  std::vector<std::vector<int>> blocks;  // sorted point lists
  Permutation tau0;                      // 2j <-> 2j+1
};

IncidenceStructure incidence(const WeighingMatrix& w);
// Incidence for the first rows of a partial matrix (rows must be pairwise orthogonal).
IncidenceStructure incidence_rows(int n, const std::vector<std::vector<int>>& rows);
// Conditions (i) and (ii) for a fixed-point-free involution tau on the points.
bool satisfies_conditions(const IncidenceStructure& d, const Permutation& tau);

// Points (color 0) and blocks (color 1) joined by incidence.
ColoredGraph incidence_graph(const IncidenceStructure& d);
// The same graph plus edges 2j -- 2j+1 between paired points and between
// paired blocks. Isomorphisms of these graphs are exactly the equivalences.
ColoredGraph paired_incidence_graph(const IncidenceStructure& d);

// A pair (P, Q) of signed permutations with w1.transformed(P, Q) == w2.
struct Witness {
  MonomialTransform rows;
  MonomialTransform cols;
};
// Checks P W1 Q = W2 by integer matrix multiplication.
bool verify_witness(const WeighingMatrix& w1, const WeighingMatrix& w2, const Witness& x);

struct WmCanon {
  std::string certificate;   // of the paired graph
  std::string d_certificate; // of D(W) alone
  WeighingMatrix canonical;  // deterministic representative of the class
  Witness to_canonical;      // w.transformed(...) == canonical
  BigInt aut_order;          // |Aut(W)| as pairs (P, Q)
};
WmCanon canonicalize_wm(const WeighingMatrix& w, bool with_d_certificate = false);

struct InvolutionReport {
  BigInt aut_order;          // |Aut(D(W))|
  bool swept = false;        // false if Aut(D(W)) was too large to enumerate
  std::vector<Permutation> class_representatives;
  std::vector<std::size_t> class_sizes;
  bool tau0_present = false;
  bool unique = false;       // the uniqueness hypothesis of the converse criterion
};
// Fixed-point-free involutions of Aut(D) satisfying (i) and (ii), up to conjugacy.
InvolutionReport fpf_involutions(const IncidenceStructure& d, std::uint64_t max_elements = 5'000'000);

// Direct search for (P, Q) with w1.transformed(P, Q) == w2.
std::optional<Witness> monomial_backtrack(const WeighingMatrix& w1, const WeighingMatrix& w2,
                                          std::uint64_t node_limit = 50'000'000);

enum class EquivalenceStep { kInvariants, kIncidence, kPaired, kBacktrack };

struct EquivalenceResult {
  bool equivalent = false;
  EquivalenceStep decided_by = EquivalenceStep::kInvariants;
  std::optional<Witness> witness;  // always verified when present
  std::string reason;
  std::optional<bool> unique_involution;  // set when check_involutions is on and the sweep ran
};

struct EquivalenceOptions {
  bool check_involutions = false;
  bool cross_check_backtrack = false;
};
EquivalenceResult are_equivalent(const WeighingMatrix& w1, const WeighingMatrix& w2,
                                 const EquivalenceOptions& opt = {});

struct WmInvariants {
  std::vector<long long> g_distribution;
  int intersection_number = 0;
  std::vector<std::vector<int>> intersection_profile;
  std::map<int, std::string> code_certificates;  // modulus -> certificate digest of C_m(W)
  std::map<int, bool> self_orthogonal;           // modulus -> C_m(W) self-orthogonal
  std::map<int, bool> self_dual;                 // modulus -> C_m(W) self-dual
  bool operator==(const WmInvariants&) const = default;
};
// Moduli considered are the divisors of k among {3, 4, 5, 7}.
std::vector<int> code_moduli(int k);
WmInvariants compute_invariants(const WeighingMatrix& w, bool with_codes = true);

struct WmClass {
  WeighingMatrix representative;
  std::string certificate;
  std::string digest;
  WmInvariants invariants;
  BigInt aut_order;
  std::vector<std::string> provenance;  // sorted, unique
  std::size_t members = 0;             // inputs that fell in this class
};

struct EquivalenceClassSet {
  int n = 0;
  int k = 0;
  std::vector<WmClass> classes;  // sorted by certificate
};

// Partitions matrices of a common (n, k) into classes. provenance[i], if given,
// is attached to the class of ws[i].
EquivalenceClassSet dedup(const std::vector<WeighingMatrix>& ws, const std::vector<std::string>& provenance = {},
                          bool with_code_invariants = true);

struct OracleOptions {
  int max_order = 12;
  int max_weight = 6;
  std::uint64_t max_partials = 5'000'000;  // per level
};
// Exhaustive row-by-row generation up to equivalence.
EquivalenceClassSet oracle_classify(int n, int k, const OracleOptions& opt = {});
// Number of inequivalent r x n partial matrices per level r = 1..n from the last oracle run is
// exposed through this variant.
EquivalenceClassSet oracle_classify(int n, int k, const OracleOptions& opt, std::vector<std::size_t>* level_sizes);

}  // namespace wmkit
