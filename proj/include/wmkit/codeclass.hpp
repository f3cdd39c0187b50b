#pragma once

// Classification of maximal self-orthogonal codes up to monomial equivalence,
// and completeness checks for such classifications.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wmkit/codes.hpp"

namespace wmkit {

struct CodeClass {
  Code code;
  std::string certificate;
  BigInt aut_order;
};

struct CodeClassSet {
  RingTag ring = RingTag::of(3);
  int length = 0;
  // Sorted by certificate.
  std::vector<CodeClass> classes;
};

// Representatives of the given codes up to equivalence, sorted by certificate.
CodeClassSet dedup_codes(const std::vector<Code>& codes);

struct AugmentationOptions {
  int max_length = 12;        // guard for m = 3; F_5 is limited to length 8
  bool keep_all_levels = false;
};

// All self-orthogonal codes up to equivalence, built one dimension at a time
// from isotropic vectors of C^perp / C. Returns the maximal ones.
CodeClassSet classify_mso_augmentation(int p, int n, const AugmentationOptions& opt = {});
// Self-orthogonal class counts per dimension from the same run (index = dimension).
std::vector<std::size_t> so_counts_by_dimension(int p, int n, const AugmentationOptions& opt = {});

// Words of C whose restriction to `coords` is a multiple of `pattern`, with
// those coordinates deleted. An all-zero pattern gives plain shortening.
Code subtract_pattern(const Code& c, const std::vector<int>& coords, const Row& pattern);

// Ternary maximal self-orthogonal codes of length 4m+1, 4m+2, 4m+3 from the
// self-dual codes of length 4m+4 (given as `parents`): shorten once (4m+3),
// twice (4m+2), or subtract three coordinates along a full-weight isotropic
// pattern (4m+1). Non-maximal results are dropped.
CodeClassSet classify_mso_subtraction(const std::vector<Code>& parents, int n);

struct MassAudit {
  int length = 0;
  BigInt sum;        // sum of 2^n n! / |Aut(C)|
  BigInt n0;         // number of distinct maximal self-orthogonal codes
  bool n0_brute_forced = false;
  bool pass = false;
};

// Number of distinct maximal self-orthogonal codes of length n over F_p, by
// enumerating every subspace in reduced echelon form. Guarded to p^n <= 10^7
// and to n <= 8.
BigInt brute_force_mso_count(int p, int n);
// Uses n0 if given, otherwise brute force; throws MissingData if neither works.
MassAudit mass_check(const CodeClassSet& set, std::optional<BigInt> n0 = std::nullopt);

struct InequivalenceEvidence {
  std::vector<std::vector<long long>> profiles;  // coset weight profile per class
  bool profiles_distinct = false;
  bool certificates_distinct = false;
  // Pairs (i, j) with equal profiles, separated only by certificates.
  std::vector<std::pair<int, int>> profile_collisions;
};
InequivalenceEvidence inequivalence_certificates(const CodeClassSet& set,
                                                 CosetSpace space = CosetSpace::kAmbient);

// For parents C_1..C_r: how many classes of length n-1 and n-2 arise from each
// parent by subtraction (classes are counted once per parent).
struct ParentTableRow {
  int parent = 0;
  int from_one = 0;   // length n - 1
  int from_two = 0;   // length n - 2
};
std::vector<ParentTableRow> subtraction_table(const std::vector<Code>& parents);

}  // namespace wmkit
