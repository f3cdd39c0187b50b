#pragma once

// Exact arithmetic over Z_m (m an odd prime or 4) and over the integers.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wmkit {

using BigInt = boost::multiprecision::cpp_int;
using Residue = std::uint8_t;
using Row = std::vector<Residue>;

// The coefficient ring of a code: F_p for an odd prime p, or Z_4.
class RingTag {
 public:
  enum class Kind { kPrimeField, kZ4 };

  // Throws InvalidArgument for m = 2, composite m other than 4, or m > 251.
  static RingTag of(int modulus);

  int modulus() const { return m_; }
  Kind kind() const { return kind_; }
  bool is_field() const { return kind_ == Kind::kPrimeField; }

  Residue reduce(long long v) const {
    long long r = v % m_;
    return static_cast<Residue>(r < 0 ? r + m_ : r);
  }
  Residue add(Residue a, Residue b) const { return static_cast<Residue>((a + b) % m_); }
  Residue sub(Residue a, Residue b) const { return static_cast<Residue>((a + m_ - b) % m_); }
  Residue mul(Residue a, Residue b) const { return static_cast<Residue>((a * b) % m_); }
  Residue neg(Residue a) const { return a == 0 ? 0 : static_cast<Residue>(m_ - a); }
  bool is_unit(Residue a) const;
  Residue inverse(Residue unit) const;
  // 0 for units, 1 for 2 in Z_4, and 1 (field) / 2 (Z_4) for zero.
  int valuation(Residue a) const;
  // The integer in {-(m-1)/2, ..., m/2} congruent to a.
  int centered(Residue a) const { return a <= m_ / 2 ? a : static_cast<int>(a) - m_; }

  std::string name() const;
  bool operator==(const RingTag&) const = default;

 private:
  RingTag(int m, Kind kind) : m_(m), kind_(kind) {}
  int m_;
  Kind kind_;
};

// A vector of residues with its ring attached.
class ModVector {
 public:
  ModVector(RingTag ring, Row entries);

  const RingTag& ring() const { return ring_; }
  const Row& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  Residue operator[](std::size_t i) const { return entries_[i]; }
  int weight() const;
  bool operator==(const ModVector&) const = default;

 private:
  RingTag ring_;
  Row entries_;
};

// A signed permutation of n coordinates. Acting on a row x it produces y with
// y[perm[j]] = signs[j] * x[j].
class MonomialTransform {
 public:
  static MonomialTransform identity(int n);
  MonomialTransform(std::vector<int> perm, std::vector<std::int8_t> signs);

  int degree() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<std::int8_t>& signs() const { return signs_; }

  // Apply *this, then t.
  MonomialTransform then(const MonomialTransform& t) const;
  MonomialTransform inverse() const;
  bool is_identity() const;

  Row apply(const RingTag& ring, std::span<const Residue> x) const;
  std::vector<int> apply(std::span<const int> x) const;

  bool operator==(const MonomialTransform&) const = default;

 private:
  std::vector<int> perm_;
  std::vector<std::int8_t> signs_;
};

ModVector apply_monomial(const ModVector& x, const MonomialTransform& t);
std::vector<int> apply_monomial(std::span<const int> x, const MonomialTransform& t);

// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix(int rows, int cols);
  static IntMatrix from_rows(const std::vector<std::vector<int>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long long& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  long long at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix&) const = default;

 private:
  int rows_;
  int cols_;
  std::vector<long long> data_;
};

// Smith normal form diagonal d_1 | d_2 | ... (length min(rows, cols), all
// non-negative, zeros last), computed with arbitrary precision.
std::vector<BigInt> elementary_divisors(const IntMatrix& m);

Residue dot(const RingTag& ring, std::span<const Residue> x, std::span<const Residue> y);

// Canonical generator matrix of the row span: reduced row echelon form over
// F_p, Howell form over Z_4 (pivots 1 or 2, entries above a pivot d reduced
// into [0, d)). Two spanning sets give equal output iff they span the same
// submodule.
std::vector<Row> echelon_form(const RingTag& ring, std::vector<Row> rows, int n);

// Rank over F_p, or the type 4^free 2^torsion over Z_4.
struct RankProfile {
  int free_rank = 0;
  int torsion_rank = 0;
  bool operator==(const RankProfile&) const = default;
};
RankProfile rank_mod(const RingTag& ring, const std::vector<Row>& rows, int n);

// Generators (not reduced) of {x in Z_m^n : x . r = 0 for every given r}.
std::vector<Row> orthogonal_complement(const RingTag& ring, const std::vector<Row>& rows, int n);

}  // namespace wmkit
