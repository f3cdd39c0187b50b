#pragma once

// Weighing matrices: square {0, 1, -1} matrices with W W^T = k I.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wmkit/algebra.hpp"
#include "wmkit/codes.hpp"

namespace wmkit {

class WeighingMatrix {
 public:
  // Checks shape, entries and W W^T = k I; throws InvalidArgument otherwise.
  static WeighingMatrix verify(const std::vector<std::vector<int>>& rows);
  static WeighingMatrix identity(int n);

  int order() const { return n_; }
  int weight() const { return k_; }
  int at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
  std::vector<int> row(int i) const;
  std::vector<std::vector<int>> rows() const;
  IntMatrix to_int_matrix() const;
  // Support of row i (or column i) as a bit mask; orders up to 64.
  std::uint64_t row_support(int i) const { return row_support_[i]; }
  std::uint64_t col_support(int j) const { return col_support_[j]; }

  WeighingMatrix transpose() const;
  WeighingMatrix negate() const;
  // The matrix R with R[p.perm[i]][q.perm[j]] = p.signs[i] q.signs[j] W[i][j],
  // i.e. P W Q for the monomial matrices described by p (rows) and q (columns).
  WeighingMatrix transformed(const MonomialTransform& p, const MonomialTransform& q) const;

  bool operator==(const WeighingMatrix& o) const { return n_ == o.n_ && entries_ == o.entries_; }
  bool operator<(const WeighingMatrix& o) const {
    return n_ != o.n_ ? n_ < o.n_ : entries_ < o.entries_;
  }

 private:
  WeighingMatrix(int n, int k, std::vector<std::int8_t> entries);

  int n_ = 0;
  int k_ = 0;
  std::vector<std::int8_t> entries_;
  std::vector<std::uint64_t> row_support_;
  std::vector<std::uint64_t> col_support_;
};

// Necessary conditions for a W(n, k) to exist.
struct ScreenResult {
  bool possible = true;
  std::string reason;
};
ScreenResult existence_screen(int n, int k);

// pattern[l] = number of other rows meeting row `row` in exactly 2l places.
std::vector<int> intersection_pattern(const WeighingMatrix& w, int row);
// Maximum intersection number over row pairs of W and of W^T.
int intersection_number(const WeighingMatrix& w);
// Sorted multiset of intersection patterns over rows of W and of W^T.
std::vector<std::vector<int>> intersection_profile(const WeighingMatrix& w);

// N(i) for i = 0..n: number of ordered index triples (s,t,u), not all equal,
// whose three rows share exactly i support columns. Sums to n^3 - n.
std::vector<long long> g_distribution(const WeighingMatrix& w);

// C_m(W): the row space of W over Z_m.
Code induced_code(const WeighingMatrix& w, int m);

// Number of words of each Hamming weight <= max_weight in the Z_m-code with
// generator matrix (I_n | W). Words are walked by message weight, so cost is
// bounded by the number of messages of weight <= max_weight.
std::vector<long long> appended_code_weights(const WeighingMatrix& w, int m, int max_weight,
                                             std::uint64_t guard = 400'000'000);
long long appended_code_weight_count(const WeighingMatrix& w, int m, int weight,
                                     std::uint64_t guard = 400'000'000);

WeighingMatrix direct_sum(const WeighingMatrix& a, const WeighingMatrix& b);

enum class TwoCirculantVariant { kW1, kW2 };
// Order-2n matrix from circulants A1, A2 with the given first rows. Throws
// InvalidArgument unless A1 A1^T + A2 A2^T = kI.
WeighingMatrix two_circulant(const std::vector<int>& a1, const std::vector<int>& a2, TwoCirculantVariant variant);
// Every (a1, a2) pair over {0, 1, -1}^n with A1 A1^T + A2 A2^T = kI.
std::vector<std::pair<std::vector<int>, std::vector<int>>> circulant_pairs(int n, int k);

// File format: "order <n>", "weight <k>", then n rows of {0, 1, -1}; blank
// lines separate matrices and '#' starts a comment.
std::vector<WeighingMatrix> read_matrices(std::istream& in);
std::vector<WeighingMatrix> read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const WeighingMatrix& w, const std::vector<std::string>& comments = {});
void write_matrix_file(const std::string& path, const std::vector<WeighingMatrix>& ws);

}  // namespace wmkit
