#include "wmkit/wm.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "text_blocks.hpp"
#include "wmkit/error.hpp"

namespace wmkit {

WeighingMatrix::WeighingMatrix(int n, int k, std::vector<std::int8_t> entries)
    : n_(n), k_(k), entries_(std::move(entries)), row_support_(n, 0), col_support_(n, 0) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (at(i, j) != 0) {
        row_support_[i] |= std::uint64_t{1} << j;
        col_support_[j] |= std::uint64_t{1} << i;
      }
    }
  }
}

WeighingMatrix WeighingMatrix::verify(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw InvalidArgument("empty matrix");
  if (n > 64) throw InvalidArgument("orders above 64 are not supported");
  std::vector<std::int8_t> e;
  e.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw InvalidArgument("matrix is not square");
    for (int v : r) {
      if (v < -1 || v > 1) throw InvalidArgument("entries must be 0, 1 or -1");
      e.push_back(static_cast<std::int8_t>(v));
    }
  }
  int k = 0;
  for (int v : rows[0]) k += v * v;
  if (k == 0) throw InvalidArgument("zero row");
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      int s = 0;
      for (int t = 0; t < n; ++t) s += rows[i][t] * rows[j][t];
      if (s != (i == j ? k : 0)) {
        throw InvalidArgument("W W^T != kI at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
  return WeighingMatrix(n, k, std::move(e));
}

WeighingMatrix WeighingMatrix::identity(int n) {
  std::vector<std::vector<int>> r(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) r[i][i] = 1;
  return verify(r);
}

std::vector<int> WeighingMatrix::row(int i) const {
  std::vector<int> r(n_);
  for (int j = 0; j < n_; ++j) r[j] = at(i, j);
  return r;
}

std::vector<std::vector<int>> WeighingMatrix::rows() const {
  std::vector<std::vector<int>> r;
  for (int i = 0; i < n_; ++i) r.push_back(row(i));
  return r;
}

IntMatrix WeighingMatrix::to_int_matrix() const { return IntMatrix::from_rows(rows()); }

WeighingMatrix WeighingMatrix::transpose() const {
  std::vector<std::int8_t> e(entries_.size());
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) e[static_cast<std::size_t>(j) * n_ + i] = entries_[static_cast<std::size_t>(i) * n_ + j];
  return WeighingMatrix(n_, k_, std::move(e));
}

WeighingMatrix WeighingMatrix::negate() const {
  std::vector<std::int8_t> e(entries_);
  for (auto& v : e) v = static_cast<std::int8_t>(-v);
  return WeighingMatrix(n_, k_, std::move(e));
}

WeighingMatrix WeighingMatrix::transformed(const MonomialTransform& p, const MonomialTransform& q) const {
  if (p.degree() != n_ || q.degree() != n_) throw InvalidArgument("transform degree mismatch");
  std::vector<std::int8_t> e(entries_.size());
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      e[static_cast<std::size_t>(p.perm()[i]) * n_ + q.perm()[j]] =
          static_cast<std::int8_t>(p.signs()[i] * q.signs()[j] * at(i, j));
    }
  }
  return WeighingMatrix(n_, k_, std::move(e));
}

namespace {

bool is_square(int k) {
  int r = 0;
  while (r * r < k) ++r;
  return r * r == k;
}

bool is_sum_of_two_squares(int k) {
  for (int a = 0; a * a <= k; ++a) {
    if (is_square(k - a * a)) return true;
  }
  return false;
}

}  // namespace

ScreenResult existence_screen(int n, int k) {
  if (n < 1 || k < 1 || k > n) return {false, "need 1 <= k <= n"};
  if (n % 2 == 1) {
    if (!is_square(k)) return {false, "n odd and k is not a square"};
    const int d = n - k;
    if (d * d + d + 1 < n) return {false, "n odd and (n-k)^2 + (n-k) + 1 < n"};
  } else if (n % 4 == 2) {
    if (!is_sum_of_two_squares(k)) return {false, "n = 2 mod 4 and k is not a sum of two squares"};
    if (n > 2 && k > n - 1) return {false, "n = 2 mod 4 and k > n - 1"};
  }
  return {};
}

std::vector<int> intersection_pattern(const WeighingMatrix& w, int row) {
  const int n = w.order();
  if (row < 0 || row >= n) throw InvalidArgument("row out of range");
  std::vector<int> pattern(n / 2 + 1, 0);
  for (int j = 0; j < n; ++j) {
    if (j == row) continue;
    const int c = std::popcount(w.row_support(row) & w.row_support(j));
    ++pattern[c / 2];
  }
  return pattern;
}

int intersection_number(const WeighingMatrix& w) {
  int best = 0;
  for (int i = 0; i < w.order(); ++i) {
    for (int j = i + 1; j < w.order(); ++j) {
      best = std::max(best, std::popcount(w.row_support(i) & w.row_support(j)));
      best = std::max(best, std::popcount(w.col_support(i) & w.col_support(j)));
    }
  }
  return best;
}

std::vector<std::vector<int>> intersection_profile(const WeighingMatrix& w) {
  std::vector<std::vector<int>> out;
  const WeighingMatrix t = w.transpose();
  for (int i = 0; i < w.order(); ++i) {
    out.push_back(intersection_pattern(w, i));
    out.push_back(intersection_pattern(t, i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long long> g_distribution(const WeighingMatrix& w) {
  const int n = w.order();
  std::vector<long long> dist(n + 1, 0);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      const std::uint64_t st = w.row_support(s) & w.row_support(t);
      for (int u = 0; u < n; ++u) {
        if (s == t && t == u) continue;
        ++dist[std::popcount(st & w.row_support(u))];
      }
    }
  }
  return dist;
}

Code induced_code(const WeighingMatrix& w, int m) {
  const RingTag ring = RingTag::of(m);
  std::vector<Row> rows;
  for (int i = 0; i < w.order(); ++i) {
    Row r(w.order());
    for (int j = 0; j < w.order(); ++j) r[j] = ring.reduce(w.at(i, j));
    rows.push_back(std::move(r));
  }
  return Code(ring, w.order(), std::move(rows));
}

std::vector<long long> appended_code_weights(const WeighingMatrix& w, int m, int max_weight, std::uint64_t guard) {
  const RingTag ring = RingTag::of(m);
  const int n = w.order();
  max_weight = std::min(max_weight, 2 * n);
  // Messages of weight <= max_weight.
  long double messages = 0, term = 1;
  for (int j = 0; j <= std::min(max_weight, n); ++j) {
    messages += term;
    term = term * (n - j) / (j + 1) * (m - 1);
  }
  if (messages > static_cast<long double>(guard)) {
    throw GuardExceeded("appended code walk needs " + std::to_string(static_cast<double>(messages)) + " messages");
  }
  std::vector<std::vector<int>> gen(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gen[i][j] = ring.reduce(w.at(i, j));

  std::vector<long long> counts(max_weight + 1, 0);
  // acc[d] holds x W mod m for the message prefix chosen at depth d.
  std::vector<std::vector<int>> acc(n + 1, std::vector<int>(n, 0));
  auto rec = [&](auto&& self, int start, int depth) -> void {
    for (int i = start; i < n; ++i) {
      for (int v = 1; v < m; ++v) {
        auto& y = acc[depth + 1];
        const auto& prev = acc[depth];
        int wt = depth + 1;
        for (int j = 0; j < n; ++j) {
          int s = prev[j] + v * gen[i][j];
          s %= m;
          y[j] = s;
          wt += s != 0;
        }
        if (wt <= max_weight) ++counts[wt];
        if (depth + 2 <= max_weight) self(self, i + 1, depth + 1);
      }
    }
  };
  counts[0] = 1;
  if (max_weight >= 1) rec(rec, 0, 0);
  return counts;
}

long long appended_code_weight_count(const WeighingMatrix& w, int m, int weight, std::uint64_t guard) {
  if (weight < 0 || weight > 2 * w.order()) return 0;
  return appended_code_weights(w, m, weight, guard)[weight];
}

WeighingMatrix direct_sum(const WeighingMatrix& a, const WeighingMatrix& b) {
  if (a.weight() != b.weight()) throw InvalidArgument("direct sum needs equal weights");
  const int n = a.order() + b.order();
  std::vector<std::vector<int>> r(n, std::vector<int>(n, 0));
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) r[i][j] = a.at(i, j);
  for (int i = 0; i < b.order(); ++i)
    for (int j = 0; j < b.order(); ++j) r[a.order() + i][a.order() + j] = b.at(i, j);
  return WeighingMatrix::verify(r);
}

namespace {

std::vector<std::vector<int>> circulant(const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<int>> c(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[i][j] = a[((j - i) % n + n) % n];
  return c;
}

// Periodic autocorrelation of a at shifts 0..n-1.
std::vector<int> paf(const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> out(n, 0);
  for (int s = 0; s < n; ++s)
    for (int j = 0; j < n; ++j) out[s] += a[j] * a[(j + s) % n];
  return out;
}

}  // namespace

WeighingMatrix two_circulant(const std::vector<int>& a1, const std::vector<int>& a2, TwoCirculantVariant variant) {
  const int n = static_cast<int>(a1.size());
  if (n == 0 || static_cast<int>(a2.size()) != n) throw InvalidArgument("first rows must have equal positive length");
  for (int v : a1)
    if (v < -1 || v > 1) throw InvalidArgument("entries must be 0, 1 or -1");
  for (int v : a2)
    if (v < -1 || v > 1) throw InvalidArgument("entries must be 0, 1 or -1");
  const auto p1 = paf(a1), p2 = paf(a2);
  for (int s = 1; s < n; ++s) {
    if (p1[s] + p2[s] != 0) throw InvalidArgument("A1 A1^T + A2 A2^T is not scalar");
  }
  if (p1[0] + p2[0] == 0) throw InvalidArgument("zero first rows");
  const auto c1 = circulant(a1), c2 = circulant(a2);
  auto a2r = [&](int i, int j) { return c2[i][n - 1 - j]; };  // (A2 R)[i][j]
  std::vector<std::vector<int>> r(2 * n, std::vector<int>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      r[i][j] = c1[i][j];
      if (variant == TwoCirculantVariant::kW1) {
        r[i][n + j] = c2[i][j];
        r[n + i][j] = -c2[j][i];
        r[n + i][n + j] = c1[j][i];
      } else {
        r[i][n + j] = a2r(i, j);
        r[n + i][j] = -a2r(i, j);
        r[n + i][n + j] = c1[i][j];
      }
    }
  }
  return WeighingMatrix::verify(r);
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> circulant_pairs(int n, int k) {
  if (n < 1 || n > 12) throw GuardExceeded("circulant sweep supports 1 <= n <= 12");
  std::vector<std::vector<int>> all;
  std::vector<int> a(n, -1);
  while (true) {
    int w = 0;
    for (int v : a) w += v != 0;
    if (w <= k) all.push_back(a);
    int i = n - 1;
    while (i >= 0 && a[i] == 1) a[i--] = -1;
    if (i < 0) break;
    ++a[i];
  }
  std::map<std::vector<int>, std::vector<int>> by_paf;  // PAF -> indices into all
  for (int idx = 0; idx < static_cast<int>(all.size()); ++idx) by_paf[paf(all[idx])].push_back(idx);
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for (const auto& a1 : all) {
    auto need = paf(a1);
    need[0] = k - need[0];
    for (int s = 1; s < n; ++s) need[s] = -need[s];
    const auto it = by_paf.find(need);
    if (it == by_paf.end()) continue;
    for (int idx : it->second) out.emplace_back(a1, all[idx]);
  }
  return out;
}

std::vector<WeighingMatrix> read_matrices(std::istream& in) {
  std::vector<WeighingMatrix> out;
  for (const auto& block : detail::read_blocks(in)) {
    if (block.size() < 2) throw InvalidArgument("line " + std::to_string(block[0].number) + ": truncated matrix header");
    const int n = detail::expect_field(block[0], "order");
    const int k = detail::expect_field(block[1], "weight");
    if (static_cast<int>(block.size()) != 2 + n) {
      throw InvalidArgument("line " + std::to_string(block[0].number) + ": expected " + std::to_string(n) + " rows");
    }
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < n; ++i) {
      std::istringstream ls(block[2 + i].text);
      std::vector<int> r;
      int v;
      while (ls >> v) r.push_back(v);
      if (!ls.eof() || static_cast<int>(r.size()) != n) {
        throw InvalidArgument("line " + std::to_string(block[2 + i].number) + ": expected " + std::to_string(n) + " entries");
      }
      rows.push_back(std::move(r));
    }
    WeighingMatrix w = WeighingMatrix::verify(rows);
    if (w.weight() != k) {
      throw InvalidArgument("line " + std::to_string(block[1].number) + ": declared weight " + std::to_string(k) +
                            " but rows have weight " + std::to_string(w.weight()));
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<WeighingMatrix> read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingData("cannot open matrix file " + path);
  return read_matrices(in);
}

void write_matrix(std::ostream& out, const WeighingMatrix& w, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "order " << w.order() << "\nweight " << w.weight() << "\n";
  for (int i = 0; i < w.order(); ++i) {
    for (int j = 0; j < w.order(); ++j) {
      const int v = w.at(i, j);
      out << (j ? " " : "") << (v < 0 ? "-1" : v > 0 ? " 1" : " 0");
    }
    out << "\n";
  }
}

void write_matrix_file(const std::string& path, const std::vector<WeighingMatrix>& ws) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) out << "\n";
    write_matrix(out, ws[i]);
  }
}

}  // namespace wmkit
