#include "wmkit/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "wmkit/error.hpp"

namespace wmkit {

namespace {

bool is_prime(int m) {
  if (m < 2) return false;
  for (int d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

}  // namespace

RingTag RingTag::of(int modulus) {
  if (modulus == 4) return RingTag(4, Kind::kZ4);
  if (modulus == 2) throw InvalidArgument("modulus 2 is not supported (odd primes and 4 only)");
  if (modulus > 251 || !is_prime(modulus)) {
    throw InvalidArgument("unsupported modulus " + std::to_string(modulus));
  }
  return RingTag(modulus, Kind::kPrimeField);
}

bool RingTag::is_unit(Residue a) const {
  if (kind_ == Kind::kZ4) return (a & 1) != 0;
  return a != 0;
}

Residue RingTag::inverse(Residue unit) const {
  for (int b = 1; b < m_; ++b) {
    if ((unit * b) % m_ == 1) return static_cast<Residue>(b);
  }
  throw InvalidArgument("residue is not a unit");
}

int RingTag::valuation(Residue a) const {
  if (kind_ == Kind::kZ4) {
    if (a == 0) return 2;
    return (a & 1) ? 0 : 1;
  }
  return a == 0 ? 1 : 0;
}

std::string RingTag::name() const {
  return kind_ == Kind::kZ4 ? "Z4" : "F" + std::to_string(m_);
}

ModVector::ModVector(RingTag ring, Row entries) : ring_(ring), entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidArgument("ModVector must have positive length");
  for (Residue r : entries_) {
    if (r >= ring_.modulus()) throw InvalidArgument("residue out of range");
  }
}

int ModVector::weight() const {
  return static_cast<int>(std::count_if(entries_.begin(), entries_.end(), [](Residue r) { return r != 0; }));
}

MonomialTransform MonomialTransform::identity(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  return MonomialTransform(std::move(perm), std::vector<std::int8_t>(n, 1));
}

MonomialTransform::MonomialTransform(std::vector<int> perm, std::vector<std::int8_t> signs)
    : perm_(std::move(perm)), signs_(std::move(signs)) {
  if (perm_.size() != signs_.size()) throw InvalidArgument("perm/sign length mismatch");
  std::vector<bool> seen(perm_.size(), false);
  for (int p : perm_) {
    if (p < 0 || p >= degree() || seen[p]) throw InvalidArgument("not a permutation");
    seen[p] = true;
  }
  for (auto s : signs_) {
    if (s != 1 && s != -1) throw InvalidArgument("signs must be +1 or -1");
  }
}

MonomialTransform MonomialTransform::then(const MonomialTransform& t) const {
  if (t.degree() != degree()) throw InvalidArgument("degree mismatch in composition");
  std::vector<int> perm(perm_.size());
  std::vector<std::int8_t> signs(perm_.size());
  for (std::size_t j = 0; j < perm_.size(); ++j) {
    perm[j] = t.perm_[perm_[j]];
    signs[j] = static_cast<std::int8_t>(signs_[j] * t.signs_[perm_[j]]);
  }
  return MonomialTransform(std::move(perm), std::move(signs));
}

MonomialTransform MonomialTransform::inverse() const {
  std::vector<int> perm(perm_.size());
  std::vector<std::int8_t> signs(perm_.size());
  for (std::size_t j = 0; j < perm_.size(); ++j) {
    perm[perm_[j]] = static_cast<int>(j);
    signs[perm_[j]] = signs_[j];
  }
  return MonomialTransform(std::move(perm), std::move(signs));
}

bool MonomialTransform::is_identity() const {
  for (std::size_t j = 0; j < perm_.size(); ++j) {
    if (perm_[j] != static_cast<int>(j) || signs_[j] != 1) return false;
  }
  return true;
}

Row MonomialTransform::apply(const RingTag& ring, std::span<const Residue> x) const {
  if (static_cast<int>(x.size()) != degree()) throw InvalidArgument("length mismatch in apply_monomial");
  Row y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    y[perm_[j]] = signs_[j] > 0 ? x[j] : ring.neg(x[j]);
  }
  return y;
}

std::vector<int> MonomialTransform::apply(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != degree()) throw InvalidArgument("length mismatch in apply_monomial");
  std::vector<int> y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[perm_[j]] = signs_[j] * x[j];
  return y;
}

ModVector apply_monomial(const ModVector& x, const MonomialTransform& t) {
  return ModVector(x.ring(), t.apply(x.ring(), x.entries()));
}

std::vector<int> apply_monomial(std::span<const int> x, const MonomialTransform& t) { return t.apply(x); }

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) throw InvalidArgument("matrix dimensions must be positive");
  data_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw InvalidArgument("empty matrix");
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols()) throw InvalidArgument("ragged matrix rows");
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw InvalidArgument("dimension mismatch in product");
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int l = 0; l < cols_; ++l) {
      const long long a = at(i, l);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(l, j);
    }
  }
  return r;
}

std::vector<BigInt> elementary_divisors(const IntMatrix& m) {
  const int rows = m.rows();
  const int cols = m.cols();
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a[i][j] = m.at(i, j);
  }
  const int diag = std::min(rows, cols);
  std::vector<BigInt> out;
  out.reserve(diag);
  for (int t = 0; t < diag; ++t) {
    while (true) {
      // Smallest nonzero |entry| in the trailing block becomes the pivot.
      int pi = -1, pj = -1;
      BigInt best;
      for (int i = t; i < rows; ++i) {
        for (int j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          BigInt v = abs(a[i][j]);
          if (pi < 0 || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      }
      if (pi < 0) break;
      std::swap(a[t], a[pi]);
      for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        for (int j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        for (int i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Pivot must divide the whole trailing block; otherwise fold a row in.
      int bad_row = -1;
      for (int i = t + 1; i < rows && bad_row < 0; ++i) {
        for (int j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            bad_row = i;
            break;
          }
        }
      }
      if (bad_row < 0) break;
      for (int j = t; j < cols; ++j) a[t][j] += a[bad_row][j];
    }
    out.push_back(abs(a[t][t]));
  }
  // Zeros (rank deficiency) sort to the end; the nonzero prefix already forms a chain.
  std::stable_partition(out.begin(), out.end(), [](const BigInt& d) { return d != 0; });
  return out;
}

Residue dot(const RingTag& ring, std::span<const Residue> x, std::span<const Residue> y) {
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<long long>(x[i]) * y[i];
  return ring.reduce(s);
}

namespace {

bool is_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](Residue v) { return v == 0; });
}

// row -= q * piv (mod m)
void axpy(const RingTag& ring, Row& row, Residue q, const Row& piv) {
  if (q == 0) return;
  const int m = ring.modulus();
  for (std::size_t j = 0; j < row.size(); ++j) {
    row[j] = static_cast<Residue>((row[j] + (m - q) * piv[j]) % m);
  }
}

void scale(const RingTag& ring, Row& row, Residue s) {
  for (auto& v : row) v = ring.mul(v, s);
}

// For a pivot of minimal valuation d, the quotient e / d for e divisible by d.
Residue divide(const RingTag& ring, Residue e, Residue d) {
  if (ring.is_unit(d)) return ring.mul(e, ring.inverse(d));
  // Z_4 with d = 2: e in {0, 2}.
  return static_cast<Residue>(e / 2);
}

}  // namespace

std::vector<Row> echelon_form(const RingTag& ring, std::vector<Row> rows, int n) {
  std::vector<Row> pool;
  for (auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw InvalidArgument("row length mismatch");
    for (auto& v : r) v = ring.reduce(v);
    if (!is_zero(r)) pool.push_back(std::move(r));
  }
  std::vector<Row> out;
  std::vector<int> pivot_col;
  for (int c = 0; c < n && !pool.empty(); ++c) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
      if (pool[i][c] == 0) continue;
      if (best < 0 || ring.valuation(pool[i][c]) < ring.valuation(pool[best][c])) best = i;
    }
    if (best < 0) continue;
    Row piv = std::move(pool[best]);
    pool.erase(pool.begin() + best);
    if (ring.is_unit(piv[c])) scale(ring, piv, ring.inverse(piv[c]));
    const Residue d = piv[c];
    std::vector<Row> next;
    for (auto& r : pool) {
      if (r[c] != 0) axpy(ring, r, divide(ring, r[c], d), piv);
      if (!is_zero(r)) next.push_back(std::move(r));
    }
    if (!ring.is_unit(d)) {
      Row twice = piv;
      scale(ring, twice, static_cast<Residue>(ring.modulus() / d));
      if (!is_zero(twice)) next.push_back(std::move(twice));
    }
    pool = std::move(next);
    out.push_back(std::move(piv));
    pivot_col.push_back(c);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int c = pivot_col[i];
    const Residue d = out[i][c];
    for (std::size_t j = 0; j < i; ++j) {
      const Residue q = static_cast<Residue>(out[j][c] / d);
      axpy(ring, out[j], q, out[i]);
    }
  }
  return out;
}

RankProfile rank_mod(const RingTag& ring, const std::vector<Row>& rows, int n) {
  RankProfile p;
  for (const Row& r : echelon_form(ring, rows, n)) {
    const auto it = std::find_if(r.begin(), r.end(), [](Residue v) { return v != 0; });
    if (ring.is_unit(*it)) {
      ++p.free_rank;
    } else {
      ++p.torsion_rank;
    }
  }
  return p;
}

std::vector<Row> orthogonal_complement(const RingTag& ring, const std::vector<Row>& rows, int n) {
  // Diagonalize the generator matrix M over the local ring Z_m, tracking column
  // operations in V. Then M x^T = 0 iff x = V y with d_t y_t = 0 for each pivot.
  std::vector<Row> a;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw InvalidArgument("row length mismatch");
    a.push_back(r);
  }
  std::vector<Row> v(n, Row(n, 0));  // columns of V stored as rows: v[col][coord]
  for (int j = 0; j < n; ++j) v[j][j] = 1;
  const int m = ring.modulus();
  const int rcount = static_cast<int>(a.size());
  std::vector<Residue> diag;
  int t = 0;
  for (; t < std::min(rcount, n); ++t) {
    int pi = -1, pj = -1;
    for (int i = t; i < rcount; ++i) {
      for (int j = t; j < n; ++j) {
        if (a[i][j] == 0) continue;
        if (pi < 0 || ring.valuation(a[i][j]) < ring.valuation(a[pi][pj])) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);
    std::swap(v[t], v[pj]);
    if (ring.is_unit(a[t][t])) scale(ring, a[t], ring.inverse(a[t][t]));
    const Residue d = a[t][t];
    for (int i = t + 1; i < rcount; ++i) {
      if (a[i][t] != 0) axpy(ring, a[i], divide(ring, a[i][t], d), a[t]);
    }
    for (int j = t + 1; j < n; ++j) {
      if (a[t][j] == 0) continue;
      const Residue q = divide(ring, a[t][j], d);
      for (int i = t; i < rcount; ++i) {
        a[i][j] = static_cast<Residue>((a[i][j] + (m - q) * a[i][t]) % m);
      }
      for (int c = 0; c < n; ++c) v[j][c] = static_cast<Residue>((v[j][c] + (m - q) * v[t][c]) % m);
    }
    diag.push_back(d);
  }
  std::vector<Row> out;
  for (int s = 0; s < static_cast<int>(diag.size()); ++s) {
    if (ring.is_unit(diag[s])) continue;
    Row g = v[s];
    scale(ring, g, static_cast<Residue>(m / diag[s]));
    out.push_back(std::move(g));
  }
  for (int s = static_cast<int>(diag.size()); s < n; ++s) out.push_back(v[s]);
  return out;
}

}  // namespace wmkit
