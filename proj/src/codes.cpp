#include "wmkit/codes.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "text_blocks.hpp"
#include "wmkit/error.hpp"

namespace wmkit {

namespace {

int first_nonzero(const Row& r) {
  for (int j = 0; j < static_cast<int>(r.size()); ++j) {
    if (r[j] != 0) return j;
  }
  return -1;
}

}  // namespace

Code::Code(RingTag ring, int length, std::vector<Row> generators) : ring_(ring), length_(length) {
  if (length <= 0) throw InvalidArgument("code length must be positive");
  gens_ = echelon_form(ring_, std::move(generators), length);
  for (const Row& g : gens_) {
    const int p = first_nonzero(g);
    pivots_.push_back(p);
    if (ring_.is_unit(g[p])) {
      ++type_.free_rank;
    } else {
      ++type_.torsion_rank;
    }
  }
}

Code Code::zero(RingTag ring, int length) { return Code(ring, length, {}); }

Code Code::full(RingTag ring, int length) {
  std::vector<Row> rows(length, Row(length, 0));
  for (int i = 0; i < length; ++i) rows[i][i] = 1;
  return Code(ring, length, std::move(rows));
}

BigInt Code::size() const {
  BigInt s = 1;
  for (std::size_t i = 0; i < gens_.size(); ++i) s *= ring_.modulus() / gens_[i][pivots_[i]];
  return s;
}

std::uint64_t Code::size_u64() const {
  const BigInt s = size();
  if (s > (BigInt(1) << 62)) throw GuardExceeded("code too large to enumerate");
  return static_cast<std::uint64_t>(s);
}

Row Code::reduce(std::span<const Residue> x) const {
  Row r(x.begin(), x.end());
  const int m = ring_.modulus();
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const int c = pivots_[i];
    const Residue q = static_cast<Residue>(r[c] / gens_[i][c]);
    if (q == 0) continue;
    for (int j = 0; j < length_; ++j) r[j] = static_cast<Residue>((r[j] + (m - q) * gens_[i][j]) % m);
  }
  return r;
}

bool Code::contains(std::span<const Residue> x) const {
  if (static_cast<int>(x.size()) != length_) return false;
  const Row r = reduce(x);
  return std::all_of(r.begin(), r.end(), [](Residue v) { return v == 0; });
}

void Code::for_each_codeword(const std::function<void(const Row&)>& visit) const {
  find_codeword([&](const Row& w) {
    visit(w);
    return false;
  });
}

bool Code::find_codeword(const std::function<bool(const Row&)>& pred) const {
  const int m = ring_.modulus();
  const std::size_t k = gens_.size();
  std::vector<int> radix(k), digit(k, 0);
  std::vector<Row> wrap(k, Row(length_));
  for (std::size_t i = 0; i < k; ++i) {
    radix[i] = m / gens_[i][pivots_[i]];
    const int back = m - (radix[i] - 1) % m;
    for (int j = 0; j < length_; ++j) wrap[i][j] = static_cast<Residue>((back * gens_[i][j]) % m);
  }
  Row word(length_, 0);
  while (true) {
    if (pred(word)) return true;
    std::size_t i = 0;
    for (; i < k; ++i) {
      if (++digit[i] < radix[i]) {
        for (int j = 0; j < length_; ++j) word[j] = static_cast<Residue>((word[j] + gens_[i][j]) % m);
        break;
      }
      digit[i] = 0;
      for (int j = 0; j < length_; ++j) word[j] = static_cast<Residue>((word[j] + wrap[i][j]) % m);
    }
    if (i == k) return false;
  }
}

std::vector<Row> Code::codewords() const {
  std::vector<Row> out;
  out.reserve(size_u64());
  for_each_codeword([&](const Row& w) { out.push_back(w); });
  return out;
}

Code dual(const Code& c) {
  return Code(c.ring(), c.length(), orthogonal_complement(c.ring(), c.generators(), c.length()));
}

bool is_self_orthogonal(const Code& c) {
  const auto& g = c.generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i; j < g.size(); ++j) {
      if (dot(c.ring(), g[i], g[j]) != 0) return false;
    }
  }
  return true;
}

bool is_self_dual(const Code& c) { return is_self_orthogonal(c) && dual(c) == c; }

int mso_dimension(int p, int n) {
  if (n % 2 == 1) return (n - 1) / 2;
  if (p % 4 == 3 && n % 4 == 2) return n / 2 - 1;
  return n / 2;
}

bool is_maximal_so(const Code& c) {
  if (!is_self_orthogonal(c)) return false;
  const Code d = dual(c);
  if (d == c) return true;
  const bool extendable =
      d.find_codeword([&](const Row& x) { return dot(c.ring(), x, x) == 0 && !c.contains(x); });
  return !extendable;
}

std::vector<Row> enumerate_wm_words(const Code& c, int k) {
  if (k > c.length()) throw InvalidArgument("weight exceeds length");
  const RingTag& ring = c.ring();
  const Residue minus_one = static_cast<Residue>(ring.modulus() - 1);
  std::vector<Row> out;
  c.for_each_codeword([&](const Row& x) {
    int w = 0;
    for (Residue v : x) {
      if (v == 0) continue;
      if (v != 1 && v != minus_one) return;
      ++w;
    }
    if (w != k || k == 0) return;
    Row neg(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) neg[j] = ring.neg(x[j]);
    if (x < neg) out.push_back(x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

Code subtract(const Code& c, int coord) {
  const int n = c.length();
  if (n < 2) throw InvalidArgument("cannot subtract from a code of length < 2");
  if (coord < 0 || coord >= n) throw InvalidArgument("coordinate out of range");
  // C ∩ {x : x_coord = 0} = (C^perp + <e_coord>)^perp
  std::vector<Row> rows = dual(c).generators();
  Row e(n, 0);
  e[coord] = 1;
  rows.push_back(e);
  const Code shortened(c.ring(), n, orthogonal_complement(c.ring(), rows, n));
  std::vector<Row> out;
  for (const Row& g : shortened.generators()) {
    Row r;
    r.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j != coord) r.push_back(g[j]);
    }
    out.push_back(std::move(r));
  }
  return Code(c.ring(), n - 1, std::move(out));
}

Code monomial_image(const Code& c, const MonomialTransform& t) {
  std::vector<Row> rows;
  for (const Row& g : c.generators()) rows.push_back(t.apply(c.ring(), g));
  return Code(c.ring(), c.length(), std::move(rows));
}

int hamming_weight(std::span<const Residue> x) {
  return static_cast<int>(std::count_if(x.begin(), x.end(), [](Residue v) { return v != 0; }));
}

std::uint64_t pack_word(std::span<const Residue> x, int m) {
  std::uint64_t key = 0;
  for (Residue v : x) key = key * static_cast<std::uint64_t>(m) + v;
  return key;
}

std::vector<long long> coset_weight_profile(const Code& c, CosetSpace space, std::uint64_t max_cosets) {
  const int n = c.length();
  const Code ambient = space == CosetSpace::kAmbient ? Code::full(c.ring(), n) : dual(c);
  const BigInt cosets = ambient.size() / c.size();
  if (cosets > max_cosets) throw GuardExceeded("coset sweep exceeds guard");
  std::unordered_map<std::uint64_t, int> best;
  best.reserve(static_cast<std::size_t>(cosets) * 2);
  ambient.for_each_codeword([&](const Row& x) {
    const std::uint64_t key = pack_word(c.reduce(x), c.ring().modulus());
    const int w = hamming_weight(x);
    auto [it, inserted] = best.try_emplace(key, w);
    if (!inserted && w < it->second) it->second = w;
  });
  std::vector<long long> profile(n + 1, 0);
  for (const auto& [key, w] : best) ++profile[w];
  return profile;
}

std::vector<long long> weight_distribution(const Code& c) {
  std::vector<long long> dist(c.length() + 1, 0);
  c.for_each_codeword([&](const Row& x) { ++dist[hamming_weight(x)]; });
  return dist;
}

std::vector<Code> read_codes(std::istream& in) {
  std::vector<Code> codes;
  for (const auto& block : detail::read_blocks(in)) {
    if (block.size() < 3) throw InvalidArgument("line " + std::to_string(block[0].number) + ": truncated code header");
    const int m = detail::expect_field(block[0], "ring");
    const int n = detail::expect_field(block[1], "length");
    const int rows = detail::expect_field(block[2], "dim");
    if (static_cast<int>(block.size()) != 3 + rows) {
      throw InvalidArgument("line " + std::to_string(block[0].number) + ": expected " + std::to_string(rows) + " rows");
    }
    const RingTag ring = RingTag::of(m);
    std::vector<Row> gens;
    for (int i = 0; i < rows; ++i) {
      const auto& line = block[3 + i];
      std::istringstream ls(line.text);
      Row r;
      long long v;
      while (ls >> v) {
        if (v < 0 || v >= m) throw InvalidArgument("line " + std::to_string(line.number) + ": residue out of range");
        r.push_back(static_cast<Residue>(v));
      }
      if (!ls.eof() || static_cast<int>(r.size()) != n) {
        throw InvalidArgument("line " + std::to_string(line.number) + ": expected " + std::to_string(n) + " residues");
      }
      gens.push_back(std::move(r));
    }
    codes.emplace_back(ring, n, std::move(gens));
  }
  return codes;
}

std::vector<Code> read_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingData("cannot open code file " + path);
  return read_codes(in);
}

void write_code(std::ostream& out, const Code& c, const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "ring " << c.ring().modulus() << "\nlength " << c.length() << "\ndim " << c.generators().size() << "\n";
  for (const Row& g : c.generators()) {
    for (int j = 0; j < c.length(); ++j) out << (j ? " " : "") << static_cast<int>(g[j]);
    out << "\n";
  }
}

void write_code_file(const std::string& path, const std::vector<Code>& codes) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (i) out << "\n";
    write_code(out, codes[i]);
  }
}

}  // namespace wmkit
