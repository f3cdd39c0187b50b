#include "wmkit/codeclass.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "wmkit/code_encoding.hpp"
#include "wmkit/error.hpp"

namespace wmkit {

namespace {

void sort_classes(CodeClassSet& set) {
  std::sort(set.classes.begin(), set.classes.end(),
            [](const CodeClass& a, const CodeClass& b) { return a.certificate < b.certificate; });
}

// Scales x so that its first nonzero entry is 1 (x must be nonzero).
void normalize_scalar(const RingTag& ring, Row& x) {
  for (Residue v : x) {
    if (v == 0) continue;
    if (v != 1) {
      const Residue inv = ring.inverse(v);
      for (auto& y : x) y = ring.mul(y, inv);
    }
    return;
  }
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

struct Level {
  std::vector<Code> codes;
  std::vector<CodeCanon> canon;
};

void check_guard(int p, int n, const AugmentationOptions& opt) {
  if (p != 3 && p != 5 && p != 7) throw InvalidArgument("augmentation supports p = 3, 5, 7");
  const int limit = p == 3 ? opt.max_length : std::min(opt.max_length, 8);
  if (n < 1 || n > limit) {
    throw GuardExceeded("augmentation for p = " + std::to_string(p) + " is limited to length " +
                        std::to_string(limit));
  }
}

// Runs augmentation and returns every level of self-orthogonal classes plus the maximal ones.
std::pair<std::vector<Level>, CodeClassSet> augment(int p, int n, const AugmentationOptions& opt) {
  check_guard(p, n, opt);
  const RingTag ring = RingTag::of(p);
  std::vector<Level> levels(1);
  levels[0].codes.push_back(Code::zero(ring, n));
  levels[0].canon.push_back(canonicalize_code(levels[0].codes[0]));
  CodeClassSet maximal{ring, n, {}};

  for (std::size_t d = 0; d < levels.size(); ++d) {
    Level next;
    std::map<std::string, std::size_t> seen;
    for (std::size_t ci = 0; ci < levels[d].codes.size(); ++ci) {
      const Code& c = levels[d].codes[ci];
      const CodeCanon& cc = levels[d].canon[ci];
      // Normalized isotropic coset representatives of C^perp / C.
      std::unordered_map<std::uint64_t, std::size_t> index;
      std::vector<Row> reps;
      dual(c).for_each_codeword([&](const Row& x) {
        if (dot(ring, x, x) != 0) return;
        Row r = c.reduce(x);
        if (std::all_of(r.begin(), r.end(), [](Residue v) { return v == 0; })) return;
        normalize_scalar(ring, r);
        if (index.emplace(pack_word(r, p), reps.size()).second) reps.push_back(std::move(r));
      });
      if (reps.empty()) {
        if (!is_maximal_so(c)) throw std::logic_error("augmentation: no extension but code is not maximal");
        if (c.dimension() != mso_dimension(p, n)) {
          throw std::logic_error("augmentation: maximal code of unexpected dimension");
        }
        maximal.classes.push_back({c, cc.certificate, cc.aut_order});
        continue;
      }
      UnionFind uf(reps.size());
      for (const auto& g : cc.aut_generators) {
        for (std::size_t i = 0; i < reps.size(); ++i) {
          Row y = c.reduce(g.apply(ring, reps[i]));
          normalize_scalar(ring, y);
          uf.unite(i, index.at(pack_word(y, p)));
        }
      }
      for (std::size_t i = 0; i < reps.size(); ++i) {
        if (uf.find(i) != i) continue;
        std::vector<Row> gens = c.generators();
        gens.push_back(reps[i]);
        Code ext(ring, n, std::move(gens));
        CodeCanon ec = canonicalize_code(ext);
        if (seen.emplace(ec.certificate, next.codes.size()).second) {
          next.codes.push_back(std::move(ext));
          next.canon.push_back(std::move(ec));
        }
      }
    }
    if (!next.codes.empty()) levels.push_back(std::move(next));
    if (!opt.keep_all_levels && d > 0) levels[d - 1] = Level{};
  }
  sort_classes(maximal);
  return {std::move(levels), std::move(maximal)};
}

}  // namespace

CodeClassSet dedup_codes(const std::vector<Code>& codes) {
  if (codes.empty()) return {};
  CodeClassSet out{codes[0].ring(), codes[0].length(), {}};
  std::map<std::string, std::size_t> seen;
  for (const Code& c : codes) {
    if (c.ring() != out.ring || c.length() != out.length) throw InvalidArgument("codes differ in ring or length");
    CodeCanon cc = canonicalize_code(c);
    if (seen.emplace(cc.certificate, out.classes.size()).second) {
      out.classes.push_back({c, std::move(cc.certificate), cc.aut_order});
    }
  }
  sort_classes(out);
  return out;
}

CodeClassSet classify_mso_augmentation(int p, int n, const AugmentationOptions& opt) {
  return augment(p, n, opt).second;
}

std::vector<std::size_t> so_counts_by_dimension(int p, int n, const AugmentationOptions& opt) {
  AugmentationOptions o = opt;
  o.keep_all_levels = true;
  const auto levels = augment(p, n, o).first;
  std::vector<std::size_t> out;
  for (const auto& l : levels) out.push_back(l.codes.size());
  return out;
}

Code subtract_pattern(const Code& c, const std::vector<int>& coords, const Row& pattern) {
  const int n = c.length();
  const RingTag& ring = c.ring();
  if (coords.size() != pattern.size() || coords.empty()) throw InvalidArgument("pattern size mismatch");
  std::vector<bool> removed(n, false);
  for (int i : coords) {
    if (i < 0 || i >= n || removed[i]) throw InvalidArgument("bad subtraction coordinates");
    removed[i] = true;
  }
  if (static_cast<int>(coords.size()) >= n) throw InvalidArgument("nothing left after subtraction");
  // Linear constraints saying x restricted to coords is a multiple of pattern:
  // x_t * v_a - x_a * v_t = 0 against an anchor a, or x_t = 0 where v vanishes.
  std::vector<Row> constraints;
  const int s = static_cast<int>(coords.size());
  int anchor = -1;
  for (int t = 0; t < s; ++t) {
    if (pattern[t] != 0 && anchor < 0) anchor = t;
  }
  for (int t = 0; t < s; ++t) {
    Row con(n, 0);
    if (anchor < 0 || pattern[t] == 0) {
      con[coords[t]] = 1;
    } else if (t != anchor) {
      con[coords[t]] = pattern[anchor];
      con[coords[anchor]] = ring.neg(pattern[t]);
    } else {
      continue;
    }
    constraints.push_back(std::move(con));
  }
  // The subcode is C intersected with the kernel of the constraints:
  // (C^perp + span(constraints))^perp.
  std::vector<Row> gens = dual(c).generators();
  gens.insert(gens.end(), constraints.begin(), constraints.end());
  const Code sub = dual(Code(ring, n, gens));
  std::vector<Row> kept;
  for (const Row& g : sub.generators()) {
    Row r;
    for (int j = 0; j < n; ++j)
      if (!removed[j]) r.push_back(g[j]);
    kept.push_back(std::move(r));
  }
  return Code(ring, n - s, std::move(kept));
}

CodeClassSet classify_mso_subtraction(const std::vector<Code>& parents, int n) {
  if (parents.empty()) throw MissingData("subtraction needs parent codes");
  const RingTag ring = parents[0].ring();
  const int len = parents[0].length();
  for (const Code& c : parents) {
    if (c.ring() != ring || c.length() != len) throw InvalidArgument("parents differ in ring or length");
    if (!is_self_dual(c)) throw InvalidArgument("parent codes must be self-dual");
  }
  const int drop = len - n;
  if (drop < 0 || drop > 3) throw InvalidArgument("subtraction removes between 0 and 3 coordinates");
  std::vector<Code> candidates;
  std::vector<int> idx(len);
  std::iota(idx.begin(), idx.end(), 0);
  // Full-weight isotropic patterns of length `drop`, first entry 1.
  std::vector<Row> patterns;
  if (drop == 3) {
    const int p = ring.modulus();
    for (int a = 1; a < p; ++a)
      for (int b = 1; b < p; ++b) {
        const Row v{1, static_cast<Residue>(a), static_cast<Residue>(b)};
        if (dot(ring, v, v) == 0) patterns.push_back(v);
      }
    if (patterns.empty()) throw InvalidArgument("no isotropic pattern of length 3");
  } else if (drop > 0) {
    patterns.push_back(Row(drop, 0));
  }
  for (const Code& c : parents) {
    if (drop == 0) {
      candidates.push_back(c);
      continue;
    }
    std::vector<bool> pick(len, false);
    std::fill(pick.begin(), pick.begin() + drop, true);
    do {
      std::vector<int> coords;
      for (int i = 0; i < len; ++i)
        if (pick[i]) coords.push_back(i);
      for (const Row& v : patterns) {
        Code s = subtract_pattern(c, coords, v);
        if (is_maximal_so(s)) candidates.push_back(std::move(s));
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  if (candidates.empty()) return {ring, n, {}};
  CodeClassSet out = dedup_codes(candidates);
  for (const auto& cl : out.classes) {
    if (cl.code.dimension() != mso_dimension(ring.modulus(), n)) {
      throw std::logic_error("subtraction: maximal code of unexpected dimension");
    }
  }
  return out;
}

BigInt brute_force_mso_count(int p, int n) {
  const RingTag ring = RingTag::of(p);
  if (!ring.is_field()) throw InvalidArgument("brute force needs a prime field");
  double total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  if (total > 1e7 || n > 8) throw GuardExceeded("brute-force N0 is limited to p^n <= 10^7 and n <= 8");
  BigInt count = 0;
  // Every subspace of dimension d <= n/2 in reduced row echelon form.
  for (int d = 1; 2 * d <= n; ++d) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + d, true);
    do {
      std::vector<int> piv;
      for (int i = 0; i < n; ++i)
        if (pick[i]) piv.push_back(i);
      // Free slots: (row r, column j) with j > piv[r] and j not a pivot.
      std::vector<std::pair<int, int>> free;
      for (int r = 0; r < d; ++r)
        for (int j = piv[r] + 1; j < n; ++j)
          if (!pick[j]) free.emplace_back(r, j);
      std::vector<Row> rows(d, Row(n, 0));
      for (int r = 0; r < d; ++r) rows[r][piv[r]] = 1;
      std::vector<int> digits(free.size(), 0);
      while (true) {
        for (std::size_t f = 0; f < free.size(); ++f) rows[free[f].first][free[f].second] = digits[f];
        bool so = true;
        for (int a = 0; a < d && so; ++a)
          for (int b = a; b < d && so; ++b) so = dot(ring, rows[a], rows[b]) == 0;
        if (so && is_maximal_so(Code(ring, n, rows))) ++count;
        std::size_t f = 0;
        while (f < digits.size() && digits[f] == p - 1) digits[f++] = 0;
        if (f == digits.size()) break;
        ++digits[f];
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return count;
}

MassAudit mass_check(const CodeClassSet& set, std::optional<BigInt> n0) {
  MassAudit audit;
  audit.length = set.length;
  BigInt group = 1;
  for (int i = 1; i <= set.length; ++i) group *= 2 * i;
  for (const auto& cl : set.classes) {
    if (group % cl.aut_order != 0) throw std::logic_error("Aut order does not divide the monomial group order");
    audit.sum += group / cl.aut_order;
  }
  if (n0) {
    audit.n0 = *n0;
  } else {
    try {
      audit.n0 = brute_force_mso_count(set.ring.modulus(), set.length);
      audit.n0_brute_forced = true;
    } catch (const GuardExceeded& e) {
      throw MissingData(std::string("N0 not supplied and ") + e.what());
    }
  }
  audit.pass = audit.sum == audit.n0;
  return audit;
}

InequivalenceEvidence inequivalence_certificates(const CodeClassSet& set, CosetSpace space) {
  InequivalenceEvidence ev;
  for (const auto& cl : set.classes) ev.profiles.push_back(coset_weight_profile(cl.code, space));
  ev.profiles_distinct = true;
  ev.certificates_distinct = true;
  for (std::size_t i = 0; i < set.classes.size(); ++i) {
    for (std::size_t j = i + 1; j < set.classes.size(); ++j) {
      const bool same_cert = set.classes[i].certificate == set.classes[j].certificate;
      if (same_cert) ev.certificates_distinct = false;
      if (ev.profiles[i] == ev.profiles[j]) {
        ev.profiles_distinct = false;
        if (!same_cert) ev.profile_collisions.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return ev;
}

std::vector<ParentTableRow> subtraction_table(const std::vector<Code>& parents) {
  std::vector<ParentTableRow> rows;
  if (parents.empty()) throw MissingData("no parent codes");
  const int len = parents[0].length();
  for (std::size_t i = 0; i < parents.size(); ++i) {
    ParentTableRow row;
    row.parent = static_cast<int>(i) + 1;
    row.from_one = static_cast<int>(classify_mso_subtraction({parents[i]}, len - 1).classes.size());
    row.from_two = static_cast<int>(classify_mso_subtraction({parents[i]}, len - 2).classes.size());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wmkit
