#include "wmkit/equiv.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "wmkit/code_encoding.hpp"
#include "wmkit/error.hpp"

namespace wmkit {

IncidenceStructure incidence_rows(int n, const std::vector<std::vector<int>>& rows) {
  IncidenceStructure d;
  d.n = n;
  d.tau0.resize(2 * n);
  for (int j = 0; j < n; ++j) {
    d.tau0[2 * j] = 2 * j + 1;
    d.tau0[2 * j + 1] = 2 * j;
  }
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw InvalidArgument("row length mismatch");
    for (int eps : {1, -1}) {
      std::vector<int> b;
      for (int j = 0; j < n; ++j) {
        if (r[j] == 0) continue;
        b.push_back(2 * j + (eps * r[j] > 0 ? 0 : 1));
      }
      d.blocks.push_back(std::move(b));
    }
  }
  return d;
}

IncidenceStructure incidence(const WeighingMatrix& w) { return incidence_rows(w.order(), w.rows()); }

bool satisfies_conditions(const IncidenceStructure& d, const Permutation& tau) {
  const int np = 2 * d.n;
  if (static_cast<int>(tau.size()) != np) return false;
  std::vector<int> orbit(np);
  for (int a = 0; a < np; ++a) {
    if (tau[a] == a || tau[tau[a]] != a) return false;
    orbit[a] = std::min(a, tau[a]);
  }
  // meet[b][o] = the point of block b in orbit o, or -1.
  const int nb = static_cast<int>(d.blocks.size());
  std::vector<std::vector<int>> meet(nb, std::vector<int>(np, -1));
  for (int b = 0; b < nb; ++b) {
    for (int a : d.blocks[b]) {
      if (meet[b][orbit[a]] != -1) return false;  // condition (i)
      meet[b][orbit[a]] = a;
    }
  }
  // Image of each block under tau, to exclude B' = B^tau.
  std::vector<std::vector<int>> image(nb);
  for (int b = 0; b < nb; ++b) {
    for (int a : d.blocks[b]) image[b].push_back(tau[a]);
    std::sort(image[b].begin(), image[b].end());
  }
  for (int b = 0; b < nb; ++b) {
    for (int c = 0; c < nb; ++c) {
      if (c == b || d.blocks[c] == image[b]) continue;
      int same = 0, differ = 0;
      for (int o = 0; o < np; ++o) {
        const int x = meet[b][o], y = meet[c][o];
        if (x < 0 || y < 0) continue;
        if (x == y) {
          ++same;
        } else {
          ++differ;
        }
      }
      if (same != differ) return false;  // condition (ii)
    }
  }
  return true;
}

ColoredGraph incidence_graph(const IncidenceStructure& d) {
  const int np = 2 * d.n;
  const int nb = static_cast<int>(d.blocks.size());
  std::vector<int> colors(np + nb, 0);
  std::fill(colors.begin() + np, colors.end(), 1);
  ColoredGraph g(std::move(colors));
  for (int b = 0; b < nb; ++b)
    for (int a : d.blocks[b]) g.add_edge(a, np + b);
  return g;
}

ColoredGraph paired_incidence_graph(const IncidenceStructure& d) {
  ColoredGraph g = incidence_graph(d);
  const int np = 2 * d.n;
  for (int j = 0; j < d.n; ++j) g.add_edge(2 * j, 2 * j + 1);
  for (int b = 0; b + 1 < static_cast<int>(d.blocks.size()); b += 2) g.add_edge(np + b, np + b + 1);
  return g;
}

bool verify_witness(const WeighingMatrix& w1, const WeighingMatrix& w2, const Witness& x) {
  const int n = w1.order();
  if (w2.order() != n || x.rows.degree() != n || x.cols.degree() != n) return false;
  IntMatrix p(n, n), q(n, n);
  for (int i = 0; i < n; ++i) p.at(x.rows.perm()[i], i) = x.rows.signs()[i];
  for (int j = 0; j < n; ++j) q.at(j, x.cols.perm()[j]) = x.cols.signs()[j];
  return p * w1.to_int_matrix() * q == w2.to_int_matrix();
}

namespace {

// Signed permutation of the pairs {base + 2t, base + 2t + 1}, t < count, that
// sorts pairs by their smaller canonical position and takes that vertex as +.
MonomialTransform pairs_to_canonical(const std::vector<int>& labeling, int base, int count) {
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto low = [&](int t) { return std::min(labeling[base + 2 * t], labeling[base + 2 * t + 1]); };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return low(a) < low(b); });
  std::vector<int> perm(count);
  std::vector<std::int8_t> signs(count);
  for (int r = 0; r < count; ++r) {
    const int t = order[r];
    perm[t] = r;
    signs[t] = labeling[base + 2 * t] < labeling[base + 2 * t + 1] ? 1 : -1;
  }
  return MonomialTransform(perm, signs);
}

}  // namespace

WmCanon canonicalize_wm(const WeighingMatrix& w, bool with_d_certificate) {
  const IncidenceStructure d = incidence(w);
  const CanonicalForm f = canonical_form(paired_incidence_graph(d));
  const int n = w.order();
  const MonomialTransform q = pairs_to_canonical(f.labeling, 0, n);
  const MonomialTransform p = pairs_to_canonical(f.labeling, 2 * n, n);
  WmCanon out{f.certificate, {}, w.transformed(p, q), Witness{p, q}, f.automorphisms.order()};
  if (with_d_certificate) out.d_certificate = canonical_form(incidence_graph(d)).certificate;
  return out;
}

InvolutionReport fpf_involutions(const IncidenceStructure& d, std::uint64_t max_elements) {
  const int np = 2 * d.n;
  const CanonicalForm f = canonical_form(incidence_graph(d));
  std::vector<Permutation> gens;
  for (const auto& g : f.automorphisms.generators()) gens.emplace_back(g.begin(), g.begin() + np);
  const PermGroup aut(np, gens);
  InvolutionReport rep;
  rep.aut_order = aut.order();
  if (aut.order() > max_elements) return rep;
  rep.swept = true;
  std::set<Permutation> qualifying;
  aut.for_each_element([&](const Permutation& g) {
    for (int a = 0; a < np; ++a) {
      if (g[a] == a || g[g[a]] != a) return true;
    }
    if (satisfies_conditions(d, g)) qualifying.insert(g);
    return true;
  });
  std::set<Permutation> done;
  for (const auto& g : qualifying) {
    if (done.count(g)) continue;
    std::vector<Permutation> frontier{g};
    std::size_t size = 0;
    done.insert(g);
    while (!frontier.empty()) {
      Permutation x = std::move(frontier.back());
      frontier.pop_back();
      ++size;
      for (const auto& h : aut.generators()) {
        Permutation c = compose(compose(invert(h), x), h);
        if (done.insert(c).second) frontier.push_back(std::move(c));
      }
    }
    rep.class_representatives.push_back(g);
    rep.class_sizes.push_back(size);
  }
  rep.tau0_present = qualifying.count(d.tau0) == 1;
  rep.unique = rep.class_representatives.size() == 1;
  return rep;
}

namespace {

// Columns restricted to the assigned rows, as (support, negative) bit masks,
// normalized so that the first nonzero entry is positive.
std::uint64_t column_key(std::uint32_t supp, std::uint32_t neg) {
  if (supp != 0 && (neg & (supp & -supp))) neg ^= supp;
  return (static_cast<std::uint64_t>(supp) << 32) | neg;
}

}  // namespace

std::optional<Witness> monomial_backtrack(const WeighingMatrix& w1, const WeighingMatrix& w2, std::uint64_t node_limit) {
  const int n = w1.order();
  if (w2.order() != n || w2.weight() != w1.weight()) return std::nullopt;
  if (n > 32) throw InvalidArgument("backtracking supports orders up to 32");
  // Row order: rarest intersection-pattern signature first.
  std::vector<std::vector<int>> sig1(n), sig2(n);
  for (int i = 0; i < n; ++i) {
    sig1[i] = intersection_pattern(w1, i);
    sig2[i] = intersection_pattern(w2, i);
  }
  std::map<std::vector<int>, int> freq;
  for (const auto& s : sig1) ++freq[s];
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return freq[sig1[a]] < freq[sig1[b]]; });

  std::vector<int> target(n, -1);
  std::vector<std::int8_t> sign(n, 1);
  std::vector<bool> used(n, false);
  // Column vectors over assigned rows, stored per depth.
  std::vector<std::uint32_t> s1(n, 0), m1(n, 0), s2(n, 0), m2(n, 0);
  std::uint64_t nodes = 0;

  auto columns_match = [&]() {
    std::vector<std::uint64_t> a(n), b(n);
    for (int j = 0; j < n; ++j) {
      a[j] = column_key(s1[j], m1[j]);
      b[j] = column_key(s2[j], m2[j]);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  };

  std::optional<Witness> found;
  auto rec = [&](auto&& self, int depth) -> bool {
    if (++nodes > node_limit) throw BudgetExceeded("monomial backtracking node limit reached");
    if (depth == n) {
      // Columns are distinct up to sign, so the matching is forced.
      std::unordered_map<std::uint64_t, int> where;
      for (int j = 0; j < n; ++j) where[column_key(s2[j], m2[j])] = j;
      std::vector<int> perm(n);
      std::vector<std::int8_t> csign(n);
      for (int j = 0; j < n; ++j) {
        const std::uint64_t key = column_key(s1[j], m1[j]);
        const int t = where.at(key);
        perm[j] = t;
        csign[j] = (static_cast<std::uint32_t>(key) == m1[j]) == (static_cast<std::uint32_t>(column_key(s2[t], m2[t])) == m2[t]) ? 1 : -1;
      }
      std::vector<int> rperm(n);
      std::vector<std::int8_t> rsign(n);
      for (int i = 0; i < n; ++i) {
        rperm[i] = target[i];
        rsign[i] = sign[i];
      }
      Witness x{MonomialTransform(rperm, rsign), MonomialTransform(perm, csign)};
      if (!verify_witness(w1, w2, x)) throw std::logic_error("backtracking produced an invalid witness");
      found = std::move(x);
      return true;
    }
    const int i = order[depth];
    const std::uint32_t bit = std::uint32_t{1} << depth;
    for (int t = 0; t < n; ++t) {
      if (used[t] || sig2[t] != sig1[i]) continue;
      for (std::int8_t s : {1, -1}) {
        for (int j = 0; j < n; ++j) {
          const int a = s * w1.at(i, j);
          if (a) {
            s1[j] |= bit;
            if (a < 0) m1[j] |= bit;
          }
          const int b = w2.at(t, j);
          if (b) {
            s2[j] |= bit;
            if (b < 0) m2[j] |= bit;
          }
        }
        if (columns_match()) {
          used[t] = true;
          target[i] = t;
          sign[i] = s;
          if (self(self, depth + 1)) return true;
          used[t] = false;
        }
        for (int j = 0; j < n; ++j) {
          s1[j] &= ~bit;
          m1[j] &= ~bit;
          s2[j] &= ~bit;
          m2[j] &= ~bit;
        }
      }
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

EquivalenceResult are_equivalent(const WeighingMatrix& w1, const WeighingMatrix& w2, const EquivalenceOptions& opt) {
  EquivalenceResult res;
  if (w1.order() != w2.order() || w1.weight() != w2.weight()) {
    res.reason = "different order or weight";
    return res;
  }
  if (g_distribution(w1) != g_distribution(w2)) {
    res.reason = "g-distributions differ";
    return res;
  }
  if (intersection_profile(w1) != intersection_profile(w2)) {
    res.reason = "intersection patterns differ";
    return res;
  }
  if (opt.check_involutions) {
    const auto inv = fpf_involutions(incidence(w1));
    if (inv.swept) res.unique_involution = inv.unique;
  }
  const WmCanon c1 = canonicalize_wm(w1, true);
  const WmCanon c2 = canonicalize_wm(w2, true);
  if (c1.d_certificate != c2.d_certificate) {
    res.decided_by = EquivalenceStep::kIncidence;
    res.reason = "incidence structures are not isomorphic";
  } else if (c1.certificate != c2.certificate) {
    res.decided_by = EquivalenceStep::kPaired;
    res.reason = "no isomorphism of incidence structures commutes with the point pairing";
  } else {
    Witness x{c1.to_canonical.rows.then(c2.to_canonical.rows.inverse()),
              c1.to_canonical.cols.then(c2.to_canonical.cols.inverse())};
    if (verify_witness(w1, w2, x)) {
      res.equivalent = true;
      res.decided_by = EquivalenceStep::kPaired;
      res.witness = std::move(x);
      res.reason = "equal paired certificates";
    } else {
      res.decided_by = EquivalenceStep::kBacktrack;
      res.witness = monomial_backtrack(w1, w2);
      res.equivalent = res.witness.has_value();
      res.reason = "decided by monomial backtracking";
    }
  }
  if (opt.cross_check_backtrack) {
    const bool direct = monomial_backtrack(w1, w2).has_value();
    if (direct != res.equivalent) throw std::logic_error("equivalence cross-check disagrees");
  }
  return res;
}

std::vector<int> code_moduli(int k) {
  std::vector<int> out;
  for (int m : {3, 4, 5, 7})
    if (k % m == 0) out.push_back(m);
  return out;
}

WmInvariants compute_invariants(const WeighingMatrix& w, bool with_codes) {
  WmInvariants inv;
  inv.g_distribution = g_distribution(w);
  inv.intersection_number = intersection_number(w);
  inv.intersection_profile = intersection_profile(w);
  for (int m : code_moduli(w.weight())) {
    const Code c = induced_code(w, m);
    inv.self_orthogonal[m] = is_self_orthogonal(c);
    inv.self_dual[m] = is_self_dual(c);
    if (with_codes) inv.code_certificates[m] = certificate_digest(canonicalize_code(c).certificate);
  }
  return inv;
}

EquivalenceClassSet dedup(const std::vector<WeighingMatrix>& ws, const std::vector<std::string>& provenance,
                          bool with_code_invariants) {
  EquivalenceClassSet out;
  if (ws.empty()) return out;
  out.n = ws[0].order();
  out.k = ws[0].weight();
  if (!provenance.empty() && provenance.size() != ws.size()) throw InvalidArgument("provenance size mismatch");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (ws[i].order() != out.n || ws[i].weight() != out.k) throw InvalidArgument("dedup needs a common (n, k)");
    WmCanon c = canonicalize_wm(ws[i]);
    auto [it, fresh] = index.emplace(c.certificate, out.classes.size());
    if (fresh) {
      out.classes.push_back(WmClass{c.canonical, c.certificate, certificate_digest(c.certificate), {}, c.aut_order, {}, 0});
    }
    WmClass& cl = out.classes[it->second];
    ++cl.members;
    if (!provenance.empty()) cl.provenance.push_back(provenance[i]);
  }
  for (auto& cl : out.classes) {
    std::sort(cl.provenance.begin(), cl.provenance.end());
    cl.provenance.erase(std::unique(cl.provenance.begin(), cl.provenance.end()), cl.provenance.end());
    cl.invariants = compute_invariants(cl.representative, with_code_invariants);
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const WmClass& a, const WmClass& b) { return a.certificate < b.certificate; });
  return out;
}

namespace {

struct Candidate {
  std::uint32_t supp;
  std::uint32_t neg;
};

int signed_dot(const Candidate& a, const Candidate& b) {
  const std::uint32_t common = a.supp & b.supp;
  return std::popcount(common) - 2 * std::popcount((a.neg ^ b.neg) & common);
}

std::vector<int> candidate_row(const Candidate& c, int n) {
  std::vector<int> r(n, 0);
  for (int j = 0; j < n; ++j) {
    if (c.supp >> j & 1) r[j] = (c.neg >> j & 1) ? -1 : 1;
  }
  return r;
}

Candidate to_candidate(const std::vector<int>& r) {
  Candidate c{0, 0};
  for (int j = 0; j < static_cast<int>(r.size()); ++j) {
    if (r[j] != 0) c.supp |= 1u << j;
    if (r[j] < 0) c.neg |= 1u << j;
  }
  // First nonzero entry positive.
  if (c.neg & (c.supp & -c.supp)) c.neg ^= c.supp;
  return c;
}

std::uint64_t candidate_key(const Candidate& c) { return (static_cast<std::uint64_t>(c.supp) << 32) | c.neg; }

struct Partial {
  std::vector<Candidate> rows;
};

}  // namespace

EquivalenceClassSet oracle_classify(int n, int k, const OracleOptions& opt) {
  return oracle_classify(n, k, opt, nullptr);
}

EquivalenceClassSet oracle_classify(int n, int k, const OracleOptions& opt, std::vector<std::size_t>* level_sizes) {
  if (n < 1 || k < 1 || k > n) throw InvalidArgument("need 1 <= k <= n");
  if (n > opt.max_order || k > opt.max_weight) {
    throw GuardExceeded("oracle guard: n <= " + std::to_string(opt.max_order) + ", k <= " + std::to_string(opt.max_weight));
  }
  if (n > 30) throw GuardExceeded("oracle supports n <= 30");
  if (level_sizes) level_sizes->clear();
  EquivalenceClassSet out;
  out.n = n;
  out.k = k;
  if (!existence_screen(n, k).possible) return out;

  // All rows of weight k with first nonzero entry positive.
  std::vector<Candidate> all;
  for (std::uint32_t supp = 0; supp < (1u << n); ++supp) {
    if (std::popcount(supp) != k) continue;
    const std::uint32_t low = supp & -supp;
    for (std::uint32_t neg = supp; ; neg = (neg - 1) & supp) {
      if (!(neg & low)) all.push_back({supp, neg});
      if (neg == 0) break;
    }
  }

  // Up to row/column symmetry the first row is unique.
  std::vector<Partial> level{Partial{{to_candidate([&] {
    std::vector<int> r(n, 0);
    for (int j = 0; j < k; ++j) r[j] = 1;
    return r;
  }())}}};
  if (level_sizes) level_sizes->push_back(1);

  for (int r = 1; r < n; ++r) {
    std::map<std::string, Partial> next;
    for (const Partial& part : level) {
      std::vector<int> colcount(n, 0);
      for (const auto& row : part.rows)
        for (int j = 0; j < n; ++j) colcount[j] += row.supp >> j & 1;
      const int rows_after = r + 1;
      std::vector<Candidate> cands;
      for (const auto& c : all) {
        bool ok = true;
        for (const auto& row : part.rows) {
          if (signed_dot(c, row) != 0) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        for (int j = 0; j < n && ok; ++j) {
          const int cj = colcount[j] + static_cast<int>(c.supp >> j & 1);
          ok = cj <= k && k - cj <= n - rows_after;
        }
        if (ok) cands.push_back(c);
      }
      if (cands.empty()) continue;
      // Orbits of Aut(partial) on the candidate rows.
      std::vector<std::vector<int>> prow;
      for (const auto& row : part.rows) prow.push_back(candidate_row(row, n));
      const CanonicalForm f = canonical_form(paired_incidence_graph(incidence_rows(n, prow)));
      std::unordered_map<std::uint64_t, std::size_t> where;
      for (std::size_t i = 0; i < cands.size(); ++i) where[candidate_key(cands[i])] = i;
      std::vector<std::size_t> parent(cands.size());
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (const auto& g : f.automorphisms.generators()) {
        const MonomialTransform t = signed_to_monomial(Permutation(g.begin(), g.begin() + 2 * n));
        for (std::size_t i = 0; i < cands.size(); ++i) {
          const auto img = to_candidate(t.apply(candidate_row(cands[i], n)));
          const std::size_t a = find(i), b = find(where.at(candidate_key(img)));
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      }
      for (std::size_t i = 0; i < cands.size(); ++i) {
        if (find(i) != i) continue;
        std::vector<std::vector<int>> rows = prow;
        rows.push_back(candidate_row(cands[i], n));
        const CanonicalForm cf = canonical_form(paired_incidence_graph(incidence_rows(n, rows)));
        if (next.count(cf.certificate)) continue;
        Partial p = part;
        p.rows.push_back(cands[i]);
        next.emplace(cf.certificate, std::move(p));
        if (next.size() > opt.max_partials) throw GuardExceeded("oracle: too many partial matrices");
      }
    }
    level.clear();
    for (auto& [cert, p] : next) level.push_back(std::move(p));
    if (level_sizes) level_sizes->push_back(level.size());
  }
  std::vector<WeighingMatrix> full;
  for (const auto& p : level) {
    std::vector<std::vector<int>> rows;
    for (const auto& row : p.rows) rows.push_back(candidate_row(row, n));
    full.push_back(WeighingMatrix::verify(rows));
  }
  std::vector<std::string> prov(full.size(), "oracle");
  return dedup(full, prov);
}

}  // namespace wmkit
