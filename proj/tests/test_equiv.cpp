#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "doctest.h"
#include "wmkit/equiv.hpp"
#include "wmkit/error.hpp"

using namespace wmkit;

namespace {

WeighingMatrix fixture(const std::string& name) {
  auto ws = read_matrix_file(std::string(WMKIT_FIXTURES) + "/" + name + ".wm");
  REQUIRE(ws.size() == 1);
  return ws[0];
}

MonomialTransform random_transform(std::mt19937& rng, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::int8_t> signs(n);
  for (auto& s : signs) s = (rng() & 1) ? 1 : -1;
  return MonomialTransform(perm, signs);
}

std::vector<MonomialTransform> all_monomials(int n) {
  std::vector<MonomialTransform> out;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<std::int8_t> s(n);
      for (int i = 0; i < n; ++i) s[i] = (mask >> i & 1) ? -1 : 1;
      out.emplace_back(perm, s);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<int> normalized(std::vector<int> r) {
  for (int x : r) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : r) y = -y;
    break;
  }
  return r;
}

// Equivalent iff some column transform Q makes the rows of W1 Q agree with
// the rows of W2 up to order and sign.
bool brute_equivalent(const WeighingMatrix& a, const WeighingMatrix& b, const std::vector<MonomialTransform>& qs) {
  if (a.order() != b.order() || a.weight() != b.weight()) return false;
  const int n = a.order();
  std::vector<std::vector<int>> target;
  for (int i = 0; i < n; ++i) target.push_back(normalized(b.row(i)));
  std::sort(target.begin(), target.end());
  for (const auto& q : qs) {
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < n; ++i) rows.push_back(normalized(q.apply(a.row(i))));
    std::sort(rows.begin(), rows.end());
    if (rows == target) return true;
  }
  return false;
}

// Every W(n, k) whose rows are normalized and strictly increasing.
std::vector<WeighingMatrix> all_sorted_matrices(int n, int k) {
  std::vector<std::vector<int>> cand;
  std::vector<int> r(n);
  std::function<void(int)> gen = [&](int j) {
    if (j == n) {
      int w = 0;
      for (int x : r) w += x != 0;
      if (w == k && normalized(r) == r) cand.push_back(r);
      return;
    }
    for (int x : {-1, 0, 1}) {
      r[j] = x;
      gen(j + 1);
    }
  };
  gen(0);
  std::sort(cand.begin(), cand.end());
  std::vector<WeighingMatrix> out;
  std::vector<int> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(chosen.size()) == n) {
      std::vector<std::vector<int>> rows;
      for (int c : chosen) rows.push_back(cand[c]);
      out.push_back(WeighingMatrix::verify(rows));
      return;
    }
    for (std::size_t c = from; c < cand.size(); ++c) {
      bool ok = true;
      for (int d : chosen) {
        int s = 0;
        for (int j = 0; j < n; ++j) s += cand[c][j] * cand[d][j];
        if (s != 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(static_cast<int>(c));
      rec(c + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<WeighingMatrix> brute_classes(const std::vector<WeighingMatrix>& ws, const std::vector<MonomialTransform>& qs) {
  std::vector<WeighingMatrix> reps;
  for (const auto& w : ws) {
    bool seen = false;
    for (const auto& r : reps) {
      if (brute_equivalent(w, r, qs)) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(w);
  }
  return reps;
}

}  // namespace

TEST_CASE("incidence structure layout") {
  const auto w = fixture("w_12_5");
  const auto d = incidence(w);
  CHECK(d.n == 12);
  REQUIRE(d.blocks.size() == 24);
  for (const auto& b : d.blocks) CHECK(b.size() == 5);
  // B_i^- is the negation of B_i^+.
  for (int i = 0; i < 12; ++i) {
    std::vector<int> neg;
    for (int a : d.blocks[2 * i]) neg.push_back(a ^ 1);
    std::sort(neg.begin(), neg.end());
    CHECK(neg == d.blocks[2 * i + 1]);
  }
  CHECK(satisfies_conditions(d, d.tau0));
  // A non-involution and an involution with fixed points are rejected.
  auto bad = d.tau0;
  std::swap(bad[0], bad[2]);
  CHECK_FALSE(satisfies_conditions(d, bad));
  CHECK_FALSE(satisfies_conditions(d, identity_permutation(24)));
}

TEST_CASE("random transforms are recognized with verified witnesses") {
  std::mt19937 rng(11);
  for (const char* name : {"w_12_5", "w_12_6", "w_12_10", "w_14_5", "w_14_8"}) {
    const auto w = fixture(name);
    const auto base = canonicalize_wm(w);
    CHECK(w.transformed(base.to_canonical.rows, base.to_canonical.cols) == base.canonical);
    for (int t = 0; t < 5; ++t) {
      const auto v = w.transformed(random_transform(rng, w.order()), random_transform(rng, w.order()));
      const auto c = canonicalize_wm(v);
      CHECK(c.certificate == base.certificate);
      CHECK(c.canonical == base.canonical);
      CHECK(c.aut_order == base.aut_order);
      const auto res = are_equivalent(w, v);
      CHECK(res.equivalent);
      REQUIRE(res.witness);
      CHECK(verify_witness(w, v, *res.witness));
      const auto bt = monomial_backtrack(v, w);
      REQUIRE(bt);
      CHECK(verify_witness(v, w, *bt));
    }
  }
}

TEST_CASE("witness check rejects a wrong pair") {
  const auto w = fixture("w_12_6");
  std::mt19937 rng(3);
  const auto p = random_transform(rng, 12);
  const auto q = random_transform(rng, 12);
  const auto v = w.transformed(p, q);
  CHECK(verify_witness(w, v, Witness{p, q}));
  std::vector<std::int8_t> s = p.signs();
  s[0] = static_cast<std::int8_t>(-s[0]);
  CHECK_FALSE(verify_witness(w, v, Witness{MonomialTransform(p.perm(), s), q}));
}

TEST_CASE("automorphism order agrees with a sweep over all pairs") {
  for (int k = 1; k <= 4; ++k) {
    const auto qs = all_monomials(4);
    for (const auto& w : all_sorted_matrices(4, k)) {
      long long count = 0;
      for (const auto& p : qs)
        for (const auto& q : qs) count += w.transformed(p, q) == w;
      CHECK(canonicalize_wm(w).aut_order == count);
      break;
    }
  }
}

TEST_CASE("oracle and dedup agree with brute-force classes") {
  for (int n = 2; n <= 5; ++n) {
    const auto qs = all_monomials(n);
    for (int k = 1; k <= n; ++k) {
      const auto ws = all_sorted_matrices(n, k);
      const auto reps = brute_classes(ws, qs);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(dedup(ws, {}, false).classes.size() == reps.size());
      CHECK(oracle_classify(n, k).classes.size() == reps.size());
      // Pairwise decisions match the brute-force relation.
      for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j)
          CHECK(are_equivalent(reps[i], reps[j], {false, true}).equivalent == (i == j));
    }
  }
}

TEST_CASE("transpose decisions are consistent with backtracking") {
  for (const char* name : {"w_12_5", "w_12_6", "w_12_10", "w_14_5", "w_14_8"}) {
    const auto w = fixture(name);
    const auto res = are_equivalent(w, w.transpose(), {true, true});
    if (res.equivalent) CHECK(verify_witness(w, w.transpose(), *res.witness));
    CHECK(!res.reason.empty());
  }
}

TEST_CASE("fixed-point-free involutions") {
  const auto w = fixture("w_12_5");
  const auto rep = fpf_involutions(incidence(w));
  REQUIRE(rep.swept);
  CHECK(rep.tau0_present);
  CHECK(!rep.class_representatives.empty());
  // Every representative satisfies both conditions.
  for (const auto& t : rep.class_representatives) CHECK(satisfies_conditions(incidence(w), t));
}

TEST_CASE("invariants") {
  const auto w = fixture("w_12_6");
  CHECK(code_moduli(6) == std::vector<int>{3});
  CHECK(code_moduli(12) == std::vector<int>{3, 4});
  const auto inv = compute_invariants(w);
  CHECK(inv.self_dual.at(3));
  CHECK(inv.code_certificates.count(3) == 1);
  std::mt19937 rng(5);
  const auto v = w.transformed(random_transform(rng, 12), random_transform(rng, 12));
  CHECK(compute_invariants(v) == inv);
}

TEST_CASE("oracle guard") {
  CHECK_THROWS_AS(oracle_classify(14, 5), GuardExceeded);
  CHECK(oracle_classify(5, 3).classes.empty());
}

TEST_CASE("automorphism group of D(W) does not depend on labels") {
  std::mt19937 rng(17);
  for (const char* name : {"w_12_5", "w_12_6", "w_14_8"}) {
    const auto g = incidence_graph(incidence(fixture(name)));
    const BigInt base = canonical_form(g).automorphisms.order();
    const int half = g.size() / 2;
    for (int t = 0; t < 10; ++t) {
      std::vector<int> p(g.size());
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.begin() + half, rng);
      std::shuffle(p.begin() + half, p.end(), rng);
      CHECK(canonical_form(g.relabeled(p)).automorphisms.order() == base);
    }
  }
}
