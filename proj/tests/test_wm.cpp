#include <random>
#include <sstream>

#include "doctest.h"
#include "wmkit/error.hpp"
#include "wmkit/wm.hpp"

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

// g-distribution straight from the entry formula.
std::vector<long long> g_oracle(const WeighingMatrix& w) {
  const int n = w.order();
  std::vector<long long> d(n + 1, 0);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int u = 0; u < n; ++u) {
        if (s == t && t == u) continue;
        int g = 0;
        for (int j = 0; j < n; ++j) g += w.at(s, j) * w.at(s, j) * w.at(t, j) * w.at(t, j) * w.at(u, j) * w.at(u, j);
        ++d[g];
      }
  return d;
}

}  // namespace

TEST_CASE("fixtures verify with the expected weights") {
  const std::vector<std::pair<std::string, int>> expected{
      {"w_12_5", 5}, {"w_14_5", 5}, {"w_12_6", 6}, {"w_12_10", 10}, {"w_14_8", 8}};
  for (const auto& [name, k] : expected) {
    const auto w = fixture(name);
    CHECK(w.weight() == k);
    CHECK(WeighingMatrix::verify(w.transpose().rows()).weight() == k);
    CHECK(WeighingMatrix::verify(w.negate().rows()).weight() == k);
    // Elementary divisor product equals k^(n/2).
    BigInt prod = 1;
    for (const auto& d : elementary_divisors(w.to_int_matrix())) prod *= d;
    BigInt expect = 1;
    for (int i = 0; i < w.order() / 2; ++i) expect *= k;
    CHECK(prod == expect);
  }
  CHECK(WeighingMatrix::identity(4).weight() == 1);
}

TEST_CASE("verify rejects bad input") {
  auto rows = fixture("w_12_5").rows();
  for (int j = 0; j < 12; ++j) {
    if (rows[0][j] != 0) {
      rows[0][j] = -rows[0][j];
      break;
    }
  }
  CHECK_THROWS_AS(WeighingMatrix::verify(rows), InvalidArgument);
  CHECK_THROWS_AS(WeighingMatrix::verify({{1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(WeighingMatrix::verify({{2}}), InvalidArgument);
  std::stringstream wrong_weight("order 2\nweight 2\n1 0\n0 1\n");
  CHECK_THROWS_AS(read_matrices(wrong_weight), InvalidArgument);
}

TEST_CASE("existence screen") {
  CHECK_FALSE(existence_screen(5, 4).possible);
  CHECK_FALSE(existence_screen(6, 3).possible);
  CHECK(existence_screen(13, 9).possible);
  CHECK(existence_screen(12, 6).possible);
  CHECK_FALSE(existence_screen(6, 6).possible);
  CHECK(existence_screen(6, 5).possible);
}

TEST_CASE("element-wise invariants") {
  const auto w12_6 = fixture("w_12_6");
  CHECK(g_distribution(w12_6) == std::vector<long long>{516, 360, 540, 120, 180, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(g_distribution(w12_6) == g_oracle(w12_6));
  CHECK(g_distribution(w12_6.transpose()) == g_oracle(w12_6.transpose()));
  const auto i3 = g_distribution(WeighingMatrix::identity(3));
  CHECK(i3 == std::vector<long long>{24, 0, 0, 0});

  const auto w14_8 = fixture("w_14_8");
  for (const auto& m : {w14_8, w14_8.transpose()}) {
    for (int i = 0; i < 14; ++i) CHECK(intersection_pattern(m, i) == std::vector<int>{0, 0, 11, 2, 0, 0, 0, 0});
  }
  CHECK(intersection_number(w14_8) == 6);
  CHECK(intersection_number(WeighingMatrix::identity(5)) == 0);

  std::mt19937 rng(8);
  for (const char* name : {"w_12_5", "w_12_6", "w_14_8"}) {
    const auto w = fixture(name);
    for (int t = 0; t < 10; ++t) {
      const auto v = w.transformed(random_transform(rng, w.order()), random_transform(rng, w.order()));
      CHECK(v.weight() == w.weight());
      CHECK(g_distribution(v) == g_distribution(w));
      CHECK(intersection_profile(v) == intersection_profile(w));
    }
  }
}

TEST_CASE("induced codes") {
  const auto c3 = induced_code(fixture("w_12_6"), 3);
  CHECK(is_self_dual(c3));
  std::vector<Row> reduced;
  for (const auto& r : fixture("w_12_6").rows()) {
    Row x;
    for (int v : r) x.push_back(RingTag::of(3).reduce(v));
    reduced.push_back(x);
  }
  CHECK(rank_mod(RingTag::of(3), reduced, 12).free_rank == 6);
  CHECK(weight_distribution(c3)[6] == 264);
  CHECK(is_self_dual(induced_code(fixture("w_12_10"), 5)));
  CHECK(is_self_orthogonal(induced_code(fixture("w_14_8"), 4)));
  CHECK(is_self_dual(induced_code(fixture("w_12_5"), 5)));
  CHECK(is_self_dual(induced_code(fixture("w_14_5"), 5)));
}

TEST_CASE("appended code walk matches a full sweep") {
  for (const char* name : {"w_12_6", "w_12_5"}) {
    const auto w = fixture(name);
    const int m = 3;
    std::vector<Row> gens;
    for (int i = 0; i < w.order(); ++i) {
      Row r(2 * w.order(), 0);
      r[i] = 1;
      for (int j = 0; j < w.order(); ++j) r[w.order() + j] = RingTag::of(m).reduce(w.at(i, j));
      gens.push_back(r);
    }
    const auto full = weight_distribution(Code(RingTag::of(m), 2 * w.order(), gens));
    const auto walk = appended_code_weights(w, m, 2 * w.order());
    CHECK(walk == full);
    CHECK(appended_code_weight_count(w, m, 6) == full[6]);
  }
  CHECK(appended_code_weight_count(WeighingMatrix::identity(3), 4, 0) == 1);
  CHECK_THROWS_AS(appended_code_weights(fixture("w_12_10"), 5, 24, 1000), GuardExceeded);
}

TEST_CASE("constructions") {
  const auto i5 = direct_sum(WeighingMatrix::identity(2), WeighingMatrix::identity(3));
  CHECK(i5 == WeighingMatrix::identity(5));
  CHECK_THROWS_AS(direct_sum(fixture("w_12_5"), fixture("w_12_6")), InvalidArgument);
  const auto d = direct_sum(fixture("w_12_5"), fixture("w_14_5"));
  CHECK(d.order() == 26);
  CHECK(d.weight() == 5);

  const auto w = two_circulant({1, 0, 0, 0, 0, 0, 0}, {-1, 1, 1, 0, 1, 0, 0}, TwoCirculantVariant::kW1);
  CHECK(w.order() == 14);
  CHECK(w.weight() == 5);
  const auto w2 = two_circulant({1}, {0}, TwoCirculantVariant::kW1);
  CHECK(w2 == WeighingMatrix::identity(2));
  CHECK_THROWS_AS(two_circulant({1, 1}, {0, 0}, TwoCirculantVariant::kW1), InvalidArgument);

  for (const auto& [a1, a2] : circulant_pairs(6, 5)) {
    CHECK(two_circulant(a1, a2, TwoCirculantVariant::kW1).weight() == 5);
    CHECK(two_circulant(a1, a2, TwoCirculantVariant::kW2).weight() == 5);
  }
  CHECK_FALSE(circulant_pairs(6, 5).empty());
  CHECK(circulant_pairs(7, 5).size() > 0);
}

TEST_CASE("matrix file round trip") {
  std::stringstream ss;
  write_matrix(ss, fixture("w_12_6"), {"round trip"});
  ss << "\n";
  write_matrix(ss, WeighingMatrix::identity(3));
  const auto back = read_matrices(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == fixture("w_12_6"));
  CHECK(back[1] == WeighingMatrix::identity(3));
}
