// Acceptance run: one PASS / FAIL / SKIP line per criterion, exit status 1 if
// anything failed.
//
// Optional inputs:
//   WMKIT_DATA  directory with code packs:
//                 z4_12/    Z_4 self-dual codes of length 12
//                 f5_12/    F_5 maximal self-orthogonal codes of length 12
//                 f7_12/    F_7 maximal self-orthogonal codes of length 12
//                 t16/      ternary self-dual codes of length 16
//                 t20/      ternary self-dual codes of length 20
//   WMKIT_LONG  set to 1 to run the long cells (needs WMKIT_DATA with
//               t16/ and t20/, and t24/ for order 20)

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "wmkit/code_encoding.hpp"
#include "wmkit/codeclass.hpp"
#include "wmkit/equiv.hpp"
#include "wmkit/error.hpp"
#include "wmkit/pipeline.hpp"

using namespace wmkit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  enum Kind { kPass, kFail, kSkip, kPartial } kind = kPass;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) kind = kFail;
    notes.push_back((ok ? "ok: " : "MISMATCH: ") + what);
  }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.kind = Outcome::kFail;
    o.notes.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const char* tag = o.kind == Outcome::kPass      ? "PASS"
                    : o.kind == Outcome::kFail    ? "FAIL"
                    : o.kind == Outcome::kPartial ? "PARTIAL"
                                                  : "SKIP";
  if (o.kind == Outcome::kFail) ++failures;
  std::ostringstream line;
  line.precision(1);
  line << std::fixed << tag << " " << id << " " << title << " (" << secs << " s)";
  std::cout << line.str() << "\n";
  for (const auto& n : o.notes) std::cout << "    " << n << "\n";
  std::cout.flush();
}

std::string str(const std::vector<long long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

std::string str(const std::vector<int>& v) { return str(std::vector<long long>(v.begin(), v.end())); }

WeighingMatrix fixture(const std::string& name) { return read_matrix_file(std::string(WMKIT_FIXTURES) + "/" + name + ".wm").at(0); }

std::optional<fs::path> data_dir(const std::string& sub) {
  const char* root = std::getenv("WMKIT_DATA");
  if (!root) return std::nullopt;
  const fs::path p = fs::path(root) / sub;
  if (!fs::is_directory(p)) return std::nullopt;
  return p;
}

WeighingMatrix relabel(const WeighingMatrix& w, std::mt19937_64& rng) {
  auto random_monomial = [&](int n) {
    std::vector<int> perm(n);
    std::vector<std::int8_t> signs(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& s : signs) s = rng() & 1 ? 1 : -1;
    return MonomialTransform(perm, signs);
  };
  return w.transformed(random_monomial(w.order()), random_monomial(w.order()));
}

ClassificationReport run_pipeline(int n, int k, int threads = 0, std::vector<std::string> codes = {},
                                  bool allow_long = false) {
  PipelineJob job;
  job.n = n;
  job.k = k;
  job.search.threads = threads;
  job.code_paths = std::move(codes);
  job.allow_long = allow_long;
  return classify(job);
}

// Pipeline reports computed once and shared by several criteria.
std::map<std::pair<int, int>, ClassificationReport> reports;

const ClassificationReport& pipeline(int n, int k) {
  auto it = reports.find({n, k});
  if (it == reports.end()) it = reports.emplace(std::make_pair(n, k), run_pipeline(n, k)).first;
  return it->second;
}

void check_count(Outcome& o, const std::string& what, std::size_t got, std::size_t want) {
  o.expect(got == want, what + " = " + std::to_string(got) + " (expected " + std::to_string(want) + ")");
}

}  // namespace

int main() {
  run(1, "fixture matrices verify; transposes equivalent with re-verified witnesses", [](Outcome& o) {
    const std::vector<std::pair<std::string, int>> fixtures{
        {"w_12_5", 5}, {"w_14_5", 5}, {"w_12_6", 6}, {"w_12_10", 10}, {"w_14_8", 8}};
    for (const auto& [name, k] : fixtures) {
      const auto w = fixture(name);  // parsing runs the W W^T = kI check
      o.expect(w.weight() == k, name + " verifies with weight " + std::to_string(w.weight()));
    }
    for (const auto* name : {"w_12_6", "w_12_10", "w_14_8"}) {
      const auto w = fixture(name);
      const auto t = w.transpose();
      const auto res = are_equivalent(w, t);
      const bool witnessed = res.witness && verify_witness(w, t, *res.witness);
      o.expect(res.equivalent && witnessed, std::string(name) + " equivalent to its transpose, witness re-verified");
    }
  });

  run(2, "invariant reproduction", [](Outcome& o) {
    const auto g = g_distribution(fixture("w_12_6"));
    const std::vector<long long> head(g.begin(), g.begin() + 7);
    const bool tail_zero = std::all_of(g.begin() + 7, g.end(), [](long long x) { return x == 0; });
    o.expect(head == std::vector<long long>{516, 360, 540, 120, 180, 0, 0} && tail_zero,
             "g-distribution of W(12,6) = " + str(head));
    const auto w14 = fixture("w_14_8");
    for (const bool transposed : {false, true}) {
      const auto m = transposed ? w14.transpose() : w14;
      std::set<std::vector<int>> patterns;
      for (int i = 0; i < m.order(); ++i) patterns.insert(intersection_pattern(m, i));
      // pattern[l] counts rows meeting in 2l places; the expected vector starts at 2 places
      const bool ok = patterns.size() == 1 && (*patterns.begin())[0] == 0 &&
                      std::vector<int>(patterns.begin()->begin() + 1, patterns.begin()->begin() + 5) ==
                          std::vector<int>{0, 11, 2, 0};
      o.expect(ok, std::string(transposed ? "W(14,8)^T" : "W(14,8)") + " intersection pattern " +
                       str(*patterns.begin()) + " on every row");
    }
    const long long d8 = appended_code_weight_count(fixture("w_12_10"), 5, 8);
    o.expect(d8 == 3792, "weight-8 words of D_5(W(12,10)) = " + std::to_string(d8) + " (expected 3792)");
  });

  run(3, "ternary maximal self-orthogonal codes, lengths 3..12", [](Outcome& o) {
    const std::vector<std::size_t> want{1, 1, 1, 2, 1, 1, 2, 5, 3, 3};
    std::vector<std::size_t> got;
    std::map<int, CodeClassSet> by_length;
    for (int n = 3; n <= 12; ++n) {
      by_length[n] = classify_mso_augmentation(3, n);
      got.push_back(by_length[n].classes.size());
    }
    o.expect(got == want, "augmentation counts " + str(std::vector<long long>(got.begin(), got.end())));
    std::vector<Code> parents;
    for (const auto& c : by_length[12].classes) parents.push_back(c.code);
    for (int n = 9; n <= 11; ++n) {
      const auto sub = classify_mso_subtraction(parents, n);
      std::set<std::string> a, b;
      for (const auto& c : sub.classes) a.insert(c.certificate);
      for (const auto& c : by_length[n].classes) b.insert(c.certificate);
      o.expect(a == b, "subtraction to length " + std::to_string(n) + " gives " + std::to_string(a.size()) +
                           " classes, same as augmentation");
    }
    for (int n = 3; n <= 6; ++n) {
      const auto m = mass_check(by_length[n]);
      o.expect(m.pass && m.n0_brute_forced,
               "mass formula at length " + std::to_string(n) + ": " + m.sum.str() + " = " + m.n0.str());
    }
  });

  run(4, "weight-6 words of the ternary self-dual codes of length 12", [](Outcome& o) {
    std::multiset<long long> counts;
    for (const auto& c : classify_mso_augmentation(3, 12).classes) counts.insert(weight_distribution(c.code)[6]);
    o.expect(counts == std::multiset<long long>{192, 240, 264},
             "counts " + str(std::vector<long long>(counts.begin(), counts.end())));
  });

  run(5, "pipeline (12,6): 8 classes split 5/2/1 by source code", [](Outcome& o) {
    const auto& r = pipeline(12, 6);
    check_count(o, "classes", r.classes.classes.size(), 8);
    // Name source codes by their number of weight-6 words.
    std::map<std::string, long long> words;
    for (const auto& c : auto_codes(3, 12)) {
      words[certificate_digest(canonicalize_code(c).certificate)] = weight_distribution(c)[6];
    }
    std::map<long long, int> split;
    for (const auto& c : r.classes.classes) {
      o.expect(c.provenance.size() == 1, c.digest + " comes from a single code");
      ++split[words.at(c.provenance.at(0))];
    }
    o.expect(split[264] == 5 && split[240] == 2 && split[192] == 1,
             "split 264/240/192 words = " + std::to_string(split[264]) + "/" + std::to_string(split[240]) + "/" +
                 std::to_string(split[192]));
    bool self_dual_check = true;
    for (const auto& a : r.class_audits) self_dual_check = self_dual_check && a.self_dual_check;
    o.expect(self_dual_check, "self-duality audit holds for every class");
  });

  run(6, "pipeline (12,9): 4 classes", [](Outcome& o) { check_count(o, "classes", pipeline(12, 9).classes.classes.size(), 4); });

  run(7, "oracle counts", [](Outcome& o) {
    const std::vector<std::tuple<int, int, std::size_t>> cells{{6, 5, 1}, {8, 5, 1}, {10, 5, 1}, {12, 5, 3}, {12, 4, 5}};
    for (const auto& [n, k, want] : cells) {
      check_count(o, "oracle (" + std::to_string(n) + "," + std::to_string(k) + ")", oracle_classify(n, k).classes.size(),
                  want);
    }
    if (const auto dir = data_dir("f5_12")) {
      const auto r = run_pipeline(12, 5, 0, {dir->string()});
      std::set<std::string> a, b;
      for (const auto& c : r.classes.classes) a.insert(c.certificate);
      for (const auto& c : oracle_classify(12, 5).classes) b.insert(c.certificate);
      o.expect(a == b, "(12,5) pipeline classes from F_5 codes equal the oracle classes");
    } else {
      o.notes.push_back("not run: (12,5) pipeline comparison needs F_5 length-12 codes (WMKIT_DATA/f5_12)");
    }
  });

  run(8, "existence screens reject (5,4) and (6,3)", [](Outcome& o) {
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{5, 4}, {6, 3}}) {
      const auto s = existence_screen(n, k);
      o.expect(!s.possible, "(" + std::to_string(n) + "," + std::to_string(k) + ") rejected: " + s.reason);
    }
  });

  run(9, "cells that need external code data", [](Outcome& o) {
    struct Cell {
      int n, k;
      std::string pack;
      std::size_t want;
    };
    const std::vector<Cell> cells{{12, 8, "z4_12", 7}, {13, 9, "t16", 8}, {12, 10, "f5_12", 5}, {12, 7, "f7_12", 3}};
    // The counts themselves do not need the packs: the oracle reaches these cells.
    OracleOptions wide;
    wide.max_order = 13;
    wide.max_weight = 10;
    for (const auto& c : cells) {
      check_count(o, "oracle (" + std::to_string(c.n) + "," + std::to_string(c.k) + ")",
                  oracle_classify(c.n, c.k, wide).classes.size(), c.want);
    }
    bool missing = false;
    for (const auto& c : cells) {
      const auto dir = data_dir(c.pack);
      if (!dir) {
        o.notes.push_back("not run: (" + std::to_string(c.n) + "," + std::to_string(c.k) + ") pipeline needs WMKIT_DATA/" +
                          c.pack);
        missing = true;
        continue;
      }
      std::vector<Code> codes = load_codes({dir->string()});
      if (c.pack == "t16") {
        const auto sub = classify_mso_subtraction(codes, c.n);
        codes.clear();
        for (const auto& cl : sub.classes) codes.push_back(cl.code);
        const auto tmp = fs::temp_directory_path() / "wmkit_acceptance_t13.codes";
        write_code_file(tmp.string(), codes);
        check_count(o, "(13,9) classes", run_pipeline(13, 9, 0, {tmp.string()}).classes.classes.size(), c.want);
        fs::remove(tmp);
        continue;
      }
      check_count(o, "(" + std::to_string(c.n) + "," + std::to_string(c.k) + ") classes",
                  run_pipeline(c.n, c.k, 0, {dir->string()}).classes.classes.size(), c.want);
    }
    if (const auto dir = data_dir("t20")) {
      const auto parents = load_codes({dir->string()});
      const auto s19 = classify_mso_subtraction(parents, 19);
      const auto s18 = classify_mso_subtraction(parents, 18);
      check_count(o, "ternary MSO length 18", s18.classes.size(), 160);
      check_count(o, "ternary MSO length 19", s19.classes.size(), 56);
      // Parents 20 and 23 (1-based, in file order) each give two length-19 classes.
      const auto table = subtraction_table(parents);
      o.expect(parents.size() >= 23 && table.at(19).from_one == 2 && table.at(22).from_one == 2,
               "parents 20 and 23 give two length-19 classes each");
      std::set<BigInt> orders;
      if (parents.size() >= 23) {
        for (const auto& c : classify_mso_subtraction({parents[19], parents[22]}, 19).classes) orders.insert(c.aut_order);
      }
      o.expect(orders == std::set<BigInt>{32, 128, 576, 5184}, "automorphism orders of those four codes");
    } else {
      o.notes.push_back("not run: lengths 18 and 19 need WMKIT_DATA/t20");
      missing = true;
    }
    if (missing && o.kind == Outcome::kPass) o.kind = Outcome::kPartial;
  });

  run(10, "long-running cells", [](Outcome& o) {
    const char* flag = std::getenv("WMKIT_LONG");
    if (!flag || std::string(flag) != "1" || !data_dir("t16")) {
      o.kind = Outcome::kSkip;
      o.notes.push_back("not run: set WMKIT_LONG=1 and provide WMKIT_DATA/t16 (and t20, t24)");
      return;
    }
    const auto t16 = load_codes({data_dir("t16")->string()});
    const auto sub14 = classify_mso_subtraction(t16, 14), sub15 = classify_mso_subtraction(t16, 15);
    auto as_file = [](const CodeClassSet& s, const std::string& name) {
      std::vector<Code> codes;
      for (const auto& c : s.classes) codes.push_back(c.code);
      const auto p = fs::temp_directory_path() / name;
      write_code_file(p.string(), codes);
      return p.string();
    };
    const auto f14 = as_file(sub14, "wmkit_t14.codes"), f15 = as_file(sub15, "wmkit_t15.codes");
    check_count(o, "(14,9) classes", run_pipeline(14, 9, 0, {f14}, true).classes.classes.size(), 7);
    check_count(o, "(14,10) classes", run_pipeline(14, 10, 0, {f14}, true).classes.classes.size(), 19);
    if (const auto z4 = data_dir("z4_14")) {
      check_count(o, "(14,8) classes", run_pipeline(14, 8, 0, {z4->string()}, true).classes.classes.size(), 66);
    } else {
      o.notes.push_back("not run: (14,8) needs WMKIT_DATA/z4_14");
    }
    check_count(o, "(15,9) classes", run_pipeline(15, 9, 0, {f15}, true).classes.classes.size(), 37);
    check_count(o, "(16,6) classes",
                run_pipeline(16, 6, 0, {data_dir("t16")->string()}, true).classes.classes.size(), 30);
    if (const auto t20 = data_dir("t20")) {
      const auto f17 = as_file(classify_mso_subtraction(load_codes({t20->string()}), 17), "wmkit_t17.codes");
      const auto r = run_pipeline(17, 9, 0, {f17}, true);
      check_count(o, "(17,9) classes", r.classes.classes.size(), 2360);
      std::size_t eight = 0;
      for (const auto& c : r.classes.classes) eight += c.invariants.intersection_number == 8;
      check_count(o, "(17,9) classes with intersection number 8", eight, 517);
    }
    if (const auto t24 = data_dir("t24")) {
      check_count(o, "(20,6) classes", run_pipeline(20, 6, 0, {t24->string()}, true).classes.classes.size(), 49);
    }
  });

  run(11, "property suite", [](Outcome& o) {
    std::mt19937_64 rng(20240611);
    std::size_t matrices = 0, audits_ok = 0, relabel_ok = 0, relabels = 0, witnesses_ok = 0, witnesses = 0;
    for (const auto cell : {std::make_pair(12, 6), std::make_pair(12, 9)}) {
      const auto& r = pipeline(cell.first, cell.second);
      for (const auto& w : r.candidates) {
        ++matrices;
        const auto a = audit_matrix(w);
        audits_ok += a.verified && a.codes_self_orthogonal && a.self_dual_check;
      }
      for (const auto& c : r.classes.classes) {
        for (int t = 0; t < 100; ++t) {
          const auto v = relabel(c.representative, rng);
          ++relabels;
          relabel_ok += canonicalize_wm(v).certificate == c.certificate;
          if (t % 10 == 0) {
            const auto res = are_equivalent(c.representative, v);
            ++witnesses;
            witnesses_ok += res.equivalent && res.witness && verify_witness(c.representative, v, *res.witness);
          }
        }
      }
    }
    o.expect(matrices > 0 && audits_ok == matrices,
             std::to_string(audits_ok) + "/" + std::to_string(matrices) + " pipeline matrices pass verify and code audits");
    o.expect(relabel_ok == relabels,
             std::to_string(relabel_ok) + "/" + std::to_string(relabels) + " random relabelings keep the certificate");
    o.expect(witnesses_ok == witnesses,
             std::to_string(witnesses_ok) + "/" + std::to_string(witnesses) + " equivalence witnesses re-verified");
    std::set<std::string> hashes;
    for (int threads : {1, 2, 8}) hashes.insert(determinism_hash(report_json(run_pipeline(12, 6, threads))));
    o.expect(hashes.size() == 1, "determinism hash identical for 1, 2 and 8 workers");
  });

  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criterion(s) failed" : "acceptance: all run criteria passed")
            << "\n";
  return failures ? 1 : 0;
}
