#include "wmkit/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wmkit/canon.hpp"
#include "wmkit/code_encoding.hpp"
#include "wmkit/error.hpp"

namespace fs = std::filesystem;

namespace wmkit {

int choose_modulus(int n, int k) {
  for (int m : code_moduli(k)) {
    if (m == 3 && n <= 12) return 3;
    if (m == 5 && n <= 8) return 5;
  }
  return 0;
}

std::vector<Code> load_codes(const std::vector<std::string>& paths) {
  std::vector<Code> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file()) files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        auto codes = read_code_file(f.string());
        out.insert(out.end(), codes.begin(), codes.end());
      }
    } else if (fs::exists(p)) {
      auto codes = read_code_file(p);
      out.insert(out.end(), codes.begin(), codes.end());
    } else {
      throw MissingData("code data not found: " + p);
    }
  }
  if (out.empty()) throw MissingData("no codes found in the given paths");
  return out;
}

std::vector<Code> auto_codes(int m, int n) {
  if (m == 4 || m == 7) {
    throw MissingData("codes over Z_" + std::to_string(m) + " must be supplied with --codes");
  }
  std::vector<Code> out;
  for (const auto& cl : classify_mso_augmentation(m, n).classes) out.push_back(cl.code);
  return out;
}

ClassAudit audit_matrix(const WeighingMatrix& w) {
  ClassAudit a;
  a.verified = WeighingMatrix::verify(w.rows()).weight() == w.weight();
  const int n = w.order();
  const int k = w.weight();
  a.codes_self_orthogonal = true;
  for (int m : code_moduli(k)) {
    a.codes_self_orthogonal = a.codes_self_orthogonal && is_self_orthogonal(induced_code(w, m));
  }
  std::vector<BigInt> divisors;
  for (int p : {3, 5, 7}) {
    if (k % p != 0 || k % (p * p) == 0) continue;
    if (divisors.empty()) divisors = elementary_divisors(w.to_int_matrix());
    int divisible = 0;
    for (const auto& d : divisors) divisible += d % p == 0;
    a.self_dual_check = a.self_dual_check && n % 2 == 0 && is_self_dual(induced_code(w, p)) && divisible == n / 2;
  }
  return a;
}

ClassificationReport classify(const PipelineJob& job) {
  const int n = job.n, k = job.k;
  if (n < 1 || k < 1 || k > n) throw InvalidArgument("need 1 <= k <= n");
  if (n >= 14 && !job.allow_long) {
    throw GuardExceeded("order " + std::to_string(n) + " is a long-running cell; pass --allow-long");
  }
  ClassificationReport r;
  r.n = n;
  r.k = k;
  r.appended_weight = job.appended_weight;

  std::vector<Code> codes;
  if (!job.code_paths.empty()) {
    codes = load_codes(job.code_paths);
    r.modulus = job.modulus ? job.modulus : codes[0].ring().modulus();
  } else {
    r.modulus = job.modulus ? job.modulus : choose_modulus(n, k);
    if (r.modulus == 0) {
      throw MissingData("no code classification available for (" + std::to_string(n) + ", " + std::to_string(k) +
                        "); supply codes with --codes");
    }
  }
  if (k % r.modulus != 0) throw InvalidArgument("modulus must divide the weight");
  if (codes.empty()) codes = auto_codes(r.modulus, n);
  for (const auto& c : codes) {
    if (c.ring().modulus() != r.modulus || c.length() != n) {
      throw InvalidArgument("code data does not match ring " + std::to_string(r.modulus) + " and length " + std::to_string(n));
    }
    if (!is_self_orthogonal(c)) throw InvalidArgument("code data contains a code that is not self-orthogonal");
  }

  if (existence_screen(n, k).possible) {
    for (const auto& c : codes) {
      SourceSummary s;
      s.digest = certificate_digest(canonicalize_code(c).certificate);
      const auto g = build_gamma(c, k);
      CliqueSearchStats st;
      const auto cliques = cliques_up_to_aut(g, c, n, job.search, &st);
      s.aut_order = g.aut_order;
      s.vertices = g.size();
      s.edges = g.edge_count();
      s.raw_cliques = st.raw_cliques;
      s.cliques = cliques.size();
      s.nodes = st.nodes;
      for (const auto& clq : cliques) {
        r.candidates.push_back(lift_clique(clq, g));
        r.candidate_sources.push_back(s.digest);
      }
      r.sources.push_back(std::move(s));
    }
  }
  r.classes = dedup(r.candidates, r.candidate_sources);
  r.classes.n = n;
  r.classes.k = k;
  for (const auto& cl : r.classes.classes) {
    ClassAudit a = audit_matrix(cl.representative);
    const auto inv = fpf_involutions(incidence(cl.representative));
    if (inv.swept) a.unique_involution = inv.unique;
    if (job.appended_weight >= 0) {
      a.appended_count = appended_code_weight_count(cl.representative, r.modulus, job.appended_weight);
    }
    r.class_audits.push_back(a);
  }
  if (job.check_oracle) {
    const OracleOptions o;
    if (n <= o.max_order && k <= o.max_weight) {
      std::set<std::string> a, b;
      for (const auto& cl : r.classes.classes) a.insert(cl.certificate);
      for (const auto& cl : oracle_classify(n, k, o).classes) b.insert(cl.certificate);
      r.oracle_agreement = a == b;
    }
  }
  return r;
}

std::string determinism_hash(const nlohmann::json& j) {
  nlohmann::json copy = j;
  copy.erase("determinism_hash");
  return certificate_digest(copy.dump());
}

nlohmann::json report_json(const ClassificationReport& r) {
  using nlohmann::json;
  json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = kToolVersion;
  j["order"] = r.n;
  j["weight"] = r.k;
  j["modulus"] = r.modulus;
  j["count"] = r.classes.classes.size();
  j["sources"] = json::array();
  for (const auto& s : r.sources) {
    j["sources"].push_back({{"code", s.digest},
                            {"aut_order", s.aut_order.str()},
                            {"vertices", s.vertices},
                            {"edges", s.edges},
                            {"raw_cliques", s.raw_cliques},
                            {"cliques", s.cliques},
                            {"nodes", s.nodes}});
  }
  bool verified = true, codes_self_orthogonal = true, self_dual_check = true;
  int involutions_checked = 0, involutions_unique = 0;
  j["classes"] = json::array();
  for (std::size_t i = 0; i < r.classes.classes.size(); ++i) {
    const auto& cl = r.classes.classes[i];
    const auto& a = r.class_audits[i];
    verified = verified && a.verified;
    codes_self_orthogonal = codes_self_orthogonal && a.codes_self_orthogonal;
    self_dual_check = self_dual_check && a.self_dual_check;
    json c;
    c["index"] = i + 1;
    c["digest"] = cl.digest;
    c["aut_order"] = cl.aut_order.str();
    c["g_distribution"] = cl.invariants.g_distribution;
    c["intersection_number"] = cl.invariants.intersection_number;
    c["intersection_profile"] = cl.invariants.intersection_profile;
    json codes = json::object();
    for (const auto& [m, cert] : cl.invariants.code_certificates) {
      codes[std::to_string(m)] = {{"certificate", cert},
                                  {"self_orthogonal", cl.invariants.self_orthogonal.at(m)},
                                  {"self_dual", cl.invariants.self_dual.at(m)}};
    }
    c["induced_codes"] = codes;
    c["sources"] = cl.provenance;
    c["members"] = cl.members;
    c["audit"] = {{"verified", a.verified},
                  {"codes_self_orthogonal", a.codes_self_orthogonal},
                  {"self_dual_check", a.self_dual_check}};
    if (a.unique_involution) {
      ++involutions_checked;
      involutions_unique += *a.unique_involution;
      c["audit"]["unique_involution"] = *a.unique_involution;
    }
    if (a.appended_count) c["appended_count"] = *a.appended_count;
    c["rows"] = cl.representative.rows();
    j["classes"].push_back(std::move(c));
  }
  j["audit"] = {{"all_verified", verified},
                {"codes_self_orthogonal", codes_self_orthogonal},
                {"self_dual_check", self_dual_check},
                {"involutions_checked", involutions_checked},
                {"involutions_unique", involutions_unique},
                {"oracle_agreement", r.oracle_agreement ? json(*r.oracle_agreement) : json(nullptr)}};
  if (r.appended_weight >= 0) j["appended_weight"] = r.appended_weight;
  j["determinism_hash"] = determinism_hash(j);
  return j;
}

void write_report(const std::string& dir, const ClassificationReport& r) {
  fs::create_directories(dir);
  const auto j = report_json(r);
  {
    std::ofstream out(fs::path(dir) / "report.json");
    out << j.dump(2) << "\n";
  }
  {
    std::ofstream out(fs::path(dir) / "classes.wm");
    for (std::size_t i = 0; i < r.classes.classes.size(); ++i) {
      const auto& cl = r.classes.classes[i];
      std::vector<std::string> comments{"class " + std::to_string(i + 1) + " digest " + cl.digest};
      for (const auto& s : cl.provenance) comments.push_back("source-code: " + s);
      if (i) out << "\n";
      write_matrix(out, cl.representative, comments);
    }
  }
  std::ofstream out(fs::path(dir) / "candidates.wm");
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    if (i) out << "\n";
    write_matrix(out, r.candidates[i], {"source-code: " + r.candidate_sources[i]});
  }
}

std::vector<std::string> write_tables(const std::string& reports_dir, const std::string& out_dir) {
  using nlohmann::json;
  if (!fs::is_directory(reports_dir)) throw MissingData("reports directory not found: " + reports_dir);
  std::vector<json> reports;
  for (const auto& e : fs::recursive_directory_iterator(reports_dir)) {
    if (!e.is_regular_file() || e.path().filename() != "report.json") continue;
    std::ifstream in(e.path());
    reports.push_back(json::parse(in));
  }
  if (reports.empty()) throw MissingData("no report.json found under " + reports_dir);
  std::sort(reports.begin(), reports.end(), [](const json& a, const json& b) {
    return std::make_tuple(a["order"].get<int>(), a["weight"].get<int>(), a["modulus"].get<int>()) <
           std::make_tuple(b["order"].get<int>(), b["weight"].get<int>(), b["modulus"].get<int>());
  });
  fs::create_directories(out_dir);
  std::vector<std::string> written;
  auto open = [&](const std::string& name) {
    const auto path = (fs::path(out_dir) / name).string();
    written.push_back(path);
    return std::ofstream(path);
  };
  {
    auto out = open("counts.tsv");
    out << "order\tweight\tmodulus\tcount\n";
    for (const auto& r : reports) out << r["order"] << '\t' << r["weight"] << '\t' << r["modulus"] << '\t' << r["count"] << '\n';
  }
  {
    auto out = open("g_distribution.tsv");
    out << "order\tweight\tclass\tdigest\tN\tinduced_code\n";
    for (const auto& r : reports) {
      const std::string m = std::to_string(r["modulus"].get<int>());
      for (const auto& c : r["classes"]) {
        std::ostringstream g;
        bool first = true;
        for (const auto& x : c["g_distribution"]) {
          g << (first ? "" : ",") << x.get<long long>();
          first = false;
        }
        const std::string code = c["induced_codes"].contains(m) ? c["induced_codes"][m]["certificate"].get<std::string>() : "";
        out << r["order"] << '\t' << r["weight"] << '\t' << c["index"] << '\t' << c["digest"].get<std::string>() << '\t'
            << g.str() << '\t' << code << '\n';
      }
    }
  }
  {
    auto out = open("appended_counts.tsv");
    out << "order\tweight\tmodulus\tclass\tdigest\tw\tcount\n";
    for (const auto& r : reports) {
      if (!r.contains("appended_weight")) continue;
      for (const auto& c : r["classes"]) {
        if (!c.contains("appended_count")) continue;
        out << r["order"] << '\t' << r["weight"] << '\t' << r["modulus"] << '\t' << c["index"] << '\t'
            << c["digest"].get<std::string>() << '\t' << r["appended_weight"] << '\t' << c["appended_count"] << '\n';
      }
    }
  }
  {
    json all = json::array();
    for (const auto& r : reports) {
      json row = {{"order", r["order"]}, {"weight", r["weight"]}, {"modulus", r["modulus"]},
                  {"count", r["count"]}, {"determinism_hash", r["determinism_hash"]}};
      all.push_back(row);
    }
    auto out = open("tables.json");
    out << json{{"schema", kReportSchema}, {"reports", all}}.dump(2) << "\n";
  }
  return written;
}

}  // namespace wmkit
