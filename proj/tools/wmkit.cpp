#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wmkit/codeclass.hpp"
#include "wmkit/equiv.hpp"
#include "wmkit/error.hpp"
#include "wmkit/pipeline.hpp"

using namespace wmkit;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

json transform_json(const MonomialTransform& t) { return {{"perm", t.perm()}, {"signs", t.signs()}}; }

const char* step_name(EquivalenceStep s) {
  switch (s) {
    case EquivalenceStep::kInvariants:
      return "invariants";
    case EquivalenceStep::kIncidence:
      return "incidence";
    case EquivalenceStep::kPaired:
      return "paired-incidence";
    case EquivalenceStep::kBacktrack:
      return "backtrack";
  }
  return "";
}

json invariants_json(const WeighingMatrix& w, bool with_codes) {
  const auto inv = compute_invariants(w, with_codes);
  json codes = json::object();
  for (const auto& [m, so] : inv.self_orthogonal) {
    codes[std::to_string(m)] = {{"self_orthogonal", so}, {"self_dual", inv.self_dual.at(m)}};
    if (inv.code_certificates.count(m)) codes[std::to_string(m)]["certificate"] = inv.code_certificates.at(m);
  }
  const auto c = canonicalize_wm(w);
  return {{"order", w.order()},
          {"weight", w.weight()},
          {"g_distribution", inv.g_distribution},
          {"intersection_number", inv.intersection_number},
          {"intersection_profile", inv.intersection_profile},
          {"induced_codes", codes},
          {"aut_order", c.aut_order.str()},
          {"certificate", certificate_digest(c.certificate)}};
}

WeighingMatrix single_matrix(const std::string& path) {
  auto ws = read_matrix_file(path);
  if (ws.size() != 1) throw InvalidArgument(path + " must hold exactly one matrix");
  return ws[0];
}

void write_codes(const std::string& path, const CodeClassSet& set) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  for (std::size_t i = 0; i < set.classes.size(); ++i) {
    if (i) out << "\n";
    write_code(out, set.classes[i].code,
               "class " + std::to_string(i + 1) + " aut " + set.classes[i].aut_order.str() + " digest " +
                   certificate_digest(set.classes[i].certificate));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighing matrix classification toolkit"};
  app.require_subcommand(1);
  int code = kPass;

  // wm
  auto* wm = app.add_subcommand("wm", "weighing matrices");
  wm->require_subcommand(1);

  std::string verify_file;
  auto* verify = wm->add_subcommand("verify", "check W W^T = k I");
  verify->add_option("file", verify_file)->required();

  std::string inv_file;
  bool inv_no_codes = false;
  auto* invariants = wm->add_subcommand("invariants", "print equivalence invariants as JSON");
  invariants->add_option("file", inv_file)->required();
  invariants->add_flag("--no-codes", inv_no_codes, "skip induced-code certificates");

  std::string eq_a, eq_b;
  bool eq_involutions = false, eq_cross = false;
  auto* equiv = wm->add_subcommand("equiv", "decide equivalence of two matrices");
  equiv->add_option("a", eq_a)->required();
  equiv->add_option("b", eq_b)->required();
  equiv->add_flag("--check-involutions", eq_involutions, "report the unique-involution hypothesis");
  equiv->add_flag("--cross-check", eq_cross, "confirm the verdict by monomial backtracking");

  int or_n = 0, or_k = 0;
  OracleOptions or_opt;
  std::string or_out;
  auto* oracle = wm->add_subcommand("oracle", "classify by exhaustive row-by-row generation");
  oracle->add_option("--order", or_n)->required();
  oracle->add_option("--weight", or_k)->required();
  oracle->add_option("--max-order", or_opt.max_order, "guard on n");
  oracle->add_option("--max-weight", or_opt.max_weight, "guard on k");
  oracle->add_option("--out", or_out, "write representatives to this file");

  PipelineJob job;
  std::string cl_out, cl_checkpoint;
  bool no_oracle = false;
  auto* classify_cmd = wm->add_subcommand("classify", "classify W(n, k) through self-orthogonal codes");
  classify_cmd->add_option("--order", job.n)->required();
  classify_cmd->add_option("--weight", job.k)->required();
  classify_cmd->add_option("--modulus", job.modulus, "code ring Z_m, m | k");
  classify_cmd->add_option("--codes", job.code_paths, "code files or directories");
  classify_cmd->add_flag("--allow-long", job.allow_long, "permit long-running cells");
  classify_cmd->add_option("--out", cl_out, "output directory");
  classify_cmd->add_option("--threads", job.search.threads, "clique search workers");
  classify_cmd->add_option("--budget", job.search.node_budget, "clique search node budget");
  classify_cmd->add_option("--checkpoint", cl_checkpoint, "checkpoint file prefix");
  classify_cmd->add_option("--appended-weight", job.appended_weight, "count words of this weight in D_m(W)");
  classify_cmd->add_flag("--no-oracle", no_oracle, "skip the oracle comparison");

  // codes
  auto* codes = app.add_subcommand("codes", "self-orthogonal codes");
  codes->require_subcommand(1);

  int cc_ring = 3, cc_length = 0;
  std::string cc_method = "augmentation", cc_parents, cc_out;
  auto* cclassify = codes->add_subcommand("classify", "maximal self-orthogonal codes up to equivalence");
  cclassify->add_option("--ring", cc_ring);
  cclassify->add_option("--length", cc_length)->required();
  cclassify->add_option("--method", cc_method)->check(CLI::IsMember({"augmentation", "subtraction"}));
  cclassify->add_option("--parents", cc_parents, "self-dual parent codes (file or directory)");
  cclassify->add_option("--out", cc_out, "write representatives to this file");

  int mc_ring = 3, mc_length = 0;
  std::string mc_n0, mc_codes;
  auto* mass = codes->add_subcommand("mass-check", "check the mass formula");
  mass->add_option("--ring", mc_ring);
  mass->add_option("--length", mc_length)->required();
  mass->add_option("--n0", mc_n0, "number of distinct codes, if known");
  mass->add_option("--codes", mc_codes, "class representatives (default: classify)");

  std::string sub_in, sub_out;
  int sub_coord = 0;
  auto* subtract_cmd = codes->add_subcommand("subtract", "delete a coordinate from every code in a file");
  subtract_cmd->add_option("--in", sub_in)->required();
  subtract_cmd->add_option("--coord", sub_coord)->required();
  subtract_cmd->add_option("--out", sub_out);

  // report
  auto* report = app.add_subcommand("report", "reports");
  report->require_subcommand(1);
  std::string rt_reports, rt_out;
  auto* tables = report->add_subcommand("tables", "render tables from classification reports");
  tables->add_option("--reports", rt_reports, "directory searched for report.json (default: --out)");
  tables->add_option("--out", rt_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (verify->parsed()) {
      try {
        const auto ws = read_matrix_file(verify_file);
        if (ws.empty()) throw InvalidArgument("no matrix in " + verify_file);
        for (const auto& w : ws) std::cout << "ok order " << w.order() << " weight " << w.weight() << "\n";
      } catch (const InvalidArgument& e) {
        std::cout << "invalid: " << e.what() << "\n";
        code = kFail;
      }
    } else if (invariants->parsed()) {
      json out = json::array();
      for (const auto& w : read_matrix_file(inv_file)) out.push_back(invariants_json(w, !inv_no_codes));
      std::cout << (out.size() == 1 ? out[0] : out).dump(2) << "\n";
    } else if (equiv->parsed()) {
      const auto a = single_matrix(eq_a), b = single_matrix(eq_b);
      const auto res = are_equivalent(a, b, {eq_involutions, eq_cross});
      json out{{"equivalent", res.equivalent}, {"decided_by", step_name(res.decided_by)}, {"reason", res.reason}};
      if (res.witness) out["witness"] = {{"rows", transform_json(res.witness->rows)}, {"cols", transform_json(res.witness->cols)}};
      if (res.unique_involution) out["unique_involution"] = *res.unique_involution;
      std::cout << out.dump(2) << "\n";
      code = res.equivalent ? kPass : kFail;
    } else if (oracle->parsed()) {
      std::vector<std::size_t> levels;
      const auto set = oracle_classify(or_n, or_k, or_opt, &levels);
      std::cout << "count " << set.classes.size() << "\n";
      for (std::size_t i = 0; i < set.classes.size(); ++i) {
        std::cout << "class " << i + 1 << " digest " << set.classes[i].digest << " aut " << set.classes[i].aut_order << "\n";
      }
      if (!or_out.empty()) {
        std::vector<WeighingMatrix> reps;
        for (const auto& c : set.classes) reps.push_back(c.representative);
        write_matrix_file(or_out, reps);
      }
    } else if (classify_cmd->parsed()) {
      job.search.checkpoint = cl_checkpoint;
      job.check_oracle = !no_oracle;
      const auto r = classify(job);
      const auto j = report_json(r);
      std::cout << "order " << r.n << " weight " << r.k << " modulus " << r.modulus << " count "
                << r.classes.classes.size() << "\n";
      for (const auto& c : j["classes"]) {
        std::cout << "class " << c["index"] << " digest " << c["digest"].get<std::string>() << " aut "
                  << c["aut_order"].get<std::string>() << "\n";
      }
      std::cout << "audit " << j["audit"].dump() << "\n";
      std::cout << "determinism_hash " << j["determinism_hash"].get<std::string>() << "\n";
      if (!cl_out.empty()) write_report(cl_out, r);
      const auto& audit = j["audit"];
      const bool ok = audit["all_verified"].get<bool>() && audit["codes_self_orthogonal"].get<bool>() &&
                      audit["self_dual_check"].get<bool>() &&
                      (audit["oracle_agreement"].is_null() || audit["oracle_agreement"].get<bool>());
      code = ok ? kPass : kFail;
    } else if (cclassify->parsed()) {
      CodeClassSet set;
      if (cc_method == "augmentation") {
        set = classify_mso_augmentation(cc_ring, cc_length);
      } else {
        if (cc_parents.empty()) throw MissingData("--method subtraction needs --parents");
        set = classify_mso_subtraction(load_codes({cc_parents}), cc_length);
      }
      std::cout << "count " << set.classes.size() << "\n";
      for (std::size_t i = 0; i < set.classes.size(); ++i) {
        std::cout << "class " << i + 1 << " dim " << set.classes[i].code.dimension() << " aut "
                  << set.classes[i].aut_order << " digest " << certificate_digest(set.classes[i].certificate) << "\n";
      }
      if (!cc_out.empty()) write_codes(cc_out, set);
    } else if (mass->parsed()) {
      const CodeClassSet set =
          mc_codes.empty() ? classify_mso_augmentation(mc_ring, mc_length) : dedup_codes(load_codes({mc_codes}));
      std::optional<BigInt> n0;
      if (!mc_n0.empty()) n0 = BigInt(mc_n0);
      const auto audit = mass_check(set, n0);
      std::cout << (audit.pass ? "pass" : "fail") << " sum " << audit.sum << " n0 " << audit.n0
                << (audit.n0_brute_forced ? " (brute force)" : "") << "\n";
      code = audit.pass ? kPass : kFail;
    } else if (subtract_cmd->parsed()) {
      std::ostringstream out;
      const auto in = read_code_file(sub_in);
      for (std::size_t i = 0; i < in.size(); ++i) {
        const Code s = subtract(in[i], sub_coord);
        if (i) out << "\n";
        write_code(out, s, "subtracted at coordinate " + std::to_string(sub_coord));
      }
      if (sub_out.empty()) {
        std::cout << out.str();
      } else {
        std::ofstream(sub_out) << out.str();
      }
    } else if (tables->parsed()) {
      for (const auto& f : write_tables(rt_reports.empty() ? rt_out : rt_reports, rt_out)) std::cout << f << "\n";
    }
  } catch (const MissingData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return code;
}
