#pragma once

// End-to-end classification of W(n, k): maximal self-orthogonal codes over
// Z_m, their compatibility graphs, cliques up to Aut(C), lifting, dedup and
// audit.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wmkit/codeclass.hpp"
#include "wmkit/equiv.hpp"
#include "wmkit/search.hpp"

namespace wmkit {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

struct PipelineJob {
  int n = 0;
  int k = 0;
  int modulus = 0;                      // 0: choose automatically
  std::vector<std::string> code_paths;  // files or directories of codes; empty: classify
  bool allow_long = false;              // needed for n >= 14
  CliqueSearchOptions search;
  int appended_weight = -1;             // also count weight-w words of D_m(W) per class
  bool check_oracle = true;             // compare with oracle_classify inside its guard
};

struct SourceSummary {
  std::string digest;  // code certificate digest
  BigInt aut_order;
  int vertices = 0;
  std::size_t edges = 0;
  std::size_t raw_cliques = 0;
  std::size_t cliques = 0;
  std::uint64_t nodes = 0;
};

struct ClassAudit {
  bool verified = false;
  bool codes_self_orthogonal = false;      // C_m(W) self-orthogonal for every m | k in {3,4,5,7}
  bool self_dual_check = true;             // C_p(W) self-dual and divisor check when p || k
  std::optional<bool> unique_involution;  // unique qualifying involution class, if the sweep ran
  std::optional<long long> appended_count;
};

struct ClassificationReport {
  int n = 0;
  int k = 0;
  int modulus = 0;
  EquivalenceClassSet classes;
  std::vector<ClassAudit> class_audits;  // parallel to classes.classes
  std::vector<SourceSummary> sources;
  std::optional<bool> oracle_agreement;
  int appended_weight = -1;
  std::vector<WeighingMatrix> candidates;
  std::vector<std::string> candidate_sources;
};

// A divisor m of k among {3, 4, 5, 7} whose maximal self-orthogonal codes of
// length n the tool derives itself (m = 3 up to length 12, m = 5 up to 8), or 0.
int choose_modulus(int n, int k);
// Codes from files or directories; throws MissingData when nothing is found.
std::vector<Code> load_codes(const std::vector<std::string>& paths);
// Maximal self-orthogonal codes of length n over Z_m that the tool can derive itself.
std::vector<Code> auto_codes(int m, int n);

ClassificationReport classify(const PipelineJob& job);
ClassAudit audit_matrix(const WeighingMatrix& w);

// JSON rendering; "determinism_hash" covers everything else in the object.
nlohmann::json report_json(const ClassificationReport& r);
std::string determinism_hash(const nlohmann::json& j);

// Writes report.json, classes.wm (representatives) and candidates.wm (every
// lifted clique, tagged with its source code) into dir.
void write_report(const std::string& dir, const ClassificationReport& r);

// Table renderings from report.json files found under reports_dir.
// Returns the files written; throws MissingData if no report is found.
std::vector<std::string> write_tables(const std::string& reports_dir, const std::string& out_dir);

}  // namespace wmkit
