#include "wmkit/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "wmkit/canon.hpp"
#include "wmkit/code_encoding.hpp"
#include "wmkit/error.hpp"

namespace wmkit {

namespace {

using Bits = std::vector<std::uint64_t>;

std::uint64_t row_key(const std::vector<int>& r) {
  std::uint32_t supp = 0, neg = 0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j] != 0) supp |= 1u << j;
    if (r[j] < 0) neg |= 1u << j;
  }
  if (neg & (supp & (~supp + 1))) neg ^= supp;
  return (static_cast<std::uint64_t>(supp) << 32) | neg;
}

std::vector<int> lift(const Row& x, int m) {
  std::vector<int> r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = x[j] == 0 ? 0 : (x[j] == 1 ? 1 : (x[j] == m - 1 ? -1 : 2));
  if (std::find(r.begin(), r.end(), 2) != r.end()) throw std::logic_error("word has entries outside {0, +-1}");
  for (int v : r) {
    if (v == 0) continue;
    if (v < 0)
      for (auto& y : r) y = -y;
    break;
  }
  return r;
}

}  // namespace

std::size_t CompatibilityGraph::edge_count() const {
  std::size_t s = 0;
  for (const auto& a : adjacency)
    for (auto w : a) s += std::popcount(w);
  return s / 2;
}

int default_threads() {
  if (const char* env = std::getenv("WMKIT_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

CompatibilityGraph build_gamma(const Code& c, int k, bool with_orbits) {
  const int n = c.length();
  if (n > 32) throw InvalidArgument("compatibility graphs support lengths up to 32");
  CompatibilityGraph g;
  g.length = n;
  g.weight = k;
  for (const Row& x : enumerate_wm_words(c, k)) g.rows.push_back(lift(x, c.ring().modulus()));
  std::sort(g.rows.begin(), g.rows.end());
  const int v = g.size();
  const std::size_t words = (static_cast<std::size_t>(v) + 63) / 64;
  g.adjacency.assign(v, Bits(words, 0));
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      int s = 0;
      for (int j = 0; j < n; ++j) s += g.rows[a][j] * g.rows[b][j];
      if (s == 0) {
        g.adjacency[a][b >> 6] |= std::uint64_t{1} << (b & 63);
        g.adjacency[b][a >> 6] |= std::uint64_t{1} << (a & 63);
      }
    }
  }
  g.orbit.resize(v);
  std::iota(g.orbit.begin(), g.orbit.end(), 0);
  g.aut_order = 1;
  if (!with_orbits || v == 0) return g;

  const CodeCanon cc = canonicalize_code(c);
  g.aut_order = cc.aut_order;
  std::unordered_map<std::uint64_t, int> index;
  for (int a = 0; a < v; ++a) index[row_key(g.rows[a])] = a;
  auto find = [&](int x) {
    while (g.orbit[x] != x) x = g.orbit[x] = g.orbit[g.orbit[x]];
    return x;
  };
  for (const auto& t : cc.aut_generators) {
    for (int a = 0; a < v; ++a) {
      const int b = index.at(row_key(t.apply(g.rows[a])));
      const int ra = find(a), rb = find(b);
      if (ra != rb) g.orbit[std::max(ra, rb)] = std::min(ra, rb);
    }
  }
  for (int a = 0; a < v; ++a) g.orbit[a] = find(a);
  return g;
}

namespace {

class CliqueWorker {
 public:
  CliqueWorker(const CompatibilityGraph& g, int n, std::atomic<std::uint64_t>& nodes, std::uint64_t budget)
      : g_(g), n_(n), words_(g.adjacency.empty() ? 0 : g.adjacency[0].size()), nodes_(nodes), budget_(budget) {
    colmask_.assign(g.length, Bits(words_, 0));
    for (int v = 0; v < g.size(); ++v)
      for (int j = 0; j < g.length; ++j)
        if (g.rows[v][j] != 0) colmask_[j][v >> 6] |= std::uint64_t{1} << (v & 63);
  }

  // Cliques containing root whose other vertices lie in allowed.
  std::vector<std::vector<int>> run(int root, const Bits& allowed) {
    out_.clear();
    std::vector<int> count(g_.length, 0);
    Bits cand(words_);
    for (std::size_t w = 0; w < words_; ++w) cand[w] = allowed[w] & g_.adjacency[root][w];
    chosen_ = {root};
    add(count, cand, root);
    rec(count, cand);
    return std::move(out_);
  }

 private:
  void add(std::vector<int>& count, Bits& cand, int v) {
    for (int j = 0; j < g_.length; ++j) {
      if (g_.rows[v][j] == 0) continue;
      if (++count[j] == g_.weight)
        for (std::size_t w = 0; w < words_; ++w) cand[w] &= ~colmask_[j][w];
    }
  }

  static int popcount_and(const Bits& a, const Bits& b) {
    int s = 0;
    for (std::size_t w = 0; w < a.size(); ++w) s += std::popcount(a[w] & b[w]);
    return s;
  }

  void rec(const std::vector<int>& count, Bits cand) {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_ && budget_) {
      throw BudgetExceeded("clique search node budget exhausted");
    }
    if (static_cast<int>(chosen_.size()) == n_) {
      std::vector<int> c = chosen_;
      std::sort(c.begin(), c.end());
      out_.push_back(std::move(c));
      return;
    }
    // Branch on the open column with the fewest candidates covering it.
    int best = -1, best_cover = 0;
    for (int j = 0; j < g_.length; ++j) {
      if (count[j] == g_.weight) continue;
      const int cover = popcount_and(cand, colmask_[j]);
      if (cover < g_.weight - count[j]) return;
      if (best < 0 || cover < best_cover) {
        best = j;
        best_cover = cover;
      }
    }
    if (best < 0) return;
    Bits branch(words_);
    for (std::size_t w = 0; w < words_; ++w) branch[w] = cand[w] & colmask_[best][w];
    for (std::size_t w = 0; w < words_; ++w) {
      while (branch[w]) {
        const int v = static_cast<int>(w * 64 + std::countr_zero(branch[w]));
        branch[w] &= branch[w] - 1;
        cand[w] &= ~(std::uint64_t{1} << (v & 63));
        std::vector<int> c2 = count;
        Bits cand2(words_);
        for (std::size_t u = 0; u < words_; ++u) cand2[u] = cand[u] & g_.adjacency[v][u];
        chosen_.push_back(v);
        add(c2, cand2, v);
        rec(c2, std::move(cand2));
        chosen_.pop_back();
      }
    }
  }

  const CompatibilityGraph& g_;
  int n_;
  std::size_t words_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t budget_;
  std::vector<Bits> colmask_;
  std::vector<int> chosen_;
  std::vector<std::vector<int>> out_;
};

// Certificate of a clique up to Aut(C): the code's layer graph plus a pair of
// vertices (x, -x) per clique row joined to the signed coordinates.
std::string clique_certificate(const CodeEncoding& enc, const CompatibilityGraph& g, const std::vector<int>& clique) {
  std::vector<int> colors = enc.graph.colors();
  const int base = static_cast<int>(colors.size());
  colors.resize(base + 2 * clique.size(), 1 << 20);
  ColoredGraph h(std::move(colors));
  for (int v = 0; v < enc.graph.size(); ++v)
    for (int u : enc.graph.neighbors(v))
      if (u > v) h.add_edge(v, u);
  for (std::size_t i = 0; i < clique.size(); ++i) {
    const int a = base + 2 * static_cast<int>(i), b = a + 1;
    h.add_edge(a, b);
    const auto& r = g.rows[clique[i]];
    for (int j = 0; j < g.length; ++j) {
      if (r[j] == 0) continue;
      h.add_edge(a, 2 * j + (r[j] > 0 ? 0 : 1));
      h.add_edge(b, 2 * j + (r[j] > 0 ? 1 : 0));
    }
  }
  return canonical_form(h).certificate;
}

struct Checkpoint {
  std::set<int> done;
  std::map<int, std::vector<std::vector<int>>> found;
};

Checkpoint load_checkpoint(const std::string& path, const CompatibilityGraph& g, int n) {
  Checkpoint cp;
  if (path.empty() || !std::filesystem::exists(path)) return cp;
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  if (j.at("vertices").get<int>() != g.size() || j.at("order").get<int>() != n || j.at("edges").get<std::size_t>() != g.edge_count()) {
    throw InvalidArgument("checkpoint " + path + " belongs to a different search");
  }
  for (const auto& r : j.at("roots")) {
    const int root = r.at("root").get<int>();
    cp.done.insert(root);
    cp.found[root] = r.at("cliques").get<std::vector<std::vector<int>>>();
  }
  return cp;
}

void save_checkpoint(const std::string& path, const CompatibilityGraph& g, int n, const Checkpoint& cp) {
  if (path.empty()) return;
  nlohmann::json j;
  j["vertices"] = g.size();
  j["order"] = n;
  j["edges"] = g.edge_count();
  j["roots"] = nlohmann::json::array();
  for (int root : cp.done) j["roots"].push_back({{"root", root}, {"cliques", cp.found.at(root)}});
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::vector<std::vector<int>> cliques_up_to_aut(const CompatibilityGraph& g, const Code& c, int n,
                                                const CliqueSearchOptions& opt, CliqueSearchStats* stats) {
  const int v = g.size();
  std::vector<std::vector<int>> result;
  if (n <= 0 || v < n) return result;

  // Orbit i is searched with its smallest vertex as root, avoiding orbits < i.
  std::vector<int> roots;
  for (int a = 0; a < v; ++a)
    if (g.orbit[a] == a) roots.push_back(a);
  std::vector<Bits> allowed(roots.size());
  {
    Bits cur(g.adjacency[0].size(), ~std::uint64_t{0});
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < roots.size(); ++i) index[roots[i]] = i;
    std::vector<std::vector<int>> members(roots.size());
    for (int a = 0; a < v; ++a) members[index.at(g.orbit[a])].push_back(a);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      allowed[i] = cur;
      for (int a : members[i]) cur[a >> 6] &= ~(std::uint64_t{1} << (a & 63));
    }
  }

  Checkpoint cp = load_checkpoint(opt.checkpoint, g, n);
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  const int threads = std::max(1, opt.threads > 0 ? opt.threads : default_threads());
  auto work = [&] {
    CliqueWorker worker(g, n, nodes, opt.node_budget);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= roots.size()) return;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (failure) return;
        if (cp.done.count(roots[i])) continue;
      }
      try {
        auto found = worker.run(roots[i], allowed[i]);
        std::lock_guard<std::mutex> lock(mu);
        cp.done.insert(roots[i]);
        cp.found[roots[i]] = std::move(found);
        save_checkpoint(opt.checkpoint, g, n, cp);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (stats) {
    stats->nodes = nodes.load();
    stats->roots = roots.size();
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& [root, list] : cp.found) result.insert(result.end(), list.begin(), list.end());
  if (stats) stats->raw_cliques = result.size();
  if (!opt.dedup_orbits || result.empty()) return result;

  const CodeEncoding enc = encode_code(c);
  std::map<std::string, std::vector<int>> unique;
  for (auto& clq : result) unique.emplace(clique_certificate(enc, g, clq), std::move(clq));
  result.clear();
  for (auto& [cert, clq] : unique) result.push_back(std::move(clq));
  return result;
}

WeighingMatrix lift_clique(const std::vector<int>& clique, const CompatibilityGraph& g) {
  std::vector<std::vector<int>> rows;
  for (int v : clique) rows.push_back(g.rows.at(v));
  return WeighingMatrix::verify(rows);
}

}  // namespace wmkit
