#include "wmkit/canon.hpp"

#include <algorithm>
#include <numeric>

#include "wmkit/error.hpp"

namespace wmkit {

ColoredGraph::ColoredGraph(int vertices, int color) : colors_(vertices, color), adj_(vertices) {
  if (vertices < 0) throw InvalidArgument("negative vertex count");
}

ColoredGraph::ColoredGraph(std::vector<int> colors) : colors_(std::move(colors)), adj_(colors_.size()) {}

void ColoredGraph::add_edge(int u, int v) {
  if (u == v) throw InvalidArgument("self-loops are not allowed");
  if (u < 0 || v < 0 || u >= size() || v >= size()) throw InvalidArgument("edge endpoint out of range");
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  normalized_ = false;
}

void ColoredGraph::normalize() const {
  if (normalized_) return;
  for (auto& a : adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  normalized_ = true;
}

bool ColoredGraph::has_edge(int u, int v) const {
  normalize();
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

const std::vector<int>& ColoredGraph::neighbors(int v) const {
  normalize();
  return adj_[v];
}

std::size_t ColoredGraph::edge_count() const {
  normalize();
  std::size_t s = 0;
  for (const auto& a : adj_) s += a.size();
  return s / 2;
}

ColoredGraph ColoredGraph::relabeled(std::span<const int> perm) const {
  normalize();
  std::vector<int> colors(colors_.size());
  for (int v = 0; v < size(); ++v) colors[perm[v]] = colors_[v];
  ColoredGraph h(std::move(colors));
  for (int v = 0; v < size(); ++v) {
    for (int u : adj_[v]) {
      if (u > v) h.add_edge(perm[v], perm[u]);
    }
  }
  return h;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Csr {
  int n = 0;
  std::vector<int> off;
  std::vector<int> adj;
  std::span<const int> nbrs(int v) const { return {adj.data() + off[v], adj.data() + off[v + 1]}; }
};

// Ordered partition: cells are contiguous position ranges of elem.
struct Partition {
  std::vector<int> elem;      // position -> vertex
  std::vector<int> pos;       // vertex -> position
  std::vector<int> cell_of;   // vertex -> start position of its cell
  std::vector<int> cell_end;  // start position -> one past its end
  int cells = 0;
};

class Refiner {
 public:
  explicit Refiner(const Csr& g)
      : g_(g), count_(g.n, 0), cell_mark_(g.n, false), in_queue_(g.n, false) {}

  // Refines p to the coarsest equitable partition finer than it, starting from
  // the given splitter cells. Returns a hash of the refinement trace, which is
  // invariant under relabeling.
  std::uint64_t refine(Partition& p, std::vector<int> queue) {
    const int n = g_.n;
    std::uint64_t h = 0x1234567ULL;
    for (int s : queue) in_queue_[s] = true;
    std::size_t head = 0;
    while (head < queue.size() && p.cells < n) {
      const int w = queue[head++];
      in_queue_[w] = false;
      const int wend = p.cell_end[w];
      h = mix(h, static_cast<std::uint64_t>(w) << 32 | static_cast<std::uint32_t>(wend - w));
      touched_.clear();
      for (int i = w; i < wend; ++i) {
        for (int v : g_.nbrs(p.elem[i])) {
          if (count_[v]++ == 0) touched_.push_back(v);
        }
      }
      touched_cells_.clear();
      for (int v : touched_) {
        const int c = p.cell_of[v];
        if (!cell_mark_[c]) {
          cell_mark_[c] = true;
          touched_cells_.push_back(c);
        }
      }
      std::sort(touched_cells_.begin(), touched_cells_.end());
      for (int c : touched_cells_) {
        cell_mark_[c] = false;
        const int e = p.cell_end[c];
        if (e - c == 1) {
          h = mix(h, count_[p.elem[c]]);
          continue;
        }
        auto first = p.elem.begin() + c;
        auto last = p.elem.begin() + e;
        const auto [lo, hi] = std::minmax_element(first, last, [&](int a, int b) { return count_[a] < count_[b]; });
        if (count_[*lo] == count_[*hi]) {
          h = mix(h, count_[*lo]);
          continue;
        }
        std::sort(first, last, [&](int a, int b) { return count_[a] < count_[b]; });
        for (int i = c; i < e; ++i) p.pos[p.elem[i]] = i;
        frag_.clear();
        int fs = c;
        for (int i = c + 1; i <= e; ++i) {
          if (i == e || count_[p.elem[i]] != count_[p.elem[fs]]) {
            p.cell_end[fs] = i;
            for (int j = fs; j < i; ++j) p.cell_of[p.elem[j]] = fs;
            h = mix(h, static_cast<std::uint64_t>(fs) << 40 ^ static_cast<std::uint64_t>(count_[p.elem[fs]]) << 20 ^
                           static_cast<std::uint64_t>(i - fs));
            frag_.push_back(fs);
            fs = i;
          }
        }
        p.cells += static_cast<int>(frag_.size()) - 1;
        if (in_queue_[c]) {
          for (std::size_t f = 1; f < frag_.size(); ++f) {
            queue.push_back(frag_[f]);
            in_queue_[frag_[f]] = true;
          }
        } else {
          std::size_t largest = 0;
          for (std::size_t f = 1; f < frag_.size(); ++f) {
            if (p.cell_end[frag_[f]] - frag_[f] > p.cell_end[frag_[largest]] - frag_[largest]) largest = f;
          }
          for (std::size_t f = 0; f < frag_.size(); ++f) {
            if (f == largest) continue;
            queue.push_back(frag_[f]);
            in_queue_[frag_[f]] = true;
          }
        }
      }
      for (int v : touched_) count_[v] = 0;
    }
    for (std::size_t i = head; i < queue.size(); ++i) in_queue_[queue[i]] = false;
    return mix(h, static_cast<std::uint64_t>(p.cells));
  }

 private:
  const Csr& g_;
  std::vector<int> count_;
  std::vector<bool> cell_mark_;
  std::vector<bool> in_queue_;
  std::vector<int> touched_;
  std::vector<int> touched_cells_;
  std::vector<int> frag_;
};

constexpr int kNoJump = -1;

class Searcher {
 public:
  Searcher(const Csr& g, const std::vector<int>& colors) : g_(g), n_(g.n), refiner_(g) {
    stack_.resize(1);
    Partition& p = stack_[0];
    p.elem.resize(n_);
    std::iota(p.elem.begin(), p.elem.end(), 0);
    std::stable_sort(p.elem.begin(), p.elem.end(), [&](int a, int b) { return colors[a] < colors[b]; });
    p.pos.resize(n_);
    p.cell_of.resize(n_);
    p.cell_end.assign(n_, 0);
    std::vector<int> starts;
    for (int i = 0; i < n_;) {
      int j = i;
      while (j < n_ && colors[p.elem[j]] == colors[p.elem[i]]) ++j;
      p.cell_end[i] = j;
      for (int t = i; t < j; ++t) {
        p.cell_of[p.elem[t]] = i;
        p.pos[p.elem[t]] = t;
      }
      starts.push_back(i);
      ++p.cells;
      i = j;
    }
    path_inv_.push_back(refiner_.refine(p, starts));
  }

  void run() {
    if (n_ == 0) return;
    visit(0, true, 0);
  }

  const std::vector<int>& best_elem() const { return best_elem_; }
  std::vector<Permutation>& generators() { return gens_; }
  const CanonStats& stats() const { return stats_; }

 private:
  std::vector<std::uint32_t> leaf_certificate(const Partition& p) const {
    std::vector<std::uint32_t> cert;
    cert.reserve(g_.adj.size() + n_);
    std::vector<std::uint32_t> row;
    for (int i = 0; i < n_; ++i) {
      row.clear();
      for (int u : g_.nbrs(p.elem[i])) row.push_back(static_cast<std::uint32_t>(p.pos[u]));
      std::sort(row.begin(), row.end());
      cert.push_back(static_cast<std::uint32_t>(row.size()));
      cert.insert(cert.end(), row.begin(), row.end());
    }
    return cert;
  }

  static int common_prefix(const std::vector<int>& a, const std::vector<int>& b, int depth) {
    int l = 0;
    while (l < depth && l < static_cast<int>(b.size()) && a[l] == b[l]) ++l;
    return l;
  }

  void add_automorphism(const std::vector<int>& from_elem, const std::vector<int>& to_elem) {
    Permutation gamma(n_);
    for (int i = 0; i < n_; ++i) gamma[from_elem[i]] = to_elem[i];
    if (!is_identity(gamma)) gens_.push_back(std::move(gamma));
  }

  int leaf(int depth, bool eq_first, int cmp) {
    ++stats_.leaves;
    const Partition& p = stack_[depth];
    std::vector<std::uint32_t> cert = leaf_certificate(p);
    const std::vector<int> path(path_.begin(), path_.begin() + depth);
    if (!have_first_) {
      have_first_ = true;
      first_path_ = best_path_ = path;
      first_inv_ = best_inv_ = std::vector<std::uint64_t>(path_inv_.begin(), path_inv_.begin() + depth + 1);
      first_elem_ = best_elem_ = p.elem;
      first_cert_ = best_cert_ = std::move(cert);
      ++best_version_;
      return kNoJump;
    }
    if (eq_first && cert == first_cert_) {
      add_automorphism(first_elem_, p.elem);
      return common_prefix(path, first_path_, depth);
    }
    if (cmp == 0) {
      if (cert == best_cert_) {
        add_automorphism(best_elem_, p.elem);
        return common_prefix(path, best_path_, depth);
      }
      if (cert < best_cert_) return kNoJump;
    }
    if (cmp >= 0) {
      best_path_ = path;
      best_inv_.assign(path_inv_.begin(), path_inv_.begin() + depth + 1);
      best_elem_ = p.elem;
      best_cert_ = std::move(cert);
      ++best_version_;
    }
    return kNoJump;
  }

  std::vector<int> stabilizer_orbits(int depth) const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : gens_) {
      bool fixes = true;
      for (int l = 0; l < depth && fixes; ++l) fixes = g[path_[l]] == path_[l];
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        const int a = find(v), b = find(g[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < n_; ++v) parent[v] = find(v);
    return parent;
  }

  int visit(int depth, bool parent_eq_first, int parent_cmp) {
    ++stats_.nodes;
    const std::uint64_t inv = path_inv_[depth];
    bool eq_first = true;
    int cmp = parent_cmp;
    if (have_first_) {
      eq_first = parent_eq_first && depth < static_cast<int>(first_inv_.size()) && first_inv_[depth] == inv;
      if (cmp == 0) {
        if (depth >= static_cast<int>(best_inv_.size()) || inv > best_inv_[depth]) {
          cmp = 1;
        } else if (inv < best_inv_[depth]) {
          cmp = -1;
        }
      }
      if (cmp < 0 && !eq_first) return kNoJump;
    }
    const Partition& p = stack_[depth];
    if (p.cells == n_) return leaf(depth, eq_first, cmp);

    int target = -1, target_size = n_ + 1;
    for (int i = 0; i < n_; i = p.cell_end[i]) {
      const int s = p.cell_end[i] - i;
      if (s > 1 && s < target_size) {
        target = i;
        target_size = s;
      }
    }
    const std::vector<int> candidates(p.elem.begin() + target, p.elem.begin() + target + target_size);
    if (static_cast<int>(stack_.size()) <= depth + 1) stack_.resize(depth + 2);
    if (static_cast<int>(path_.size()) <= depth) path_.resize(depth + 1);
    if (static_cast<int>(path_inv_.size()) <= depth + 1) path_inv_.resize(depth + 2);

    std::vector<int> explored;
    std::vector<int> orbit;
    std::size_t gens_seen = static_cast<std::size_t>(-1);
    std::uint64_t version = best_version_;
    for (int w : candidates) {
      if (gens_.size() != gens_seen) {
        orbit = stabilizer_orbits(depth);
        gens_seen = gens_.size();
      }
      const bool redundant =
          std::any_of(explored.begin(), explored.end(), [&](int u) { return orbit[u] == orbit[w]; });
      if (redundant) continue;
      explored.push_back(w);
      if (version != best_version_) {
        // A new best leaf was found below this node, so this node lies on the best path.
        cmp = 0;
        version = best_version_;
      }
      Partition& child = stack_[depth + 1];
      child = stack_[depth];
      const int c = child.cell_of[w];
      const int e = child.cell_end[c];
      const int moved = child.elem[c];
      std::swap(child.elem[c], child.elem[child.pos[w]]);
      child.pos[moved] = child.pos[w];
      child.pos[w] = c;
      child.cell_end[c] = c + 1;
      child.cell_end[c + 1] = e;
      for (int i = c + 1; i < e; ++i) child.cell_of[child.elem[i]] = c + 1;
      ++child.cells;
      path_[depth] = w;
      path_inv_[depth + 1] = mix(refiner_.refine(child, {c}), static_cast<std::uint64_t>(c));
      const int r = visit(depth + 1, eq_first, cmp);
      if (r != kNoJump && r < depth) return r;
    }
    return kNoJump;
  }

  const Csr& g_;
  int n_;
  Refiner refiner_;
  std::vector<Partition> stack_;
  std::vector<int> path_;
  std::vector<std::uint64_t> path_inv_;

  bool have_first_ = false;
  std::vector<int> first_path_, best_path_;
  std::vector<std::uint64_t> first_inv_, best_inv_;
  std::vector<int> first_elem_, best_elem_;
  std::vector<std::uint32_t> first_cert_, best_cert_;
  std::uint64_t best_version_ = 0;

  std::vector<Permutation> gens_;
  CanonStats stats_;
};

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

}  // namespace

CanonicalForm canonical_form(const ColoredGraph& g) {
  const int n = g.size();
  Csr csr;
  csr.n = n;
  csr.off.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) csr.off[v + 1] = csr.off[v] + static_cast<int>(g.neighbors(v).size());
  csr.adj.reserve(csr.off[n]);
  for (int v = 0; v < n; ++v) {
    const auto& nb = g.neighbors(v);
    csr.adj.insert(csr.adj.end(), nb.begin(), nb.end());
  }
  for (int v = 0; v < n; ++v) {
    if (g.color(v) < 0) throw InvalidArgument("colors must be non-negative");
  }

  Searcher s(csr, g.colors());
  s.run();

  CanonicalForm out;
  out.stats = s.stats();
  const std::vector<int>& elem = s.best_elem();
  out.labeling.assign(n, 0);
  for (int i = 0; i < n; ++i) out.labeling[elem[i]] = i;
  put_u32(out.certificate, static_cast<std::uint32_t>(n));
  for (int i = 0; i < n; ++i) put_u32(out.certificate, static_cast<std::uint32_t>(g.color(elem[i])));
  const std::size_t bits = static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2;
  std::string adj((bits + 7) / 8, '\0');
  for (int i = 0; i < n; ++i) {
    for (int u : g.neighbors(elem[i])) {
      const int j = out.labeling[u];
      if (j <= i) continue;
      const std::size_t idx = static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
      adj[idx / 8] = static_cast<char>(adj[idx / 8] | (1 << (idx % 8)));
    }
  }
  out.certificate += adj;
  out.automorphisms = PermGroup(n, std::move(s.generators()));
  return out;
}

PermGroup automorphism_group(const ColoredGraph& g) { return canonical_form(g).automorphisms; }

std::string certificate_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* kHex = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = kHex[h & 0xf];
    h >>= 4;
  }
  return s;
}

std::string to_hex(std::string_view bytes) {
  static const char* kHex = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    s.push_back(kHex[c >> 4]);
    s.push_back(kHex[c & 0xf]);
  }
  return s;
}

std::string from_hex(std::string_view hex) {
  if (hex.size() % 2) throw InvalidArgument("odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw InvalidArgument("bad hex digit");
  };
  std::string out(hex.size() / 2, '\0');
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<char>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

}  // namespace wmkit
