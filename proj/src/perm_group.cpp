#include "wmkit/perm_group.hpp"

#include <numeric>

#include "wmkit/error.hpp"

namespace wmkit {

Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) c[v] = b[a[v]];
  return c;
}

Permutation invert(const Permutation& a) {
  Permutation c(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) c[a[v]] = static_cast<int>(v);
  return c;
}

bool is_identity(const Permutation& a) {
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v] != static_cast<int>(v)) return false;
  }
  return true;
}

PermGroup::PermGroup(int degree, std::vector<Permutation> generators) : degree_(degree) {
  for (auto& g : generators) {
    if (static_cast<int>(g.size()) != degree) throw InvalidArgument("generator degree mismatch");
    if (!is_identity(g)) gens_.push_back(std::move(g));
  }
  for (const auto& g : gens_) {
    Permutation h = g;
    const std::size_t at = sift(h, 0);
    if (at < levels_.size() || !is_identity(h)) add_generator(0, g);
  }
  order_ = 1;
  for (const auto& l : levels_) {
    order_ *= static_cast<unsigned>(l.orbit.size());
    base_.push_back(l.base_point);
  }
}

std::size_t PermGroup::sift(Permutation& g, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const int p = g[levels_[i].base_point];
    const auto& u = levels_[i].transversal[p];
    if (u.empty()) return i;
    // g <- g * u^-1, which fixes the base point of level i.
    Permutation h(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) h[u[v]] = v;  // h = u^-1
    for (std::size_t v = 0; v < g.size(); ++v) g[v] = h[g[v]];
  }
  return levels_.size();
}

void PermGroup::add_generator(std::size_t level, const Permutation& g) {
  if (level == levels_.size()) {
    Level l;
    int moved = 0;
    while (g[moved] == moved) ++moved;
    l.base_point = moved;
    l.transversal.assign(degree_, {});
    l.transversal[moved] = identity_permutation(degree_);
    l.orbit.push_back(moved);
    levels_.push_back(std::move(l));
  }
  levels_[level].gens.push_back(g);

  // Extend the orbit; collect Schreier generators for every (point, generator)
  // pair not seen before: old points with the new generator, new points with all.
  std::vector<std::pair<int, std::size_t>> pending;
  {
    Level& l = levels_[level];
    const std::size_t new_gen = l.gens.size() - 1;
    for (int p : l.orbit) pending.emplace_back(p, new_gen);
  }
  for (std::size_t idx = 0; idx < pending.size(); ++idx) {
    const auto [p, gi] = pending[idx];
    Permutation s;
    {
      Level& l = levels_[level];
      const Permutation& gen = l.gens[gi];
      const int q = gen[p];
      Permutation up_gen = compose(l.transversal[p], gen);
      if (l.transversal[q].empty()) {
        l.transversal[q] = up_gen;
        l.orbit.push_back(q);
        for (std::size_t j = 0; j < l.gens.size(); ++j) pending.emplace_back(q, j);
        continue;
      }
      s = compose(up_gen, invert(l.transversal[q]));
    }
    if (is_identity(s)) continue;
    const std::size_t at = sift(s, level + 1);
    if (at < levels_.size() || !is_identity(s)) add_generator(level + 1, s);
  }
}

bool PermGroup::contains(const Permutation& g) const {
  if (static_cast<int>(g.size()) != degree_) return false;
  Permutation h = g;
  return sift(h, 0) == levels_.size() && is_identity(h);
}

std::vector<int> PermGroup::orbit_representatives() const {
  std::vector<int> parent(degree_);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : gens_) {
    for (int v = 0; v < degree_; ++v) {
      int a = find(v), b = find(g[v]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<int> rep(degree_);
  for (int v = 0; v < degree_; ++v) rep[v] = find(v);
  return rep;
}

void PermGroup::for_each_element(const std::function<bool(const Permutation&)>& visit) const {
  // Every element is uniquely u_k * ... * u_1 * u_0 with u_i from level i.
  std::function<bool(std::size_t, const Permutation&)> rec = [&](std::size_t level, const Permutation& acc) {
    if (level == levels_.size()) return visit(acc);
    for (int p : levels_[level].orbit) {
      if (!rec(level + 1, compose(levels_[level].transversal[p], acc))) return false;
    }
    return true;
  };
  rec(0, identity_permutation(degree_));
}

}  // namespace wmkit
