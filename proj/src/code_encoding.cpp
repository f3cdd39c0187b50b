#include "wmkit/code_encoding.hpp"

#include <map>

#include "wmkit/error.hpp"

namespace wmkit {

namespace {

constexpr int kEntryColorBase = 1;     // private entry vertices: 1 + |c|
constexpr int kCodewordColorBase = 256;  // codeword vertices: 256 + weight

}  // namespace

CodeEncoding encode_code(const Code& c, int extra_layers, std::uint64_t max_words) {
  const int n = c.length();
  const RingTag& ring = c.ring();
  if (c.size() > max_words) throw GuardExceeded("code too large to encode: " + c.size().str() + " words");

  std::map<int, std::vector<Row>> by_weight;
  c.for_each_codeword([&](const Row& x) {
    const int w = hamming_weight(x);
    if (w > 0) by_weight[w].push_back(x);
  });

  CodeEncoding enc;
  std::vector<Row> chosen;
  int extra = -1;
  bool spanning = c.dimension() == 0;
  for (auto& [w, words] : by_weight) {
    if (spanning) {
      if (extra >= extra_layers) break;
      ++extra;
    }
    enc.layers.push_back(w);
    chosen.insert(chosen.end(), words.begin(), words.end());
    if (!spanning && Code(ring, n, chosen) == c) {
      spanning = true;
      extra = 0;
      if (extra_layers == 0) break;
    }
  }
  if (!spanning) throw InvalidArgument("weight layers do not span the code");

  std::vector<int> colors(2 * n, 0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(2 * i, 2 * i + 1);
  for (const Row& x : chosen) {
    const int v = static_cast<int>(colors.size());
    colors.push_back(kCodewordColorBase + hamming_weight(x));
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      const int cv = ring.centered(x[i]);
      const int mag = cv < 0 ? -cv : cv;
      const int coord = 2 * i + (cv < 0 ? 1 : 0);
      if (mag == 1) {
        edges.emplace_back(v, coord);
        continue;
      }
      const int e = static_cast<int>(colors.size());
      colors.push_back(kEntryColorBase + mag);
      edges.emplace_back(v, e);
      if (2 * mag == ring.modulus()) {
        edges.emplace_back(e, 2 * i);
        edges.emplace_back(e, 2 * i + 1);
      } else {
        edges.emplace_back(e, coord);
      }
    }
  }
  enc.graph = ColoredGraph(std::move(colors));
  for (const auto& [a, b] : edges) enc.graph.add_edge(a, b);
  return enc;
}

MonomialTransform signed_to_monomial(const Permutation& p) {
  const int n = static_cast<int>(p.size()) / 2;
  std::vector<int> perm(n);
  std::vector<std::int8_t> signs(n);
  for (int i = 0; i < n; ++i) {
    perm[i] = p[2 * i] / 2;
    signs[i] = (p[2 * i] % 2) ? -1 : 1;
  }
  return MonomialTransform(perm, signs);
}

Permutation monomial_to_signed(const MonomialTransform& t) {
  const int n = t.degree();
  Permutation p(2 * n);
  for (int i = 0; i < n; ++i) {
    const int neg = t.signs()[i] < 0 ? 1 : 0;
    p[2 * i] = 2 * t.perm()[i] + neg;
    p[2 * i + 1] = 2 * t.perm()[i] + 1 - neg;
  }
  return p;
}

CodeCanon canonicalize_code(const Code& c, int extra_layers) {
  const CodeEncoding enc = encode_code(c, extra_layers);
  const CanonicalForm f = canonical_form(enc.graph);
  const int n2 = 2 * c.length();
  CodeCanon out;
  out.certificate = f.certificate;
  std::vector<Permutation> gens;
  for (const auto& g : f.automorphisms.generators()) {
    Permutation r(g.begin(), g.begin() + n2);
    out.aut_generators.push_back(signed_to_monomial(r));
    gens.push_back(std::move(r));
  }
  out.signed_group = PermGroup(n2, std::move(gens));
  out.aut_order = out.signed_group.order();
  return out;
}

}  // namespace wmkit
