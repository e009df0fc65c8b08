#include "shiftlab/generate.hpp"

#include <limits>

#include "shiftlab/error.hpp"

namespace shiftlab {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t index) { return Rng(splitmix(seed ^ splitmix(index))); }

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

namespace {

std::vector<std::string> symbol_names(int k) {
  std::vector<std::string> out;
  for (int i = 0; i < k; ++i) out.push_back(std::to_string(i));
  return out;
}

LabeledGraph draw(Rng& rng, int max_vertices, int max_alphabet, bool right_resolving) {
  const int nv = rng.between(1, max_vertices);
  const int na = rng.between(1, max_alphabet);
  std::vector<std::string> vertices;
  for (int v = 0; v < nv; ++v) vertices.push_back("v" + std::to_string(v));
  std::vector<Edge> edges;
  auto add = [&](int s, int d, int l) {
    edges.push_back({"e" + std::to_string(edges.size()), s, d, l});
  };
  if (right_resolving) {
    for (int v = 0; v < nv; ++v) {
      for (int a = 0; a < na; ++a) {
        if (rng.coin(2, 3)) add(v, rng.between(0, nv - 1), a);
      }
    }
  } else {
    const int ne = rng.between(nv, 2 * nv + 1);
    for (int i = 0; i < ne; ++i) add(rng.between(0, nv - 1), rng.between(0, nv - 1), rng.between(0, na - 1));
  }
  return LabeledGraph(Alphabet(symbol_names(na)), vertices, edges);
}

}  // namespace

LabeledGraph gen_labeled_graph(Rng& rng, int max_vertices, int max_alphabet, GraphKind kind) {
  for (int attempt = 0; attempt < kAttemptCap; ++attempt) {
    LabeledGraph g = draw(rng, max_vertices, max_alphabet, kind == GraphKind::IrreducibleRightResolving);
    if (kind == GraphKind::Any) return g;
    if (g.num_edges() > 0 && is_irreducible(g)) return g;
  }
  throw GenerationExhausted("no graph of the requested kind within the attempt cap");
}

LabeledGraph gen_labeled_graph(const TrialConfig& cfg, GraphKind kind) {
  Rng rng(cfg.seed);
  return gen_labeled_graph(rng, cfg.max_vertices, cfg.max_alphabet, kind);
}

std::vector<Symbol> gen_symbol_map(Rng& rng, std::size_t from, int max_symbols, int* used) {
  const int k = rng.between(1, max_symbols);
  std::vector<Symbol> map(from);
  for (auto& s : map) s = static_cast<Symbol>(rng.below(static_cast<std::uint64_t>(k)));
  // compact onto a prefix of the symbols, by first occurrence
  std::vector<int> rename(static_cast<std::size_t>(k), -1);
  int next = 0;
  for (auto& s : map) {
    auto& r = rename[static_cast<std::size_t>(s)];
    if (r < 0) r = next++;
    s = r;
  }
  if (used) *used = std::max(next, 1);
  return map;
}

}  // namespace shiftlab
