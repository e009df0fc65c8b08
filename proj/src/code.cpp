#include "shiftlab/code.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>

#include "shiftlab/error.hpp"

namespace shiftlab {

namespace {

constexpr double kEntropySlack = 1e-9;

std::string join_ids(const LabeledGraph& g, const std::vector<int>& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += ".";
    out += g.edge(path[i]).id;
  }
  return out;
}

Word reversed_word(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

std::vector<std::vector<int>> all_paths(const LabeledGraph& g, int length) {
  std::vector<std::vector<int>> out;
  if (length <= 0) return out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int v) {
    if (static_cast<int>(cur.size()) == length) {
      out.push_back(cur);
      return;
    }
    for (int e : g.out_edges(v)) {
      cur.push_back(e);
      rec(g.edge(e).dst);
      cur.pop_back();
    }
  };
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    cur.assign(1, static_cast<int>(e));
    if (length == 1) {
      out.push_back(cur);
      continue;
    }
    rec(g.edge(static_cast<int>(e)).dst);
  }
  return out;
}

SlidingBlockCode::SlidingBlockCode(SoficShift domain, Alphabet codomain, int memory, int anticipation,
                                   std::map<Word, Symbol> table)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      memory_(memory),
      anticipation_(anticipation),
      table_(std::move(table)) {
  if (memory_ < 0 || anticipation_ < 0) {
    throw InvariantViolation("window-nonnegative", "memory and anticipation must be nonnegative");
  }
  const auto blocks = language(domain_, window());
  for (const auto& [block, image] : table_) {
    if (!blocks.count(block)) {
      throw InvariantViolation("table-admissible", "block '" + domain_.alphabet().spell(block) +
                                                       "' is not admissible in the domain");
    }
    if (image < 0 || static_cast<std::size_t>(image) >= codomain_.size()) {
      throw InvariantViolation("table-codomain", "image symbol outside the codomain alphabet");
    }
  }
  for (const auto& block : blocks) {
    if (!table_.count(block)) {
      throw InvariantViolation("table-total", "no image for block '" + domain_.alphabet().spell(block) + "'");
    }
  }
}

SlidingBlockCode SlidingBlockCode::identity(const SoficShift& x) {
  std::map<Word, Symbol> table;
  for (const auto& w : language(x, 1)) table[w] = w[0];
  return SlidingBlockCode(x, x.alphabet(), 0, 0, std::move(table));
}

SlidingBlockCode SlidingBlockCode::one_block(const SoficShift& x, const Alphabet& codomain,
                                             const std::vector<Symbol>& map) {
  std::map<Word, Symbol> table;
  for (const auto& w : language(x, 1)) table[w] = map.at(static_cast<std::size_t>(w[0]));
  return SlidingBlockCode(x, codomain, 0, 0, std::move(table));
}

SlidingBlockCode SlidingBlockCode::cover_map(const LabeledGraph& g) {
  SoficShift edges(edge_labeled(g));
  std::vector<Symbol> map;
  for (const auto& e : g.edges()) map.push_back(e.label);
  return one_block(edges, g.alphabet(), map);
}

Symbol SlidingBlockCode::at(const Word& block) const {
  auto it = table_.find(block);
  if (it == table_.end()) {
    throw WordNotAdmissible("block '" + domain_.alphabet().spell(block) + "' is not admissible");
  }
  return it->second;
}

Word apply_block(const SlidingBlockCode& phi, const Word& w) {
  const int n = phi.window();
  if (static_cast<int>(w.size()) < n) throw WordTooShort("word shorter than the code window");
  if (!in_language(phi.domain(), w)) throw WordNotAdmissible("word is not admissible in the domain");
  Word out;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= w.size(); ++i) {
    out.push_back(phi.at(Word(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + n)));
  }
  return out;
}

SlidingBlockCode compose(const SlidingBlockCode& psi, const SlidingBlockCode& phi) {
  if (phi.codomain() != psi.domain().alphabet()) {
    throw DomainMismatch("codomain alphabet of the inner code differs from the outer domain");
  }
  if (!is_subshift(image_presentation(phi), psi.domain())) {
    throw DomainMismatch("image of the inner code is not contained in the outer domain");
  }
  const int m = phi.memory() + psi.memory();
  const int n = phi.anticipation() + psi.anticipation();
  std::map<Word, Symbol> table;
  for (const auto& block : language(phi.domain(), m + n + 1)) {
    table[block] = apply_block(psi, apply_block(phi, block))[0];
  }
  return SlidingBlockCode(phi.domain(), psi.codomain(), m, n, std::move(table));
}

SlidingBlockCode mirrored(const SlidingBlockCode& phi) {
  SoficShift rev(reversed(phi.domain().presentation()));
  std::map<Word, Symbol> table;
  for (const auto& [block, image] : phi.table()) table[reversed_word(block)] = image;
  return SlidingBlockCode(rev, phi.codomain(), phi.anticipation(), phi.memory(), std::move(table));
}

Recoding recode_on(const SlidingBlockCode& phi, const LabeledGraph& presentation) {
  if (presentation.alphabet() != phi.domain().alphabet()) {
    throw AlphabetMismatch("presentation alphabet differs from the code domain");
  }
  Recoding r;
  r.presentation = trim_biextendable(presentation);
  r.memory = phi.memory();
  r.anticipation = phi.anticipation();
  const LabeledGraph& g = r.presentation;
  const int n = phi.window();
  std::vector<std::string> vertices;
  std::map<std::vector<int>, int> index;
  if (n == 1) {
    vertices = g.vertex_names();
  } else {
    for (auto& p : all_paths(g, n - 1)) {
      index.emplace(p, static_cast<int>(vertices.size()));
      vertices.push_back(join_ids(g, p));
    }
  }
  std::vector<Edge> edges;
  for (auto& p : all_paths(g, n)) {
    Word labels;
    for (int e : p) labels.push_back(g.edge(e).label);
    int src, dst;
    if (n == 1) {
      src = g.edge(p[0]).src;
      dst = g.edge(p[0]).dst;
    } else {
      src = index.at(std::vector<int>(p.begin(), p.end() - 1));
      dst = index.at(std::vector<int>(p.begin() + 1, p.end()));
    }
    edges.push_back(Edge{join_ids(g, p), src, dst, phi.at(labels)});
    r.middle.push_back(labels[static_cast<std::size_t>(phi.memory())]);
    r.base.push_back(std::move(p));
  }
  r.graph = LabeledGraph(phi.codomain(), std::move(vertices), std::move(edges));
  return r;
}

Recoding recode(const SlidingBlockCode& phi) { return recode_on(phi, phi.domain().presentation()); }

SoficShift image_presentation(const SlidingBlockCode& phi) { return SoficShift(recode(phi).graph); }

bool is_factor_onto(const SlidingBlockCode& phi, const SoficShift& y) {
  if (phi.codomain() != y.alphabet()) throw AlphabetMismatch("codomain alphabet differs from the target shift");
  return same_shift(image_presentation(phi), y);
}

namespace {

// Pairs of edges with equal labels; vertex (i, j) has index i * |b| + j.
struct PairGraph {
  LabeledGraph g;
  std::vector<std::pair<int, int>> parts;
  std::size_t width = 0;
};

PairGraph equal_label_pairs(const LabeledGraph& a, const LabeledGraph& b) {
  PairGraph p;
  p.width = b.num_vertices();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a.num_vertices(); ++i) {
    for (std::size_t j = 0; j < b.num_vertices(); ++j) names.push_back(std::to_string(i) + "," + std::to_string(j));
  }
  std::vector<Edge> edges;
  for (std::size_t e1 = 0; e1 < a.num_edges(); ++e1) {
    const Edge& x = a.edges()[e1];
    for (std::size_t e2 = 0; e2 < b.num_edges(); ++e2) {
      const Edge& y = b.edges()[e2];
      if (x.label != y.label) continue;
      edges.push_back(Edge{std::to_string(e1) + "," + std::to_string(e2),
                           static_cast<int>(static_cast<std::size_t>(x.src) * p.width + static_cast<std::size_t>(y.src)),
                           static_cast<int>(static_cast<std::size_t>(x.dst) * p.width + static_cast<std::size_t>(y.dst)),
                           x.label});
      p.parts.emplace_back(static_cast<int>(e1), static_cast<int>(e2));
    }
  }
  p.g = LabeledGraph(a.alphabet(), std::move(names), std::move(edges));
  return p;
}

BitSet cyclic_vertices(const LabeledGraph& g) {
  BitSet out(g.num_vertices());
  for (const auto& c : scc_decompose(g)) {
    if (c.trivial) continue;
    for (int v : c.vertices) out.set(static_cast<std::size_t>(v));
  }
  return out;
}

LabeledGraph edge_subgraph(const LabeledGraph& g, const std::vector<bool>& keep) {
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (keep[e]) edges.push_back(g.edges()[e]);
  }
  return LabeledGraph(g.alphabet(), g.vertex_names(), std::move(edges));
}

// Shortest word reaching each state of a subset automaton.
std::vector<Word> state_words(const Dfa& d) {
  std::vector<Word> words(d.size());
  std::vector<bool> seen(d.size(), false);
  if (d.size() == 0) return words;
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const auto q = static_cast<std::size_t>(queue.front());
    queue.pop_front();
    for (std::size_t a = 0; a < d.alphabet_size; ++a) {
      const int t = d.next[q][a];
      if (t < 0 || seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = true;
      words[static_cast<std::size_t>(t)] = words[q];
      words[static_cast<std::size_t>(t)].push_back(static_cast<Symbol>(a));
      queue.push_back(t);
    }
  }
  return words;
}

bool drift_pattern(const LabeledGraph& h) {
  const std::size_t n = h.num_vertices();
  const std::size_t k = h.alphabet().size();
  if (n < 2) return false;
  std::vector<std::vector<std::vector<int>>> succ(n, std::vector<std::vector<int>>(k));
  for (const auto& e : h.edges()) {
    auto& s = succ[static_cast<std::size_t>(e.src)][static_cast<std::size_t>(e.label)];
    if (std::find(s.begin(), s.end(), e.dst) == s.end()) s.push_back(e.dst);
  }
  const PairGraph pg = equal_label_pairs(h, h);
  for (std::size_t p = 0; p < n; ++p) {
    const BitSet from_pp = reachable_from(pg.g, BitSet::singleton(n * n, p * n + p));
    for (std::size_t q = 0; q < n; ++q) {
      if (q == p || !from_pp.test(p * n + q)) continue;
      if (!reachable_from(pg.g, BitSet::singleton(n * n, p * n + q)).test(q * n + q)) continue;
      // Triples stepped in lockstep from (p,p,q), looking for (p,q,q).
      const std::size_t target = (p * n + q) * n + q;
      std::vector<bool> seen(n * n * n, false);
      std::deque<std::size_t> queue{(p * n + p) * n + q};
      bool first = true;
      while (!queue.empty()) {
        const std::size_t t = queue.front();
        queue.pop_front();
        const std::size_t x = t / (n * n), y = (t / n) % n, z = t % n;
        if (!first && t == target) return true;
        first = false;
        for (std::size_t a = 0; a < k; ++a) {
          for (int x2 : succ[x][a]) {
            for (int y2 : succ[y][a]) {
              for (int z2 : succ[z][a]) {
                const std::size_t u = (static_cast<std::size_t>(x2) * n + static_cast<std::size_t>(y2)) * n +
                                      static_cast<std::size_t>(z2);
                if (u == target) return true;
                if (!seen[u]) {
                  seen[u] = true;
                  queue.push_back(u);
                }
              }
            }
          }
        }
      }
    }
  }
  return false;
}

bool right_closing_on(const Recoding& r) {
  const PairGraph pg = equal_label_pairs(r.graph, r.graph);
  std::vector<bool> same(pg.g.num_edges());
  for (std::size_t e = 0; e < pg.g.num_edges(); ++e) {
    same[e] = r.middle[static_cast<std::size_t>(pg.parts[e].first)] ==
              r.middle[static_cast<std::size_t>(pg.parts[e].second)];
  }
  const LabeledGraph s = edge_subgraph(pg.g, same);
  const BitSet past_same = reachable_from(s, cyclic_vertices(s));
  const BitSet future = coreachable_to(pg.g, cyclic_vertices(pg.g));
  for (std::size_t e = 0; e < pg.g.num_edges(); ++e) {
    if (same[e]) continue;
    const Edge& ed = pg.g.edges()[e];
    if (past_same.test(static_cast<std::size_t>(ed.src)) && future.test(static_cast<std::size_t>(ed.dst))) {
      return false;
    }
  }
  return true;
}

}  // namespace

FiniteToOneReport finite_to_one_report(const SlidingBlockCode& phi) {
  FiniteToOneReport rep;
  const Recoding r = recode_on(phi, determinize(phi.domain().presentation()));
  const LabeledGraph& h = r.graph;
  const std::size_t n = h.num_vertices();
  const PairGraph pg = equal_label_pairs(h, h);
  const auto comps = scc_decompose(pg.g);
  std::vector<int> comp_of(pg.g.num_vertices(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (int v : comps[c].vertices) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
  }
  std::vector<bool> has_diag(comps.size(), false), has_split(comps.size(), false);
  for (std::size_t v = 0; v < n; ++v) has_diag[static_cast<std::size_t>(comp_of[v * n + v])] = true;
  for (std::size_t e = 0; e < pg.g.num_edges(); ++e) {
    const Edge& ed = pg.g.edges()[e];
    if (pg.parts[e].first != pg.parts[e].second && comp_of[static_cast<std::size_t>(ed.src)] == comp_of[static_cast<std::size_t>(ed.dst)]) {
      has_split[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(ed.src)])] = true;
    }
  }
  for (std::size_t c = 0; c < comps.size(); ++c) rep.diamond = rep.diamond || (has_diag[c] && has_split[c]);
  rep.drift = !rep.diamond && drift_pattern(h);
  bool drop = false;
  for (const auto& c : scc_decompose(h)) {
    if (c.trivial) continue;
    BitSet keep(n);
    for (int v : c.vertices) keep.set(static_cast<std::size_t>(v));
    const LabeledGraph sub = induced_subgraph(h, keep);
    const double top = std::log(spectral_radius(sub));
    const double img = entropy(SoficShift(sub));
    rep.component_entropy.push_back(top);
    rep.component_image_entropy.push_back(img);
    if (top > img + kEntropySlack) drop = true;
  }
  if (drop != rep.diamond) {
    throw ConsistencyFault("diamond search and component entropies disagree on finite-to-one");
  }
  rep.finite_to_one = !rep.diamond && !rep.drift;
  return rep;
}

bool is_finite_to_one(const SlidingBlockCode& phi) { return finite_to_one_report(phi).finite_to_one; }

DegreeResult degree(const SlidingBlockCode& phi) {
  if (!is_finite_to_one(phi)) throw NotFiniteToOne("code is not finite-to-one");
  const Recoding r = recode_on(phi, phi.domain().fischer());
  const LabeledGraph& h = r.graph;
  const Dfa fwd = subset_dfa(h, h.all_vertices());
  const LabeledGraph back_graph = reversed(h);
  const Dfa bwd = subset_dfa(back_graph, h.all_vertices());
  auto count = [&](const BitSet& left, Symbol a, const BitSet& right, std::vector<int>* ids) {
    int c = 0;
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
      const Edge& ed = h.edges()[e];
      if (ed.label == a && left.test(static_cast<std::size_t>(ed.src)) && right.test(static_cast<std::size_t>(ed.dst))) {
        ++c;
        if (ids) ids->push_back(static_cast<int>(e));
      }
    }
    return c;
  };
  DegreeResult best;
  std::size_t bl = 0, br = 0;
  Symbol ba = 0;
  for (std::size_t l = 0; l < fwd.size(); ++l) {
    for (std::size_t a = 0; a < h.alphabet().size(); ++a) {
      for (std::size_t rr = 0; rr < bwd.size(); ++rr) {
        const int c = count(fwd.subsets[l], static_cast<Symbol>(a), bwd.subsets[rr], nullptr);
        if (c > 0 && (best.d == 0 || c < best.d)) {
          best.d = c;
          bl = l;
          br = rr;
          ba = static_cast<Symbol>(a);
        }
      }
    }
  }
  if (best.d == 0) throw NotFiniteToOne("empty domain");
  const auto left_words = state_words(fwd);
  const auto right_words = state_words(bwd);
  best.witness = left_words[bl];
  best.position = static_cast<int>(best.witness.size());
  best.witness.push_back(ba);
  Word right = right_words[br];
  std::reverse(right.begin(), right.end());
  best.witness.insert(best.witness.end(), right.begin(), right.end());
  std::vector<int> ids;
  count(fwd.subsets[bl], ba, bwd.subsets[br], &ids);
  for (int e : ids) best.fiber.push_back(h.edge(e).id);
  best.certified = true;
  for (std::size_t b = 0; b < h.alphabet().size(); ++b) {
    const BitSet left = h.step(h.step(h.all_vertices(), static_cast<Symbol>(b)), left_words[bl]);
    for (std::size_t c = 0; c < h.alphabet().size(); ++c) {
      Word rev = right_words[br];
      rev.insert(rev.begin(), static_cast<Symbol>(c));
      const BitSet rset = back_graph.step(h.all_vertices(), rev);
      const int k = count(left, ba, rset, nullptr);
      if (k != 0 && k != best.d) best.certified = false;
    }
  }
  return best;
}

bool is_right_closing(const SlidingBlockCode& phi) { return right_closing_on(recode(phi)); }

bool is_left_closing(const SlidingBlockCode& phi) { return right_closing_on(recode(mirrored(phi))); }

FiberProduct fiber_product(const SlidingBlockCode& phi1, const SlidingBlockCode& phi2) {
  if (phi1.codomain() != phi2.codomain()) throw AlphabetMismatch("fiber product needs equal codomains");
  const Recoding r1 = recode(phi1);
  const Recoding r2 = recode(phi2);
  const Alphabet& a1 = phi1.domain().alphabet();
  const Alphabet& a2 = phi2.domain().alphabet();
  std::vector<std::string> names;
  for (const auto& x : a1.names()) {
    for (const auto& y : a2.names()) names.push_back("(" + x + "," + y + ")");
  }
  const Alphabet pairs(names);
  const PairGraph pg = equal_label_pairs(r1.graph, r2.graph);
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < pg.g.num_edges(); ++e) {
    const auto [e1, e2] = pg.parts[e];
    const Edge& ed = pg.g.edges()[e];
    edges.push_back(Edge{"(" + r1.graph.edge(e1).id + "," + r2.graph.edge(e2).id + ")", ed.src, ed.dst,
                         static_cast<Symbol>(static_cast<std::size_t>(r1.middle[static_cast<std::size_t>(e1)]) * a2.size() +
                                             static_cast<std::size_t>(r2.middle[static_cast<std::size_t>(e2)]))});
  }
  FiberProduct out;
  out.sigma = trim_biextendable(LabeledGraph(pairs, pg.g.vertex_names(), std::move(edges)));
  SoficShift sigma(out.sigma);
  std::vector<Symbol> first, second;
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    first.push_back(static_cast<Symbol>(s / a2.size()));
    second.push_back(static_cast<Symbol>(s % a2.size()));
  }
  out.psi1 = SlidingBlockCode::one_block(sigma, a1, first);
  out.psi2 = SlidingBlockCode::one_block(sigma, a2, second);
  return out;
}

namespace {

// Assignment of one value per variable under binary "adjacent blocks"
// constraints; arc consistency plus lexicographic backtracking.
class BlockCsp {
 public:
  BlockCsp(std::vector<std::vector<int>> domains, std::vector<std::pair<int, int>> links,
           std::function<bool(int, int)> ok)
      : domains_(std::move(domains)), links_(std::move(links)), ok_(std::move(ok)) {}

  std::optional<std::vector<int>> solve() {
    auto d = domains_;
    if (!propagate(d)) return std::nullopt;
    return search(d, 0);
  }

 private:
  bool propagate(std::vector<std::vector<int>>& d) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [x, y] : links_) {
        auto& dx = d[static_cast<std::size_t>(x)];
        auto& dy = d[static_cast<std::size_t>(y)];
        const auto before_x = dx.size(), before_y = dy.size();
        std::erase_if(dx, [&](int a) { return std::none_of(dy.begin(), dy.end(), [&](int b) { return ok_(a, b); }); });
        std::erase_if(dy, [&](int b) { return std::none_of(dx.begin(), dx.end(), [&](int a) { return ok_(a, b); }); });
        if (dx.empty() || dy.empty()) return false;
        changed = changed || dx.size() != before_x || dy.size() != before_y;
      }
    }
    return true;
  }

  std::optional<std::vector<int>> search(std::vector<std::vector<int>>& d, std::size_t var) const {
    while (var < d.size() && d[var].size() == 1) ++var;
    if (var == d.size()) {
      std::vector<int> out;
      for (const auto& v : d) out.push_back(v.front());
      return out;
    }
    for (int value : std::vector<int>(d[var])) {
      auto trial = d;
      trial[var] = {value};
      if (!propagate(trial)) continue;
      if (auto found = search(trial, var + 1)) return found;
    }
    return std::nullopt;
  }

  std::vector<std::vector<int>> domains_;
  std::vector<std::pair<int, int>> links_;
  std::function<bool(int, int)> ok_;
};

}  // namespace

std::optional<SlidingBlockCode> lift_code(const SlidingBlockCode& f, const SoficShift& x1, const SoficShift& x2,
                                          int w_max) {
  const LabeledGraph& g1 = x1.fischer();
  const LabeledGraph& g2 = x2.fischer();
  if (f.domain().alphabet() != x1.alphabet() || !same_shift(f.domain(), x1)) {
    throw DomainMismatch("code domain differs from the source shift");
  }
  if (f.codomain() != x2.alphabet() || !is_subshift(image_presentation(f), x2)) {
    throw DomainMismatch("code image is not contained in the target shift");
  }
  const Recoding h1 = recode_on(f, g1);
  const PairGraph q = equal_label_pairs(h1.graph, g2);
  const BitSet past = reachable_from(q.g, cyclic_vertices(q.g));
  const BitSet future = coreachable_to(q.g, cyclic_vertices(q.g));
  const int m = f.memory();
  const int n = f.anticipation();
  // G1 edge at the coordinate of a Q edge.
  auto g1_edge = [&](std::size_t e) {
    return h1.base[static_cast<std::size_t>(q.parts[e].first)][static_cast<std::size_t>(m)];
  };
  auto step_fwd = [&](const BitSet& from, int g1e) {
    BitSet out(q.g.num_vertices());
    for (std::size_t e = 0; e < q.g.num_edges(); ++e) {
      const Edge& ed = q.g.edges()[e];
      if (g1_edge(e) == g1e && from.test(static_cast<std::size_t>(ed.src)) && future.test(static_cast<std::size_t>(ed.dst))) {
        out.set(static_cast<std::size_t>(ed.dst));
      }
    }
    return out;
  };
  auto step_back = [&](const BitSet& to, int g1e) {
    BitSet out(q.g.num_vertices());
    for (std::size_t e = 0; e < q.g.num_edges(); ++e) {
      const Edge& ed = q.g.edges()[e];
      if (g1_edge(e) == g1e && to.test(static_cast<std::size_t>(ed.dst)) && past.test(static_cast<std::size_t>(ed.src))) {
        out.set(static_cast<std::size_t>(ed.src));
      }
    }
    return out;
  };
  std::vector<std::string> g2_ids;
  for (const auto& e : g2.edges()) g2_ids.push_back(e.id);
  const Alphabet target(g2_ids);
  SoficShift edge_shift(edge_labeled(g1));

  for (int w = 1; w <= w_max; ++w) {
    const auto blocks = all_paths(g1, w);
    std::map<std::vector<int>, int> block_index;
    for (std::size_t i = 0; i < blocks.size(); ++i) block_index[blocks[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> links;
    for (const auto& p : all_paths(g1, w + 1)) {
      links.emplace_back(block_index.at(std::vector<int>(p.begin(), p.end() - 1)),
                         block_index.at(std::vector<int>(p.begin() + 1, p.end())));
    }
    for (int a = 0; a < w; ++a) {
      std::vector<std::vector<int>> domains;
      bool feasible = true;
      for (const auto& beta : blocks) {
        BitSet fwd = past;
        for (int j = 0; j < a; ++j) fwd = step_fwd(fwd, beta[static_cast<std::size_t>(j)]);
        BitSet bwd = future;
        for (int j = w - 1; j > a; --j) bwd = step_back(bwd, beta[static_cast<std::size_t>(j)]);
        std::set<int> cand;
        std::set<Symbol> labels;
        for (std::size_t e = 0; e < q.g.num_edges(); ++e) {
          const Edge& ed = q.g.edges()[e];
          if (g1_edge(e) == beta[static_cast<std::size_t>(a)] && fwd.test(static_cast<std::size_t>(ed.src)) &&
              bwd.test(static_cast<std::size_t>(ed.dst))) {
            cand.insert(q.parts[e].second);
            labels.insert(ed.label);
          }
        }
        // The image symbol at the origin must be determined by the block.
        if (cand.empty() || labels.size() != 1) {
          feasible = false;
          break;
        }
        domains.emplace_back(cand.begin(), cand.end());
      }
      if (!feasible) continue;
      BlockCsp csp(domains, links, [&](int x, int y) { return g2.edge(x).dst == g2.edge(y).src; });
      auto solution = csp.solve();
      if (!solution) continue;
      std::map<Word, Symbol> table;
      for (std::size_t i = 0; i < blocks.size(); ++i) table[Word(blocks[i].begin(), blocks[i].end())] = (*solution)[i];
      SlidingBlockCode lifted(edge_shift, target, a, w - 1 - a, std::move(table));
      // Exact check of ℒ2∘F = f∘ℒ1 on every block spanning both windows.
      const int lo = std::min(-a, -m);
      const int hi = std::max(w - 1 - a, n);
      bool good = true;
      for (const auto& p : all_paths(g1, hi - lo + 1)) {
        Word fb(p.begin() + (-a - lo), p.begin() + (-a - lo) + w);
        Word lab;
        for (int j = -m; j <= n; ++j) lab.push_back(g1.edge(p[static_cast<std::size_t>(j - lo)]).label);
        if (g2.edge(lifted.at(fb)).label != f.at(lab)) {
          good = false;
          break;
        }
      }
      for (const auto& [x, y] : links) {
        if (g2.edge((*solution)[static_cast<std::size_t>(x)]).dst != g2.edge((*solution)[static_cast<std::size_t>(y)]).src) good = false;
      }
      if (good) return lifted;
    }
  }
  return std::nullopt;
}

}  // namespace shiftlab
