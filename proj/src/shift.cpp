#include "shiftlab/shift.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <unordered_map>

#include "shiftlab/error.hpp"

namespace shiftlab {

int Dfa::step(int q, const Word& w) const {
  for (Symbol a : w) {
    if (q < 0) return -1;
    q = step(q, a);
  }
  return q;
}

Dfa subset_dfa(const LabeledGraph& g, const BitSet& start) {
  Dfa d;
  d.alphabet_size = g.alphabet().size();
  if (start.none()) return d;
  std::unordered_map<BitSet, int, BitSetHash> index;
  index.emplace(start, 0);
  d.subsets.push_back(start);
  d.next.emplace_back(d.alphabet_size, -1);
  for (std::size_t q = 0; q < d.subsets.size(); ++q) {
    for (std::size_t a = 0; a < d.alphabet_size; ++a) {
      BitSet t = g.step(d.subsets[q], static_cast<Symbol>(a));
      if (t.none()) continue;
      auto [it, fresh] = index.emplace(t, static_cast<int>(d.subsets.size()));
      if (fresh) {
        d.subsets.push_back(t);
        d.next.emplace_back(d.alphabet_size, -1);
      }
      d.next[q][a] = it->second;
    }
  }
  return d;
}

std::vector<int> follower_classes(const Dfa& d) {
  const std::size_t n = d.size();
  std::vector<int> cls(n, 0);
  std::size_t count = n == 0 ? 0 : 1;
  while (true) {
    std::map<std::vector<int>, int> sig;
    std::vector<int> next_cls(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<int> key{cls[q]};
      for (int t : d.next[q]) key.push_back(t < 0 ? -1 : cls[static_cast<std::size_t>(t)]);
      auto [it, fresh] = sig.emplace(std::move(key), static_cast<int>(sig.size()));
      next_cls[q] = it->second;
    }
    cls = std::move(next_cls);
    if (sig.size() == count) break;
    count = sig.size();
  }
  return cls;
}

Dfa minimized(const Dfa& d) {
  const auto cls = follower_classes(d);
  Dfa m;
  m.alphabet_size = d.alphabet_size;
  int k = 0;
  for (int c : cls) k = std::max(k, c + 1);
  m.next.assign(static_cast<std::size_t>(k), std::vector<int>(d.alphabet_size, -1));
  m.subsets.assign(static_cast<std::size_t>(k), BitSet());
  std::vector<bool> done(static_cast<std::size_t>(k), false);
  for (std::size_t q = 0; q < d.size(); ++q) {
    const auto c = static_cast<std::size_t>(cls[q]);
    if (done[c]) continue;
    done[c] = true;
    m.subsets[c] = d.subsets[q];
    for (std::size_t a = 0; a < d.alphabet_size; ++a) {
      const int t = d.next[q][a];
      m.next[c][a] = t < 0 ? -1 : cls[static_cast<std::size_t>(t)];
    }
  }
  return m;
}

LabeledGraph dfa_graph(const Dfa& d, const Alphabet& alphabet, const std::vector<std::string>& names) {
  std::vector<Edge> edges;
  for (std::size_t q = 0; q < d.size(); ++q) {
    for (std::size_t a = 0; a < d.alphabet_size; ++a) {
      const int t = d.next[q][a];
      if (t < 0) continue;
      edges.push_back(Edge{names[q] + "/" + alphabet.name(static_cast<Symbol>(a)), static_cast<int>(q), t,
                           static_cast<Symbol>(a)});
    }
  }
  return LabeledGraph(alphabet, names, std::move(edges));
}

namespace {

std::string subset_name(const LabeledGraph& g, const BitSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t v) {
    if (!first) out += ",";
    first = false;
    out += g.vertex_name(static_cast<int>(v));
  });
  return out + "}";
}

std::vector<std::string> subset_names(const LabeledGraph& g, const Dfa& d) {
  std::vector<std::string> names;
  for (const auto& s : d.subsets) names.push_back(subset_name(g, s));
  return names;
}

Dfa graph_as_dfa(const LabeledGraph& g) {
  if (!is_right_resolving(g)) throw NotRightResolving("graph is not right-resolving");
  Dfa d;
  d.alphabet_size = g.alphabet().size();
  d.next.assign(g.num_vertices(), std::vector<int>(d.alphabet_size, -1));
  for (const auto& e : g.edges()) d.next[static_cast<std::size_t>(e.src)][static_cast<std::size_t>(e.label)] = e.dst;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) d.subsets.push_back(BitSet::singleton(g.num_vertices(), v));
  return d;
}

}  // namespace

struct SoficShift::Impl {
  LabeledGraph presentation;
  std::once_flag reduced_once, fischer_once;
  Dfa dfa;
  LabeledGraph reduced;
  std::optional<LabeledGraph> fischer;
};

SoficShift::SoficShift(const LabeledGraph& presentation) : impl_(std::make_shared<Impl>()) {
  impl_->presentation = trim_biextendable(presentation);
}

const LabeledGraph& SoficShift::presentation() const { return impl_->presentation; }

const Dfa& SoficShift::language_dfa() const {
  reduced();
  return impl_->dfa;
}

const LabeledGraph& SoficShift::reduced() const {
  std::call_once(impl_->reduced_once, [this] {
    const auto& p = impl_->presentation;
    impl_->dfa = minimized(subset_dfa(p, p.all_vertices()));
    impl_->reduced = trim_biextendable(dfa_graph(impl_->dfa, p.alphabet(), subset_names(p, impl_->dfa)));
  });
  return impl_->reduced;
}

const LabeledGraph& SoficShift::fischer() const {
  std::call_once(impl_->fischer_once, [this] {
    const LabeledGraph& r = reduced();
    for (const auto& comp : scc_decompose(r)) {
      if (comp.trivial) continue;
      BitSet keep(r.num_vertices());
      for (int v : comp.vertices) keep.set(static_cast<std::size_t>(v));
      LabeledGraph sub = induced_subgraph(r, keep);
      if (follower_contained(r, r.all_vertices(), sub, sub.all_vertices())) {
        impl_->fischer = minimize_right_resolving(sub);
        return;
      }
    }
  });
  if (!impl_->fischer) throw ReducibleShift("shift is not irreducible");
  return *impl_->fischer;
}

bool SoficShift::irreducible() const {
  try {
    fischer();
    return true;
  } catch (const ReducibleShift&) {
    return false;
  }
}

std::set<Word> language(const SoficShift& x, int n) {
  std::set<Word> out;
  if (n < 0) throw InvariantViolation("length-nonnegative", "negative word length");
  if (n == 0) {
    out.insert(Word{});
    return out;
  }
  const LabeledGraph& g = x.presentation();
  Word w;
  std::vector<BitSet> stack{g.all_vertices()};
  // Depth-first over words, pruning dead subsets.
  std::function<void()> rec = [&] {
    if (static_cast<int>(w.size()) == n) {
      out.insert(w);
      return;
    }
    for (std::size_t a = 0; a < g.alphabet().size(); ++a) {
      BitSet t = g.step(stack.back(), static_cast<Symbol>(a));
      if (t.none()) continue;
      w.push_back(static_cast<Symbol>(a));
      stack.push_back(std::move(t));
      rec();
      stack.pop_back();
      w.pop_back();
    }
  };
  if (!g.empty()) rec();
  return out;
}

bool in_language(const SoficShift& x, const Word& w) {
  const LabeledGraph& g = x.presentation();
  if (g.empty()) return false;
  return g.step(g.all_vertices(), w).any();
}

double entropy(const SoficShift& x) {
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  return std::log(spectral_radius(x.reduced()));
}

LabeledGraph determinize(const LabeledGraph& g) {
  LabeledGraph t = trim_biextendable(g);
  if (is_right_resolving(t)) {
    std::vector<std::string> names;
    for (const auto& v : t.vertex_names()) names.push_back("{" + v + "}");
    return LabeledGraph(t.alphabet(), std::move(names), t.edges());
  }
  Dfa d = subset_dfa(t, t.all_vertices());
  return trim_biextendable(dfa_graph(d, t.alphabet(), subset_names(t, d)));
}

LabeledGraph minimize_right_resolving(const LabeledGraph& g) {
  Dfa d = graph_as_dfa(g);
  const auto cls = follower_classes(d);
  std::vector<int> rep;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < cls.size(); ++v) {
    if (static_cast<std::size_t>(cls[v]) == rep.size()) {
      rep.push_back(static_cast<int>(v));
      names.push_back(g.vertex_name(static_cast<int>(v)));
    }
  }
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < rep.size(); ++c) {
    for (int e : g.out_edges(rep[c])) {
      const Edge& ed = g.edge(e);
      edges.push_back(Edge{ed.id, static_cast<int>(c), cls[static_cast<std::size_t>(ed.dst)], ed.label});
    }
  }
  return trim_biextendable(LabeledGraph(g.alphabet(), std::move(names), std::move(edges)));
}

LabeledGraph fischer_cover(const SoficShift& x) { return x.fischer(); }

std::optional<Word> find_magic_word(const LabeledGraph& g) {
  if (!is_right_resolving(g)) throw NotRightResolving("magic word search needs a right-resolving graph");
  if (g.empty()) return std::nullopt;
  Dfa d = subset_dfa(g, g.all_vertices());
  // Breadth-first over the subset graph; parents give the word.
  std::vector<int> parent(d.size(), -1);
  std::vector<Symbol> via(d.size(), -1);
  std::vector<bool> seen(d.size(), false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    if (d.subsets[static_cast<std::size_t>(q)].count() == 1) {
      Word w;
      for (int cur = q; cur != 0; cur = parent[static_cast<std::size_t>(cur)]) w.push_back(via[static_cast<std::size_t>(cur)]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (std::size_t a = 0; a < d.alphabet_size; ++a) {
      const int t = d.next[static_cast<std::size_t>(q)][a];
      if (t < 0 || seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = true;
      parent[static_cast<std::size_t>(t)] = q;
      via[static_cast<std::size_t>(t)] = static_cast<Symbol>(a);
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

bool is_synchronizing_word(const SoficShift& x, const Word& v) {
  if (!in_language(x, v)) throw WordNotInLanguage("word is not in the language");
  const LabeledGraph& f = x.fischer();
  return f.step(f.all_vertices(), v).count() == 1;
}

SftDecision is_sft(const SoficShift& x, int m_max) {
  SftDecision out;
  out.bounds["m_max"] = m_max;
  const Dfa& d = x.language_dfa();
  const std::size_t n = d.size();
  if (n <= 1) {
    out.verdict = Verdict::Proved;
    out.m = 1;
    out.detail = "single follower class";
    return out;
  }
  // Differing pairs (s, q0) stepped in lockstep; a reachable cycle among
  // them means no finite memory determines follower sets.
  auto id = [n](std::size_t p, std::size_t q) { return p * n + q; };
  std::vector<int> state(n * n, 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<int> depth(n * n, 0);  // longest differing path from here
  bool cyclic = false;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t p, std::size_t q) {
    const auto me = id(p, q);
    state[me] = 1;
    int best = 0;
    for (std::size_t a = 0; a < d.alphabet_size && !cyclic; ++a) {
      const int tp = d.next[p][a];
      const int tq = d.next[q][a];
      if (tp < 0 || tq < 0 || tp == tq) continue;
      const auto nxt = id(static_cast<std::size_t>(tp), static_cast<std::size_t>(tq));
      if (state[nxt] == 1) {
        cyclic = true;
        return;
      }
      if (state[nxt] == 0) dfs(static_cast<std::size_t>(tp), static_cast<std::size_t>(tq));
      best = std::max(best, depth[nxt] + 1);
    }
    depth[me] = best;
    state[me] = 2;
  };
  int longest = 0;
  for (std::size_t s = 1; s < n && !cyclic; ++s) {
    if (state[id(s, 0)] == 0) dfs(s, 0);
    longest = std::max(longest, depth[id(s, 0)]);
  }
  if (cyclic) {
    out.verdict = Verdict::Refuted;
    out.detail = "distinct follower classes persist along a cycle of equal words";
    return out;
  }
  out.m = longest + 1;
  if (out.m <= m_max) {
    out.verdict = Verdict::Proved;
  } else {
    out.verdict = Verdict::Inconclusive;
    out.detail = "finite type with step " + std::to_string(out.m) + " above the bound";
  }
  return out;
}

int svgl_gap(const SoficShift& x) {
  const LabeledGraph& f = x.fischer();
  const std::size_t n = f.num_vertices();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<int> queue{static_cast<int>(s)};
    dist[s][s] = 0;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int e : f.out_edges(v)) {
        const auto w = static_cast<std::size_t>(f.edge(e).dst);
        if (dist[s][w] < 0) {
          dist[s][w] = dist[s][static_cast<std::size_t>(v)] + 1;
          queue.push_back(static_cast<int>(w));
        }
      }
    }
  }
  const Dfa fwd = subset_dfa(f, f.all_vertices());
  const Dfa bwd = subset_dfa(reversed(f), f.all_vertices());
  int gap = 0;
  for (const auto& t : fwd.subsets) {
    for (const auto& s : bwd.subsets) {
      int best = std::numeric_limits<int>::max();
      t.for_each([&](std::size_t a) {
        s.for_each([&](std::size_t b) {
          if (dist[a][b] >= 0) best = std::min(best, dist[a][b]);
        });
      });
      gap = std::max(gap, best);
    }
  }
  return gap;
}

bool FollowerSet::contains(const Word& w) const {
  return recognizer.step(BitSet::singleton(recognizer.num_vertices(), static_cast<std::size_t>(root)), w).any();
}

FollowerSet follower_set(const LabeledGraph& g, int vertex) {
  if (vertex < 0 || static_cast<std::size_t>(vertex) >= g.num_vertices()) {
    throw UnknownVertex("unknown vertex index " + std::to_string(vertex));
  }
  BitSet keep = reachable_from(g, BitSet::singleton(g.num_vertices(), static_cast<std::size_t>(vertex)));
  FollowerSet fs;
  fs.recognizer = induced_subgraph(g, keep);
  fs.root = fs.recognizer.vertex_index(g.vertex_name(vertex));
  return fs;
}

FollowerSet follower_set(const LabeledGraph& g, const std::string& vertex) {
  return follower_set(g, g.vertex_index(vertex));
}

bool same_followers(const FollowerSet& a, const FollowerSet& b) {
  const auto sa = BitSet::singleton(a.recognizer.num_vertices(), static_cast<std::size_t>(a.root));
  const auto sb = BitSet::singleton(b.recognizer.num_vertices(), static_cast<std::size_t>(b.root));
  return follower_contained(a.recognizer, sa, b.recognizer, sb) &&
         follower_contained(b.recognizer, sb, a.recognizer, sa);
}

std::int64_t count_preimages_of_periodic(const LabeledGraph& g, const Word& p) {
  if (p.empty()) throw InvariantViolation("period-nonempty", "periodic word must be nonempty");
  const std::size_t n = g.num_vertices();
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    // Ends of all p-labelled paths from u, with multiplicity.
    std::vector<std::int64_t> ways(n, 0);
    ways[u] = 1;
    for (Symbol a : p) {
      std::vector<std::int64_t> nxt(n, 0);
      for (std::size_t v = 0; v < n; ++v) {
        if (ways[v] == 0) continue;
        for (int e : g.out_edges(static_cast<int>(v))) {
          if (g.edge(e).label == a) nxt[static_cast<std::size_t>(g.edge(e).dst)] += ways[v];
        }
      }
      ways = std::move(nxt);
    }
    for (std::size_t v = 0; v < n; ++v) {
      for (std::int64_t k = 0; k < std::min<std::int64_t>(ways[v], 2); ++k) {
        edges.push_back(Edge{std::to_string(edges.size()), static_cast<int>(u), static_cast<int>(v), 0});
      }
    }
  }
  LabeledGraph m(Alphabet({"p"}), g.vertex_names(), std::move(edges));
  const auto comps = scc_decompose(m);
  std::vector<int> comp_of(n, -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (int v : comps[c].vertices) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
  }
  std::int64_t total = 0;
  BitSet cyclic(n);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (comps[c].trivial) continue;
    std::size_t inside = 0;
    for (int v : comps[c].vertices) {
      cyclic.set(static_cast<std::size_t>(v));
      for (int e : m.out_edges(v)) {
        if (comp_of[static_cast<std::size_t>(m.edge(e).dst)] == static_cast<int>(c)) ++inside;
      }
    }
    if (inside != comps[c].vertices.size()) {
      throw InfinitelyManyPreimages("periodic point has uncountably many presenting paths");
    }
    total += static_cast<std::int64_t>(inside);
  }
  if (total == 0) throw PeriodicPointNotInShift("periodic point is not presented by the graph");
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (comps[c].trivial) continue;
    BitSet from(n);
    for (int v : comps[c].vertices) from.set(static_cast<std::size_t>(v));
    BitSet reach = reachable_from(m, from);
    reach.for_each([&](std::size_t v) {
      if (cyclic.test(v) && comp_of[v] != static_cast<int>(c)) {
        throw InfinitelyManyPreimages("periodic point has infinitely many presenting paths");
      }
    });
  }
  return total;
}

bool follower_contained(const LabeledGraph& a, const BitSet& from_a, const LabeledGraph& b,
                        const BitSet& from_b, Word* counterexample) {
  if (a.alphabet() != b.alphabet()) throw AlphabetMismatch("containment needs equal alphabets");
  using Key = std::pair<BitSet, BitSet>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return hash_combine(k.first.hash(), k.second.hash()); }
  };
  std::unordered_map<Key, std::pair<int, Symbol>, KeyHash> parent;
  std::vector<Key> order;
  auto report = [&](std::size_t idx) {
    if (!counterexample) return;
    Word w;
    for (int cur = static_cast<int>(idx); cur > 0;) {
      const auto& [par, sym] = parent.at(order[static_cast<std::size_t>(cur)]);
      w.push_back(sym);
      cur = par;
    }
    std::reverse(w.begin(), w.end());
    *counterexample = std::move(w);
  };
  if (from_a.none()) return true;
  order.emplace_back(from_a, from_b);
  parent.emplace(order.back(), std::make_pair(-1, Symbol{-1}));
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i].second.none()) {
      report(i);
      return false;
    }
    for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
      BitSet ta = a.step(order[i].first, static_cast<Symbol>(s));
      if (ta.none()) continue;
      Key k{std::move(ta), b.step(order[i].second, static_cast<Symbol>(s))};
      if (parent.count(k)) continue;
      parent.emplace(k, std::make_pair(static_cast<int>(i), static_cast<Symbol>(s)));
      order.push_back(std::move(k));
    }
  }
  return true;
}

bool is_subshift(const SoficShift& a, const SoficShift& b) {
  if (a.empty()) return true;
  return follower_contained(a.presentation(), a.presentation().all_vertices(), b.presentation(),
                            b.presentation().all_vertices());
}

bool same_shift(const SoficShift& a, const SoficShift& b) { return is_subshift(a, b) && is_subshift(b, a); }

}  // namespace shiftlab
