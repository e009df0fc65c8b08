#include "shiftlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "shiftlab/error.hpp"

namespace shiftlab {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) {
    throw InvariantViolation("alphabet-nonempty", "alphabet must declare at least one symbol");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw InvariantViolation("symbol-name-nonempty", "empty symbol name");
    }
    if (!index_.emplace(names_[i], static_cast<Symbol>(i)).second) {
      throw InvariantViolation("alphabet-unique", "duplicate symbol '" + names_[i] + "'");
    }
    if (names_[i].size() != 1) single_char_ = false;
  }
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw InvariantViolation("symbol-declared", "symbol '" + std::string(name) + "' not in alphabet");
}

std::string Alphabet::spell(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += separator();
    out += name(w[i]);
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  if (single_char_) {
    for (char c : text) w.push_back(at(std::string_view(&c, 1)));
    return w;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    w.push_back(at(text.substr(pos, end - pos)));
    pos = end;
  }
  return w;
}

LabeledGraph::LabeledGraph(Alphabet alphabet, std::vector<std::string> vertices,
                           std::vector<Edge> edges)
    : alphabet_(std::move(alphabet)),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      out_(vertices_.size()),
      in_(vertices_.size()) {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (!vertex_index_.emplace(vertices_[v], static_cast<int>(v)).second) {
      throw InvariantViolation("vertex-ids-unique", "duplicate vertex '" + vertices_[v] + "'");
    }
  }
  std::set<std::string> ids;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (!ids.insert(ed.id).second) {
      throw InvariantViolation("edge-ids-unique", "duplicate edge '" + ed.id + "'");
    }
    const int n = static_cast<int>(vertices_.size());
    if (ed.src < 0 || ed.src >= n || ed.dst < 0 || ed.dst >= n) {
      throw InvariantViolation("edge-endpoints-declared", "edge '" + ed.id + "' has an undeclared endpoint");
    }
    if (ed.label < 0 || static_cast<std::size_t>(ed.label) >= alphabet_.size()) {
      throw InvariantViolation("edge-label-declared", "edge '" + ed.id + "' has an undeclared label");
    }
    out_[static_cast<std::size_t>(ed.src)].push_back(static_cast<int>(e));
    in_[static_cast<std::size_t>(ed.dst)].push_back(static_cast<int>(e));
  }
}

LabeledGraph LabeledGraph::from_names(
    const std::vector<std::string>& alphabet, const std::vector<std::string>& vertices,
    const std::vector<std::tuple<std::string, std::string, std::string, std::string>>& edges) {
  Alphabet a(alphabet);
  std::unordered_map<std::string, int> vidx;
  for (std::size_t i = 0; i < vertices.size(); ++i) vidx[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> es;
  for (const auto& [id, src, dst, label] : edges) {
    auto s = vidx.find(src);
    auto d = vidx.find(dst);
    if (s == vidx.end() || d == vidx.end()) {
      throw InvariantViolation("edge-endpoints-declared", "edge '" + id + "' has an undeclared endpoint");
    }
    es.push_back(Edge{id, s->second, d->second, a.at(label)});
  }
  return LabeledGraph(std::move(a), vertices, std::move(es));
}

int LabeledGraph::vertex_index(std::string_view name) const {
  auto it = vertex_index_.find(std::string(name));
  if (it == vertex_index_.end()) throw UnknownVertex("unknown vertex '" + std::string(name) + "'");
  return it->second;
}

BitSet LabeledGraph::step(const BitSet& from, Symbol a) const {
  BitSet out(num_vertices());
  from.for_each([&](std::size_t v) {
    for (int e : out_[v]) {
      if (edges_[static_cast<std::size_t>(e)].label == a) out.set(static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].dst));
    }
  });
  return out;
}

BitSet LabeledGraph::step(const BitSet& from, const Word& w) const {
  BitSet cur = from;
  for (Symbol a : w) {
    cur = step(cur, a);
    if (cur.none()) break;
  }
  return cur;
}

BitSet LabeledGraph::step_back(const BitSet& to, Symbol a) const {
  BitSet out(num_vertices());
  to.for_each([&](std::size_t v) {
    for (int e : in_[v]) {
      if (edges_[static_cast<std::size_t>(e)].label == a) out.set(static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].src));
    }
  });
  return out;
}

Word Path::label(const LabeledGraph& g) const {
  Word w;
  w.reserve(edges.size());
  for (int e : edges) w.push_back(g.edge(e).label);
  return w;
}

bool Path::is_valid(const LabeledGraph& g) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i] < 0 || static_cast<std::size_t>(edges[i]) >= g.num_edges()) return false;
    if (i > 0 && g.edge(edges[i - 1]).dst != g.edge(edges[i]).src) return false;
  }
  return true;
}

std::vector<Component> scc_decompose(const LabeledGraph& g) {
  const int n = static_cast<int>(g.num_vertices());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int counter = 0;
  int ncomp = 0;
  // Iterative Tarjan: frames hold (vertex, next out-edge position).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto& outs = g.out_edges(v);
      if (pos < outs.size()) {
        const int w = g.edge(outs[pos++]).dst;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      const int done = v;
      frames.pop_back();
      if (!frames.empty()) {
        int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  std::vector<Component> comps(ncomp);
  for (int v = 0; v < n; ++v) comps[comp[v]].vertices.push_back(v);
  for (auto& c : comps) {
    c.trivial = true;
    for (int v : c.vertices) {
      for (int e : g.out_edges(v)) {
        if (comp[g.edge(e).dst] == comp[v]) c.trivial = false;
      }
    }
  }
  std::sort(comps.begin(), comps.end(),
            [](const Component& a, const Component& b) { return a.vertices.front() < b.vertices.front(); });
  return comps;
}

bool is_irreducible(const LabeledGraph& g) {
  if (g.empty()) return false;
  auto comps = scc_decompose(g);
  return comps.size() == 1 && !comps.front().trivial;
}

LabeledGraph trim_biextendable(const LabeledGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<int> indeg(n, 0), outdeg(n, 0);
  for (const auto& e : g.edges()) {
    ++outdeg[static_cast<std::size_t>(e.src)];
    ++indeg[static_cast<std::size_t>(e.dst)];
  }
  BitSet alive(n, true);
  std::deque<int> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0 || outdeg[v] == 0) {
      alive.reset(v);
      queue.push_back(static_cast<int>(v));
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e : g.out_edges(v)) {
      const auto w = static_cast<std::size_t>(g.edge(e).dst);
      if (alive.test(w) && --indeg[w] == 0) {
        alive.reset(w);
        queue.push_back(static_cast<int>(w));
      }
    }
    for (int e : g.in_edges(v)) {
      const auto w = static_cast<std::size_t>(g.edge(e).src);
      if (alive.test(w) && --outdeg[w] == 0) {
        alive.reset(w);
        queue.push_back(static_cast<int>(w));
      }
    }
  }
  return induced_subgraph(g, alive);
}

bool is_right_resolving(const LabeledGraph& g) {
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    std::set<Symbol> seen;
    for (int e : g.out_edges(static_cast<int>(v))) {
      if (!seen.insert(g.edge(e).label).second) return false;
    }
  }
  return true;
}

bool is_left_resolving(const LabeledGraph& g) { return is_right_resolving(reversed(g)); }

LabeledGraph label_product(const LabeledGraph& g1, const LabeledGraph& g2) {
  if (g1.alphabet() != g2.alphabet()) {
    throw AlphabetMismatch("label_product requires equal alphabets");
  }
  const std::size_t n2 = g2.num_vertices();
  std::vector<std::string> vertices;
  for (std::size_t a = 0; a < g1.num_vertices(); ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      vertices.push_back("(" + g1.vertex_name(static_cast<int>(a)) + "," + g2.vertex_name(static_cast<int>(b)) + ")");
    }
  }
  std::vector<Edge> edges;
  for (std::size_t e1 = 0; e1 < g1.num_edges(); ++e1) {
    const Edge& a = g1.edges()[e1];
    for (std::size_t e2 = 0; e2 < g2.num_edges(); ++e2) {
      const Edge& b = g2.edges()[e2];
      if (a.label != b.label) continue;
      edges.push_back(Edge{"(" + a.id + "," + b.id + ")",
                           static_cast<int>(static_cast<std::size_t>(a.src) * n2 + static_cast<std::size_t>(b.src)),
                           static_cast<int>(static_cast<std::size_t>(a.dst) * n2 + static_cast<std::size_t>(b.dst)),
                           a.label});
    }
  }
  return trim_biextendable(LabeledGraph(g1.alphabet(), std::move(vertices), std::move(edges)));
}

namespace {

// Perron root of an irreducible nonnegative matrix by power iteration on
// A + I, stopped by the Collatz-Wielandt bracket.
double irreducible_perron_root(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  std::vector<double> x(n, 1.0), y(n);
  constexpr int kMaxIterations = 1000000;
  constexpr double kTolerance = 1e-12;
  double estimate = 0.0;
  for (int it = 0; it < kMaxIterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (std::size_t j = 0; j < n; ++j) s += a[i][j] * x[j];
      y[i] = s;
    }
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    estimate = 0.5 * (lo + hi);
    if (hi - lo <= kTolerance * hi) break;
    double norm = 0.0;
    for (double v : y) norm = std::max(norm, v);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
  }
  return estimate - 1.0;
}

}  // namespace

double spectral_radius(const LabeledGraph& g) {
  if (g.empty()) return 0.0;
  double best = 0.0;
  for (const auto& comp : scc_decompose(g)) {
    if (comp.trivial) continue;
    std::map<int, std::size_t> local;
    for (std::size_t i = 0; i < comp.vertices.size(); ++i) local[comp.vertices[i]] = i;
    std::vector<std::vector<double>> a(comp.vertices.size(), std::vector<double>(comp.vertices.size(), 0.0));
    for (int v : comp.vertices) {
      for (int e : g.out_edges(v)) {
        auto it = local.find(g.edge(e).dst);
        if (it != local.end()) a[local[v]][it->second] += 1.0;
      }
    }
    best = std::max(best, irreducible_perron_root(a));
  }
  return best;
}

LabeledGraph induced_subgraph(const LabeledGraph& g, const BitSet& keep) {
  std::vector<int> remap(g.num_vertices(), -1);
  std::vector<std::string> vertices;
  keep.for_each([&](std::size_t v) {
    remap[v] = static_cast<int>(vertices.size());
    vertices.push_back(g.vertex_name(static_cast<int>(v)));
  });
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    const int s = remap[static_cast<std::size_t>(e.src)];
    const int d = remap[static_cast<std::size_t>(e.dst)];
    if (s >= 0 && d >= 0) edges.push_back(Edge{e.id, s, d, e.label});
  }
  return LabeledGraph(g.alphabet(), std::move(vertices), std::move(edges));
}

LabeledGraph reversed(const LabeledGraph& g) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back(Edge{e.id, e.dst, e.src, e.label});
  return LabeledGraph(g.alphabet(), g.vertex_names(), std::move(edges));
}

LabeledGraph relabeled(const LabeledGraph& g, Alphabet alphabet, const std::vector<Symbol>& labels) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const auto& e = g.edges()[i];
    edges.push_back(Edge{e.id, e.src, e.dst, labels.at(i)});
  }
  return LabeledGraph(std::move(alphabet), g.vertex_names(), std::move(edges));
}

LabeledGraph edge_labeled(const LabeledGraph& g) {
  std::vector<std::string> names;
  std::vector<Symbol> labels;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    names.push_back(g.edges()[i].id);
    labels.push_back(static_cast<Symbol>(i));
  }
  if (names.empty()) return LabeledGraph(g.alphabet(), g.vertex_names(), {});
  return relabeled(g, Alphabet(std::move(names)), labels);
}

std::optional<Path> shortest_path(const LabeledGraph& g, int from, int to) {
  if (from == to) return Path{};
  std::vector<int> via(g.num_vertices(), -1);
  std::vector<bool> seen(g.num_vertices(), false);
  std::deque<int> queue{from};
  seen[static_cast<std::size_t>(from)] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e : g.out_edges(v)) {
      const int w = g.edge(e).dst;
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      via[static_cast<std::size_t>(w)] = e;
      if (w == to) {
        Path p;
        for (int cur = to; cur != from; cur = g.edge(via[static_cast<std::size_t>(cur)]).src) {
          p.edges.push_back(via[static_cast<std::size_t>(cur)]);
        }
        std::reverse(p.edges.begin(), p.edges.end());
        return p;
      }
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

BitSet reachable_from(const LabeledGraph& g, const BitSet& from) {
  BitSet seen = from;
  std::vector<std::size_t> stack = from.indices();
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (int e : g.out_edges(static_cast<int>(v))) {
      const auto w = static_cast<std::size_t>(g.edge(e).dst);
      if (!seen.test(w)) {
        seen.set(w);
        stack.push_back(w);
      }
    }
  }
  return seen;
}

BitSet coreachable_to(const LabeledGraph& g, const BitSet& to) {
  return reachable_from(reversed(g), to);
}

namespace {

using EdgeKey = std::tuple<int, int, Symbol>;

std::map<EdgeKey, int> edge_multiset(const LabeledGraph& g, const std::vector<int>& map) {
  std::map<EdgeKey, int> m;
  for (const auto& e : g.edges()) {
    ++m[{map[static_cast<std::size_t>(e.src)], map[static_cast<std::size_t>(e.dst)], e.label}];
  }
  return m;
}

bool extend_iso(const LabeledGraph& a, const LabeledGraph& b, std::vector<int>& map,
                std::vector<bool>& used, std::size_t next,
                const std::vector<std::string>& sig_a, const std::vector<std::string>& sig_b,
                const std::map<EdgeKey, int>& target) {
  if (next == a.num_vertices()) return edge_multiset(a, map) == target;
  for (std::size_t cand = 0; cand < b.num_vertices(); ++cand) {
    if (used[cand] || sig_a[next] != sig_b[cand]) continue;
    used[cand] = true;
    map[next] = static_cast<int>(cand);
    if (extend_iso(a, b, map, used, next + 1, sig_a, sig_b, target)) return true;
    used[cand] = false;
  }
  map[next] = -1;
  return false;
}

std::vector<std::string> signatures(const LabeledGraph& g) {
  std::vector<std::string> sig(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    std::vector<Symbol> outs, ins;
    int loops = 0;
    for (int e : g.out_edges(static_cast<int>(v))) {
      outs.push_back(g.edge(e).label);
      if (g.edge(e).dst == static_cast<int>(v)) ++loops;
    }
    for (int e : g.in_edges(static_cast<int>(v))) ins.push_back(g.edge(e).label);
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    std::string s = std::to_string(loops) + "|";
    for (auto x : outs) s += std::to_string(x) + ",";
    s += "|";
    for (auto x : ins) s += std::to_string(x) + ",";
    sig[v] = s;
  }
  return sig;
}

}  // namespace

bool isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.alphabet() != b.alphabet() || a.num_vertices() != b.num_vertices() ||
      a.num_edges() != b.num_edges()) {
    return false;
  }
  std::vector<int> identity(b.num_vertices());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
  const auto target = edge_multiset(b, identity);
  std::vector<int> map(a.num_vertices(), -1);
  std::vector<bool> used(b.num_vertices(), false);
  return extend_iso(a, b, map, used, 0, signatures(a), signatures(b), target);
}

}  // namespace shiftlab
