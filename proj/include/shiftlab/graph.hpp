#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "shiftlab/bitset.hpp"

namespace shiftlab {

// Symbols are indices into an Alphabet; words are symbol sequences.
using Symbol = int;
using Word = std::vector<Symbol>;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(static_cast<std::size_t>(s)); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<Symbol> find(std::string_view name) const;
  // Throws InvariantViolation for an undeclared symbol.
  Symbol at(std::string_view name) const;

  // Renders a word by concatenation; multi-character symbols are joined with
  // `separator` so that parse() can invert it.
  std::string spell(const Word& w) const;
  Word parse(std::string_view text) const;
  // Separator used when some symbol name is longer than one character.
  std::string_view separator() const { return single_char_ ? "" : " "; }

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
  bool single_char_ = true;
};

struct Edge {
  std::string id;
  int src = 0;
  int dst = 0;
  Symbol label = 0;
};

// Finite directed multigraph with symbol-labelled edges. Vertices and edges
// are addressed by dense indices; names are kept for I/O.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  LabeledGraph(Alphabet alphabet, std::vector<std::string> vertices,
               std::vector<Edge> edges);

  // Convenience constructor from names: edges are (id, src, dst, label).
  static LabeledGraph from_names(
      const std::vector<std::string>& alphabet,
      const std::vector<std::string>& vertices,
      const std::vector<std::tuple<std::string, std::string, std::string, std::string>>& edges);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool empty() const { return vertices_.empty(); }

  const std::string& vertex_name(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::string>& vertex_names() const { return vertices_; }
  // Throws UnknownVertex.
  int vertex_index(std::string_view name) const;

  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& in_edges(int v) const { return in_[static_cast<std::size_t>(v)]; }

  BitSet all_vertices() const { return BitSet(num_vertices(), true); }

  // Successor set of `from` along edges labelled `a` (forward subset step).
  BitSet step(const BitSet& from, Symbol a) const;
  BitSet step(const BitSet& from, const Word& w) const;
  // Predecessor set of `to` along edges labelled `a`.
  BitSet step_back(const BitSet& to, Symbol a) const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::unordered_map<std::string, int> vertex_index_;
};

// Edge sequence with consecutive incidence.
struct Path {
  std::vector<int> edges;

  int source(const LabeledGraph& g) const { return g.edge(edges.front()).src; }
  int target(const LabeledGraph& g) const { return g.edge(edges.back()).dst; }
  Word label(const LabeledGraph& g) const;
  bool is_valid(const LabeledGraph& g) const;
};

struct Component {
  std::vector<int> vertices;  // sorted ascending
  bool trivial = false;       // no edge inside the class
};

// Strongly connected classes, ordered by smallest member vertex.
std::vector<Component> scc_decompose(const LabeledGraph& g);

bool is_irreducible(const LabeledGraph& g);

// Subgraph on the vertices lying on some bi-infinite path.
LabeledGraph trim_biextendable(const LabeledGraph& g);

bool is_right_resolving(const LabeledGraph& g);
bool is_left_resolving(const LabeledGraph& g);

// Pair graph of edges with equal labels, trimmed. Requires equal alphabets.
LabeledGraph label_product(const LabeledGraph& g1, const LabeledGraph& g2);

// Perron root of the adjacency matrix (with multiplicities).
double spectral_radius(const LabeledGraph& g);

// Subgraph on `keep` (edges with both ends kept). Vertex order preserved.
LabeledGraph induced_subgraph(const LabeledGraph& g, const BitSet& keep);

// Same vertices and edge ids, edges reversed.
LabeledGraph reversed(const LabeledGraph& g);

// Same structure with new labels (one per edge) over a new alphabet.
LabeledGraph relabeled(const LabeledGraph& g, Alphabet alphabet,
                       const std::vector<Symbol>& labels);

// Edge-labelled copy: every edge carries its own id as symbol. Presents the
// edge shift X_G.
LabeledGraph edge_labeled(const LabeledGraph& g);

// Shortest path from `from` to `to` (empty when equal); nullopt if
// unreachable. Ties broken by edge index order.
std::optional<Path> shortest_path(const LabeledGraph& g, int from, int to);

// Vertices reachable from `from` (including it).
BitSet reachable_from(const LabeledGraph& g, const BitSet& from);
BitSet coreachable_to(const LabeledGraph& g, const BitSet& to);

// Isomorphism of labelled multigraphs (label-preserving). Exponential in the
// worst case; meant for small graphs in tests and fixtures.
bool isomorphic(const LabeledGraph& a, const LabeledGraph& b);

}  // namespace shiftlab
