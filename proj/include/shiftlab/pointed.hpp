#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "shiftlab/bitset.hpp"
#include "shiftlab/code.hpp"
#include "shiftlab/decision.hpp"
#include "shiftlab/graph.hpp"
#include "shiftlab/shift.hpp"

namespace shiftlab {

struct CenteredWord {
  Word word;
  int center = 0;

  CenteredWord() = default;
  CenteredWord(Word w, int c);
  static CenteredWord central(Word w);  // odd length, center in the middle
  int first() const { return -center; }
  int last() const { return static_cast<int>(word.size()) - 1 - center; }
  bool operator==(const CenteredWord&) const = default;
};

// Points read by bi-infinite paths of `graph` whose edge at each window
// coordinate offset + i lies in allowed[i].
struct PointedAutomaton {
  LabeledGraph graph;
  int offset = 0;
  std::vector<BitSet> allowed;
  bool trimmed = false;

  int window_first() const { return offset; }
  int window_last() const { return offset + static_cast<int>(allowed.size()) - 1; }
  bool empty() const;
  // Edges permitted at a coordinate (all edges outside the window).
  bool permits(int coordinate, int edge) const;
};

// Restricts allowed sets to edges on some window-respecting path.
PointedAutomaton trim_pointed(PointedAutomaton a);

// φ([u]) on the 1-block recoding. Throws WordNotAdmissible.
PointedAutomaton cylinder_image(const SlidingBlockCode& phi, const CenteredWord& u);
PointedAutomaton cylinder_image(const Recoding& r, const SoficShift& domain, const CenteredWord& u);

// Some point of the denotation reads `word` with word[0] at `start`.
bool reads(const PointedAutomaton& a, const Word& word, int start);
// Central words of radius k occurring in the denotation.
std::set<Word> window_language(const PointedAutomaton& a, int k);

// A point of Y ∩ [w] outside the denotation: it reads left·w·right with w in
// its place.
struct Escape {
  Word left;
  Word right;
  Word extended;        // covering extension of w that failed, when w was short
  int extended_center = 0;
};

std::size_t default_state_budget();

struct BudgetExceeded {};

// Decision procedures against a fixed image graph and target shift. Caches
// left states and containment results between queries.
class ContainmentEngine {
 public:
  ContainmentEngine(const LabeledGraph& image_graph, const SoficShift& y,
                    std::size_t budget = default_state_budget());

  // Y ∩ [w] ⊆ denotation(a).
  bool contains(const PointedAutomaton& a, const CenteredWord& w, Escape* escape = nullptr);

  const LabeledGraph& target() const { return dy_; }
  const LabeledGraph& graph() const { return h_; }
  std::size_t left_state_count();

  // Word profiles ------------------------------------------------------
  // A window pair summarises one image word v spanning a window: the map it
  // induces on target states and the relation it induces on image states.
  struct Pair {
    std::vector<int> ry;  // per target vertex: successor or -1
    Relation rel;
    bool operator==(const Pair& o) const { return ry == o.ry && rel == o.rel; }
    bool operator<(const Pair& o) const { return ry != o.ry ? ry < o.ry : rel < o.rel; }
  };
  struct PairHash {
    std::size_t operator()(const Pair& p) const;
  };
  // Window pairs of `a` over its window, with the lexicographically least
  // representative word of each pair. Pairs with empty relation dropped.
  std::vector<std::pair<Pair, Word>> window_pairs(const PointedAutomaton& a);
  // Window pairs widened by free symbols to the central radius
  // max(-window_first, window_last, 0), again with lex-least representatives.
  std::vector<std::pair<Pair, Word>> central_pairs(const PointedAutomaton& a);
  // Pair of a single unconstrained symbol.
  const Pair& symbol_pair(Symbol c);
  Pair compose(const Pair& x, const Pair& y) const;

  // Profile over left states: (target set id, image set id) per state,
  // (-1, -1) where the target set is empty.
  using Profile = std::vector<std::pair<int, int>>;
  struct ProfileHash {
    std::size_t operator()(const Profile& p) const;
  };
  Profile profile_of(const Pair& p);
  Profile extend(const Profile& p, Symbol left, Symbol right);
  bool good(const Profile& p);
  bool in_language(const Profile& p) const;
  bool nonempty_image(const Profile& p) const;

  void charge(std::size_t states);
  std::size_t budget() const { return budget_; }

 private:
  void build_left_states();
  int intern_target(const BitSet& s);
  int intern_image(const BitSet& s);
  bool contained(int ty, int e);

  LabeledGraph h_;
  LabeledGraph dy_;
  std::size_t budget_;
  std::size_t spent_ = 0;
  bool left_built_ = false;
  std::vector<std::pair<BitSet, BitSet>> left_;
  std::vector<Word> left_words_;
  std::vector<std::vector<int>> left_next_;
  std::vector<BitSet> target_sets_, image_sets_;
  std::unordered_map<BitSet, int, BitSetHash> target_ids_, image_ids_;
  std::map<std::pair<int, int>, bool> contained_;
  std::vector<Pair> symbol_pairs_;
};

struct InteriorDecision : Decision {
  std::optional<CenteredWord> witness;
  // Refutation payload: every reachable profile, with a representative word
  // and the escape that shows it is not inside.
  std::vector<std::pair<CenteredWord, Escape>> escapes;
  int saturation_radius = -1;
};

struct InteriorOptions {
  int k_max = 12;
  bool minimal_witness = true;  // also scan radii below the window radius
};

InteriorDecision interior_nonempty(ContainmentEngine& engine, const PointedAutomaton& a,
                                   const InteriorOptions& options = {});
InteriorDecision interior_nonempty(const PointedAutomaton& a, const SoficShift& y, int k_max = 12);
bool contains_cylinder(const PointedAutomaton& a, const SoficShift& y, const CenteredWord& w);

}  // namespace shiftlab
