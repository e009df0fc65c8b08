#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shiftlab/bitset.hpp"
#include "shiftlab/decision.hpp"
#include "shiftlab/graph.hpp"

namespace shiftlab {

// Partial deterministic automaton produced by a subset construction. State 0
// is the start state; next[q][a] == -1 when undefined.
struct Dfa {
  std::size_t alphabet_size = 0;
  std::vector<std::vector<int>> next;
  std::vector<BitSet> subsets;

  std::size_t size() const { return next.size(); }
  int step(int q, Symbol a) const { return q < 0 ? -1 : next[static_cast<std::size_t>(q)][static_cast<std::size_t>(a)]; }
  int step(int q, const Word& w) const;
};

// Reachable nonempty subsets of `g` from `start`.
Dfa subset_dfa(const LabeledGraph& g, const BitSet& start);

// Moore refinement on follower-language equivalence (all states accepting).
// Returns the class of each state; classes numbered by first occurrence.
std::vector<int> follower_classes(const Dfa& d);
Dfa minimized(const Dfa& d);

// Graph of a Dfa: one vertex per state, vertex names from `names`.
LabeledGraph dfa_graph(const Dfa& d, const Alphabet& alphabet,
                       const std::vector<std::string>& names);

class SoficShift {
 public:
  SoficShift() : SoficShift(LabeledGraph(Alphabet({"0"}), {}, {})) {}
  explicit SoficShift(const LabeledGraph& presentation);

  const LabeledGraph& presentation() const;
  const Alphabet& alphabet() const { return presentation().alphabet(); }
  bool empty() const { return presentation().empty(); }

  // Minimal right-resolving presentation obtained by determinizing from the
  // full vertex set, merging equal follower sets and trimming. Valid for
  // reducible shifts too.
  const LabeledGraph& reduced() const;
  // Minimized subset automaton from the full vertex set, not trimmed.
  const Dfa& language_dfa() const;
  // Throws ReducibleShift.
  const LabeledGraph& fischer() const;
  bool irreducible() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

std::set<Word> language(const SoficShift& x, int n);
bool in_language(const SoficShift& x, const Word& w);

// Natural-log entropy; -infinity for the empty shift.
double entropy(const SoficShift& x);

LabeledGraph determinize(const LabeledGraph& g);
// Merges vertices with equal follower sets of a right-resolving graph.
LabeledGraph minimize_right_resolving(const LabeledGraph& g);
LabeledGraph fischer_cover(const SoficShift& x);

std::optional<Word> find_magic_word(const LabeledGraph& g);
bool is_synchronizing_word(const SoficShift& x, const Word& v);

struct SftDecision : Decision {
  int m = 0;  // minimal step when proved or when exact but above m_max
};
SftDecision is_sft(const SoficShift& x, int m_max);

int svgl_gap(const SoficShift& x);

struct FollowerSet {
  LabeledGraph recognizer;  // restricted to vertices reachable from root
  int root = 0;
  bool contains(const Word& w) const;
};
FollowerSet follower_set(const LabeledGraph& g, int vertex);
FollowerSet follower_set(const LabeledGraph& g, const std::string& vertex);
bool same_followers(const FollowerSet& a, const FollowerSet& b);

// Bi-infinite paths labelled p^∞. Throws PeriodicPointNotInShift when none,
// InfinitelyManyPreimages when the count is unbounded.
std::int64_t count_preimages_of_periodic(const LabeledGraph& g, const Word& p);

// Language containment L(a) ⊆ L(b) and equality of shifts.
bool is_subshift(const SoficShift& a, const SoficShift& b);
bool same_shift(const SoficShift& a, const SoficShift& b);

// Every word readable in `a` from some vertex of `from_a` is readable in `b`
// from some vertex of `from_b`. On failure stores a shortest counterexample.
bool follower_contained(const LabeledGraph& a, const BitSet& from_a,
                        const LabeledGraph& b, const BitSet& from_b,
                        Word* counterexample = nullptr);

}  // namespace shiftlab
