#pragma once

// Brute-force reference implementations used to cross-check the library.
// They share only the data types with the code under test.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "shiftlab/code.hpp"
#include "shiftlab/graph.hpp"
#include "shiftlab/pointed.hpp"
#include "shiftlab/shift.hpp"

namespace oracle {

using shiftlab::CenteredWord;
using shiftlab::LabeledGraph;
using shiftlab::SlidingBlockCode;
using shiftlab::Word;

// Edges lying on some bi-infinite path, by repeated removal of edges whose
// source has no in-edge or whose target has no out-edge.
std::vector<bool> essential_edges(const LabeledGraph& g);

// Label words of all length-n paths through essential edges.
std::set<Word> words(const LabeledGraph& g, int n);

// Number of closed walks spelling p^(N/|p|) with N = |p| * lcm(1..V), for the
// label map of g: trace((A_p0 ... A_pq-1)^(lcm)).
std::int64_t closed_walk_preimages(const LabeledGraph& g, const Word& p);

// min over words w of length <= max_len and positions i of the number of
// distinct edges at i among essential paths labelled w.
int min_fiber(const LabeledGraph& g, int max_len);

// Two distinct left-asymptotic paths with equal labels, by bounded pair walk.
bool has_left_asymptotic_pair(const LabeledGraph& g);

// Y ∩ [w] ⊆ φ([u]), tested on every Y-word over the common window widened by
// `margin` on both sides. Exact when it answers false.
bool lift_contains(const SlidingBlockCode& phi, const CenteredWord& u, const LabeledGraph& y,
                   const CenteredWord& w, int margin);

// Number of Y-words of length n (subset-state counting).
std::uint64_t count_words(const LabeledGraph& y, int n);

// Retract n for the label map of h on its edge shift. Searches left rays
// loop^∞·prefix (loops and prefixes of bounded length) and image words r of
// length <= future that follow the ray's label in the image, such that no
// path from the vertex after x_{-n} reads the labels of x on (-n, 0] and then
// r. Every obstruction found is a genuine counterexample.
bool retract_obstruction(const LabeledGraph& h, int n, int future);

}  // namespace oracle
