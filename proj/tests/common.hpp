#pragma once

#include <string>

#include "shiftlab/code.hpp"
#include "shiftlab/graph.hpp"
#include "shiftlab/pointed.hpp"
#include "shiftlab/shift.hpp"

namespace testing_data {

using namespace shiftlab;

inline std::string fixture(const std::string& name) { return std::string(SHIFTLAB_FIXTURE_DIR) + "/" + name; }

// Golden-mean component plus an isolated 2-loop.
inline LabeledGraph collapse() {
  return LabeledGraph::from_names(
      {"0", "1", "2"}, {"u", "v1", "v2"},
      {{"e0", "u", "u", "2"}, {"e1", "v1", "v1", "0"}, {"e2", "v1", "v2", "1"}, {"e3", "v2", "v1", "0"}});
}
inline LabeledGraph golden() {
  return LabeledGraph::from_names({"0", "1"}, {"v1", "v2"},
                                  {{"a", "v1", "v1", "0"}, {"b", "v1", "v2", "1"}, {"c", "v2", "v1", "0"}});
}
inline LabeledGraph even() {
  return LabeledGraph::from_names({"0", "1"}, {"A", "B"},
                                  {{"a", "A", "A", "1"}, {"b", "A", "B", "0"}, {"c", "B", "A", "0"}});
}
inline LabeledGraph full(int k) {
  std::vector<std::string> alpha;
  std::vector<std::tuple<std::string, std::string, std::string, std::string>> edges;
  for (int i = 0; i < k; ++i) {
    alpha.push_back(std::to_string(i));
    edges.emplace_back("e" + std::to_string(i), "v", "v", std::to_string(i));
  }
  return LabeledGraph::from_names(alpha, {"v"}, edges);
}
inline LabeledGraph phase_graph() {
  return LabeledGraph::from_names(
      {"a", "b", "c", "d"}, {"P", "Q"},
      {{"a", "P", "Q", "a"}, {"b", "P", "Q", "b"}, {"c", "Q", "P", "c"}, {"d", "Q", "P", "d"}});
}
inline LabeledGraph branch() {
  return LabeledGraph::from_names(
      {"0", "1"}, {"s", "p", "q"},
      {{"x", "s", "s", "1"}, {"y", "s", "p", "0"}, {"z", "s", "q", "0"}, {"p0", "p", "p", "0"}, {"q0", "q", "q", "0"}});
}

inline SlidingBlockCode collapse_code() {
  return SlidingBlockCode::one_block(SoficShift(collapse()), Alphabet({"0", "1"}), {0, 1, 0});
}
inline SlidingBlockCode phase_code() {
  return SlidingBlockCode::one_block(SoficShift(phase_graph()), Alphabet({"0", "1"}), {0, 1, 0, 1});
}

// Presentation graph with each edge relabelled by the image of its label.
inline LabeledGraph image_labels(const SlidingBlockCode& phi) {
  const LabeledGraph& g = phi.domain().presentation();
  std::vector<Symbol> labels;
  for (const auto& e : g.edges()) labels.push_back(phi.at(Word{e.label}));
  return relabeled(g, phi.codomain(), labels);
}

inline Word w(const Alphabet& a, const std::string& s) { return a.parse(s); }

}  // namespace testing_data
