#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shiftlab/graph.hpp"

namespace shiftlab {

struct TrialConfig {
  std::uint64_t seed = 0;
  int trials = 200;
  int max_vertices = 6;
  int max_alphabet = 3;
  std::string property;
};

// mt19937_64 with explicit bounded draws, so streams do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Independent stream for trial `index` of a run seeded with `seed`.
  static Rng for_trial(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin(int num, int den) { return below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num); }

 private:
  std::mt19937_64 engine_;
};

inline constexpr int kAttemptCap = 1000;

enum class GraphKind { Any, Irreducible, IrreducibleRightResolving };

// Vertices v0.., edges e0.., alphabet "0".."k-1". Irreducible kinds are
// drawn by rejection; GenerationExhausted after kAttemptCap attempts.
LabeledGraph gen_labeled_graph(Rng& rng, int max_vertices, int max_alphabet, GraphKind kind = GraphKind::Any);
LabeledGraph gen_labeled_graph(const TrialConfig& cfg, GraphKind kind = GraphKind::Any);

// Random map from `from` symbols onto a prefix of "0".."k-1" (k <= max_symbols).
std::vector<Symbol> gen_symbol_map(Rng& rng, std::size_t from, int max_symbols, int* used);

}  // namespace shiftlab
