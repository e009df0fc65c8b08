#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/code.hpp"
#include "shiftlab/decision.hpp"
#include "shiftlab/pointed.hpp"

namespace shiftlab {

// One row per cylinder half-length l. Cylinders of a level are grouped by
// their image profile; each newly seen profile contributes its lex-least
// cylinder u and a centered word w_u with [w_u] ⊆ φ([u]).
struct LiftingEntry {
  int l = 0;
  int k = 0;  // largest witness radius in this row
  std::vector<std::pair<CenteredWord, CenteredWord>> witnesses;
};

struct LiftingTable {
  std::vector<LiftingEntry> entries;
  std::optional<int> uniform_bound;  // sup (k - l), set when certified
};

struct OpennessOptions {
  int l_max = 4;
  int k_max = 12;
  std::size_t budget = default_state_budget();
};

struct SemiOpenDecision : Decision {
  LiftingTable table;
  std::optional<CenteredWord> cylinder;  // bad cylinder when refuted
  InteriorDecision refutation;
  int saturation_level = -1;
  int profile_classes = 0;
};

SemiOpenDecision check_semi_open(const SlidingBlockCode& phi, const OpennessOptions& options = {});
SemiOpenDecision check_semi_open(const SlidingBlockCode& phi, int l_max, int k_max);

struct OpenDecision : Decision {
  LiftingTable table;                 // the semi-open table
  std::map<int, int> lifting_radius;  // l -> smallest k that works for every cylinder
  std::optional<int> uniform_bound;
  // Counterexample: a cylinder u and, for every k, some word of radius k in
  // φ([u])'s language whose cylinder leaves φ([u]). `window_word` is the
  // lex-least such word at the radius where the search closed a cycle.
  std::optional<CenteredWord> cylinder;
  std::optional<CenteredWord> window_word;
  Escape escape;
};

OpenDecision check_open(const SlidingBlockCode& phi, const OpennessOptions& options = {});
OpenDecision check_open(const SlidingBlockCode& phi, int l_max, int k_max);

// α·ℒ(ξ)·ℒ(π)·ℒ(γ)·α centered on ℒ(π). Throws NotRightResolving,
// NotIrreducible, NotMagic.
CenteredWord witness_from_magic(const LabeledGraph& g, const Word& alpha, const Path& pi);

enum class Side { Right, Left, Bi };
const char* to_string(Side s);

struct RetractDecision : Decision {
  Side side = Side::Right;
  int n = 0;
  // Counterexample scheme for a one-sided failure: the left ray is
  // loop^∞ · prefix, then `tail` covers (-n, 0]; no lift follows `right`.
  // Pair words list domain symbols and image symbols separately.
  Word loop_domain, loop_image;
  Word prefix_domain, prefix_image;
  Word tail_domain, tail_image;
  Word right;
  Side failing_side = Side::Right;
};

// Exact. Computes every retract up to n and throws ConsistencyFault if a
// smaller retract succeeds where a larger one fails.
RetractDecision check_right_continuing_retract(const SlidingBlockCode& phi, int n);
RetractDecision check_left_continuing_retract(const SlidingBlockCode& phi, int n);
RetractDecision check_continuing_retract(const SlidingBlockCode& phi, int n, Side side);

// Number of domain points mapped to p^∞. Throws PeriodicPointNotInShift,
// InfinitelyManyPreimages.
std::int64_t count_point_preimages(const SlidingBlockCode& phi, const Word& p);

struct ConstantToOneDecision : Decision {
  int degree = 0;
  Word periodic;  // p with a preimage count different from the degree
  std::int64_t count = 0;
};
// Refuted by a periodic image point whose preimage count differs from the
// degree; periods up to p_max are scanned. Never Proved.
ConstantToOneDecision check_constant_to_one(const SlidingBlockCode& phi, int p_max = 6);

Decision certify_irreducible_map(const SlidingBlockCode& phi);

struct ComponentInfo {
  std::vector<std::string> vertices;
  double entropy = 0;
  bool maximal = false;
};
struct NonwanderingReport {
  bool nonwandering = false;
  bool all_maximal = false;
  double entropy = 0;
  std::vector<ComponentInfo> components;
};
NonwanderingReport check_nonwandering_maximal(const SoficShift& x);

// Certificates ---------------------------------------------------------------

struct Hypothesis {
  std::string property;
  Verdict verdict = Verdict::Inconclusive;
};

struct Certificate {
  std::string tag;
  std::vector<Hypothesis> hypotheses;
  std::vector<std::string> conclusions;
  bool emitted = false;  // every hypothesis Proved
};

// Known verdicts keyed by property name, e.g. "semi_open",
// "right_continuing_retract_2".
using Facts = std::map<std::string, Verdict>;

struct AnalysisOptions {
  OpennessOptions openness;
  int retract_max = 2;
  int sft_m_max = 8;
  bool run_open = true;
  bool run_retract = true;
};

// Computes the facts the certificate table consumes for φ onto its image.
Facts analyze(const SlidingBlockCode& phi, const AnalysisOptions& options = {});

Certificate make_certificate(std::string tag, const Facts& facts,
                             const std::vector<std::string>& hypotheses,
                             std::vector<std::string> conclusions);

// Every theorem of the table whose hypotheses are stated over single-code
// facts.
std::vector<Certificate> certificates(const Facts& facts);

// Throws ConsistencyFault when an emitted conclusion is Refuted in `facts`.
void audit(const std::vector<Certificate>& certs, const Facts& facts);

}  // namespace shiftlab
