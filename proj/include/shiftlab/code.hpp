#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/graph.hpp"
#include "shiftlab/shift.hpp"

namespace shiftlab {

// Block map Φ on B_{m+n+1}(domain) inducing y_i = Φ(x_{i-m} ... x_{i+n}).
class SlidingBlockCode {
 public:
  SlidingBlockCode() = default;
  // Throws InvariantViolation unless the table is defined on exactly the
  // admissible (m+n+1)-blocks of the domain.
  SlidingBlockCode(SoficShift domain, Alphabet codomain, int memory, int anticipation,
                   std::map<Word, Symbol> table);

  static SlidingBlockCode identity(const SoficShift& x);
  // 1-block code from a per-symbol map over the domain alphabet.
  static SlidingBlockCode one_block(const SoficShift& x, const Alphabet& codomain,
                                    const std::vector<Symbol>& map);
  // Label map of a labelled graph: domain is the edge shift (edge ids as
  // symbols), image symbol is the edge label.
  static SlidingBlockCode cover_map(const LabeledGraph& g);

  const SoficShift& domain() const { return domain_; }
  const Alphabet& codomain() const { return codomain_; }
  int memory() const { return memory_; }
  int anticipation() const { return anticipation_; }
  int window() const { return memory_ + anticipation_ + 1; }
  const std::map<Word, Symbol>& table() const { return table_; }

  // Φ of one admissible block; throws WordNotAdmissible.
  Symbol at(const Word& block) const;

 private:
  SoficShift domain_;
  Alphabet codomain_;
  int memory_ = 0;
  int anticipation_ = 0;
  std::map<Word, Symbol> table_;
};

Word apply_block(const SlidingBlockCode& phi, const Word& w);

// psi ∘ phi. Throws DomainMismatch unless phi's image lies in psi's domain.
SlidingBlockCode compose(const SlidingBlockCode& psi, const SlidingBlockCode& phi);

// 1-block form of a code on the (m+n+1)-block graph of a presentation of its
// domain. Edge h of `graph` carries the image symbol; middle[h] is the domain
// symbol at the edge's own coordinate; base[h] is the underlying path of the
// presentation, whose edge at offset m sits at that coordinate.
struct Recoding {
  LabeledGraph graph;
  std::vector<Symbol> middle;
  std::vector<std::vector<int>> base;
  LabeledGraph presentation;
  int memory = 0;
  int anticipation = 0;
};
Recoding recode(const SlidingBlockCode& phi);
Recoding recode_on(const SlidingBlockCode& phi, const LabeledGraph& presentation);

SoficShift image_presentation(const SlidingBlockCode& phi);
bool is_factor_onto(const SlidingBlockCode& phi, const SoficShift& y);

struct FiniteToOneReport {
  bool finite_to_one = true;
  bool diamond = false;  // two distinct equal-image cycles through one state
  bool drift = false;    // p -v-> p, p -v-> q, q -v-> q with p != q
  std::vector<double> component_entropy;
  std::vector<double> component_image_entropy;
};
// Throws ConsistencyFault when the entropy cross-check disagrees.
FiniteToOneReport finite_to_one_report(const SlidingBlockCode& phi);
bool is_finite_to_one(const SlidingBlockCode& phi);

struct DegreeResult {
  int d = 0;
  Word witness;                   // image word
  int position = 0;               // coordinate inside the witness
  std::vector<std::string> fiber; // recoded edges seen at that coordinate
  bool certified = false;         // unchanged under one-symbol extensions
};
// Throws NotFiniteToOne, ReducibleShift.
DegreeResult degree(const SlidingBlockCode& phi);

bool is_right_closing(const SlidingBlockCode& phi);
bool is_left_closing(const SlidingBlockCode& phi);

// Mirror image: reversed domain presentation, reversed blocks, memory and
// anticipation swapped.
SlidingBlockCode mirrored(const SlidingBlockCode& phi);

struct FiberProduct {
  LabeledGraph sigma;  // labels are pairs "(a,b)" of domain symbols
  SlidingBlockCode psi1;
  SlidingBlockCode psi2;
};
// Throws AlphabetMismatch.
FiberProduct fiber_product(const SlidingBlockCode& phi1, const SlidingBlockCode& phi2);

// Code F between the Fischer-cover edge shifts with ℒ2∘F = f∘ℒ1, searched over
// windows up to w_max and verified on all blocks. Throws ReducibleShift.
std::optional<SlidingBlockCode> lift_code(const SlidingBlockCode& f, const SoficShift& x1,
                                          const SoficShift& x2, int w_max);

// Enumerates all paths with `length` edges.
std::vector<std::vector<int>> all_paths(const LabeledGraph& g, int length);

}  // namespace shiftlab
