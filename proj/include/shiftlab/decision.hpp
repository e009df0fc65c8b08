#pragma once

#include <map>
#include <string>

namespace shiftlab {

enum class Verdict { Proved, Refuted, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Proved: return "Proved";
    case Verdict::Refuted: return "Refuted";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

// Where a verdict came from: a direct computation, or a theorem whose
// hypotheses were all checked computationally.
struct Provenance {
  std::string certificate;  // empty for computational results
  bool computational() const { return certificate.empty(); }
  std::string str() const {
    return computational() ? "Computational" : "TheoremCertificate(" + certificate + ")";
  }
};

// Three-valued result. Operation-specific payloads live in structs deriving
// from this one; `bounds` records the limits used by Inconclusive results.
struct Decision {
  Verdict verdict = Verdict::Inconclusive;
  Provenance provenance;
  std::string detail;
  std::map<std::string, long long> bounds;

  bool proved() const { return verdict == Verdict::Proved; }
  bool refuted() const { return verdict == Verdict::Refuted; }
  bool inconclusive() const { return verdict == Verdict::Inconclusive; }
};

}  // namespace shiftlab
