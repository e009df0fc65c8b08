#pragma once

#include <vector>

#include "shiftlab/io.hpp"
#include "shiftlab/openness.hpp"

namespace shiftlab {

// JSON renderings of decisions. Domain words are spelled in the domain
// alphabet, image words in the codomain alphabet.
Json decision_to_json(const Decision& d);
Json centered_to_json(const Alphabet& a, const CenteredWord& w);
Json table_to_json(const SlidingBlockCode& phi, const LiftingTable& t);
Json semi_open_to_json(const SlidingBlockCode& phi, const SemiOpenDecision& d);
Json open_to_json(const SlidingBlockCode& phi, const OpenDecision& d);
Json retract_to_json(const SlidingBlockCode& phi, const RetractDecision& d);
Json degree_to_json(const SlidingBlockCode& phi, const DegreeResult& d);
Json certificates_to_json(const std::vector<Certificate>& certs);
Json facts_to_json(const Facts& facts);

}  // namespace shiftlab
