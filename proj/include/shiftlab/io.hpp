#pragma once

#include <string>

#include <json.hpp>

#include "shiftlab/code.hpp"
#include "shiftlab/graph.hpp"
#include "shiftlab/pointed.hpp"
#include "shiftlab/shift.hpp"

namespace shiftlab {

using Json = nlohmann::json;

// Parses text; syntax errors become ParseError with the offending line.
Json parse_json(const std::string& text);
// Canonical rendering: sorted keys, two-space indent, trailing newline.
std::string dump_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Unknown or missing fields raise ParseError naming the field; structural
// invariants raise InvariantViolation.
LabeledGraph graph_from_json(const Json& j);
Json graph_to_json(const LabeledGraph& g);

// Accepts {"kind":"sofic","presentation":{...}} or a bare graph.
SoficShift shift_from_json(const Json& j);
Json shift_to_json(const SoficShift& x);

SlidingBlockCode code_from_json(const Json& j, const SoficShift& domain);
// Self-contained form: the domain shift is embedded under "domain".
SlidingBlockCode code_from_json(const Json& j);
bool code_has_domain(const Json& j);
Json code_to_json(const SlidingBlockCode& phi, bool embed_domain = false);

LabeledGraph load_graph(const std::string& path);
SoficShift load_shift(const std::string& path);
SlidingBlockCode load_code(const std::string& path, const SoficShift& domain);
void save_graph(const std::string& path, const LabeledGraph& g);
void save_shift(const std::string& path, const SoficShift& x);
void save_code(const std::string& path, const SlidingBlockCode& phi);

std::string to_dot(const LabeledGraph& g, const std::string& name = "G");
// Window edges drawn bold, one cluster label per coordinate.
std::string to_dot(const PointedAutomaton& a, const std::string& name = "A");

}  // namespace shiftlab
