#include "shiftlab/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "shiftlab/error.hpp"

namespace shiftlab {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    int line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ParseError("", line, e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, 0, "cannot write file");
  out << text;
}

namespace {

void expect_fields(const Json& j, const std::string& where, const std::set<std::string>& required,
                   const std::set<std::string>& optional = {}) {
  if (!j.is_object()) throw ParseError(where, 0, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!required.count(k) && !optional.count(k)) throw ParseError(where.empty() ? k : where + "." + k, 0, "unknown field");
  }
  for (const auto& k : required) {
    if (!j.contains(k)) throw ParseError(where.empty() ? k : where + "." + k, 0, "missing field");
  }
}

std::string as_string(const Json& j, const std::string& field) {
  if (!j.is_string()) throw ParseError(field, 0, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> string_list(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, 0, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

int as_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError(field, 0, "expected an integer");
  return j.get<int>();
}

}  // namespace

LabeledGraph graph_from_json(const Json& j) {
  expect_fields(j, "", {"alphabet", "vertices", "edges"});
  const auto alphabet = string_list(j["alphabet"], "alphabet");
  const auto vertices = string_list(j["vertices"], "vertices");
  const Json& edges = j["edges"];
  if (!edges.is_array()) throw ParseError("edges", 0, "expected an array");
  std::vector<std::tuple<std::string, std::string, std::string, std::string>> es;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    expect_fields(edges[i], where, {"id", "src", "dst", "label"});
    es.emplace_back(as_string(edges[i]["id"], where + ".id"), as_string(edges[i]["src"], where + ".src"),
                    as_string(edges[i]["dst"], where + ".dst"), as_string(edges[i]["label"], where + ".label"));
  }
  return LabeledGraph::from_names(alphabet, vertices, es);
}

Json graph_to_json(const LabeledGraph& g) {
  Json j;
  j["alphabet"] = g.alphabet().names();
  j["vertices"] = g.vertex_names();
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"id", e.id},
                     {"src", g.vertex_name(e.src)},
                     {"dst", g.vertex_name(e.dst)},
                     {"label", g.alphabet().name(e.label)}});
  }
  j["edges"] = edges;
  return j;
}

SoficShift shift_from_json(const Json& j) {
  if (j.is_object() && j.contains("kind")) {
    expect_fields(j, "", {"kind", "presentation"});
    if (as_string(j["kind"], "kind") != "sofic") throw ParseError("kind", 0, "unsupported shift kind");
    return SoficShift(graph_from_json(j["presentation"]));
  }
  return SoficShift(graph_from_json(j));
}

Json shift_to_json(const SoficShift& x) {
  return Json{{"kind", "sofic"}, {"presentation", graph_to_json(x.presentation())}};
}

SlidingBlockCode code_from_json(const Json& j, const SoficShift& domain) {
  expect_fields(j, "", {"memory", "anticipation", "table"}, {"codomain", "separator", "domain"});
  const int m = as_int(j["memory"], "memory");
  const int n = as_int(j["anticipation"], "anticipation");
  if (m < 0 || n < 0) throw InvariantViolation("window-nonnegative", "memory and anticipation must be nonnegative");
  const Json& table = j["table"];
  if (!table.is_object()) throw ParseError("table", 0, "expected an object");
  if (j.contains("separator")) {
    const std::string sep = as_string(j["separator"], "separator");
    if (sep != std::string(domain.alphabet().separator())) {
      throw ParseError("separator", 0, "separator does not match the domain alphabet");
    }
  }
  std::vector<std::string> names;
  if (j.contains("codomain")) {
    names = string_list(j["codomain"], "codomain");
  } else {
    std::set<std::string> seen;
    for (const auto& [k, v] : table.items()) seen.insert(as_string(v, "table." + k));
    names.assign(seen.begin(), seen.end());
  }
  const Alphabet codomain(names);
  std::map<Word, Symbol> map;
  for (const auto& [k, v] : table.items()) {
    const Word block = domain.alphabet().parse(k);
    if (static_cast<int>(block.size()) != m + n + 1) {
      throw InvariantViolation("block-length", "block '" + k + "' does not have length memory+anticipation+1");
    }
    map[block] = codomain.at(as_string(v, "table." + k));
  }
  return SlidingBlockCode(domain, codomain, m, n, std::move(map));
}

SlidingBlockCode code_from_json(const Json& j) {
  if (!code_has_domain(j)) throw ParseError("domain", 0, "missing field");
  return code_from_json(j, shift_from_json(j["domain"]));
}

bool code_has_domain(const Json& j) { return j.is_object() && j.contains("domain"); }

Json code_to_json(const SlidingBlockCode& phi, bool embed_domain) {
  Json j;
  if (embed_domain) j["domain"] = shift_to_json(phi.domain());
  j["memory"] = phi.memory();
  j["anticipation"] = phi.anticipation();
  j["codomain"] = phi.codomain().names();
  const std::string_view sep = phi.domain().alphabet().separator();
  if (!sep.empty()) j["separator"] = std::string(sep);
  Json table = Json::object();
  for (const auto& [block, sym] : phi.table()) table[phi.domain().alphabet().spell(block)] = phi.codomain().name(sym);
  j["table"] = table;
  return j;
}

LabeledGraph load_graph(const std::string& path) { return graph_from_json(parse_json(read_file(path))); }
SoficShift load_shift(const std::string& path) { return shift_from_json(parse_json(read_file(path))); }
SlidingBlockCode load_code(const std::string& path, const SoficShift& domain) {
  return code_from_json(parse_json(read_file(path)), domain);
}
void save_graph(const std::string& path, const LabeledGraph& g) { write_file(path, dump_json(graph_to_json(g))); }
void save_shift(const std::string& path, const SoficShift& x) { write_file(path, dump_json(shift_to_json(x))); }
void save_code(const std::string& path, const SlidingBlockCode& phi) { write_file(path, dump_json(code_to_json(phi))); }

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const LabeledGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n";
  for (const auto& v : g.vertex_names()) out << "  " << quoted(v) << ";\n";
  for (const auto& e : g.edges()) {
    out << "  " << quoted(g.vertex_name(e.src)) << " -> " << quoted(g.vertex_name(e.dst))
        << " [label=" << quoted(g.alphabet().name(e.label)) << ", id=" << quoted(e.id) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const PointedAutomaton& a, const std::string& name) {
  const LabeledGraph& g = a.graph;
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n";
  out << "  label=" << quoted("window " + std::to_string(a.window_first()) + ".." + std::to_string(a.window_last()))
      << ";\n";
  for (const auto& v : g.vertex_names()) out << "  " << quoted(v) << ";\n";
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(static_cast<int>(e));
    std::string coords;
    for (std::size_t i = 0; i < a.allowed.size(); ++i) {
      if (a.allowed[i].test(e)) coords += (coords.empty() ? "" : ",") + std::to_string(a.offset + static_cast<int>(i));
    }
    out << "  " << quoted(g.vertex_name(ed.src)) << " -> " << quoted(g.vertex_name(ed.dst)) << " [label="
        << quoted(g.alphabet().name(ed.label) + (coords.empty() ? "" : " @" + coords)) << ", id=" << quoted(ed.id);
    if (!coords.empty()) out << ", style=bold";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace shiftlab
