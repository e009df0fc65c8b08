#include "shiftlab/report.hpp"

namespace shiftlab {

Json decision_to_json(const Decision& d) {
  Json j;
  j["verdict"] = to_string(d.verdict);
  j["provenance"] = d.provenance.str();
  j["detail"] = d.detail;
  Json b = Json::object();
  for (const auto& [k, v] : d.bounds) b[k] = v;
  j["bounds"] = b;
  return j;
}

Json centered_to_json(const Alphabet& a, const CenteredWord& w) {
  return Json{{"word", a.spell(w.word)}, {"center", w.center}};
}

Json table_to_json(const SlidingBlockCode& phi, const LiftingTable& t) {
  Json rows = Json::array();
  for (const auto& e : t.entries) {
    Json ws = Json::array();
    for (const auto& [u, w] : e.witnesses) {
      ws.push_back({{"cylinder", centered_to_json(phi.domain().alphabet(), u)},
                    {"witness", centered_to_json(phi.codomain(), w)}});
    }
    rows.push_back({{"l", e.l}, {"k", e.k}, {"witnesses", ws}});
  }
  Json j{{"entries", rows}};
  j["uniform_bound"] = t.uniform_bound ? Json(*t.uniform_bound) : Json(nullptr);
  return j;
}

namespace {

Json escapes_to_json(const SlidingBlockCode& phi, const InteriorDecision& r) {
  const Alphabet& c = phi.codomain();
  Json out = Json::array();
  for (const auto& [w, e] : r.escapes) {
    Json x{{"word", centered_to_json(c, w)}, {"left", c.spell(e.left)}, {"right", c.spell(e.right)}};
    if (!e.extended.empty()) x["extended"] = centered_to_json(c, CenteredWord(e.extended, e.extended_center));
    out.push_back(x);
  }
  return out;
}

}  // namespace

Json semi_open_to_json(const SlidingBlockCode& phi, const SemiOpenDecision& d) {
  Json j = decision_to_json(d);
  j["table"] = table_to_json(phi, d.table);
  j["saturation_level"] = d.saturation_level;
  j["profile_classes"] = d.profile_classes;
  if (d.cylinder) {
    j["cylinder"] = centered_to_json(phi.domain().alphabet(), *d.cylinder);
    j["refutation"] = {{"saturation_radius", d.refutation.saturation_radius},
                       {"escapes", escapes_to_json(phi, d.refutation)}};
  }
  return j;
}

Json open_to_json(const SlidingBlockCode& phi, const OpenDecision& d) {
  Json j = decision_to_json(d);
  j["table"] = table_to_json(phi, d.table);
  Json lr = Json::object();
  for (const auto& [l, k] : d.lifting_radius) lr[std::to_string(l)] = k;
  j["lifting_radius"] = lr;
  j["uniform_bound"] = d.uniform_bound ? Json(*d.uniform_bound) : Json(nullptr);
  if (d.cylinder) j["cylinder"] = centered_to_json(phi.domain().alphabet(), *d.cylinder);
  if (d.window_word) {
    const Alphabet& c = phi.codomain();
    j["window_word"] = centered_to_json(c, *d.window_word);
    j["escape"] = {{"left", c.spell(d.escape.left)}, {"right", c.spell(d.escape.right)}};
  }
  return j;
}

Json retract_to_json(const SlidingBlockCode& phi, const RetractDecision& d) {
  Json j = decision_to_json(d);
  j["side"] = to_string(d.side);
  j["n"] = d.n;
  if (d.refuted()) {
    const Alphabet& a = phi.domain().alphabet();
    const Alphabet& c = phi.codomain();
    // Left failures are stated for the mirrored code, read right to left.
    j["counterexample"] = {
        {"side", to_string(d.failing_side)},
        {"loop", {{"domain", a.spell(d.loop_domain)}, {"image", c.spell(d.loop_image)}}},
        {"prefix", {{"domain", a.spell(d.prefix_domain)}, {"image", c.spell(d.prefix_image)}}},
        {"tail", {{"domain", a.spell(d.tail_domain)}, {"image", c.spell(d.tail_image)}}},
        {"right", c.spell(d.right)}};
  }
  return j;
}

Json degree_to_json(const SlidingBlockCode& phi, const DegreeResult& d) {
  return {{"degree", d.d},
          {"witness", phi.codomain().spell(d.witness)},
          {"position", d.position},
          {"fiber", d.fiber},
          {"certified", d.certified}};
}

Json certificates_to_json(const std::vector<Certificate>& certs) {
  Json out = Json::array();
  for (const auto& c : certs) {
    Json hs = Json::array();
    for (const auto& h : c.hypotheses) hs.push_back({{"property", h.property}, {"verdict", to_string(h.verdict)}});
    out.push_back({{"tag", c.tag}, {"hypotheses", hs}, {"conclusions", c.conclusions}, {"emitted", c.emitted}});
  }
  return out;
}

Json facts_to_json(const Facts& facts) {
  Json j = Json::object();
  for (const auto& [k, v] : facts) j[k] = to_string(v);
  return j;
}

}  // namespace shiftlab
