#include "shiftlab/proptest.hpp"

#include <atomic>
#include <thread>

#include "shiftlab/error.hpp"
#include "shiftlab/openness.hpp"

namespace shiftlab {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Checked: return "checked";
    case Outcome::Vacuous: return "vacuous";
    case Outcome::Inconclusive: return "inconclusive";
    case Outcome::Forbidden: return "forbidden";
  }
  return "?";
}

double PropertyReport::inconclusive_rate() const {
  const int n = checked + vacuous + inconclusive + forbidden;
  return n == 0 ? 0.0 : static_cast<double>(inconclusive) / n;
}

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{
      "finite-cover-semi-open", "factor-code-semi-open", "right-closing-sft", "semi-open-constant-ae",
      "magic-witness",          "fiber-transfer",        "lift-consistency",  "ballier-audit",
      "retract-monotone"};
  return names;
}

namespace {

using Result = std::pair<Outcome, std::string>;

std::vector<std::string> symbols(int k) {
  std::vector<std::string> out;
  for (int i = 0; i < k; ++i) out.push_back(std::to_string(i));
  return out;
}

LabeledGraph nonempty_graph(Rng& rng, const TrialConfig& cfg) {
  for (int attempt = 0; attempt < kAttemptCap; ++attempt) {
    LabeledGraph g = gen_labeled_graph(rng, cfg.max_vertices, cfg.max_alphabet);
    if (trim_biextendable(g).num_edges() > 0) return g;
  }
  throw GenerationExhausted("no graph with a bi-infinite path within the attempt cap");
}

Json coded(const LabeledGraph& g, Rng& rng, const TrialConfig& cfg) {
  int k = 1;
  const auto map = gen_symbol_map(rng, g.alphabet().size(), cfg.max_alphabet, &k);
  return Json{{"graph", graph_to_json(g)}, {"map", map}, {"codomain", k}};
}

SlidingBlockCode code_of(const Json& graph, const Json& map, const Json& codomain) {
  const SoficShift x(graph_from_json(graph));
  return SlidingBlockCode::one_block(x, Alphabet(symbols(codomain.get<int>())), map.get<std::vector<Symbol>>());
}

SlidingBlockCode code_of(const Json& j) { return code_of(j.at("graph"), j.at("map"), j.at("codomain")); }

Result from_semi(const SemiOpenDecision& d) {
  if (d.refuted()) return {Outcome::Forbidden, "semi-open refuted at cylinder of length " +
                                                   std::to_string(d.cylinder ? d.cylinder->word.size() : 0)};
  if (d.inconclusive()) return {Outcome::Inconclusive, d.detail};
  return {Outcome::Checked, ""};
}

Result eval_right_closing_sft(const Json& inst) {
  const SlidingBlockCode phi = code_of(inst);
  const SoficShift y = image_presentation(phi);
  if (!is_right_closing(phi) || !y.irreducible()) return {Outcome::Vacuous, "hypothesis fails"};
  const auto ysft = is_sft(y, 8);
  if (ysft.refuted()) return {Outcome::Vacuous, "codomain not SFT"};
  if (ysft.inconclusive()) return {Outcome::Inconclusive, "codomain SFT undecided"};
  const auto semi = check_semi_open(phi);
  if (semi.refuted()) return {Outcome::Vacuous, "not semi-open"};
  if (semi.inconclusive()) return {Outcome::Inconclusive, semi.detail};
  const auto xsft = is_sft(phi.domain(), 8);
  if (xsft.refuted()) return {Outcome::Forbidden, "domain is not SFT"};
  if (!check_nonwandering_maximal(phi.domain()).nonwandering) return {Outcome::Forbidden, "domain is wandering"};
  if (xsft.inconclusive()) return {Outcome::Inconclusive, "domain SFT step above bound"};
  return {Outcome::Checked, ""};
}

Result eval_constant_ae(const Json& inst) {
  const SlidingBlockCode phi = SlidingBlockCode::cover_map(graph_from_json(inst.at("graph")));
  const SoficShift y = image_presentation(phi);
  if (!y.irreducible() || !is_finite_to_one(phi)) return {Outcome::Vacuous, "hypothesis fails"};
  const auto semi = check_semi_open(phi);
  if (semi.refuted()) return {Outcome::Vacuous, "not semi-open"};
  if (semi.inconclusive()) return {Outcome::Inconclusive, semi.detail};
  const SoficShift& x = phi.domain();
  const NonwanderingReport nw = check_nonwandering_maximal(x);
  if (!nw.nonwandering || !nw.all_maximal) return {Outcome::Forbidden, "domain not non-wandering with maximal components"};
  const LabeledGraph& red = x.reduced();
  for (const auto& c : scc_decompose(red)) {
    if (c.trivial) continue;
    BitSet keep(red.num_vertices());
    for (int v : c.vertices) keep.set(static_cast<std::size_t>(v));
    const SoficShift part(induced_subgraph(red, keep));
    std::map<Word, Symbol> table;
    for (const auto& [block, s] : phi.table()) {
      if (in_language(part, block)) table[block] = s;
    }
    const SlidingBlockCode restricted(part, phi.codomain(), phi.memory(), phi.anticipation(), table);
    try {
      const DegreeResult d = degree(restricted);
      if (d.d < 1 || !d.certified) return {Outcome::Forbidden, "component degree not certified"};
    } catch (const Error& e) {
      return {Outcome::Forbidden, std::string("component degree failed: ") + e.what()};
    }
  }
  return {Outcome::Checked, ""};
}

Result eval_magic(const Json& inst) {
  const LabeledGraph g = graph_from_json(inst.at("graph"));
  const Word alpha = inst.at("alpha").get<Word>();
  const Path pi{inst.at("path").get<std::vector<int>>()};
  const CenteredWord w = witness_from_magic(g, alpha, pi);
  const CenteredWord u(pi.edges, (static_cast<int>(pi.edges.size()) - 1) / 2);
  const auto img = cylinder_image(SlidingBlockCode::cover_map(g), u);
  try {
    if (!contains_cylinder(img, SoficShift(g), w)) return {Outcome::Forbidden, "constructed witness escapes the image"};
  } catch (const BudgetExceeded&) {
    return {Outcome::Inconclusive, "state budget exhausted"};
  }
  return {Outcome::Checked, ""};
}

Result eval_fiber(const Json& inst) {
  const SlidingBlockCode phi1 = code_of(inst.at("x"), inst.at("map1"), inst.at("codomain"));
  const SlidingBlockCode phi2 = code_of(inst.at("y"), inst.at("map2"), inst.at("codomain"));
  const FiberProduct fp = fiber_product(phi1, phi2);
  if (fp.sigma.num_edges() == 0) return {Outcome::Vacuous, "empty fiber product"};
  if (!same_shift(image_presentation(fp.psi1), phi1.domain()) ||
      !same_shift(image_presentation(fp.psi2), phi2.domain())) {
    return {Outcome::Vacuous, "projection not onto"};
  }
  const auto s1 = check_semi_open(fp.psi1);
  const auto f1 = check_semi_open(phi1);
  if (s1.refuted() || f1.refuted()) return {Outcome::Vacuous, "hypothesis fails"};
  if (s1.inconclusive() || f1.inconclusive()) return {Outcome::Inconclusive, "hypothesis undecided"};
  const auto s2 = check_semi_open(fp.psi2);
  const auto f2 = check_semi_open(phi2);
  if (s2.refuted()) return {Outcome::Forbidden, "second projection not semi-open"};
  if (f2.refuted()) return {Outcome::Forbidden, "second code not semi-open"};
  if (s2.inconclusive() || f2.inconclusive()) return {Outcome::Inconclusive, "conclusion undecided"};
  return {Outcome::Checked, ""};
}

Result eval_lift(const Json& inst) {
  const SlidingBlockCode f = code_of(inst);
  const SoficShift x2 = image_presentation(f);
  const auto lifted = lift_code(f, f.domain(), x2, 4);
  if (!lifted) return {Outcome::Vacuous, "no lift within the window bound"};
  const auto big = check_semi_open(*lifted);
  if (big.refuted()) return {Outcome::Vacuous, "lift not semi-open"};
  if (big.inconclusive()) return {Outcome::Inconclusive, big.detail};
  const auto small = check_semi_open(f);
  if (small.refuted()) return {Outcome::Forbidden, "code refuted although its lift is semi-open"};
  if (small.inconclusive()) return {Outcome::Inconclusive, small.detail};
  return {Outcome::Checked, ""};
}

Result eval_ballier(const Json& inst) {
  const SlidingBlockCode phi = code_of(inst);
  AnalysisOptions opt;
  opt.run_open = false;
  opt.retract_max = 2;
  const Facts facts = analyze(phi, opt);
  const auto certs = certificates(facts);
  try {
    audit(certs, facts);
  } catch (const ConsistencyFault& e) {
    return {Outcome::Forbidden, e.what()};
  }
  bool any = false;
  for (const auto& c : certs) {
    if (c.tag != "ThmBallier" || !c.emitted) continue;
    any = true;
    for (const auto& concl : c.conclusions) {
      auto it = facts.find(concl);
      if (it == facts.end() || it->second != Verdict::Proved) return {Outcome::Forbidden, "everywhere retract not confirmed"};
    }
  }
  return {any ? Outcome::Checked : Outcome::Vacuous, ""};
}

Result eval_retract(const Json& inst) {
  const SlidingBlockCode phi = code_of(inst);
  try {
    const auto r = check_right_continuing_retract(phi, 3);
    const auto l = check_left_continuing_retract(phi, 3);
    const auto b = check_continuing_retract(phi, 3, Side::Bi);
    if (r.inconclusive() || l.inconclusive() || b.inconclusive()) return {Outcome::Inconclusive, "state budget exhausted"};
    if (b.proved() != (r.proved() && l.proved())) return {Outcome::Forbidden, "bi retract differs from both sides"};
  } catch (const ConsistencyFault& e) {
    return {Outcome::Forbidden, e.what()};
  }
  return {Outcome::Checked, ""};
}

}  // namespace

Json generate_instance(const std::string& property, Rng& rng, const TrialConfig& cfg) {
  const int mv = cfg.max_vertices;
  const int ma = cfg.max_alphabet;
  if (property == "finite-cover-semi-open") {
    return Json{{"graph", graph_to_json(gen_labeled_graph(rng, mv, ma, GraphKind::Irreducible))}};
  }
  if (property == "factor-code-semi-open" || property == "lift-consistency" || property == "ballier-audit") {
    return coded(gen_labeled_graph(rng, mv, ma, GraphKind::Irreducible), rng, cfg);
  }
  if (property == "right-closing-sft" || property == "retract-monotone") return coded(nonempty_graph(rng, cfg), rng, cfg);
  if (property == "semi-open-constant-ae") return Json{{"graph", graph_to_json(nonempty_graph(rng, cfg))}};
  if (property == "magic-witness") {
    for (int attempt = 0; attempt < kAttemptCap; ++attempt) {
      LabeledGraph g = gen_labeled_graph(rng, mv, ma, GraphKind::IrreducibleRightResolving);
      const auto alpha = find_magic_word(g);
      if (!alpha) continue;
      const int len = rng.between(1, 3);
      std::vector<int> path;
      int v = rng.between(0, static_cast<int>(g.num_vertices()) - 1);
      for (int i = 0; i < len; ++i) {
        const auto& out = g.out_edges(v);
        const int e = out[rng.below(out.size())];
        path.push_back(e);
        v = g.edge(e).dst;
      }
      return Json{{"graph", graph_to_json(g)}, {"alpha", *alpha}, {"path", path}};
    }
    throw GenerationExhausted("no cover with a magic word within the attempt cap");
  }
  if (property == "fiber-transfer") {
    const LabeledGraph gx = gen_labeled_graph(rng, mv, ma, GraphKind::Irreducible);
    const LabeledGraph gy = gen_labeled_graph(rng, mv, ma, GraphKind::Irreducible);
    int k = 1;
    const auto map1 = gen_symbol_map(rng, gx.alphabet().size(), ma, &k);
    std::vector<Symbol> map2(gy.alphabet().size());
    for (auto& s : map2) s = static_cast<Symbol>(rng.below(static_cast<std::uint64_t>(k)));
    return Json{{"x", graph_to_json(gx)}, {"map1", map1}, {"y", graph_to_json(gy)}, {"map2", map2}, {"codomain", k}};
  }
  throw InvariantViolation("property-registered", "unknown property '" + property + "'");
}

std::pair<Outcome, std::string> evaluate_instance(const std::string& property, const Json& inst) {
  try {
    if (property == "finite-cover-semi-open") {
      return from_semi(check_semi_open(SlidingBlockCode::cover_map(graph_from_json(inst.at("graph")))));
    }
    if (property == "factor-code-semi-open") return from_semi(check_semi_open(code_of(inst)));
    if (property == "right-closing-sft") return eval_right_closing_sft(inst);
    if (property == "semi-open-constant-ae") return eval_constant_ae(inst);
    if (property == "magic-witness") return eval_magic(inst);
    if (property == "fiber-transfer") return eval_fiber(inst);
    if (property == "lift-consistency") return eval_lift(inst);
    if (property == "ballier-audit") return eval_ballier(inst);
    if (property == "retract-monotone") return eval_retract(inst);
  } catch (const ConsistencyFault& e) {
    return {Outcome::Forbidden, e.what()};
  }
  throw InvariantViolation("property-registered", "unknown property '" + property + "'");
}

PropertyReport proptest(const TrialConfig& cfg, unsigned threads) {
  PropertyReport report;
  report.config = cfg;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  struct Slot {
    TrialResult result;
    bool skipped = false;
    std::string log;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(std::max(cfg.trials, 0)));
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < slots.size(); i = cursor++) {
      Slot& s = slots[i];
      s.result.trial = static_cast<int>(i);
      Rng rng = Rng::for_trial(cfg.seed, i);
      try {
        s.result.instance = generate_instance(cfg.property, rng, cfg);
      } catch (const GenerationExhausted& e) {
        s.skipped = true;
        s.log = "trial " + std::to_string(i) + ": " + e.what();
        continue;
      }
      auto [o, d] = evaluate_instance(cfg.property, s.result.instance);
      s.result.outcome = o;
      s.result.detail = d;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& s : slots) {
    if (s.skipped) {
      ++report.skipped;
      report.skip_log.push_back(s.log);
      continue;
    }
    switch (s.result.outcome) {
      case Outcome::Checked: ++report.checked; break;
      case Outcome::Vacuous: ++report.vacuous; break;
      case Outcome::Inconclusive: ++report.inconclusive; break;
      case Outcome::Forbidden:
        ++report.forbidden;
        report.failures.push_back(s.result);
        break;
    }
  }
  return report;
}

Json failure_artifact(const PropertyReport& r, const TrialResult& t) {
  return Json{{"property", r.config.property},
              {"seed", r.config.seed},
              {"trial", t.trial},
              {"instance", t.instance},
              {"outcome", to_string(t.outcome)},
              {"detail", t.detail}};
}

Json report_to_json(const PropertyReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(failure_artifact(r, f));
  return Json{{"property", r.config.property},
              {"seed", r.config.seed},
              {"trials", r.config.trials},
              {"max_vertices", r.config.max_vertices},
              {"max_alphabet", r.config.max_alphabet},
              {"checked", r.checked},
              {"vacuous", r.vacuous},
              {"inconclusive", r.inconclusive},
              {"forbidden", r.forbidden},
              {"skipped", r.skipped},
              {"skip_log", r.skip_log},
              {"failures", failures}};
}

std::pair<Outcome, std::string> replay(const Json& artifact) {
  return evaluate_instance(artifact.at("property").get<std::string>(), artifact.at("instance"));
}

}  // namespace shiftlab
