#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "shiftlab/error.hpp"
#include "shiftlab/io.hpp"
#include "shiftlab/openness.hpp"
#include "shiftlab/proptest.hpp"
#include "shiftlab/report.hpp"

using namespace shiftlab;

namespace {

constexpr int kExitProved = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitFault = 3;
constexpr int kExitError = 4;

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Proved: return kExitProved;
    case Verdict::Refuted: return kExitRefuted;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitError;
}

void emit(const Json& j, const std::string& out) {
  const std::string text = dump_json(j);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

// A code file either embeds its domain or takes it from `shift_path`.
SlidingBlockCode load_code_arg(const std::string& code_path, const std::string& shift_path) {
  const Json j = parse_json(read_file(code_path));
  if (!shift_path.empty()) return code_from_json(j, load_shift(shift_path));
  if (code_has_domain(j)) return code_from_json(j);
  throw ParseError("domain", 0, code_path + " has no embedded domain; pass the domain shift with -x");
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

int cmd_fischer(const std::string& in, const std::string& out) {
  const SoficShift x = load_shift(in);
  emit(shift_to_json(SoficShift(fischer_cover(x))), out);
  return 0;
}

int cmd_entropy(const std::string& in) {
  const SoficShift x = load_shift(in);
  const double h = entropy(x);
  if (std::isinf(h)) {
    std::cout << "{\n  \"empty\": true,\n  \"entropy\": null\n}\n";
  } else {
    std::printf("{\n  \"empty\": false,\n  \"entropy\": %.12f\n}\n", h);
  }
  return 0;
}

int cmd_magic(const std::string& in) {
  const SoficShift x = load_shift(in);
  const LabeledGraph& g = x.presentation();
  const auto w = find_magic_word(g);
  Json j{{"magic", w ? Json(g.alphabet().spell(*w)) : Json(nullptr)}};
  emit(j, "");
  return 0;
}

int cmd_degree(const std::string& code, const std::string& shift) {
  const SlidingBlockCode phi = load_code_arg(code, shift);
  emit(degree_to_json(phi, degree(phi)), "");
  return 0;
}

int cmd_fiber(const std::string& c1, const std::string& x1, const std::string& c2, const std::string& x2,
              const std::string& out) {
  const SlidingBlockCode phi1 = load_code_arg(c1, x1);
  const SlidingBlockCode phi2 = load_code_arg(c2, x2);
  const FiberProduct fp = fiber_product(phi1, phi2);
  Json j{{"sigma", shift_to_json(SoficShift(fp.sigma))},
         {"psi1", code_to_json(fp.psi1)},
         {"psi2", code_to_json(fp.psi2)}};
  emit(j, out);
  return 0;
}

int cmd_lift(const std::string& f_path, const std::string& x1, const std::string& x2, int w_max,
             const std::string& out) {
  const SoficShift s1 = load_shift(x1);
  const SoficShift s2 = load_shift(x2);
  const SlidingBlockCode f = code_from_json(parse_json(read_file(f_path)), s1);
  const auto lifted = lift_code(f, s1, s2, w_max);
  if (!lifted) {
    emit(Json{{"found", false}, {"verdict", "Inconclusive"}, {"w_max", w_max}}, out);
    return kExitInconclusive;
  }
  emit(Json{{"found", true}, {"verdict", "Proved"}, {"w_max", w_max}, {"code", code_to_json(*lifted, true)}}, out);
  return kExitProved;
}

}  // namespace

namespace {

struct CheckArgs {
  std::string property;
  std::string shift;
  std::string code;
  std::string report;
  std::string side = "right";
  int l_max = 4;
  int k_max = 12;
  int retract = 0;
  bool certificates = true;
};

int cmd_check(const CheckArgs& a) {
  const SlidingBlockCode phi = load_code_arg(a.code, a.shift);
  OpennessOptions opts;
  opts.l_max = a.l_max;
  opts.k_max = a.k_max;

  const auto t0 = std::chrono::steady_clock::now();
  Json payload;
  Verdict verdict = Verdict::Inconclusive;
  std::string fact;
  if (a.property == "semi-open") {
    const auto d = check_semi_open(phi, opts);
    payload = semi_open_to_json(phi, d);
    verdict = d.verdict;
    fact = "semi_open";
  } else if (a.property == "open") {
    const auto d = check_open(phi, opts);
    payload = open_to_json(phi, d);
    verdict = d.verdict;
    fact = "open";
  } else {
    Side side = a.side == "left" ? Side::Left : a.side == "bi" ? Side::Bi : Side::Right;
    const auto d = check_continuing_retract(phi, a.retract, side);
    payload = retract_to_json(phi, d);
    verdict = d.verdict;
    const char* prefix = side == Side::Right ? "right" : side == Side::Left ? "left" : "bi";
    fact = std::string(prefix) + "_continuing_retract_" + std::to_string(a.retract);
  }
  const double decision_ms = elapsed_ms(t0);

  Json report{{"command", "check " + a.property}, {"verdict", to_string(verdict)}, {"payload", payload}};
  int code = exit_code(verdict);
  double cert_ms = 0;
  if (a.certificates) {
    const auto t1 = std::chrono::steady_clock::now();
    AnalysisOptions ao;
    ao.openness = opts;
    ao.retract_max = std::max(2, a.retract);
    Facts facts = analyze(phi, ao);
    // The direct decision is authoritative for its own property.
    if (verdict != Verdict::Inconclusive) facts[fact] = verdict;
    const auto certs = certificates(facts);
    report["facts"] = facts_to_json(facts);
    report["certificates"] = certificates_to_json(certs);
    try {
      audit(certs, facts);
    } catch (const ConsistencyFault& e) {
      report["fault"] = e.what();
      code = kExitFault;
    }
    cert_ms = elapsed_ms(t1);
  } else {
    report["certificates"] = Json::array();
  }
  report["timing"] = {{"decision_ms", decision_ms}, {"certificates_ms", cert_ms}};
  const std::string text = dump_json(report);
  if (!a.report.empty()) write_file(a.report, text);
  std::cout << text;
  return code;
}

struct ProptestArgs {
  TrialConfig cfg;
  std::string report;
  std::string artifacts;
  unsigned threads = 0;
};

int cmd_proptest(ProptestArgs a) {
  std::vector<std::string> names;
  if (a.cfg.property == "all") {
    names = property_names();
  } else {
    names = {a.cfg.property};
  }
  Json reports = Json::array();
  int forbidden = 0;
  for (const auto& name : names) {
    TrialConfig cfg = a.cfg;
    cfg.property = name;
    const PropertyReport r = proptest(cfg, a.threads);
    forbidden += r.forbidden;
    reports.push_back(report_to_json(r));
    if (!a.artifacts.empty()) {
      std::filesystem::create_directories(a.artifacts);
      for (const auto& f : r.failures) {
        const auto path = std::filesystem::path(a.artifacts) / (name + "-" + std::to_string(f.trial) + ".json");
        write_file(path.string(), dump_json(failure_artifact(r, f)));
      }
    }
  }
  const Json out = names.size() == 1 ? reports[0] : Json{{"reports", reports}};
  const std::string text = dump_json(out);
  if (!a.report.empty()) write_file(a.report, text);
  std::cout << text;
  return forbidden == 0 ? 0 : 1;
}

int cmd_replay(const std::string& in) {
  const Json artifact = parse_json(read_file(in));
  const auto [outcome, detail] = replay(artifact);
  const std::string recorded = artifact.at("outcome").get<std::string>();
  const bool same = recorded == to_string(outcome);
  emit(Json{{"outcome", to_string(outcome)}, {"detail", detail}, {"recorded", recorded}, {"matches", same}}, "");
  return same ? 0 : 1;
}

struct DotArgs {
  std::string input;
  std::string code;
  std::string cylinder;
  int center = -1;
  bool fischer = false;
  bool dot = false;
};

int cmd_export_dot(const DotArgs& a) {
  std::string text;
  if (!a.code.empty()) {
    const SlidingBlockCode phi = load_code_arg(a.code, a.input);
    const Word u = phi.domain().alphabet().parse(a.cylinder);
    const CenteredWord cu = a.center < 0 ? CenteredWord::central(u) : CenteredWord(u, a.center);
    text = to_dot(trim_pointed(cylinder_image(phi, cu)), "image");
  } else {
    const SoficShift x = load_shift(a.input);
    text = a.fischer ? to_dot(fischer_cover(x), "fischer") : to_dot(x.presentation(), "G");
  }
  if (a.dot) {
    std::cout << text;
  } else {
    emit(Json{{"dot", text}}, "");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shiftlab: sofic shifts and sliding-block codes"};
  app.require_subcommand(1);
  int code = 0;

  std::string in, out, shift, code_path;
  auto* fischer = app.add_subcommand("fischer", "Fischer cover of an irreducible sofic shift");
  fischer->add_option("-i,--input", in, "shift JSON")->required();
  fischer->add_option("-o,--output", out, "output file (stdout if omitted)");

  auto* ent = app.add_subcommand("entropy", "topological entropy");
  ent->add_option("-i,--input", in, "shift JSON")->required();

  auto* magic = app.add_subcommand("magic", "shortest magic word of a right-resolving presentation");
  magic->add_option("-i,--input", in, "cover JSON")->required();

  auto* deg = app.add_subcommand("degree", "degree of a finite-to-one code");
  deg->add_option("-x,--shift", shift, "domain shift JSON");
  deg->add_option("-c,--code", code_path, "code JSON")->required();

  std::string c1, c2, x1, x2;
  auto* fiber = app.add_subcommand("fiber", "fiber product of two codes with a common codomain");
  fiber->add_option("--c1", c1, "first code JSON")->required();
  fiber->add_option("--c2", c2, "second code JSON")->required();
  fiber->add_option("--x1", x1, "domain of the first code");
  fiber->add_option("--x2", x2, "domain of the second code");
  fiber->add_option("-o,--output", out, "output file");

  std::string f_path;
  int w_max = 6;
  auto* lift = app.add_subcommand("lift", "lift a code to the Fischer-cover edge shifts");
  lift->add_option("-f,--code", f_path, "code JSON on X1")->required();
  lift->add_option("--x1", x1, "domain shift")->required();
  lift->add_option("--x2", x2, "codomain shift")->required();
  lift->add_option("--wmax", w_max, "largest window searched")->capture_default_str();
  lift->add_option("-o,--output", out, "output file");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "decide a property of a code");
  check->add_option("property", check_args.property, "semi-open | open | right-continuing")
      ->required()
      ->check(CLI::IsMember({"semi-open", "open", "right-continuing"}));
  check->add_option("-x,--shift", check_args.shift, "domain shift JSON");
  check->add_option("-c,--code", check_args.code, "code JSON")->required();
  check->add_option("--lmax", check_args.l_max, "largest cylinder half-length")->capture_default_str();
  check->add_option("--kmax", check_args.k_max, "largest witness radius")->capture_default_str();
  check->add_option("--retract", check_args.retract, "retract n")->capture_default_str();
  check->add_option("--side", check_args.side, "right | left | bi")
      ->check(CLI::IsMember({"right", "left", "bi"}))
      ->capture_default_str();
  check->add_option("--report", check_args.report, "report file");
  check->add_flag("!--no-certificates", check_args.certificates, "skip the certificate engine");

  ProptestArgs pt;
  pt.cfg.seed = 7;
  auto* prop = app.add_subcommand("proptest", "run a theorem-consistency property");
  prop->add_option("-p,--property", pt.cfg.property, "property name or 'all'")->required();
  prop->add_option("--seed", pt.cfg.seed, "64-bit seed")->capture_default_str();
  prop->add_option("--trials", pt.cfg.trials, "number of trials")->capture_default_str();
  prop->add_option("--max-vertices", pt.cfg.max_vertices, "vertex bound")->capture_default_str();
  prop->add_option("--max-alphabet", pt.cfg.max_alphabet, "alphabet bound")->capture_default_str();
  prop->add_option("--threads", pt.threads, "worker threads (0: all cores)");
  prop->add_option("--report", pt.report, "report file");
  prop->add_option("--artifacts", pt.artifacts, "directory for failure artifacts");

  auto* rep = app.add_subcommand("replay", "re-run a failure artifact");
  rep->add_option("-i,--input", in, "artifact JSON")->required();

  DotArgs dot;
  auto* exp = app.add_subcommand("export-dot", "graphviz rendering of a presentation or a cylinder image");
  exp->add_option("-i,--input", dot.input, "shift JSON (domain when -c is given)");
  exp->add_option("-c,--code", dot.code, "code JSON: render the image of --cylinder");
  exp->add_option("--cylinder", dot.cylinder, "domain word u");
  exp->add_option("--center", dot.center, "center coordinate of u (default: middle)");
  exp->add_flag("--fischer", dot.fischer, "render the Fischer cover");
  exp->add_flag("--dot", dot.dot, "emit raw DOT instead of JSON");

  // Multi-letter short flags (-c1, -x1, ...) are accepted as long options.
  std::vector<std::string> args(argv, argv + argc);
  for (auto& s : args) {
    if (s == "-c1" || s == "-c2" || s == "-x1" || s == "-x2") s = "-" + s;
  }
  std::vector<char*> argp;
  for (auto& s : args) argp.push_back(s.data());
  CLI11_PARSE(app, static_cast<int>(argp.size()), argp.data());

  try {
    if (*fischer) code = cmd_fischer(in, out);
    else if (*ent) code = cmd_entropy(in);
    else if (*magic) code = cmd_magic(in);
    else if (*deg) code = cmd_degree(code_path, shift);
    else if (*fiber) code = cmd_fiber(c1, x1, c2, x2, out);
    else if (*lift) code = cmd_lift(f_path, x1, x2, w_max, out);
    else if (*check) code = cmd_check(check_args);
    else if (*prop) code = cmd_proptest(pt);
    else if (*rep) code = cmd_replay(in);
    else if (*exp) {
      if (dot.input.empty() && dot.code.empty()) throw ParseError("input", 0, "export-dot needs -i or -c");
      code = cmd_export_dot(dot);
    }
  } catch (const ConsistencyFault& e) {
    std::cerr << dump_json(Json{{"error", e.kind()}, {"message", e.what()}});
    return kExitFault;
  } catch (const Error& e) {
    std::cerr << dump_json(Json{{"error", e.kind()}, {"message", e.what()}});
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << dump_json(Json{{"error", "Exception"}, {"message", e.what()}});
    return kExitError;
  }
  return code;
}
