// One line per acceptance criterion: PASS/FAIL, criterion number, summary,
// elapsed time against its limit. Exit status is nonzero if any line fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "oracles.hpp"
#include "shiftlab/error.hpp"
#include "shiftlab/io.hpp"
#include "shiftlab/openness.hpp"
#include "shiftlab/proptest.hpp"

using namespace shiftlab;

namespace {

std::string fixture(const std::string& name) { return std::string(SHIFTLAB_FIXTURE_DIR) + "/" + name; }

int failures = 0;

// Runs `body`, which fills `summary` and returns whether the criterion
// holds; the time limit is part of the criterion.
void criterion(int n, double limit_s, const std::function<bool(std::string&)>& body) {
  std::string summary;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(summary);
  } catch (const std::exception& e) {
    summary += std::string(" exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = s < limit_s;
  if (!in_time) summary += " (over time limit)";
  const bool pass = ok && in_time;
  failures += pass ? 0 : 1;
  std::printf("%s criterion %d: %s [%.3f s, limit %.1f s]\n", pass ? "PASS" : "FAIL", n, summary.c_str(), s, limit_s);
  std::fflush(stdout);
}

std::vector<std::string> symbols(int k) {
  std::vector<std::string> out;
  for (int i = 0; i < k; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

int main() {
  criterion(1, 1.0, [](std::string& out) {
    const SoficShift x = load_shift(fixture("collapse.json"));
    const SlidingBlockCode phi = code_from_json(parse_json(read_file(fixture("collapse-code.json"))));
    const auto d = check_semi_open(phi);
    const bool cyl = d.cylinder && x.alphabet().spell(d.cylinder->word) == "2";
    // every central window of φ([2]) is a block of zeros, and 0^∞ itself is read
    const auto a = cylinder_image(phi, CenteredWord::central(x.alphabet().parse("2")));
    bool only_zero = true;
    for (int k = 0; k <= 6; ++k) {
      only_zero = only_zero && window_language(a, k) == std::set<Word>{Word(static_cast<std::size_t>(2 * k + 1), 0)};
    }
    const bool has_zero = reads(a, Word(13, 0), -6);
    out = "semi-open " + std::string(to_string(d.verdict)) + " at cylinder " +
          (d.cylinder ? x.alphabet().spell(d.cylinder->word) : "-") + ", interior refutation " +
          to_string(d.refutation.verdict) + ", image of [2] = {0^inf}: " + (only_zero && has_zero ? "yes" : "no");
    return d.refuted() && cyl && d.refutation.refuted() && only_zero && has_zero;
  });

  criterion(2, 1.0, [](std::string& out) {
    const SlidingBlockCode phi = code_from_json(parse_json(read_file(fixture("even-cover.json"))));
    const LabeledGraph cover = load_shift(fixture("even.json")).presentation();
    const int d = degree(phi).d;
    const auto c0 = count_preimages_of_periodic(cover, Word{0});
    const auto c1 = count_preimages_of_periodic(cover, Word{1});
    const auto semi = check_semi_open(phi);
    const auto cto = check_constant_to_one(phi);
    out = "degree " + std::to_string(d) + ", preimages of 0^inf " + std::to_string(c0) + ", of 1^inf " +
          std::to_string(c1) + ", semi-open " + to_string(semi.verdict) + ", constant-to-one " +
          to_string(cto.verdict);
    return d == 1 && c0 == 2 && c1 == 1 && semi.proved() && cto.refuted();
  });

  criterion(3, 0.1, [](std::string& out) {
    // λ² = λ + 1 for the golden shift; 3 loops for the full 3-shift
    const double hg = entropy(load_shift(fixture("golden.json")));
    const double h3 = entropy(load_shift(fixture("full-3.json")));
    const double eg = std::fabs(hg - std::log((1 + std::sqrt(5.0)) / 2));
    const double e3 = std::fabs(h3 - std::log(3.0));
    char buf[160];
    std::snprintf(buf, sizeof buf, "golden %.12f (err %.1e), full 3-shift %.12f (err %.1e)", hg, eg, h3, e3);
    out = buf;
    return eg < 1e-9 && e3 < 1e-12;
  });

  criterion(4, 300.0, [](std::string& out) {
    bool ok = true;
    for (const auto& name : property_names()) {
      TrialConfig cfg;
      cfg.seed = 7;
      cfg.trials = 200;
      cfg.max_vertices = 6;
      cfg.max_alphabet = 3;
      cfg.property = name;
      const auto r = proptest(cfg);
      const double rate = r.inconclusive_rate();
      ok = ok && r.forbidden == 0 && rate < 0.2;
      char buf[200];
      std::snprintf(buf, sizeof buf, "\n    %-24s checked %3d vacuous %3d inconclusive %3d (%.1f%%) forbidden %d skipped %d",
                    name.c_str(), r.checked, r.vacuous, r.inconclusive, 100 * rate, r.forbidden, r.skipped);
      out += buf;
    }
    out = "theorem-consistency suite, 200 trials per property:" + out + "\n   ";
    return ok;
  });

  criterion(5, 120.0, [](std::string& out) {
    int agree = 0, total = 0, contained = 0;
    for (std::uint64_t t = 0; total < 500 && t < 5000; ++t) {
      Rng rng = Rng::for_trial(5, t);
      LabeledGraph g;
      try {
        g = gen_labeled_graph(rng, 4, 3, GraphKind::Any);
      } catch (const GenerationExhausted&) {
        continue;
      }
      const SoficShift x(g);
      if (x.empty()) continue;
      int used = 0;
      const auto map = gen_symbol_map(rng, g.alphabet().size(), 3, &used);
      if (used < 2) continue;  // a one-symbol image contains everything
      const auto phi = SlidingBlockCode::one_block(x, Alphabet(symbols(used)), map);
      const SoficShift y = image_presentation(phi);
      const auto ul = language(x, rng.between(1, 3));
      auto ui = ul.begin();
      std::advance(ui, static_cast<long>(rng.below(ul.size())));
      const CenteredWord u(*ui, static_cast<int>(rng.below(ui->size())));
      // half the words come from the image of [u] itself, the rest from Y
      const auto image = cylinder_image(phi, u);
      CenteredWord w;
      if (rng.coin(1, 2)) {
        const int k = rng.between(0, 2);
        const auto wl = window_language(image, k);
        auto wi = wl.begin();
        std::advance(wi, static_cast<long>(rng.below(wl.size())));
        w = CenteredWord(*wi, k);
      } else {
        const auto wl = language(y, rng.between(1, 5));
        auto wi = wl.begin();
        std::advance(wi, static_cast<long>(rng.below(wl.size())));
        w = CenteredWord(*wi, static_cast<int>(rng.below(wi->size())));
      }
      // widest margin whose window language stays small enough to enumerate
      const int span = std::max(u.last(), w.last()) - std::min(u.first(), w.first()) + 1;
      int margin = 2;
      while (margin < 8 && oracle::count_words(y.presentation(), span + 2 * (margin + 1)) <= 20000) ++margin;
      const bool engine = contains_cylinder(image, y, w);
      const bool brute = oracle::lift_contains(phi, u, y.presentation(), w, margin);
      ++total;
      agree += engine == brute ? 1 : 0;
      contained += engine ? 1 : 0;
    }
    out = "contains_cylinder vs brute-force lifting: " + std::to_string(agree) + "/" + std::to_string(total) +
          " agree (" + std::to_string(contained) + " contained)";
    return total == 500 && agree == total;
  });

  criterion(6, 120.0, [](std::string& out) {
    int built = 0, verified = 0;
    for (std::uint64_t t = 0; built < 200 && t < 20000; ++t) {
      Rng rng = Rng::for_trial(6, t);
      LabeledGraph g;
      try {
        g = gen_labeled_graph(rng, 6, 3, GraphKind::IrreducibleRightResolving);
      } catch (const GenerationExhausted&) {
        continue;
      }
      const auto alpha = find_magic_word(g);
      if (!alpha) continue;
      Path pi;
      int v = rng.between(0, static_cast<int>(g.num_vertices()) - 1);
      for (int i = rng.between(1, 3); i > 0; --i) {
        const auto& outs = g.out_edges(v);
        pi.edges.push_back(outs[rng.below(outs.size())]);
        v = g.edge(pi.edges.back()).dst;
      }
      const auto phi = SlidingBlockCode::cover_map(g);
      Word u;
      for (int e : pi.edges) u.push_back(*phi.domain().alphabet().find(g.edge(e).id));
      const CenteredWord cu(u, (static_cast<int>(u.size()) - 1) / 2);
      const CenteredWord w = witness_from_magic(g, *alpha, pi);
      ++built;
      verified += contains_cylinder(cylinder_image(phi, cu), SoficShift(g), w) ? 1 : 0;
    }
    out = "magic-word witnesses re-verified: " + std::to_string(verified) + "/" + std::to_string(built);
    return built == 200 && verified == built;
  });

  criterion(7, 10.0, [](std::string& out) {
    const auto even = code_from_json(parse_json(read_file(fixture("even-cover.json"))));
    const auto golden = code_from_json(parse_json(read_file(fixture("golden-cover.json"))));
    const auto de = check_open(even, 4, 6);
    const auto dg = check_open(golden, 4, 6);
    out = std::string("even cover open: ") + to_string(de.verdict) + ", golden cover open: " + to_string(dg.verdict);
    return de.refuted() && dg.proved();
  });

  criterion(8, 300.0, [](std::string& out) {
    int faults = 0, forbidden = 0, proved_retracts = 0, ballier_emitted = 0, missing = 0, non_monotone = 0;
    for (const std::string name : {"ballier-audit", "retract-monotone"}) {
      TrialConfig cfg;
      cfg.seed = 8;
      cfg.trials = 200;
      cfg.property = name;
      forbidden += proptest(cfg).forbidden;
    }
    for (std::uint64_t t = 0; t < 200; ++t) {
      Rng rng = Rng::for_trial(88, t);
      LabeledGraph g;
      try {
        g = gen_labeled_graph(rng, 6, 3, GraphKind::Irreducible);
      } catch (const GenerationExhausted&) {
        continue;
      }
      int used = 0;
      const auto map = gen_symbol_map(rng, g.alphabet().size(), 3, &used);
      const auto phi = SlidingBlockCode::one_block(SoficShift(g), Alphabet(symbols(used)), map);
      try {
        AnalysisOptions opts;
        opts.run_open = false;
        opts.retract_max = 3;
        const Facts facts = analyze(phi, opts);
        const auto certs = certificates(facts);
        audit(certs, facts);
        bool proved_before = false;
        for (int k = 0; k <= 3; ++k) {
          const auto it = facts.find("right_continuing_retract_" + std::to_string(k));
          if (it == facts.end()) break;
          const bool proved = it->second == Verdict::Proved;
          if (proved_before && !proved) ++non_monotone;
          proved_before = proved_before || proved;
          if (!proved) continue;
          ++proved_retracts;
          bool hyps = true;
          for (const char* h : {"domain_irreducible", "codomain_irreducible", "codomain_sft", "factor_onto"}) {
            hyps = hyps && facts.at(h) == Verdict::Proved;
          }
          bool emitted = false;
          for (const auto& c : certs) {
            if (c.tag == "ThmBallier" && c.emitted &&
                c.conclusions == std::vector<std::string>{"right_continuing_retract_" + std::to_string(k)}) {
              emitted = true;
            }
          }
          ballier_emitted += emitted ? 1 : 0;
          if (hyps && !emitted) ++missing;
        }
      } catch (const ConsistencyFault&) {
        ++faults;
      }
    }
    out = "proved retracts " + std::to_string(proved_retracts) + ", Ballier certificates emitted " +
          std::to_string(ballier_emitted) + ", missing " + std::to_string(missing) + ", non-monotone " +
          std::to_string(non_monotone) + ", consistency faults " + std::to_string(faults) +
          ", forbidden suite verdicts " + std::to_string(forbidden);
    return faults == 0 && forbidden == 0 && missing == 0 && non_monotone == 0;
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
