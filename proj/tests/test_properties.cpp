// Randomized invariants. Every loop is seeded, so failures reproduce.
#include <doctest.h>

#include <cmath>
#include <functional>

#include "common.hpp"
#include "oracles.hpp"
#include "shiftlab/error.hpp"
#include "shiftlab/generate.hpp"
#include "shiftlab/io.hpp"
#include "shiftlab/openness.hpp"
#include "shiftlab/proptest.hpp"
#include "shiftlab/report.hpp"

using namespace testing_data;

namespace {

// Runs `body` on `n` random graphs; exhausted generations are skipped.
void for_graphs(std::uint64_t seed, int n, int max_v, int max_a, GraphKind kind,
                const std::function<void(Rng&, const LabeledGraph&)>& body) {
  for (int t = 0; t < n; ++t) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
    LabeledGraph g;
    try {
      g = gen_labeled_graph(rng, max_v, max_a, kind);
    } catch (const GenerationExhausted&) {
      continue;
    }
    CAPTURE(t);
    body(rng, g);
  }
}

SlidingBlockCode random_one_block(Rng& rng, const LabeledGraph& g, int max_symbols) {
  int used = 0;
  const auto map = gen_symbol_map(rng, g.alphabet().size(), max_symbols, &used);
  std::vector<std::string> names;
  for (int i = 0; i < used; ++i) names.push_back(std::to_string(i));
  return SlidingBlockCode::one_block(SoficShift(g), Alphabet(names), map);
}

template <class Set>
Word pick(Rng& rng, const Set& s) {
  auto it = s.begin();
  std::advance(it, static_cast<long>(rng.below(s.size())));
  return *it;
}

}  // namespace

TEST_CASE("graph invariants") {
  for_graphs(1, 80, 6, 3, GraphKind::Any, [](Rng&, const LabeledGraph& g) {
    std::vector<int> seen(g.num_vertices(), 0);
    for (const auto& c : scc_decompose(g)) {
      for (int v : c.vertices) ++seen[static_cast<std::size_t>(v)];
    }
    for (int s : seen) CHECK(s == 1);
    const auto t = trim_biextendable(g);
    CHECK(isomorphic(trim_biextendable(t), t));
    if (is_irreducible(g)) CHECK(isomorphic(t, g));
    const auto p = label_product(g, g);
    std::set<std::string> ids;
    for (const auto& e : p.edges()) ids.insert(e.id);
    for (const auto& e : t.edges()) CHECK(ids.count("(" + e.id + "," + e.id + ")"));
  });
}

TEST_CASE("spectral radius of a disjoint union is the largest one") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng = Rng::for_trial(2, seed);
    const int parts = rng.between(1, 4);
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    double best = 0;
    Alphabet alpha;
    for (int i = 0; i < parts; ++i) {
      const auto g = gen_labeled_graph(rng, 3, 2, GraphKind::Any);
      best = std::max(best, spectral_radius(g));
      alpha = g.alphabet().size() > alpha.size() ? g.alphabet() : alpha;
      const int base = static_cast<int>(vertices.size());
      for (const auto& v : g.vertex_names()) vertices.push_back("p" + std::to_string(i) + v);
      for (const auto& e : g.edges()) {
        edges.push_back(Edge{"p" + std::to_string(i) + e.id, e.src + base, e.dst + base, e.label});
      }
    }
    const LabeledGraph u(alpha, vertices, edges);
    CHECK(spectral_radius(u) == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("shift invariants") {
  for_graphs(3, 60, 6, 3, GraphKind::Any, [](Rng&, const LabeledGraph& g) {
    const SoficShift x(g);
    const LabeledGraph d = determinize(g);
    const SoficShift xd(d);
    for (int n = 0; n <= 10; ++n) CHECK(language(x, n) == language(xd, n));
    for (int n = 0; n <= 6; ++n) CHECK(language(x, n) == oracle::words(g, n));
    const double h = entropy(x);
    const double hd = entropy(xd);
    if (std::isinf(h)) {
      CHECK(std::isinf(hd));
    } else {
      CHECK(std::fabs(h - hd) < 1e-9);
    }
    const auto s = is_sft(x, 4);
    if (s.proved()) {
      const auto s8 = is_sft(x, 8);
      CHECK(s8.proved());
      CHECK(s8.m == s.m);
    }
  });
  for_graphs(4, 60, 6, 3, GraphKind::Irreducible, [](Rng&, const LabeledGraph& g) {
    const SoficShift x(g);
    const LabeledGraph f = fischer_cover(x);
    CHECK(is_right_resolving(f));
    CHECK(is_irreducible(f));
    CHECK(same_shift(SoficShift(f), x));
    CHECK(static_cast<double>(f.num_vertices()) <= std::pow(2.0, static_cast<double>(g.num_vertices())));
    CHECK(f.num_vertices() <= determinize(g).num_vertices());
    // follower sets of Fischer cover vertices are pairwise distinct
    for (std::size_t a = 0; a < f.num_vertices(); ++a) {
      for (std::size_t b = a + 1; b < f.num_vertices(); ++b) {
        CHECK_FALSE(same_followers(follower_set(f, static_cast<int>(a)), follower_set(f, static_cast<int>(b))));
      }
    }
    if (const auto m = find_magic_word(f)) CHECK(is_synchronizing_word(x, *m));
  });
  CHECK(svgl_gap(SoficShift(full(2))) == 0);
  CHECK(svgl_gap(SoficShift(full(3))) == 0);
  CHECK(svgl_gap(SoficShift(golden())) > 0);
  CHECK(svgl_gap(SoficShift(even())) > 0);
}

TEST_CASE("code invariants") {
  for_graphs(5, 50, 5, 3, GraphKind::Irreducible, [](Rng& rng, const LabeledGraph& g) {
    const SoficShift x(g);
    const auto phi = random_one_block(rng, g, 3);
    // 2-block code on the image: pairs mapped by a random table
    const SoficShift y = image_presentation(phi);
    std::map<Word, Symbol> t2;
    for (const auto& b : language(y, 2)) t2[b] = static_cast<Symbol>(rng.below(2));
    const SlidingBlockCode psi(y, Alphabet({"0", "1"}), 0, 1, t2);
    const auto c = compose(psi, phi);
    for (int n = 2; n <= 10; n += 2) {
      const auto ws = language(x, n);
      for (int k = 0; k < 10 && !ws.empty(); ++k) {
        const Word xw = pick(rng, ws);
        CHECK(apply_block(c, xw) == apply_block(psi, apply_block(phi, xw)));
      }
    }
    const double hx = entropy(x);
    const double hy = entropy(y);
    CHECK(hy <= hx + 1e-9);
    if (is_finite_to_one(phi)) CHECK(std::fabs(hx - hy) < 1e-9);
  });
  for_graphs(6, 40, 4, 2, GraphKind::IrreducibleRightResolving, [](Rng&, const LabeledGraph& g) {
    const auto phi = SlidingBlockCode::cover_map(g);
    CHECK(is_right_closing(phi));
    CHECK(is_right_closing(phi) != oracle::has_left_asymptotic_pair(g));
    const auto d = degree(phi);
    CHECK(d.d >= 1);
    CHECK(oracle::min_fiber(g, 5) >= d.d);
    // φ1∘ψ1 = φ2∘ψ2 on blocks of the fiber product
    const auto fp = fiber_product(phi, phi);
    const SoficShift sigma(fp.sigma);
    for (int n = std::max(fp.psi1.window(), 1); n <= 6; ++n) {
      for (const auto& s : language(sigma, n)) {
        const Word a = apply_block(fp.psi1, s);
        const Word b = apply_block(fp.psi2, s);
        if (static_cast<int>(a.size()) >= phi.window()) CHECK(apply_block(phi, a) == apply_block(phi, b));
      }
    }
  });
  for_graphs(7, 20, 4, 2, GraphKind::Irreducible, [](Rng&, const LabeledGraph& g) {
    const SoficShift x(g);
    const auto f = SlidingBlockCode::identity(x);
    const auto lifted = lift_code(f, x, x, 4);
    REQUIRE(lifted);
    const LabeledGraph c = fischer_cover(x);
    std::map<std::string, Symbol> label_of;
    for (const auto& e : c.edges()) label_of[e.id] = e.label;
    for (int n = lifted->window(); n <= 6; ++n) {
      for (const auto& p : all_paths(c, n)) {
        Word ids, labels;
        for (int e : p) {
          ids.push_back(*lifted->domain().alphabet().find(c.edge(e).id));
          labels.push_back(c.edge(e).label);
        }
        const Word out = apply_block(*lifted, ids);
        for (std::size_t i = 0; i < out.size(); ++i) {
          CHECK(label_of.at(lifted->codomain().name(out[i])) == labels[i + static_cast<std::size_t>(lifted->memory())]);
        }
      }
    }
  });
}

TEST_CASE("pointed engine invariants") {
  for_graphs(8, 60, 4, 3, GraphKind::Irreducible, [](Rng& rng, const LabeledGraph& g) {
    const auto phi = random_one_block(rng, g, 2);
    const SoficShift x = phi.domain();
    const SoficShift y = image_presentation(phi);
    const Word u = pick(rng, language(x, 1));
    const CenteredWord cu(u, 0);
    // central extension u' of u
    std::vector<Word> ext;
    for (const auto& v : language(x, 3)) {
      if (v[1] == u[0]) ext.push_back(v);
    }
    REQUIRE_FALSE(ext.empty());
    const CenteredWord cu2(ext[rng.below(ext.size())], 1);
    const auto a = cylinder_image(phi, cu);
    const auto a2 = cylinder_image(phi, cu2);
    for (int k = 0; k <= 3; ++k) {
      const auto big = window_language(a, k);
      for (const auto& v : window_language(a2, k)) CHECK(big.count(v));
    }
    for (int i = 0; i < 4; ++i) {
      const Word wv = pick(rng, language(y, 1 + static_cast<int>(rng.below(3))));
      const CenteredWord cw(wv, static_cast<int>(rng.below(wv.size())));
      if (contains_cylinder(a2, y, cw)) CHECK(contains_cylinder(a, y, cw));
    }
    const auto d = interior_nonempty(a2, y, 12);
    if (d.proved()) {
      CHECK(contains_cylinder(a2, y, *d.witness));
      CHECK(oracle::lift_contains(phi, cu2, y.presentation(), *d.witness, 3));
    }
    if (d.refuted()) {
      for (const auto& [rep, esc] : d.escapes) {
        // the escape is a Y-word that no point of the image reads
        Word full_word = esc.left;
        const Word& mid = esc.extended.empty() ? rep.word : esc.extended;
        const int mid_center = esc.extended.empty() ? rep.center : esc.extended_center;
        full_word.insert(full_word.end(), mid.begin(), mid.end());
        full_word.insert(full_word.end(), esc.right.begin(), esc.right.end());
        const int start = -mid_center - static_cast<int>(esc.left.size());
        CHECK(in_language(y, full_word));
        CHECK_FALSE(reads(a2, full_word, start));
      }
    }
    // identity: every admissible cylinder has a witness
    const auto id = SlidingBlockCode::identity(x);
    CHECK(interior_nonempty(cylinder_image(id, cu2), x, 12).proved());
  });
}

TEST_CASE("openness invariants") {
  for_graphs(9, 40, 4, 3, GraphKind::Any, [](Rng& rng, const LabeledGraph& g) {
    const auto phi = random_one_block(rng, g, 2);
    const SoficShift y = image_presentation(phi);
    const auto semi = check_semi_open(phi);
    for (const auto& e : semi.table.entries) {
      for (const auto& [u, wt] : e.witnesses) CHECK(contains_cylinder(cylinder_image(phi, u), y, wt));
    }
    if (semi.refuted()) {
      REQUIRE(semi.cylinder);
      CHECK(interior_nonempty(cylinder_image(phi, *semi.cylinder), y, 12).refuted());
    }
    const auto open = check_open(phi);
    if (open.proved()) {
      CHECK(semi.proved());
      CHECK(table_to_json(phi, open.table) == table_to_json(phi, semi.table));
    }
    if (semi.refuted()) CHECK(open.refuted());
  });
}

TEST_CASE("retract verdicts are monotone and agree with the obstruction search") {
  for_graphs(10, 40, 4, 2, GraphKind::Any, [](Rng&, const LabeledGraph& g) {
    const auto phi = SlidingBlockCode::cover_map(g);
    bool proved_before = false;
    for (int n = 0; n <= 3; ++n) {
      const auto d = check_right_continuing_retract(phi, n);
      if (proved_before) CHECK(d.proved());
      proved_before = proved_before || d.proved();
      const bool obstruction = oracle::retract_obstruction(g, n, 2 * n + 6);
      if (obstruction) CHECK(d.refuted());
      if (d.proved()) CHECK_FALSE(obstruction);
    }
  });
}

TEST_CASE("theorem-consistency properties on a short run") {
  for (const auto& name : property_names()) {
    CAPTURE(name);
    TrialConfig cfg;
    cfg.seed = 2024;
    cfg.trials = 40;
    cfg.property = name;
    const auto r = proptest(cfg);
    CHECK(r.forbidden == 0);
    for (const auto& f : r.failures) {
      const auto [o, detail] = replay(failure_artifact(r, f));
      CHECK(o == f.outcome);
    }
  }
}
