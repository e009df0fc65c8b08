#include <doctest.h>

#include "common.hpp"
#include "oracles.hpp"
#include "shiftlab/error.hpp"

using namespace testing_data;

namespace {

// Golden shift words mapped by x0 XOR x1.
SlidingBlockCode xor_code() {
  const SoficShift x(golden());
  std::map<Word, Symbol> t;
  for (const auto& b : language(x, 2)) t[b] = static_cast<Symbol>(b[0] ^ b[1]);
  return SlidingBlockCode(x, Alphabet({"0", "1"}), 0, 1, t);
}

}  // namespace

TEST_CASE("block application") {
  const auto phi = collapse_code();
  const Alphabet& a = phi.domain().alphabet();
  // Φ symbol by symbol on 2,1,2; the word itself is not in the domain language
  Word img;
  for (Symbol s : w(a, "212")) img.push_back(phi.at(Word{s}));
  CHECK(phi.codomain().spell(img) == "010");
  CHECK_THROWS_AS(apply_block(phi, w(a, "212")), WordNotAdmissible);
  CHECK(phi.codomain().spell(apply_block(phi, w(a, "0100"))) == "0100");
  CHECK(phi.codomain().spell(apply_block(phi, w(a, "222"))) == "000");
  const auto id = SlidingBlockCode::identity(SoficShift(golden()));
  CHECK(apply_block(id, w(a, "0100")) == w(a, "0100"));

  // majority of three on the full 2-shift, slid by hand
  std::map<Word, Symbol> maj;
  for (int i = 0; i < 8; ++i) {
    Word b{(i >> 2) & 1, (i >> 1) & 1, i & 1};
    maj[b] = (b[0] + b[1] + b[2]) >= 2 ? 1 : 0;
  }
  const SlidingBlockCode m(SoficShift(full(2)), Alphabet({"0", "1"}), 1, 1, maj);
  const Word in = w(a, "0110");
  Word slid;
  for (std::size_t i = 1; i + 1 < in.size(); ++i) slid.push_back((in[i - 1] + in[i] + in[i + 1]) >= 2 ? 1 : 0);
  CHECK(apply_block(m, in) == slid);
  CHECK(m.codomain().spell(slid) == "11");
}

TEST_CASE("composition agrees with sliding twice") {
  const auto phi = xor_code();
  std::map<Word, Symbol> and_t;
  for (int i = 0; i < 4; ++i) and_t[Word{(i >> 1) & 1, i & 1}] = static_cast<Symbol>(((i >> 1) & 1) & (i & 1));
  const SlidingBlockCode psi(SoficShift(full(2)), Alphabet({"0", "1"}), 1, 0, and_t);
  const auto c = compose(psi, phi);
  CHECK(c.memory() == 1);
  CHECK(c.anticipation() == 1);
  for (int n = 3; n <= 6; ++n) {
    for (const auto& x : oracle::words(golden(), n)) CHECK(apply_block(c, x) == apply_block(psi, apply_block(phi, x)));
  }
  const auto id = SlidingBlockCode::identity(SoficShift(full(2)));
  const auto ci = compose(id, phi);
  for (const auto& x : oracle::words(golden(), 5)) CHECK(apply_block(ci, x) == apply_block(phi, x));
}

TEST_CASE("images and surjectivity") {
  const auto phi = collapse_code();
  const SoficShift g(golden());
  CHECK(same_shift(image_presentation(phi), g));
  CHECK(is_factor_onto(phi, g));
  CHECK(same_shift(image_presentation(SlidingBlockCode::identity(g)), g));
  CHECK(is_factor_onto(SlidingBlockCode::identity(g), g));
  const auto ev = SlidingBlockCode::cover_map(even());
  const auto img = image_presentation(ev);
  for (int n = 0; n <= 8; ++n) CHECK(language(img, n) == oracle::words(even(), n));
  CHECK_FALSE(is_factor_onto(SlidingBlockCode::cover_map(golden()), SoficShift(even())));
}

TEST_CASE("finite-to-one") {
  CHECK(is_finite_to_one(collapse_code()));
  CHECK(is_finite_to_one(SlidingBlockCode::cover_map(even())));
  const auto proj = SlidingBlockCode::one_block(SoficShift(full(4)), Alphabet({"0", "1"}), {0, 0, 1, 1});
  CHECK_FALSE(is_finite_to_one(proj));
  const auto r = finite_to_one_report(proj);
  CHECK_FALSE(r.finite_to_one);
}

TEST_CASE("degree agrees with the minimal fiber over words") {
  const auto ev = degree(SlidingBlockCode::cover_map(even()));
  CHECK(ev.d == 1);
  CHECK(ev.d == oracle::min_fiber(even(), 6));
  CHECK(degree(SlidingBlockCode::identity(SoficShift(golden()))).d == 1);
  const auto ph = degree(phase_code());
  CHECK(ph.d == 2);
  CHECK(ph.d == oracle::min_fiber(image_labels(phase_code()), 6));
  CHECK_THROWS_AS(degree(SlidingBlockCode::one_block(SoficShift(full(4)), Alphabet({"0", "1"}), {0, 0, 1, 1})),
                  NotFiniteToOne);
}

TEST_CASE("right-closing agrees with the pair-walk search") {
  CHECK(is_right_closing(SlidingBlockCode::cover_map(even())));
  CHECK_FALSE(oracle::has_left_asymptotic_pair(even()));
  CHECK(is_right_closing(collapse_code()));
  CHECK_FALSE(oracle::has_left_asymptotic_pair(image_labels(collapse_code())));
  CHECK_FALSE(is_right_closing(SlidingBlockCode::cover_map(branch())));
  CHECK(oracle::has_left_asymptotic_pair(branch()));
  CHECK(is_left_closing(SlidingBlockCode::cover_map(branch())));
}

TEST_CASE("fiber products") {
  const SoficShift g(golden());
  const auto id = SlidingBlockCode::identity(g);
  const auto fp = fiber_product(id, id);
  CHECK(fp.sigma.num_vertices() == 2);
  CHECK(fp.sigma.num_edges() == 3);
  CHECK(is_factor_onto(fp.psi1, g));

  const SoficShift e(even());
  const auto fe = fiber_product(SlidingBlockCode::cover_map(even()), SlidingBlockCode::identity(e));
  // Σ is the graph of the cover map: pairs (edge, label of edge)
  std::vector<Symbol> pair_labels;
  for (const auto& ed : even().edges()) {
    const auto s = fe.sigma.alphabet().find("(" + ed.id + "," + even().alphabet().name(ed.label) + ")");
    REQUIRE(s);
    pair_labels.push_back(*s);
  }
  CHECK(same_shift(SoficShift(fe.sigma), SoficShift(relabeled(even(), fe.sigma.alphabet(), pair_labels))));
  CHECK(same_shift(image_presentation(fe.psi2), e));

  // over 0^∞ the pairs (0,0), (0,2), (2,0), (2,2); (0,0) lies in the golden diagonal
  const auto ff = fiber_product(collapse_code(), collapse_code());
  int nontrivial = 0;
  for (const auto& c : scc_decompose(ff.sigma)) nontrivial += c.trivial ? 0 : 1;
  CHECK(nontrivial == 4);

  const auto other = SlidingBlockCode::identity(SoficShift(full(3)));
  CHECK_THROWS_AS(fiber_product(id, other), AlphabetMismatch);
}

TEST_CASE("lifting codes to Fischer covers") {
  const SoficShift e(even());
  const auto li = lift_code(SlidingBlockCode::identity(e), e, e, 6);
  REQUIRE(li);
  CHECK(li->window() == 1);
  for (const auto& [b, s] : li->table()) CHECK(li->domain().alphabet().name(b[0]) == li->codomain().name(s));

  const SoficShift g(golden());
  const auto lg = lift_code(SlidingBlockCode::one_block(g, g.alphabet(), {0, 1}), g, g, 6);
  REQUIRE(lg);
  CHECK(lg->window() == 1);

  // XOR map into the full shift: verify L2 ∘ F = f ∘ L1 on every path
  const auto f = xor_code();
  const SoficShift f2(full(2));
  const auto lx = lift_code(f, g, f2, 6);
  REQUIRE(lx);
  CHECK(lx->window() <= 3);
  const LabeledGraph c1 = fischer_cover(g);
  const LabeledGraph c2 = fischer_cover(f2);
  std::map<std::string, Symbol> label_of;
  for (const auto& e2 : c2.edges()) label_of[e2.id] = e2.label;
  for (int n = lx->window() + 1; n <= 6; ++n) {
    for (const auto& p : all_paths(c1, n)) {
      Word ids, labels;
      for (int e1 : p) {
        ids.push_back(*lx->domain().alphabet().find(c1.edge(e1).id));
        labels.push_back(c1.edge(e1).label);
      }
      const Word lifted = apply_block(*lx, ids);
      Word lifted_labels;
      for (Symbol s : lifted) lifted_labels.push_back(label_of.at(lx->codomain().name(s)));
      const Word direct = apply_block(f, labels);
      // F has its own window; compare the overlapping coordinates
      const int shift_f = lx->memory() - f.memory();
      REQUIRE(lifted_labels.size() + static_cast<std::size_t>(lx->window()) == direct.size() + static_cast<std::size_t>(f.window()));
      for (std::size_t i = 0; i < lifted_labels.size(); ++i) {
        const long j = static_cast<long>(i) + shift_f;
        if (j >= 0 && j < static_cast<long>(direct.size())) CHECK(lifted_labels[i] == direct[static_cast<std::size_t>(j)]);
      }
    }
  }
  CHECK_THROWS_AS(lift_code(collapse_code(), SoficShift(collapse()), g, 4), ReducibleShift);
}
