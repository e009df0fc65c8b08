#include <doctest.h>

#include "common.hpp"
#include "oracles.hpp"
#include "shiftlab/error.hpp"
#include "shiftlab/generate.hpp"

using namespace testing_data;

namespace {

std::set<Word> central_oracle_words(const LabeledGraph& g, int k, int at, Symbol s) {
  std::set<Word> out;
  for (const auto& x : oracle::words(g, 2 * k + 1)) {
    if (x[static_cast<std::size_t>(k + at)] == s) out.insert(x);
  }
  return out;
}

}  // namespace

TEST_CASE("image of the cylinder [2] is the single point 0^∞") {
  const auto phi = collapse_code();
  const auto a = cylinder_image(phi, CenteredWord::central(w(phi.domain().alphabet(), "2")));
  for (int k = 0; k <= 4; ++k) {
    CHECK(window_language(a, k) == std::set<Word>{Word(static_cast<std::size_t>(2 * k + 1), 0)});
  }
  const SoficShift y(golden());
  CHECK_FALSE(contains_cylinder(a, y, CenteredWord::central(Word{0})));
  CHECK_FALSE(oracle::lift_contains(phi, CenteredWord::central(Word{2}), golden(), CenteredWord::central(Word{0}), 3));
  const auto d = interior_nonempty(a, y, 12);
  CHECK(d.refuted());
  CHECK_FALSE(d.escapes.empty());
}

TEST_CASE("identity code maps a cylinder to itself") {
  const SoficShift g(golden());
  const auto id = SlidingBlockCode::identity(g);
  const CenteredWord u(w(g.alphabet(), "01"), 0);
  const auto a = cylinder_image(id, u);
  std::set<Word> expect;
  for (const auto& x : oracle::words(golden(), 5)) {
    if (x[2] == 0 && x[3] == 1) expect.insert(x);
  }
  CHECK(window_language(a, 2) == expect);
  CHECK(contains_cylinder(a, g, u));
  const auto d = interior_nonempty(a, g, 12);
  REQUIRE(d.proved());
  // the witness is a central word whose cylinder sits inside [u]
  const CenteredWord& wt = *d.witness;
  CHECK(contains_cylinder(a, g, wt));
  for (int i = u.first(); i <= u.last(); ++i) {
    REQUIRE(i >= wt.first());
    REQUIRE(i <= wt.last());
    CHECK(wt.word[static_cast<std::size_t>(i + wt.center)] == u.word[static_cast<std::size_t>(i + u.center)]);
  }
}

TEST_CASE("even cover: cylinder of the 1-loop") {
  const auto phi = SlidingBlockCode::cover_map(even());
  const SoficShift y(even());
  const CenteredWord u(Word{*phi.domain().alphabet().find("a")}, 0);
  const auto a = cylinder_image(phi, u);
  CHECK(window_language(a, 2) == central_oracle_words(even(), 2, 0, 1));
  CHECK(contains_cylinder(a, y, CenteredWord::central(Word{1})));
  CHECK(oracle::lift_contains(phi, u, even(), CenteredWord::central(Word{1}), 4));
  const auto d = interior_nonempty(a, y, 12);
  REQUIRE(d.proved());
  CHECK(d.witness->word.size() <= 3);
}

TEST_CASE("inadmissible cylinder") {
  const auto phi = collapse_code();
  CHECK_THROWS_AS(cylinder_image(phi, CenteredWord::central(w(phi.domain().alphabet(), "121"))), WordNotAdmissible);
}

TEST_CASE("pointed automaton trimming keeps the denotation") {
  const auto phi = SlidingBlockCode::cover_map(even());
  const CenteredWord u(Word{*phi.domain().alphabet().find("b")}, 0);
  const auto a = cylinder_image(phi, u);
  const auto t = trim_pointed(a);
  for (int k = 0; k <= 3; ++k) CHECK(window_language(a, k) == window_language(t, k));
}

TEST_CASE("containment agrees with brute-force lifting on random instances") {
  int agree = 0, total = 0;
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    Rng rng = Rng::for_trial(99, trial);
    LabeledGraph g;
    try {
      g = gen_labeled_graph(rng, 3, 2, GraphKind::Irreducible);
    } catch (const GenerationExhausted&) {
      continue;
    }
    int used = 0;
    const auto map = gen_symbol_map(rng, g.alphabet().size(), 2, &used);
    const SoficShift x(g);
    const auto phi = SlidingBlockCode::one_block(x, Alphabet({"0", "1"}), map);
    const SoficShift y = image_presentation(phi);
    const auto ul = language(x, 1 + static_cast<int>(rng.below(2)));
    auto uit = ul.begin();
    std::advance(uit, static_cast<long>(rng.below(ul.size())));
    const CenteredWord u(*uit, static_cast<int>(rng.below(uit->size())));
    const auto wl = language(y, 1 + static_cast<int>(rng.below(3)));
    auto wit = wl.begin();
    std::advance(wit, static_cast<long>(rng.below(wl.size())));
    const CenteredWord cw(*wit, static_cast<int>(rng.below(wit->size())));
    const bool engine = contains_cylinder(cylinder_image(phi, u), y, cw);
    const bool brute = oracle::lift_contains(phi, u, y.presentation(), cw, 4);
    ++total;
    agree += engine == brute ? 1 : 0;
    CHECK(engine == brute);
  }
  CHECK(total > 30);
  CHECK(agree == total);
}
