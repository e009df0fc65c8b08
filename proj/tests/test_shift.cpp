#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "oracles.hpp"
#include "shiftlab/error.hpp"

using namespace testing_data;

namespace {

// Connecting gap oracle: for words u, v of length <= n, the shortest c with
// ucv in the language.
int gap_oracle(const LabeledGraph& g, int n) {
  int worst = 0;
  std::vector<std::set<Word>> by_len(static_cast<std::size_t>(3 * n + 1));
  for (int k = 0; k <= 3 * n; ++k) by_len[static_cast<std::size_t>(k)] = oracle::words(g, k);
  for (int lu = 1; lu <= n; ++lu) {
    for (int lv = 1; lv <= n; ++lv) {
      for (const auto& u : by_len[static_cast<std::size_t>(lu)]) {
        for (const auto& v : by_len[static_cast<std::size_t>(lv)]) {
          int best = -1;
          for (int c = 0; c <= n && best < 0; ++c) {
            for (const auto& mid : by_len[static_cast<std::size_t>(c)]) {
              Word all = u;
              all.insert(all.end(), mid.begin(), mid.end());
              all.insert(all.end(), v.begin(), v.end());
              if (by_len[all.size()].count(all)) {
                best = c;
                break;
              }
            }
          }
          REQUIRE(best >= 0);
          worst = std::max(worst, best);
        }
      }
    }
  }
  return worst;
}

bool same_words(const SoficShift& x, const LabeledGraph& g, int n_max) {
  for (int n = 0; n <= n_max; ++n) {
    if (language(x, n) != oracle::words(g, n)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("language of the golden shift") {
  const SoficShift x(golden());
  const Alphabet& a = x.alphabet();
  CHECK(language(x, 2) == std::set<Word>{w(a, "00"), w(a, "01"), w(a, "10")});
  CHECK(language(x, 3).size() == 5);
  CHECK(language(x, 0) == std::set<Word>{Word{}});
  for (int n = 0; n <= 8; ++n) CHECK(language(x, n) == oracle::words(golden(), n));
}

TEST_CASE("entropy") {
  CHECK(std::fabs(entropy(SoficShift(golden())) - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-9);
  CHECK(std::fabs(entropy(SoficShift(full(3))) - std::log(3.0)) < 1e-12);
  const auto fixed = LabeledGraph::from_names({"2"}, {"u"}, {{"e0", "u", "u", "2"}});
  CHECK(std::fabs(entropy(SoficShift(fixed))) < 1e-12);
  const auto none = LabeledGraph::from_names({"0"}, {"v"}, {});
  CHECK(std::isinf(entropy(SoficShift(none))));
  CHECK(entropy(SoficShift(none)) < 0);
}

TEST_CASE("determinization") {
  const auto d = determinize(golden());
  CHECK(is_right_resolving(d));
  const auto two = LabeledGraph::from_names({"0"}, {"v"}, {{"a", "v", "v", "0"}, {"b", "v", "v", "0"}});
  const auto dt = determinize(two);
  CHECK(dt.num_vertices() == 1);
  CHECK(dt.num_edges() == 1);
  const auto df = determinize(collapse());
  CHECK(is_right_resolving(df));
  CHECK(same_words(SoficShift(df), collapse(), 8));
}

TEST_CASE("Fischer covers") {
  // golden shift presented redundantly by four right-resolving vertices
  const auto padded = LabeledGraph::from_names(
      {"0", "1"}, {"p", "q", "r", "s"},
      {{"a", "p", "q", "0"}, {"b", "p", "r", "1"}, {"c", "q", "p", "0"}, {"d", "q", "s", "1"},
       {"e", "r", "q", "0"}, {"f", "s", "p", "0"}});
  CHECK(same_words(SoficShift(padded), golden(), 8));
  CHECK(isomorphic(fischer_cover(SoficShift(padded)), golden()));
  const auto even_redundant = LabeledGraph::from_names(
      {"0", "1"}, {"A", "B", "C", "D"},
      {{"a", "A", "C", "1"}, {"b", "A", "B", "0"}, {"c", "B", "C", "0"}, {"d", "C", "A", "1"},
       {"e", "C", "D", "0"}, {"f", "D", "A", "0"}});
  CHECK(same_words(SoficShift(even_redundant), even(), 8));
  CHECK(isomorphic(fischer_cover(SoficShift(even_redundant)), even()));
  const auto f = fischer_cover(SoficShift(full(2)));
  CHECK(f.num_vertices() == 1);
  CHECK(f.num_edges() == 2);
  CHECK_THROWS_AS(fischer_cover(SoficShift(collapse())), ReducibleShift);
}

TEST_CASE("magic words") {
  // Every 0-edge of the golden cover ends at v1, so "0" is already magic.
  const auto gm = find_magic_word(golden());
  REQUIRE(gm);
  CHECK(golden().alphabet().spell(*gm) == "0");
  const auto em = find_magic_word(even());
  REQUIRE(em);
  CHECK(even().alphabet().spell(*em) == "1");
  const auto fm = find_magic_word(full(2));
  REQUIRE(fm);
  CHECK(fm->empty());
}

TEST_CASE("synchronizing words") {
  const SoficShift x(even());
  CHECK(is_synchronizing_word(x, w(x.alphabet(), "1")));
  CHECK_FALSE(is_synchronizing_word(x, w(x.alphabet(), "0")));
  // brute-force confirmation of the failure for v = 0: u = 1, w = 01
  // 10 and 01 are words, 101 is not
  CHECK(oracle::words(even(), 2).count(w(x.alphabet(), "10")));
  CHECK(oracle::words(even(), 2).count(w(x.alphabet(), "01")));
  CHECK_FALSE(oracle::words(even(), 3).count(w(x.alphabet(), "101")));
  CHECK(is_synchronizing_word(SoficShift(full(2)), w(x.alphabet(), "0")));
}

TEST_CASE("shifts of finite type") {
  const auto g = is_sft(SoficShift(golden()), 8);
  CHECK(g.proved());
  CHECK(g.m == 1);
  CHECK(is_sft(SoficShift(even()), 8).refuted());
  const auto f = is_sft(SoficShift(full(2)), 8);
  CHECK(f.proved());
  CHECK(f.m == 1);
}

TEST_CASE("connecting gaps agree with the shortest-connector oracle") {
  CHECK(svgl_gap(SoficShift(full(2))) == 0);
  CHECK(svgl_gap(SoficShift(golden())) == gap_oracle(golden(), 4));
  CHECK(svgl_gap(SoficShift(golden())) == 1);
  CHECK(svgl_gap(SoficShift(even())) == gap_oracle(even(), 4));
}

TEST_CASE("follower sets") {
  const auto f = follower_set(golden(), "v2");
  const Alphabet a = golden().alphabet();
  CHECK(f.contains(w(a, "0")));
  CHECK(f.contains(w(a, "01")));
  CHECK_FALSE(f.contains(w(a, "1")));
  CHECK(f.contains(Word{}));
  const auto fl = follower_set(full(2), "v");
  CHECK(fl.contains(w(a, "1101")));
  const auto cyc = LabeledGraph::from_names({"a"}, {"v"}, {{"e", "v", "v", "a"}});
  const auto fc = follower_set(cyc, "v");
  CHECK(fc.contains(Word{0, 0, 0}));
}

TEST_CASE("periodic preimage counts agree with the closed-walk trace") {
  const Alphabet a = even().alphabet();
  CHECK(count_preimages_of_periodic(even(), w(a, "0")) == 2);
  CHECK(count_preimages_of_periodic(even(), w(a, "1")) == 1);
  CHECK(count_preimages_of_periodic(golden(), w(a, "0")) == 1);
  for (const std::string p : {"0", "1", "01", "001", "0011"}) {
    for (const auto& g : {even(), golden()}) {
      const Word pw = w(a, p);
      const auto trace = oracle::closed_walk_preimages(g, pw);
      if (trace == 0) {
        CHECK_THROWS_AS(count_preimages_of_periodic(g, pw), PeriodicPointNotInShift);
      } else {
        CHECK(count_preimages_of_periodic(g, pw) == trace);
      }
    }
  }
}

TEST_CASE("subshift relations") {
  CHECK(is_subshift(SoficShift(golden()), SoficShift(full(2))));
  CHECK_FALSE(is_subshift(SoficShift(full(2)), SoficShift(golden())));
  CHECK(same_shift(SoficShift(golden()), SoficShift(fischer_cover(SoficShift(golden())))));
}
