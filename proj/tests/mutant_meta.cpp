// Linked against the deliberately broken containment test: the harness must
// report at least one forbidden verdict.
#include <cstdio>

#include "shiftlab/proptest.hpp"

int main() {
  shiftlab::TrialConfig cfg;
  cfg.seed = 7;
  cfg.trials = 200;
  cfg.property = "finite-cover-semi-open";
  const auto r = shiftlab::proptest(cfg);
  std::printf("mutant build: %d forbidden, %d checked, %d inconclusive\n", r.forbidden, r.checked, r.inconclusive);
  bool replays = true;
  for (const auto& f : r.failures) replays = replays && shiftlab::replay(shiftlab::failure_artifact(r, f)).first == f.outcome;
  std::printf("failure artifacts replay: %s\n", replays ? "yes" : "no");
  return r.forbidden >= 1 && replays ? 0 : 1;
}
