#include "shiftlab/openness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "shiftlab/error.hpp"

namespace shiftlab {

namespace {

using Pair = ContainmentEngine::Pair;
using ClassKey = std::vector<Pair>;

struct ClassKeyHash {
  std::size_t operator()(const ClassKey& k) const {
    ContainmentEngine::PairHash h;
    std::size_t out = k.size();
    for (const auto& p : k) out = hash_combine(out, h(p));
    return out;
  }
};

int radius_of(const CenteredWord& w) {
  return std::max(w.center, static_cast<int>(w.word.size()) - 1 - w.center);
}

// Cylinder classes: the set of window pairs of φ([u]) decides every
// interior question about φ([u]).
struct Sweep {
  const SlidingBlockCode& phi;
  Recoding r;
  SoficShift y;
  ContainmentEngine engine;
  std::vector<std::vector<Pair>> cp;  // [domain symbol][image symbol]

  Sweep(const SlidingBlockCode& f, std::size_t budget)
      : phi(f), r(recode(f)), y(image_presentation(f)), engine(r.graph, y, budget) {
    const std::size_t na = f.domain().alphabet().size();
    const std::size_t nc = r.graph.alphabet().size();
    cp.assign(na, {});
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t c = 0; c < nc; ++c) {
        Pair p;
        p.ry = engine.symbol_pair(static_cast<Symbol>(c)).ry;
        p.rel = Relation(r.graph.num_vertices());
        for (std::size_t h = 0; h < r.graph.num_edges(); ++h) {
          const Edge& e = r.graph.edge(static_cast<int>(h));
          if (r.middle[h] == static_cast<Symbol>(a) && e.label == static_cast<Symbol>(c)) {
            p.rel.set(static_cast<std::size_t>(e.src), static_cast<std::size_t>(e.dst));
          }
        }
        cp[a].push_back(std::move(p));
      }
    }
  }

  static ClassKey normalize(std::vector<Pair> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  ClassKey start(Symbol a) {
    std::vector<Pair> out;
    for (const auto& p : cp[static_cast<std::size_t>(a)]) {
      if (!p.rel.empty()) out.push_back(p);
    }
    return normalize(std::move(out));
  }

  ClassKey grow(const ClassKey& key, Symbol a, Symbol b) {
    std::vector<Pair> out;
    for (const auto& left : cp[static_cast<std::size_t>(a)]) {
      if (left.rel.empty()) continue;
      for (const auto& p : key) {
        Pair q = engine.compose(left, p);
        if (q.rel.empty()) continue;
        for (const auto& right : cp[static_cast<std::size_t>(b)]) {
          if (right.rel.empty()) continue;
          Pair s = engine.compose(q, right);
          if (!s.rel.empty()) out.push_back(std::move(s));
        }
      }
    }
    engine.charge(out.size() + 1);
    return normalize(std::move(out));
  }
};

struct SweepResult {
  SemiOpenDecision semi;
  std::vector<std::vector<int>> levels;  // class ids present at each level
  std::vector<std::pair<Word, int>> reps;  // first cylinder and its level
};

SweepResult sweep(Sweep& s, const OpennessOptions& options) {
  SweepResult out;
  SemiOpenDecision& d = out.semi;
  d.bounds["l_max"] = options.l_max;
  d.bounds["k_max"] = options.k_max;
  d.bounds["state_budget"] = static_cast<long long>(options.budget);
  const std::size_t na = s.phi.domain().alphabet().size();
  std::unordered_map<ClassKey, int, ClassKeyHash> ids;
  std::vector<std::pair<ClassKey, Word>> level;
  bool beyond_k_max = false;
  InteriorOptions iopt;
  iopt.k_max = options.k_max;
  iopt.minimal_witness = false;
  try {
    for (std::size_t a = 0; a < na; ++a) {
      ClassKey key = s.start(static_cast<Symbol>(a));
      if (!key.empty()) level.emplace_back(std::move(key), Word{static_cast<Symbol>(a)});
    }
    for (int l = 0;; ++l) {
      LiftingEntry row;
      row.l = l;
      row.k = l;
      std::vector<int> present;
      for (const auto& [key, u] : level) {
        auto [it, fresh] = ids.emplace(key, static_cast<int>(out.reps.size()));
        present.push_back(it->second);
        if (!fresh) continue;
        out.reps.emplace_back(u, l);
        const CenteredWord cu = CenteredWord::central(u);
        const PointedAutomaton img = cylinder_image(s.r, s.phi.domain(), cu);
        InteriorDecision interior = interior_nonempty(s.engine, img, iopt);
        if (interior.refuted()) {
          d.verdict = Verdict::Refuted;
          d.cylinder = cu;
          d.refutation = std::move(interior);
          d.detail = "image of the cylinder has empty interior";
          d.table.entries.push_back(std::move(row));
          d.profile_classes = static_cast<int>(out.reps.size());
          return out;
        }
        if (interior.inconclusive()) {
          d.verdict = Verdict::Inconclusive;
          d.detail = interior.detail;
          d.table.entries.push_back(std::move(row));
          d.profile_classes = static_cast<int>(out.reps.size());
          return out;
        }
        row.k = std::max(row.k, radius_of(*interior.witness));
        if (radius_of(*interior.witness) > options.k_max) beyond_k_max = true;
        row.witnesses.emplace_back(cu, *interior.witness);
      }
      out.levels.push_back(std::move(present));
      d.table.entries.push_back(std::move(row));

      std::vector<std::pair<ClassKey, Word>> next;
      std::unordered_set<ClassKey, ClassKeyHash> seen;
      bool fresh = false;
      for (std::size_t a = 0; a < na; ++a) {
        for (const auto& [key, u] : level) {
          for (std::size_t b = 0; b < na; ++b) {
            ClassKey g = s.grow(key, static_cast<Symbol>(a), static_cast<Symbol>(b));
            if (g.empty() || seen.count(g)) continue;
            if (!ids.count(g)) fresh = true;
            Word v{static_cast<Symbol>(a)};
            v.insert(v.end(), u.begin(), u.end());
            v.push_back(static_cast<Symbol>(b));
            seen.insert(g);
            next.emplace_back(std::move(g), std::move(v));
          }
        }
      }
      d.profile_classes = static_cast<int>(out.reps.size());
      if (!fresh) {
        d.verdict = Verdict::Proved;
        d.saturation_level = l;
        int bound = 0;
        for (const auto& e : d.table.entries) bound = std::max(bound, e.k - e.l);
        d.table.uniform_bound = bound;
        if (beyond_k_max) d.detail = "some witness radius exceeds k_max";
        return out;
      }
      if (l >= options.l_max) {
        d.verdict = Verdict::Inconclusive;
        d.detail = "cylinder profiles not saturated by l_max";
        return out;
      }
      level = std::move(next);
    }
  } catch (const BudgetExceeded&) {
    d.verdict = Verdict::Inconclusive;
    d.detail = "state budget exhausted";
    d.profile_classes = static_cast<int>(out.reps.size());
    return out;
  }
}

}  // namespace

SemiOpenDecision check_semi_open(const SlidingBlockCode& phi, const OpennessOptions& options) {
  Sweep s(phi, options.budget);
  return sweep(s, options).semi;
}

SemiOpenDecision check_semi_open(const SlidingBlockCode& phi, int l_max, int k_max) {
  OpennessOptions o;
  o.l_max = l_max;
  o.k_max = k_max;
  return check_semi_open(phi, o);
}

namespace {

struct OpenClassResult {
  std::optional<int> k;
  CenteredWord bad;
  Escape escape;
};

// Smallest k such that every radius-k word of φ([u])'s language has its
// Y-cylinder inside φ([u]); none when the word-profile sets cycle first.
OpenClassResult open_radius(ContainmentEngine& engine, const PointedAutomaton& a, int l) {
  OpenClassResult out;
  for (int k = 0; k < l; ++k) {
    bool all = true;
    for (const Word& w : window_language(a, k)) {
      engine.charge(1);
      if (!engine.contains(a, CenteredWord::central(w))) {
        all = false;
        break;
      }
    }
    if (all) {
      out.k = k;
      return out;
    }
  }
  using Profile = ContainmentEngine::Profile;
  std::vector<std::pair<Profile, Word>> level;
  {
    std::unordered_set<Profile, ContainmentEngine::ProfileHash> seen;
    for (const auto& [p, w] : engine.central_pairs(a)) {
      Profile prof = engine.profile_of(p);
      engine.charge(prof.size());
      if (!engine.nonempty_image(prof) || !seen.insert(prof).second) continue;
      level.emplace_back(std::move(prof), w);
    }
  }
  std::set<std::vector<Profile>> history;
  const std::size_t na = engine.graph().alphabet().size();
  for (int k = l;; ++k) {
    const std::pair<Profile, Word>* first_bad = nullptr;
    for (const auto& entry : level) {
      if (!engine.good(entry.first)) {
        first_bad = &entry;
        break;
      }
    }
    if (!first_bad) {
      out.k = k;
      return out;
    }
    std::vector<Profile> key;
    for (const auto& entry : level) key.push_back(entry.first);
    std::sort(key.begin(), key.end());
    if (!history.insert(key).second) {
      out.bad = CenteredWord::central(first_bad->second);
      engine.contains(a, out.bad, &out.escape);
      return out;
    }
    std::vector<std::pair<Profile, Word>> next;
    std::unordered_set<Profile, ContainmentEngine::ProfileHash> seen;
    for (std::size_t x = 0; x < na; ++x) {
      for (const auto& [prof, w] : level) {
        for (std::size_t y = 0; y < na; ++y) {
          Profile q = engine.extend(prof, static_cast<Symbol>(x), static_cast<Symbol>(y));
          engine.charge(q.size());
          if (!engine.nonempty_image(q) || !seen.insert(q).second) continue;
          Word v{static_cast<Symbol>(x)};
          v.insert(v.end(), w.begin(), w.end());
          v.push_back(static_cast<Symbol>(y));
          next.emplace_back(std::move(q), std::move(v));
        }
      }
    }
    level = std::move(next);
  }
}

}  // namespace

OpenDecision check_open(const SlidingBlockCode& phi, const OpennessOptions& options) {
  Sweep s(phi, options.budget);
  SweepResult sw = sweep(s, options);
  OpenDecision d;
  d.bounds = sw.semi.bounds;
  d.table = sw.semi.table;
  if (sw.semi.refuted()) {
    d.verdict = Verdict::Refuted;
    d.cylinder = sw.semi.cylinder;
    d.detail = "not semi-open";
    return d;
  }
  if (sw.semi.inconclusive()) {
    d.verdict = Verdict::Inconclusive;
    d.detail = sw.semi.detail;
    return d;
  }
  std::vector<int> offset(sw.reps.size(), 0);
  std::vector<int> first_k(sw.reps.size(), 0);
  bool beyond_k_max = false;
  try {
    for (std::size_t c = 0; c < sw.reps.size(); ++c) {
      const auto& [u, l] = sw.reps[c];
      const CenteredWord cu = CenteredWord::central(u);
      const PointedAutomaton img = cylinder_image(s.r, phi.domain(), cu);
      OpenClassResult res = open_radius(s.engine, img, l);
      if (!res.k) {
        d.verdict = Verdict::Refuted;
        d.cylinder = cu;
        d.window_word = res.bad;
        d.escape = std::move(res.escape);
        d.detail = "no lifting radius exists for this cylinder";
        return d;
      }
      first_k[c] = *res.k;
      offset[c] = *res.k - l;
      if (*res.k > options.k_max) beyond_k_max = true;
    }
  } catch (const BudgetExceeded&) {
    d.verdict = Verdict::Inconclusive;
    d.detail = "state budget exhausted";
    return d;
  }
  int bound = 0;
  for (std::size_t l = 0; l < sw.levels.size(); ++l) {
    int k = 0;
    for (int c : sw.levels[l]) {
      const auto ci = static_cast<std::size_t>(c);
      k = std::max(k, sw.reps[ci].second == static_cast<int>(l) ? first_k[ci]
                                                                 : static_cast<int>(l) + std::max(0, offset[ci]));
    }
    d.lifting_radius[static_cast<int>(l)] = k;
    bound = std::max(bound, k - static_cast<int>(l));
  }
  d.uniform_bound = bound;
  d.verdict = Verdict::Proved;
  if (beyond_k_max) d.detail = "some lifting radius exceeds k_max";
  return d;
}

OpenDecision check_open(const SlidingBlockCode& phi, int l_max, int k_max) {
  OpennessOptions o;
  o.l_max = l_max;
  o.k_max = k_max;
  return check_open(phi, o);
}

CenteredWord witness_from_magic(const LabeledGraph& g, const Word& alpha, const Path& pi) {
  if (!is_right_resolving(g)) throw NotRightResolving("cover is not right-resolving");
  if (!is_irreducible(g)) throw NotIrreducible("cover is not irreducible");
  if (pi.edges.empty() || !pi.is_valid(g)) throw InvariantViolation("path-valid", "π is not a nonempty path of the cover");
  int lambda_start = -1;
  int lambda_end = -1;
  if (alpha.empty()) {
    if (g.num_vertices() != 1) throw NotMagic("the empty word is magic only on a one-vertex cover");
    lambda_start = lambda_end = 0;
  } else {
    const BitSet ends = g.step(g.all_vertices(), alpha);
    if (ends.count() != 1) throw NotMagic("word '" + g.alphabet().spell(alpha) + "' is not magic");
    lambda_end = static_cast<int>(ends.first());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      if (g.step(BitSet::singleton(g.num_vertices(), v), alpha).any()) {
        lambda_start = static_cast<int>(v);
        break;
      }
    }
  }
  const auto xi = shortest_path(g, lambda_end, pi.source(g));
  const auto gamma = shortest_path(g, pi.target(g), lambda_start);
  Word w = alpha;
  const Word lx = xi->label(g);
  const Word lp = pi.label(g);
  const Word lg = gamma->label(g);
  w.insert(w.end(), lx.begin(), lx.end());
  w.insert(w.end(), lp.begin(), lp.end());
  w.insert(w.end(), lg.begin(), lg.end());
  w.insert(w.end(), alpha.begin(), alpha.end());
  const int center = static_cast<int>(alpha.size() + lx.size()) + (static_cast<int>(lp.size()) - 1) / 2;
  return CenteredWord(std::move(w), center);
}

const char* to_string(Side s) {
  switch (s) {
    case Side::Right: return "right";
    case Side::Left: return "left";
    case Side::Bi: return "bi";
  }
  return "?";
}

namespace {

struct Joint {
  BitSet sy;
  BitSet qx;
  bool operator==(const Joint& o) const { return sy == o.sy && qx == o.qx; }
};
struct JointHash {
  std::size_t operator()(const Joint& j) const { return hash_combine(j.sy.hash(), j.qx.hash()); }
};

// Right retracts 0..n on one code, one verdict per retract; the payload of
// the first failure at retract n is written to `ce`.
std::vector<Verdict> right_retracts(const SlidingBlockCode& phi, int n, RetractDecision* ce, std::size_t budget) {
  const Recoding r = recode(phi);
  const LabeledGraph& h = r.graph;
  const SoficShift y = image_presentation(phi);
  const LabeledGraph& dy = y.reduced();
  const std::size_t na = phi.domain().alphabet().size();
  const std::size_t nc = h.alphabet().size();
  const std::size_t letters = na * nc;
  std::size_t spent = 0;
  auto charge = [&](std::size_t k) {
    spent += k;
    if (spent > budget) throw BudgetExceeded{};
  };
  // pair step: edges with middle a and image c
  std::vector<std::vector<int>> by_letter(letters);
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    by_letter[static_cast<std::size_t>(r.middle[e]) * nc + static_cast<std::size_t>(h.edge(static_cast<int>(e)).label)]
        .push_back(static_cast<int>(e));
  }
  auto step = [&](const Joint& s, std::size_t letter) -> std::optional<Joint> {
    Joint t{dy.step(s.sy, static_cast<Symbol>(letter % nc)), BitSet(h.num_vertices())};
    for (int e : by_letter[letter]) {
      if (s.qx.test(static_cast<std::size_t>(h.edge(e).src))) t.qx.set(static_cast<std::size_t>(h.edge(e).dst));
    }
    if (t.sy.none() || t.qx.none()) return std::nullopt;
    return t;
  };

  std::vector<Joint> states;
  std::vector<std::vector<int>> next;
  std::unordered_map<Joint, int, JointHash> index;
  if (!dy.empty() && h.num_vertices() > 0) {
    states.push_back({dy.all_vertices(), h.all_vertices()});
    index.emplace(states[0], 0);
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    charge(1);
    next.emplace_back(letters, -1);
    for (std::size_t x = 0; x < letters; ++x) {
      auto t = step(states[i], x);
      if (!t) continue;
      auto [it, fresh] = index.emplace(*t, static_cast<int>(states.size()));
      if (fresh) states.push_back(*t);
      next[i][x] = it->second;
    }
  }
  const std::size_t ns = states.size();

  // Limit states: C with some e, |e| >= 1, δ(V, e) = δ(C, e) = C, and their
  // forward closure.
  struct Origin {
    int seed = -1;
    std::vector<std::size_t> loop, prefix;
  };
  std::vector<std::optional<Origin>> origin(ns);
  std::deque<int> frontier;
  for (std::size_t c = 0; c < ns; ++c) {
    std::unordered_map<long long, std::pair<long long, std::size_t>> parent;
    std::deque<long long> q;
    auto key = [&](int a, int b) { return static_cast<long long>(a) * static_cast<long long>(ns) + b; };
    const long long target = key(static_cast<int>(c), static_cast<int>(c));
    q.push_back(key(0, static_cast<int>(c)));
    parent.emplace(q.front(), std::make_pair(-1LL, std::size_t{0}));
    bool found = false;
    long long hit = -1;
    while (!q.empty() && !found) {
      const long long cur = q.front();
      q.pop_front();
      charge(1);
      const int a = static_cast<int>(cur / static_cast<long long>(ns));
      const int b = static_cast<int>(cur % static_cast<long long>(ns));
      for (std::size_t x = 0; x < letters; ++x) {
        const int a2 = next[static_cast<std::size_t>(a)][x];
        const int b2 = next[static_cast<std::size_t>(b)][x];
        if (a2 < 0 || b2 < 0) continue;
        const long long k2 = key(a2, b2);
        if (k2 == target) {
          found = true;
          hit = cur;
          Origin o;
          o.seed = static_cast<int>(c);
          o.loop.push_back(x);
          for (long long p = hit; parent.at(p).first >= 0; p = parent.at(p).first) o.loop.push_back(parent.at(p).second);
          std::reverse(o.loop.begin(), o.loop.end());
          origin[c] = std::move(o);
          frontier.push_back(static_cast<int>(c));
          break;
        }
        if (parent.emplace(k2, std::make_pair(cur, x)).second) q.push_back(k2);
      }
    }
  }
  while (!frontier.empty()) {
    const int s = frontier.front();
    frontier.pop_front();
    for (std::size_t x = 0; x < letters; ++x) {
      const int t = next[static_cast<std::size_t>(s)][x];
      if (t < 0 || origin[static_cast<std::size_t>(t)]) continue;
      Origin o = *origin[static_cast<std::size_t>(s)];
      o.prefix.push_back(x);
      origin[static_cast<std::size_t>(t)] = std::move(o);
      frontier.push_back(t);
    }
  }

  auto split = [&](const std::vector<std::size_t>& letters_used, Word& dom, Word& img) {
    dom.clear();
    img.clear();
    for (std::size_t x : letters_used) {
      dom.push_back(static_cast<Symbol>(x / nc));
      img.push_back(static_cast<Symbol>(x % nc));
    }
  };

  std::vector<Verdict> verdicts;
  for (int j = 0; j <= n; ++j) {
    bool ok = true;
    for (std::size_t s = 0; s < ns && ok; ++s) {
      if (!origin[s]) continue;
      struct Item {
        Joint joint;
        BitSet lifts;
        std::vector<std::size_t> tail;
      };
      std::vector<Item> layer{{states[s], states[s].qx, {}}};
      for (int d = 0; d < j; ++d) {
        std::vector<Item> grown;
        std::unordered_set<std::size_t> seen;
        for (const auto& it : layer) {
          for (std::size_t x = 0; x < letters; ++x) {
            auto t = step(it.joint, x);
            if (!t) continue;
            Item g{*t, h.step(it.lifts, static_cast<Symbol>(x % nc)), it.tail};
            g.tail.push_back(x);
            const std::size_t hk = hash_combine(JointHash{}(g.joint), g.lifts.hash());
            if (!seen.insert(hk).second) {
              bool dup = false;
              for (const auto& o : grown) {
                if (o.joint == g.joint && o.lifts == g.lifts) {
                  dup = true;
                  break;
                }
              }
              if (dup) continue;
            }
            charge(1);
            grown.push_back(std::move(g));
          }
        }
        layer = std::move(grown);
      }
      for (const auto& it : layer) {
        Word right;
        charge(1);
        if (!follower_contained(dy, it.joint.sy, h, it.lifts, &right)) {
          ok = false;
          if (ce && j == n) {
            split(origin[s]->loop, ce->loop_domain, ce->loop_image);
            split(origin[s]->prefix, ce->prefix_domain, ce->prefix_image);
            split(it.tail, ce->tail_domain, ce->tail_image);
            ce->right = right;
          }
          break;
        }
      }
    }
    verdicts.push_back(ok ? Verdict::Proved : Verdict::Refuted);
  }
  for (int j = 0; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      if (verdicts[static_cast<std::size_t>(j)] == Verdict::Proved && verdicts[static_cast<std::size_t>(k)] == Verdict::Refuted) {
        throw ConsistencyFault("retract " + std::to_string(j) + " holds but retract " + std::to_string(k) + " fails");
      }
    }
  }
  return verdicts;
}

}  // namespace

RetractDecision check_continuing_retract(const SlidingBlockCode& phi, int n, Side side) {
  if (n < 0) throw InvariantViolation("retract-nonnegative", "retract must be nonnegative");
  RetractDecision d;
  d.side = side;
  d.n = n;
  d.bounds["retract"] = n;
  const std::size_t budget = default_state_budget();
  d.bounds["state_budget"] = static_cast<long long>(budget);
  auto one = [&](Side s) -> Verdict {
    RetractDecision ce;
    std::vector<Verdict> v;
    try {
      v = right_retracts(s == Side::Right ? phi : mirrored(phi), n, &ce, budget);
    } catch (const BudgetExceeded&) {
      return Verdict::Inconclusive;
    }
    if (v.back() == Verdict::Refuted && d.verdict != Verdict::Refuted) {
      d.loop_domain = ce.loop_domain;
      d.loop_image = ce.loop_image;
      d.prefix_domain = ce.prefix_domain;
      d.prefix_image = ce.prefix_image;
      d.tail_domain = ce.tail_domain;
      d.tail_image = ce.tail_image;
      d.right = ce.right;
      d.failing_side = s;
    }
    return v.back();
  };
  if (side == Side::Bi) {
    const Verdict r = one(Side::Right);
    d.verdict = r;
    if (r != Verdict::Refuted) {
      const Verdict l = one(Side::Left);
      if (l == Verdict::Refuted) {
        d.verdict = Verdict::Refuted;
      } else if (l == Verdict::Inconclusive) {
        d.verdict = Verdict::Inconclusive;
      }
    }
  } else {
    d.verdict = one(side);
  }
  if (d.inconclusive()) d.detail = "state budget exhausted";
  if (d.refuted() && d.failing_side == Side::Left) d.detail = "counterexample words are given for the mirrored code";
  return d;
}

RetractDecision check_right_continuing_retract(const SlidingBlockCode& phi, int n) {
  return check_continuing_retract(phi, n, Side::Right);
}

RetractDecision check_left_continuing_retract(const SlidingBlockCode& phi, int n) {
  return check_continuing_retract(phi, n, Side::Left);
}

std::int64_t count_point_preimages(const SlidingBlockCode& phi, const Word& p) {
  if (p.empty()) throw InvariantViolation("period-positive", "periodic word must be nonempty");
  const Recoding r = recode(phi);
  const LabeledGraph& h = r.graph;
  const std::size_t q = p.size();
  const std::size_t na = phi.domain().alphabet().size();
  std::vector<std::string> names;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t i = 0; i < q; ++i) {
      names.push_back("(" + phi.domain().alphabet().name(static_cast<Symbol>(a)) + "," + std::to_string(i) + ")");
    }
  }
  std::vector<std::string> vertices;
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    for (std::size_t i = 0; i < q; ++i) vertices.push_back(std::to_string(v) + "/" + std::to_string(i));
  }
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    const Edge& ed = h.edge(static_cast<int>(e));
    for (std::size_t i = 0; i < q; ++i) {
      if (ed.label != p[i]) continue;
      edges.push_back({std::to_string(e) + "/" + std::to_string(i), static_cast<int>(static_cast<std::size_t>(ed.src) * q + i),
                       static_cast<int>(static_cast<std::size_t>(ed.dst) * q + (i + 1) % q),
                       static_cast<Symbol>(static_cast<std::size_t>(r.middle[e]) * q + i)});
    }
  }
  const SoficShift w(LabeledGraph(Alphabet(names), vertices, edges));
  const LabeledGraph& red = w.reduced();
  if (red.num_edges() == 0) throw PeriodicPointNotInShift("no domain point maps to the periodic point");
  for (std::size_t v = 0; v < red.num_vertices(); ++v) {
    if (red.out_edges(static_cast<int>(v)).size() != 1 || red.in_edges(static_cast<int>(v)).size() != 1) {
      throw InfinitelyManyPreimages("the periodic point has infinitely many preimages");
    }
  }
  std::int64_t count = 0;
  for (const auto& e : red.edges()) {
    if (static_cast<std::size_t>(e.label) % q == 0) ++count;
  }
  return count;
}

ConstantToOneDecision check_constant_to_one(const SlidingBlockCode& phi, int p_max) {
  ConstantToOneDecision d;
  d.bounds["p_max"] = p_max;
  try {
    d.degree = degree(phi).d;
  } catch (const Error& e) {
    d.verdict = Verdict::Inconclusive;
    d.detail = std::string("degree unavailable: ") + e.what();
    return d;
  }
  const std::size_t nc = phi.codomain().size();
  for (int len = 1; len <= p_max; ++len) {
    Word p(static_cast<std::size_t>(len), 0);
    while (true) {
      try {
        const std::int64_t c = count_point_preimages(phi, p);
        if (c != d.degree) {
          d.verdict = Verdict::Refuted;
          d.periodic = p;
          d.count = c;
          return d;
        }
      } catch (const PeriodicPointNotInShift&) {
      }
      std::size_t i = p.size();
      while (i > 0 && static_cast<std::size_t>(p[i - 1]) + 1 == nc) p[--i] = 0;
      if (i == 0) break;
      ++p[i - 1];
    }
  }
  d.verdict = Verdict::Inconclusive;
  d.detail = "no periodic counterexample up to p_max";
  return d;
}

Decision certify_irreducible_map(const SlidingBlockCode& phi) {
  Decision d;
  const DegreeResult deg = degree(phi);
  d.bounds["degree"] = deg.d;
  if (deg.d == 1) {
    d.verdict = Verdict::Proved;
    d.provenance.certificate = "ThmFischer";
    d.detail = "degree one";
  } else {
    d.verdict = Verdict::Inconclusive;
    d.detail = "degree above one; no complete test";
  }
  return d;
}

NonwanderingReport check_nonwandering_maximal(const SoficShift& x) {
  NonwanderingReport out;
  const LabeledGraph& red = x.reduced();
  out.entropy = entropy(x);
  out.nonwandering = true;
  out.all_maximal = true;
  for (const auto& c : scc_decompose(red)) {
    if (c.trivial) {
      out.nonwandering = false;
      continue;
    }
    BitSet keep(red.num_vertices());
    ComponentInfo info;
    for (int v : c.vertices) {
      keep.set(static_cast<std::size_t>(v));
      info.vertices.push_back(red.vertex_name(v));
    }
    info.entropy = std::log(spectral_radius(induced_subgraph(red, keep)));
    info.maximal = std::abs(info.entropy - out.entropy) < 1e-9;
    out.all_maximal = out.all_maximal && info.maximal;
    out.components.push_back(std::move(info));
  }
  return out;
}

namespace {

Verdict of(bool b) { return b ? Verdict::Proved : Verdict::Refuted; }

Verdict lookup(const Facts& f, const std::string& key) {
  auto it = f.find(key);
  return it == f.end() ? Verdict::Inconclusive : it->second;
}

}  // namespace

Facts analyze(const SlidingBlockCode& phi, const AnalysisOptions& options) {
  Facts f;
  const SoficShift& x = phi.domain();
  const SoficShift y = image_presentation(phi);
  f["domain_sofic"] = Verdict::Proved;
  f["domain_irreducible"] = of(x.irreducible());
  f["domain_synchronized"] = of(x.irreducible());
  f["codomain_irreducible"] = of(y.irreducible());
  f["codomain_synchronized"] = of(y.irreducible());
  f["factor_onto"] = Verdict::Proved;
  f["domain_sft"] = is_sft(x, options.sft_m_max).verdict;
  f["codomain_sft"] = is_sft(y, options.sft_m_max).verdict;
  const NonwanderingReport nw = check_nonwandering_maximal(x);
  f["domain_nonwandering"] = of(nw.nonwandering);
  f["domain_components_maximal"] = of(nw.all_maximal);

  const bool f2o = is_finite_to_one(phi);
  f["finite_to_one"] = of(f2o);
  f["right_closing"] = of(is_right_closing(phi));
  f["left_closing"] = of(is_left_closing(phi));
  if (f2o && y.irreducible() && x.irreducible()) {
    const int d = degree(phi).d;
    f["degree_one"] = of(d == 1);
    f["irreducible_map"] = d == 1 ? Verdict::Proved : Verdict::Inconclusive;
  }

  const LabeledGraph& pres = x.presentation();
  std::set<Symbol> labels;
  for (const auto& e : pres.edges()) labels.insert(e.label);
  const bool edge_shift = labels.size() == pres.num_edges() && phi.window() == 1 &&
                          trim_biextendable(pres).num_vertices() == pres.num_vertices();
  if (edge_shift && is_irreducible(pres)) {
    f["irreducible_finite_cover"] = Verdict::Proved;
    std::vector<Symbol> img;
    for (const auto& e : pres.edges()) img.push_back(phi.at(Word{e.label}));
    const LabeledGraph cover = relabeled(pres, phi.codomain(), img);
    const bool rr = is_right_resolving(cover);
    f["cover_right_resolving"] = of(rr);
    if (rr) f["cover_has_magic_word"] = of(find_magic_word(cover).has_value());
  }

  f["semi_open"] = check_semi_open(phi, options.openness).verdict;
  if (options.run_open) f["open"] = check_open(phi, options.openness).verdict;

  if (options.run_retract) {
    for (Side s : {Side::Right, Side::Left}) {
      std::vector<Verdict> v;
      try {
        v = right_retracts(s == Side::Right ? phi : mirrored(phi), options.retract_max, nullptr,
                           options.openness.budget);
      } catch (const BudgetExceeded&) {
        continue;
      }
      const std::string name = s == Side::Right ? "right" : "left";
      for (std::size_t k = 0; k < v.size(); ++k) {
        f[name + "_continuing_retract_" + std::to_string(k)] = v[k];
        // everywhere implies almost everywhere; the converse is left to theorems
        f[name + "_continuing_ae_retract_" + std::to_string(k)] =
            v[k] == Verdict::Proved ? Verdict::Proved : Verdict::Inconclusive;
      }
    }
  }
  return f;
}

Certificate make_certificate(std::string tag, const Facts& facts, const std::vector<std::string>& hypotheses,
                             std::vector<std::string> conclusions) {
  Certificate c;
  c.tag = std::move(tag);
  c.emitted = true;
  for (const auto& h : hypotheses) {
    const Verdict v = lookup(facts, h);
    c.hypotheses.push_back({h, v});
    c.emitted = c.emitted && v == Verdict::Proved;
  }
  c.conclusions = std::move(conclusions);
  return c;
}

std::vector<Certificate> certificates(const Facts& facts) {
  std::vector<Certificate> out;
  out.push_back(make_certificate("CorollaryNew", facts, {"domain_irreducible", "domain_sofic", "factor_onto"},
                                 {"semi_open"}));
  out.push_back(make_certificate("ThmFiniteCover", facts, {"irreducible_finite_cover"}, {"semi_open"}));
  out.push_back(make_certificate("ThmRRMagic", facts,
                                 {"irreducible_finite_cover", "cover_right_resolving", "cover_has_magic_word"},
                                 {"semi_open"}));
  out.push_back(make_certificate("ThmSToS", facts, {"domain_synchronized", "semi_open"}, {"codomain_synchronized"}));
  out.push_back(make_certificate("ThmRightClosing", facts,
                                 {"right_closing", "semi_open", "codomain_irreducible", "codomain_sft"},
                                 {"domain_sft", "domain_nonwandering"}));
  out.push_back(make_certificate("ThmSFTFiniteToOne", facts,
                                 {"domain_sft", "codomain_irreducible", "finite_to_one", "semi_open"},
                                 {"domain_nonwandering", "domain_components_maximal"}));
  out.push_back(make_certificate("ThmSemiAE", facts,
                                 {"domain_sft", "codomain_irreducible", "finite_to_one", "semi_open"},
                                 {"constant_to_one_ae"}));
  out.push_back(make_certificate("ThmSynBiCont", facts, {"domain_synchronized", "semi_open"}, {"bi_continuing_ae"}));
  out.push_back(make_certificate("LemmaOnto", facts, {"semi_open", "codomain_irreducible"}, {"factor_onto"}));
  out.push_back(make_certificate("ThmFischer", facts, {"degree_one", "factor_onto", "codomain_irreducible"},
                                 {"irreducible_map"}));
  out.push_back(make_certificate("LemmaDoubly", facts, {"finite_to_one", "factor_onto", "irreducible_map"},
                                 {"doubly_transitive_preserved"}));
  for (const auto& [key, v] : facts) {
    const std::string prefix = "right_continuing_ae_retract_";
    if (key.rfind(prefix, 0) != 0) continue;
    const std::string k = key.substr(prefix.size());
    out.push_back(make_certificate("ThmBallier", facts,
                                   {"domain_irreducible", "codomain_irreducible", "codomain_sft", "factor_onto", key},
                                   {"right_continuing_retract_" + k}));
  }
  return out;
}

void audit(const std::vector<Certificate>& certs, const Facts& facts) {
  for (const auto& c : certs) {
    if (!c.emitted) continue;
    for (const auto& concl : c.conclusions) {
      if (lookup(facts, concl) == Verdict::Refuted) {
        throw ConsistencyFault(c.tag + " concludes " + concl + " but the computation refutes it");
      }
    }
  }
}

}  // namespace shiftlab
