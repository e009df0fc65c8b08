#include "shiftlab/pointed.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <string>
#include <unordered_set>

#include "shiftlab/error.hpp"

namespace shiftlab {

CenteredWord::CenteredWord(Word w, int c) : word(std::move(w)), center(c) {
  if (center < 0 || center >= static_cast<int>(word.size())) {
    throw InvariantViolation("center-in-word", "center outside the word");
  }
}

CenteredWord CenteredWord::central(Word w) {
  if (w.size() % 2 == 0) throw InvariantViolation("central-odd-length", "central words have odd length");
  const int c = static_cast<int>(w.size() / 2);
  return CenteredWord(std::move(w), c);
}

bool PointedAutomaton::empty() const {
  if (graph.num_edges() == 0) return true;
  PointedAutomaton t = trimmed ? *this : trim_pointed(*this);
  return std::any_of(t.allowed.begin(), t.allowed.end(), [](const BitSet& s) { return s.none(); });
}

bool PointedAutomaton::permits(int coordinate, int edge) const {
  const int i = coordinate - offset;
  if (i < 0 || i >= static_cast<int>(allowed.size())) return true;
  return allowed[static_cast<std::size_t>(i)].test(static_cast<std::size_t>(edge));
}

PointedAutomaton trim_pointed(PointedAutomaton a) {
  a.graph = a.graph;
  const LabeledGraph& g = a.graph;
  BitSet cur = g.all_vertices();
  for (auto& layer : a.allowed) {
    BitSet next(g.num_vertices());
    layer.for_each([&](std::size_t e) {
      if (!cur.test(static_cast<std::size_t>(g.edge(static_cast<int>(e)).src))) {
        layer.reset(e);
      } else {
        next.set(static_cast<std::size_t>(g.edge(static_cast<int>(e)).dst));
      }
    });
    cur = std::move(next);
  }
  cur = g.all_vertices();
  for (auto it = a.allowed.rbegin(); it != a.allowed.rend(); ++it) {
    BitSet prev(g.num_vertices());
    it->for_each([&](std::size_t e) {
      if (!cur.test(static_cast<std::size_t>(g.edge(static_cast<int>(e)).dst))) {
        it->reset(e);
      } else {
        prev.set(static_cast<std::size_t>(g.edge(static_cast<int>(e)).src));
      }
    });
    cur = std::move(prev);
  }
  a.trimmed = true;
  return a;
}

PointedAutomaton cylinder_image(const Recoding& r, const SoficShift& domain, const CenteredWord& u) {
  if (!in_language(domain, u.word)) {
    throw WordNotAdmissible("cylinder word '" + domain.alphabet().spell(u.word) + "' is not admissible");
  }
  PointedAutomaton a;
  a.graph = r.graph;
  a.offset = -u.center;
  for (Symbol s : u.word) {
    BitSet layer(r.graph.num_edges());
    for (std::size_t e = 0; e < r.graph.num_edges(); ++e) {
      if (r.middle[e] == s) layer.set(e);
    }
    a.allowed.push_back(std::move(layer));
  }
  return trim_pointed(std::move(a));
}

PointedAutomaton cylinder_image(const SlidingBlockCode& phi, const CenteredWord& u) {
  return cylinder_image(recode(phi), phi.domain(), u);
}

namespace {

BitSet step_at(const PointedAutomaton& a, const BitSet& from, int coordinate, std::optional<Symbol> label) {
  const LabeledGraph& g = a.graph;
  BitSet out(g.num_vertices());
  from.for_each([&](std::size_t v) {
    for (int e : g.out_edges(static_cast<int>(v))) {
      if (label && g.edge(e).label != *label) continue;
      if (a.permits(coordinate, e)) out.set(static_cast<std::size_t>(g.edge(e).dst));
    }
  });
  return out;
}

PointedAutomaton normalized(const PointedAutomaton& a) {
  PointedAutomaton out = a;
  if (out.allowed.empty()) {
    out.offset = 0;
    out.allowed.assign(1, BitSet(out.graph.num_edges(), true));
  }
  if (!out.trimmed) out = trim_pointed(std::move(out));
  return out;
}

}  // namespace

bool reads(const PointedAutomaton& a, const Word& word, int start) {
  const int lo = std::min(start, a.window_first());
  const int hi = std::max(start + static_cast<int>(word.size()) - 1, a.window_last());
  BitSet cur = a.graph.all_vertices();
  for (int c = lo; c <= hi && cur.any(); ++c) {
    std::optional<Symbol> label;
    if (c >= start && c < start + static_cast<int>(word.size())) label = word[static_cast<std::size_t>(c - start)];
    cur = step_at(a, cur, c, label);
  }
  return cur.any();
}

std::set<Word> window_language(const PointedAutomaton& a, int k) {
  std::set<Word> out;
  BitSet cur = a.graph.all_vertices();
  for (int c = std::min(a.window_first(), -k); c < -k; ++c) cur = step_at(a, cur, c, std::nullopt);
  Word w;
  std::function<void(const BitSet&)> rec = [&](const BitSet& s) {
    const int c = -k + static_cast<int>(w.size());
    if (c > k) {
      BitSet t = s;
      for (int d = k + 1; d <= a.window_last() && t.any(); ++d) t = step_at(a, t, d, std::nullopt);
      if (t.any()) out.insert(w);
      return;
    }
    for (std::size_t x = 0; x < a.graph.alphabet().size(); ++x) {
      BitSet t = step_at(a, s, c, static_cast<Symbol>(x));
      if (t.none()) continue;
      w.push_back(static_cast<Symbol>(x));
      rec(t);
      w.pop_back();
    }
  };
  if (cur.any()) rec(cur);
  return out;
}

std::size_t default_state_budget() {
  if (const char* env = std::getenv("SHIFTLAB_STATE_BUDGET")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 1000000;
}

ContainmentEngine::ContainmentEngine(const LabeledGraph& image_graph, const SoficShift& y, std::size_t budget)
    : h_(image_graph), dy_(y.reduced()), budget_(budget) {
  if (h_.alphabet() != dy_.alphabet()) throw AlphabetMismatch("image graph and target shift alphabets differ");
}

void ContainmentEngine::charge(std::size_t states) {
  spent_ += states;
  if (spent_ > budget_) throw BudgetExceeded{};
}

int ContainmentEngine::intern_target(const BitSet& s) {
  auto [it, fresh] = target_ids_.emplace(s, static_cast<int>(target_sets_.size()));
  if (fresh) target_sets_.push_back(s);
  return it->second;
}

int ContainmentEngine::intern_image(const BitSet& s) {
  auto [it, fresh] = image_ids_.emplace(s, static_cast<int>(image_sets_.size()));
  if (fresh) image_sets_.push_back(s);
  return it->second;
}

void ContainmentEngine::build_left_states() {
  if (left_built_) return;
  const std::size_t k = h_.alphabet().size();
  using Key = std::pair<BitSet, BitSet>;
  struct KeyHash {
    std::size_t operator()(const Key& x) const { return hash_combine(x.first.hash(), x.second.hash()); }
  };
  std::unordered_map<Key, int, KeyHash> index;
  left_.clear();
  left_words_.clear();
  left_next_.clear();
  if (!dy_.empty()) {
    left_.emplace_back(dy_.all_vertices(), h_.all_vertices());
    left_words_.emplace_back();
    index.emplace(left_.back(), 0);
  }
  for (std::size_t i = 0; i < left_.size(); ++i) {
    charge(1);
    left_next_.emplace_back(k, -1);
    for (std::size_t c = 0; c < k; ++c) {
      Key next{dy_.step(left_[i].first, static_cast<Symbol>(c)), h_.step(left_[i].second, static_cast<Symbol>(c))};
      if (next.first.none()) continue;
      auto [it, fresh] = index.emplace(next, static_cast<int>(left_.size()));
      if (fresh) {
        left_.push_back(next);
        Word w = left_words_[i];
        w.push_back(static_cast<Symbol>(c));
        left_words_.push_back(std::move(w));
      }
      left_next_[i][c] = it->second;
    }
  }
  left_built_ = true;
}

std::size_t ContainmentEngine::left_state_count() {
  build_left_states();
  return left_.size();
}

bool ContainmentEngine::contained(int ty, int e) {
  auto key = std::make_pair(ty, e);
  auto it = contained_.find(key);
  if (it != contained_.end()) return it->second;
#ifdef SHIFTLAB_MUTANT
  // deliberately broken: only the full image set is accepted
  const bool ok = image_sets_[static_cast<std::size_t>(e)] == h_.all_vertices();
#else
  const bool ok = follower_contained(dy_, target_sets_[static_cast<std::size_t>(ty)], h_,
                                     image_sets_[static_cast<std::size_t>(e)]);
#endif
  contained_.emplace(key, ok);
  return ok;
}

bool ContainmentEngine::contains(const PointedAutomaton& a0, const CenteredWord& w, Escape* escape) {
  const PointedAutomaton a = normalized(a0);
  build_left_states();
  const int need_left = std::max(0, w.first() - a.window_first());
  const int need_right = std::max(0, a.window_last() - w.last());
  if (need_left > 0 || need_right > 0) {
    const std::size_t k = dy_.alphabet().size();
    bool ok = true;
    Word x, z;
    std::function<void(const BitSet&, int)> rec_right;
    std::function<void(const BitSet&)> rec_left = [&](const BitSet& s) {
      if (!ok) return;
      if (static_cast<int>(x.size()) == need_left) {
        BitSet t = dy_.step(s, w.word);
        if (t.any()) rec_right(t, 0);
        return;
      }
      for (std::size_t c = 0; c < k && ok; ++c) {
        BitSet t = dy_.step(s, static_cast<Symbol>(c));
        if (t.none()) continue;
        x.push_back(static_cast<Symbol>(c));
        rec_left(t);
        x.pop_back();
      }
    };
    rec_right = [&](const BitSet& s, int depth) {
      if (!ok) return;
      if (depth == need_right) {
        Word ext = x;
        ext.insert(ext.end(), w.word.begin(), w.word.end());
        ext.insert(ext.end(), z.begin(), z.end());
        CenteredWord cw(ext, w.center + need_left);
        if (!contains(a, cw, escape)) {
          ok = false;
          if (escape) {
            escape->extended = cw.word;
            escape->extended_center = cw.center;
          }
        }
        return;
      }
      for (std::size_t c = 0; c < k && ok; ++c) {
        BitSet t = dy_.step(s, static_cast<Symbol>(c));
        if (t.none()) continue;
        z.push_back(static_cast<Symbol>(c));
        rec_right(t, depth + 1);
        z.pop_back();
      }
    };
    rec_left(dy_.all_vertices());
    return ok;
  }
  for (std::size_t i = 0; i < left_.size(); ++i) {
    const BitSet ty = dy_.step(left_[i].first, w.word);
    if (ty.none()) continue;
    BitSet e = left_[i].second;
    for (std::size_t j = 0; j < w.word.size() && e.any(); ++j) {
      e = step_at(a, e, static_cast<int>(j) - w.center, w.word[j]);
    }
    const int tid = intern_target(ty);
    const int eid = intern_image(e);
    if (!contained(tid, eid)) {
      if (escape) {
        escape->left = left_words_[i];
        escape->right.clear();
        follower_contained(dy_, ty, h_, e, &escape->right);
        escape->extended = w.word;
        escape->extended_center = w.center;
      }
      return false;
    }
  }
  return true;
}

std::size_t ContainmentEngine::PairHash::operator()(const Pair& p) const {
  std::size_t h = p.rel.hash();
  for (int v : p.ry) h = hash_combine(h, static_cast<std::size_t>(v + 1));
  return h;
}

std::size_t ContainmentEngine::ProfileHash::operator()(const Profile& p) const {
  std::size_t h = p.size();
  for (const auto& [a, b] : p) h = hash_combine(h, static_cast<std::size_t>((static_cast<long long>(a) << 32) ^ (b + 1)));
  return h;
}

const ContainmentEngine::Pair& ContainmentEngine::symbol_pair(Symbol c) {
  if (symbol_pairs_.empty()) {
    for (std::size_t s = 0; s < h_.alphabet().size(); ++s) {
      Pair p;
      p.ry.assign(dy_.num_vertices(), -1);
      for (const auto& e : dy_.edges()) {
        if (e.label == static_cast<Symbol>(s)) p.ry[static_cast<std::size_t>(e.src)] = e.dst;
      }
      p.rel = Relation(h_.num_vertices());
      for (const auto& e : h_.edges()) {
        if (e.label == static_cast<Symbol>(s)) p.rel.set(static_cast<std::size_t>(e.src), static_cast<std::size_t>(e.dst));
      }
      symbol_pairs_.push_back(std::move(p));
    }
  }
  return symbol_pairs_[static_cast<std::size_t>(c)];
}

ContainmentEngine::Pair ContainmentEngine::compose(const Pair& x, const Pair& y) const {
  Pair out;
  out.ry.resize(x.ry.size());
  for (std::size_t v = 0; v < x.ry.size(); ++v) out.ry[v] = x.ry[v] < 0 ? -1 : y.ry[static_cast<std::size_t>(x.ry[v])];
  out.rel = x.rel.then(y.rel);
  return out;
}

std::vector<std::pair<ContainmentEngine::Pair, Word>> ContainmentEngine::window_pairs(const PointedAutomaton& a0) {
  const PointedAutomaton a = normalized(a0);
  const std::size_t k = h_.alphabet().size();
  auto constrained = [&](std::size_t layer, Symbol c) {
    Pair p = symbol_pair(c);
    p.rel = Relation(h_.num_vertices());
    a.allowed[layer].for_each([&](std::size_t e) {
      const Edge& ed = h_.edge(static_cast<int>(e));
      if (ed.label == c) p.rel.set(static_cast<std::size_t>(ed.src), static_cast<std::size_t>(ed.dst));
    });
    return p;
  };
  std::vector<std::pair<Pair, Word>> level{{Pair{std::vector<int>(), Relation()}, Word{}}};
  for (std::size_t layer = 0; layer < a.allowed.size(); ++layer) {
    std::vector<std::pair<Pair, Word>> next;
    std::unordered_set<Pair, PairHash> seen;
    for (const auto& [p, w] : level) {
      for (std::size_t c = 0; c < k; ++c) {
        Pair step = constrained(layer, static_cast<Symbol>(c));
        Pair q = layer == 0 ? step : compose(p, step);
        if (q.rel.empty() || !seen.insert(q).second) continue;
        charge(1);
        Word v = w;
        v.push_back(static_cast<Symbol>(c));
        next.emplace_back(std::move(q), std::move(v));
      }
    }
    level = std::move(next);
  }
  return level;
}

std::vector<std::pair<ContainmentEngine::Pair, Word>> ContainmentEngine::central_pairs(const PointedAutomaton& a0) {
  const PointedAutomaton a = normalized(a0);
  const std::size_t k = h_.alphabet().size();
  const int radius = std::max({-a.window_first(), a.window_last(), 0});
  const int left = radius + a.window_first();
  const int right = radius - a.window_last();
  auto pairs = window_pairs(a);
  for (int i = 0; i < left; ++i) {
    std::vector<std::pair<Pair, Word>> next;
    std::unordered_set<Pair, PairHash> seen;
    for (std::size_t c = 0; c < k; ++c) {
      for (const auto& [p, w] : pairs) {
        auto q = compose(symbol_pair(static_cast<Symbol>(c)), p);
        if (q.rel.empty() || !seen.insert(q).second) continue;
        charge(1);
        Word v{static_cast<Symbol>(c)};
        v.insert(v.end(), w.begin(), w.end());
        next.emplace_back(std::move(q), std::move(v));
      }
    }
    pairs = std::move(next);
  }
  for (int i = 0; i < right; ++i) {
    std::vector<std::pair<Pair, Word>> next;
    std::unordered_set<Pair, PairHash> seen;
    for (const auto& [p, w] : pairs) {
      for (std::size_t c = 0; c < k; ++c) {
        auto q = compose(p, symbol_pair(static_cast<Symbol>(c)));
        if (q.rel.empty() || !seen.insert(q).second) continue;
        charge(1);
        Word v = w;
        v.push_back(static_cast<Symbol>(c));
        next.emplace_back(std::move(q), std::move(v));
      }
    }
    pairs = std::move(next);
  }
  return pairs;
}

ContainmentEngine::Profile ContainmentEngine::profile_of(const Pair& p) {
  build_left_states();
  Profile out(left_.size(), {-1, -1});
  for (std::size_t i = 0; i < left_.size(); ++i) {
    BitSet ty(dy_.num_vertices());
    left_[i].first.for_each([&](std::size_t v) {
      if (p.ry[v] >= 0) ty.set(static_cast<std::size_t>(p.ry[v]));
    });
    if (ty.none()) continue;
    out[i] = {intern_target(ty), intern_image(p.rel.image(left_[i].second))};
  }
  return out;
}

ContainmentEngine::Profile ContainmentEngine::extend(const Profile& p, Symbol left, Symbol right) {
  Profile out(p.size(), {-1, -1});
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int j = left_next_[i][static_cast<std::size_t>(left)];
    if (j < 0) continue;
    const auto [ty, e] = p[static_cast<std::size_t>(j)];
    if (ty < 0) continue;
    BitSet t = dy_.step(target_sets_[static_cast<std::size_t>(ty)], right);
    if (t.none()) continue;
    out[i] = {intern_target(t), intern_image(h_.step(image_sets_[static_cast<std::size_t>(e)], right))};
  }
  return out;
}

bool ContainmentEngine::in_language(const Profile& p) const { return !p.empty() && p[0].first >= 0; }

bool ContainmentEngine::nonempty_image(const Profile& p) const {
  return in_language(p) && image_sets_[static_cast<std::size_t>(p[0].second)].any();
}

bool ContainmentEngine::good(const Profile& p) {
  if (!in_language(p)) return false;
  for (const auto& [ty, e] : p) {
    if (ty >= 0 && !contained(ty, e)) return false;
  }
  return true;
}

namespace {

void central_words(const LabeledGraph& dy, int k, const std::function<bool(const Word&)>& visit) {
  Word w;
  bool stop = false;
  std::function<void(const BitSet&)> rec = [&](const BitSet& s) {
    if (stop) return;
    if (static_cast<int>(w.size()) == 2 * k + 1) {
      stop = visit(w);
      return;
    }
    for (std::size_t c = 0; c < dy.alphabet().size() && !stop; ++c) {
      BitSet t = dy.step(s, static_cast<Symbol>(c));
      if (t.none()) continue;
      w.push_back(static_cast<Symbol>(c));
      rec(t);
      w.pop_back();
    }
  };
  if (!dy.empty()) rec(dy.all_vertices());
}

}  // namespace

InteriorDecision interior_nonempty(ContainmentEngine& engine, const PointedAutomaton& a0,
                                   const InteriorOptions& options) {
  InteriorDecision out;
  out.bounds["k_max"] = options.k_max;
  out.bounds["state_budget"] = static_cast<long long>(engine.budget());
  const PointedAutomaton a = normalized(a0);
  const std::size_t k = engine.graph().alphabet().size();
  const int radius = std::max({-a.window_first(), a.window_last(), 0});
  try {
    if (options.minimal_witness) {
      for (int r = 0; r < radius; ++r) {
        std::optional<Word> found;
        central_words(engine.target(), r, [&](const Word& w) {
          if (engine.contains(a, CenteredWord::central(w))) found = w;
          return found.has_value();
        });
        if (found) {
          out.verdict = Verdict::Proved;
          out.witness = CenteredWord::central(*found);
          return out;
        }
      }
    }
    const auto pairs = engine.central_pairs(a);

    using Level = std::vector<std::pair<ContainmentEngine::Profile, Word>>;
    Level level;
    {
      std::unordered_set<ContainmentEngine::Profile, ContainmentEngine::ProfileHash> seen;
      for (const auto& [p, w] : pairs) {
        auto prof = engine.profile_of(p);
        engine.charge(prof.size());
        if (!engine.in_language(prof) || !seen.insert(prof).second) continue;
        level.emplace_back(std::move(prof), w);
      }
    }
    std::unordered_set<ContainmentEngine::Profile, ContainmentEngine::ProfileHash> all;
    std::vector<std::pair<Word, int>> reps;
    for (int r = radius;; ++r) {
      for (const auto& [prof, w] : level) {
        if (engine.good(prof)) {
          out.verdict = Verdict::Proved;
          out.witness = CenteredWord::central(w);
          if (r > options.k_max) out.detail = "witness radius exceeds k_max";
          return out;
        }
      }
      bool fresh = false;
      for (const auto& [prof, w] : level) {
        if (all.insert(prof).second) {
          fresh = true;
          reps.emplace_back(w, r);
        }
      }
      if (!fresh) {
        out.verdict = Verdict::Refuted;
        out.saturation_radius = r;
        for (const auto& [w, rr] : reps) {
          Escape esc;
          const CenteredWord cw = CenteredWord::central(w);
          engine.contains(a, cw, &esc);
          out.escapes.emplace_back(cw, std::move(esc));
        }
        return out;
      }
      Level next;
      std::unordered_set<ContainmentEngine::Profile, ContainmentEngine::ProfileHash> seen;
      for (std::size_t x = 0; x < k; ++x) {
        for (const auto& [prof, w] : level) {
          for (std::size_t y = 0; y < k; ++y) {
            auto q = engine.extend(prof, static_cast<Symbol>(x), static_cast<Symbol>(y));
            engine.charge(q.size());
            if (!engine.in_language(q) || !seen.insert(q).second) continue;
            Word v{static_cast<Symbol>(x)};
            v.insert(v.end(), w.begin(), w.end());
            v.push_back(static_cast<Symbol>(y));
            next.emplace_back(std::move(q), std::move(v));
          }
        }
      }
      level = std::move(next);
    }
  } catch (const BudgetExceeded&) {
    out.verdict = Verdict::Inconclusive;
    out.detail = "state budget exhausted";
    return out;
  }
}

InteriorDecision interior_nonempty(const PointedAutomaton& a, const SoficShift& y, int k_max) {
  ContainmentEngine engine(a.graph, y);
  InteriorOptions options;
  options.k_max = k_max;
  return interior_nonempty(engine, a, options);
}

bool contains_cylinder(const PointedAutomaton& a, const SoficShift& y, const CenteredWord& w) {
  ContainmentEngine engine(a.graph, y);
  return engine.contains(a, w);
}

}  // namespace shiftlab
