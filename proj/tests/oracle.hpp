// Naive countermodel enumerator used as an independent check on the search
// in src/decide.cpp.  Shares only the AST and model structs; the search,
// the partition enumeration, and the evaluator are all written separately.
#ifndef FINMOK_TESTS_ORACLE_HPP
#define FINMOK_TESTS_ORACLE_HPP

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "finmok/decide.hpp"
#include "finmok/semantics.hpp"
#include "finmok/syntax.hpp"

namespace finmok::oracle {

namespace detail {

using Env = std::map<std::string, int>;
using Interp = std::map<std::string, std::map<int, std::set<std::vector<int>>>>;
using Labels = std::map<int, std::vector<int>>;  // world -> element class labels

struct World {
  std::vector<int> elems;
};

struct Setup {
  const KripkeFrame* frame;
  std::vector<int> sizes;
  Interp interp;
  Labels labels;  // empty in identity / no-equality modes
  Modes modes;
};

inline bool equiv(const Setup& s, int w, int a, int b) {
  if (s.modes.equality != EqualityMode::congruence) return a == b;
  return s.labels.at(w)[a] == s.labels.at(w)[b];
}

inline bool eval(const Setup& s, int w, const Formula& f, Env env) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Atom: {
      std::vector<int> t;
      for (const auto& a : f.args) t.push_back(env.at(a));
      const auto& by_world = s.interp.at(f.pred);
      return by_world.at(w).count(t) > 0;
    }
    case K::Equal: return equiv(s, w, env.at(f.args[0]), env.at(f.args[1]));
    case K::Top: return true;
    case K::Bottom: return false;
    case K::Not: return !eval(s, w, f.children[0], env);
    case K::And: return eval(s, w, f.children[0], env) && eval(s, w, f.children[1], env);
    case K::Or: return eval(s, w, f.children[0], env) || eval(s, w, f.children[1], env);
    case K::Implies:
      return !eval(s, w, f.children[0], env) || eval(s, w, f.children[1], env);
    case K::Iff: return eval(s, w, f.children[0], env) == eval(s, w, f.children[1], env);
    case K::Forall:
      for (int d = 0; d < s.sizes[w]; ++d) {
        Env e2 = env;
        e2[f.var] = d;
        if (!eval(s, w, f.children[0], e2)) return false;
      }
      return true;
    case K::Exists:
      for (int d = 0; d < s.sizes[w]; ++d) {
        Env e2 = env;
        e2[f.var] = d;
        if (eval(s, w, f.children[0], e2)) return true;
      }
      return false;
    case K::Box:
      for (const auto& [a, b] : s.frame->relations[f.index - 1])
        if (a == w && !eval(s, b, f.children[0], env)) return false;
      return true;
    case K::Diamond:
      for (const auto& [a, b] : s.frame->relations[f.index - 1])
        if (a == w && eval(s, b, f.children[0], env)) return true;
      return false;
  }
  return false;
}

inline bool sizes_feasible(const KripkeFrame& frame, const std::vector<int>& sizes,
                           Modes modes) {
  for (const auto& rel : frame.relations)
    for (const auto& [w, v] : rel) {
      if (modes.domain == DomainMode::locally_constant) {
        if (sizes[w] != sizes[v]) return false;
      } else if (sizes[w] > sizes[v]) {
        return false;
      }
    }
  return true;
}

inline bool labels_ok(const Setup& s) {
  if (s.modes.equality != EqualityMode::congruence) return true;
  const KripkeFrame& frame = *s.frame;
  // (H): equivalence grows along every edge.
  for (const auto& rel : frame.relations)
    for (const auto& [w, v] : rel)
      for (int a = 0; a < s.sizes[w]; ++a)
        for (int b = 0; b < s.sizes[w]; ++b)
          if (equiv(s, w, a, b) && !equiv(s, v, a, b)) return false;
  // Congruence against every letter in every argument position.
  for (const auto& [pred, by_world] : s.interp) {
    (void)pred;
    for (const auto& [w, tuples] : by_world)
      for (const auto& t : tuples)
        for (std::size_t pos = 0; pos < t.size(); ++pos)
          for (int b = 0; b < s.sizes[w]; ++b)
            if (equiv(s, w, t[pos], b)) {
              std::vector<int> t2 = t;
              t2[pos] = b;
              if (tuples.count(t2) == 0) return false;
            }
  }
  return true;
}

inline bool refuted_somewhere(const Setup& s, const Formula& closed) {
  for (int w = 0; w < static_cast<int>(s.frame->worlds.size()); ++w)
    if (!eval(s, w, closed, {})) return true;
  return false;
}

// Enumerate label vectors per world (every function D_w -> {0..|D_w|-1});
// every partition arises from at least one labeling.
inline bool search_labels(Setup& s, int w, const Formula& closed) {
  int nw = static_cast<int>(s.frame->worlds.size());
  if (w == nw) return labels_ok(s) && refuted_somewhere(s, closed);
  std::vector<int> lab(s.sizes[w], 0);
  for (;;) {
    s.labels[w] = lab;
    if (search_labels(s, w + 1, closed)) return true;
    int i = s.sizes[w] - 1;
    while (i >= 0 && lab[i] == s.sizes[w] - 1) lab[i--] = 0;
    if (i < 0) return false;
    ++lab[i];
  }
}

inline bool search_after_interp(Setup& s, const Formula& closed) {
  if (s.modes.equality == EqualityMode::congruence)
    return search_labels(s, 0, closed);
  return refuted_somewhere(s, closed);
}

inline bool search_interp(Setup& s, std::vector<std::pair<Letter, int>>& cells,
                          std::size_t at, const Formula& closed) {
  if (at == cells.size()) return search_after_interp(s, closed);
  const auto& [letter, w] = cells[at];
  // All tuples over D_w of the letter's arity.
  std::vector<std::vector<int>> tuples;
  std::function<void(std::vector<int>&)> build = [&](std::vector<int>& cur) {
    if (static_cast<int>(cur.size()) == letter.arity) {
      tuples.push_back(cur);
      return;
    }
    for (int d = 0; d < s.sizes[w]; ++d) {
      cur.push_back(d);
      build(cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  build(cur);
  // All subsets, by membership recursion.
  std::function<bool(std::size_t)> choose = [&](std::size_t i) -> bool {
    if (i == tuples.size()) return search_interp(s, cells, at + 1, closed);
    if (choose(i + 1)) return true;
    s.interp[letter.name][w].insert(tuples[i]);
    bool hit = choose(i + 1);
    s.interp[letter.name][w].erase(tuples[i]);
    return hit;
  };
  return choose(0);
}

}  // namespace detail

// True iff some model over `frame` with per-world domains of size at most
// max_size refutes the universal closure of `f` at some world.
inline bool has_countermodel(const KripkeFrame& frame, const Formula& f, Modes modes,
                             int max_size) {
  Formula closed = universal_closure(f);
  std::vector<Letter> letters = collect_letters(f);
  int nw = static_cast<int>(frame.worlds.size());

  std::vector<int> sizes(nw, 1);
  for (;;) {
    if (detail::sizes_feasible(frame, sizes, modes)) {
      detail::Setup s;
      s.frame = &frame;
      s.sizes = sizes;
      s.modes = modes;
      std::vector<std::pair<Letter, int>> cells;
      for (const auto& l : letters)
        for (int w = 0; w < nw; ++w) {
          cells.emplace_back(l, w);
          s.interp[l.name][w] = {};
        }
      if (detail::search_interp(s, cells, 0, closed)) return true;
    }
    int i = nw - 1;
    while (i >= 0 && sizes[i] == max_size) sizes[i--] = 1;
    if (i < 0) return false;
    ++sizes[i];
  }
}

}  // namespace finmok::oracle

#endif
