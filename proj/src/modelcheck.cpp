#include "finmok/modelcheck.hpp"

#include <cassert>
#include <vector>

namespace finmok {

namespace {

using Kind = Formula::Kind;

// Shadowing environment: lookups scan from the back.
struct Env {
  std::vector<std::pair<std::string, int>> slots;

  int lookup(const std::string& var) const {
    for (auto it = slots.rbegin(); it != slots.rend(); ++it)
      if (it->first == var) return it->second;
    throw EvalError("unassigned free variable '" + var + "'");
  }
};

bool eval(const AugmentedModel& m, int w, const Formula& f, Env& env) {
  switch (f.kind) {
    case Kind::Atom: {
      std::vector<int> tuple;
      tuple.reserve(f.args.size());
      for (const auto& a : f.args) tuple.push_back(env.lookup(a));
      return m.holds(f.pred, w, tuple);
    }
    case Kind::Equal: {
      if (m.equality_mode == EqualityMode::none)
        throw EvalError("equality atom in no-equality mode");
      return m.equivalent(w, env.lookup(f.args[0]), env.lookup(f.args[1]));
    }
    case Kind::Top: return true;
    case Kind::Bottom: return false;
    case Kind::Not: return !eval(m, w, f.children[0], env);
    case Kind::And: return eval(m, w, f.children[0], env) && eval(m, w, f.children[1], env);
    case Kind::Or: return eval(m, w, f.children[0], env) || eval(m, w, f.children[1], env);
    case Kind::Implies: return !eval(m, w, f.children[0], env) || eval(m, w, f.children[1], env);
    case Kind::Iff: return eval(m, w, f.children[0], env) == eval(m, w, f.children[1], env);
    case Kind::Forall: {
      env.slots.emplace_back(f.var, 0);
      for (int d : m.domains[w]) {
        env.slots.back().second = d;
        if (!eval(m, w, f.children[0], env)) {
          env.slots.pop_back();
          return false;
        }
      }
      env.slots.pop_back();
      return true;
    }
    case Kind::Exists: {
      env.slots.emplace_back(f.var, 0);
      for (int d : m.domains[w]) {
        env.slots.back().second = d;
        if (eval(m, w, f.children[0], env)) {
          env.slots.pop_back();
          return true;
        }
      }
      env.slots.pop_back();
      return false;
    }
    case Kind::Box: {
      for (int v : m.frame.successors(f.index, w)) {
#ifndef NDEBUG
        for (const auto& [var, e] : env.slots) assert(m.in_domain(v, e));
#endif
        if (!eval(m, v, f.children[0], env)) return false;
      }
      return true;
    }
    case Kind::Diamond: {
      for (int v : m.frame.successors(f.index, w))
        if (eval(m, v, f.children[0], env)) return true;
      return false;
    }
  }
  return false;  // unreachable
}

}  // namespace

bool satisfies(const AugmentedModel& m, int world, const Formula& f,
               const Assignment& assignment) {
  Env env;
  for (const auto& [var, e] : assignment) {
    if (!m.in_domain(world, e))
      throw EvalError("assignment " + var + " = " + std::to_string(e) +
                      " lies outside the domain of " + m.frame.worlds[world]);
    env.slots.emplace_back(var, e);
  }
  return eval(m, world, f, env);
}

bool true_at(const AugmentedModel& m, int world, const Formula& f) {
  Env env;
  return eval(m, world, universal_closure(f), env);
}

bool true_in_model(const AugmentedModel& m, const Formula& f) {
  return !find_failure(m, f).has_value();
}

std::optional<int> find_failure(const AugmentedModel& m, const Formula& f) {
  Formula closed = universal_closure(f);
  for (int w = 0; w < static_cast<int>(m.frame.worlds.size()); ++w) {
    Env env;
    if (!eval(m, w, closed, env)) return w;
  }
  return std::nullopt;
}

}  // namespace finmok
