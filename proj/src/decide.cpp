#include "finmok/decide.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace finmok {

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::valid: return "valid";
    case VerdictStatus::countermodel: return "countermodel";
    default: return "unknown";
  }
}

std::int64_t domain_bound(const Formula& f, const KripkeFrame& frame) {
  if (check_monadic(f) == MonadicClass::non_monadic)
    throw NonMonadicError("domain bound is defined for monadic formulas only");
  Metrics mt = metrics(f);
  std::int64_t v = std::max(mt.variables, 1);
  std::int64_t exponent =
      static_cast<std::int64_t>(mt.letters + 1) * static_cast<std::int64_t>(frame.worlds.size());
  if (exponent >= 62) return std::numeric_limits<std::int64_t>::max();
  std::int64_t pow2 = std::int64_t{1} << exponent;
  if (v > std::numeric_limits<std::int64_t>::max() / pow2)
    return std::numeric_limits<std::int64_t>::max();
  return v * pow2;
}

namespace {

void check_feasible(const KripkeFrame& frame, const std::vector<int>& sizes, Modes modes) {
  if (sizes.size() != frame.worlds.size())
    throw std::invalid_argument("size profile length does not match world count");
  for (int s : sizes)
    if (s < 1) throw std::invalid_argument("domain sizes must be positive");
  for (const auto& rel : frame.relations)
    for (const auto& [w, v] : rel) {
      if (sizes[w] > sizes[v])
        throw std::invalid_argument("infeasible size profile: (E) fails along an edge");
      if (modes.domain == DomainMode::locally_constant && sizes[w] != sizes[v])
        throw std::invalid_argument("infeasible size profile: (C) fails along an edge");
    }
}

bool feasible(const KripkeFrame& frame, const std::vector<int>& sizes, Modes modes) {
  for (const auto& rel : frame.relations)
    for (const auto& [w, v] : rel) {
      if (sizes[w] > sizes[v]) return false;
      if (modes.domain == DomainMode::locally_constant && sizes[w] != sizes[v]) return false;
    }
  return true;
}

// One (letter, world) block of the interpretation bitvector.
struct Cell {
  std::string letter;
  int arity;
  int world;
  int bits;  // sizes[world]^arity, capped at 62
};

std::vector<int> decode_tuple(std::int64_t t, int arity, int size) {
  std::vector<int> tuple(arity);
  for (int pos = arity - 1; pos >= 0; --pos) {
    tuple[pos] = static_cast<int>(t % size);
    t /= size;
  }
  return tuple;
}

// Lexicographic enumeration of restricted growth strings of length `len`;
// each string encodes a set partition of {0, ..., len-1}.
bool next_rgs(std::vector<int>& a) {
  int len = static_cast<int>(a.size());
  for (int i = len - 1; i >= 1; --i) {
    int maxseen = 0;
    for (int j = 0; j < i; ++j) maxseen = std::max(maxseen, a[j]);
    if (a[i] <= maxseen) {
      ++a[i];
      std::fill(a.begin() + i + 1, a.end(), 0);
      return true;
    }
  }
  return false;
}

std::vector<std::vector<int>> rgs_to_classes(const std::vector<int>& a) {
  int nclasses = a.empty() ? 0 : *std::max_element(a.begin(), a.end()) + 1;
  std::vector<std::vector<int>> classes(nclasses);
  for (int e = 0; e < static_cast<int>(a.size()); ++e) classes[a[e]].push_back(e);
  return classes;
}

// ==_u included in ==_v, with equiv[u] and equiv[v] already assigned.
bool heredity_ok(const AugmentedModel& m, int u, int v) {
  for (const auto& cls : m.equiv[u])
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = i + 1; j < cls.size(); ++j)
        if (!m.equivalent(v, cls[i], cls[j])) return false;
  return true;
}

// Congruence of ==_w against the current interpretation at w.
bool congruence_ok(const AugmentedModel& m, int w) {
  for (const auto& [pred, per_world] : m.interp) {
    (void)pred;
    for (const auto& tuple : per_world[w])
      for (std::size_t pos = 0; pos < tuple.size(); ++pos)
        for (int b : m.domains[w]) {
          if (b == tuple[pos] || !m.equivalent(w, tuple[pos], b)) continue;
          std::vector<int> swapped = tuple;
          swapped[pos] = b;
          if (std::find(per_world[w].begin(), per_world[w].end(), swapped) ==
              per_world[w].end())
            return false;
        }
  }
  return true;
}

// Enumerates hereditary-congruence partitions world by world; returns false
// when the visitor stopped the walk.
bool partitions_rec(AugmentedModel& m, int w,
                    const std::vector<std::vector<std::pair<int, int>>>& edges_upto,
                    const std::function<bool(const AugmentedModel&)>& visit) {
  int nw = static_cast<int>(m.frame.worlds.size());
  if (w == nw) return visit(m);
  std::vector<int> rgs(m.domains[w].size(), 0);
  do {
    m.equiv[w] = rgs_to_classes(rgs);
    bool ok = congruence_ok(m, w);
    for (const auto& [a, b] : edges_upto[w])
      if (ok) ok = heredity_ok(m, a, b);
    if (ok && !partitions_rec(m, w + 1, edges_upto, visit)) return false;
  } while (next_rgs(rgs));
  return true;
}

}  // namespace

void for_each_model(const KripkeFrame& frame, const std::vector<int>& sizes,
                    const std::vector<Letter>& letters, Modes modes,
                    const std::function<bool(const AugmentedModel&)>& visit) {
  check_feasible(frame, sizes, modes);
  int nw = static_cast<int>(frame.worlds.size());

  AugmentedModel model;
  model.frame = frame;
  model.frame.rebuild_index();
  model.domain_mode = modes.domain;
  model.equality_mode = modes.equality;
  model.domains.resize(nw);
  for (int w = 0; w < nw; ++w)
    for (int e = 0; e < sizes[w]; ++e) model.domains[w].push_back(e);

  std::vector<Cell> cells;
  for (const auto& l : letters)
    for (int w = 0; w < nw; ++w) {
      std::int64_t count = 1;
      for (int i = 0; i < l.arity; ++i) count *= sizes[w];
      if (count > 62)
        throw std::runtime_error("interpretation space too large for letter " + l.name);
      cells.push_back({l.name, l.arity, w, static_cast<int>(count)});
    }
  for (const auto& l : letters) model.interp[l.name].resize(nw);

  // Precompute, per world w, the relation edges whose endpoints are both
  // <= w and involve w; used to check (H) as partitions are assigned.
  std::vector<std::vector<std::pair<int, int>>> edges_upto(nw);
  for (const auto& rel : frame.relations)
    for (const auto& [a, b] : rel) {
      if (a == b) continue;  // ==_w is trivially included in itself
      int later = std::max(a, b);
      edges_upto[later].emplace_back(a, b);
    }

  if (modes.equality != EqualityMode::none) model.equiv.resize(nw);
  if (modes.equality == EqualityMode::identity) {
    for (int w = 0; w < nw; ++w) {
      model.equiv[w].clear();
      for (int e : model.domains[w]) model.equiv[w].push_back({e});
    }
  }

  // Odometer over the interpretation bitvector; the last cell is least
  // significant, so earlier letters/worlds vary slowest.
  std::vector<std::int64_t> masks(cells.size(), 0);
  for (;;) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      TupleSet& ts = model.interp[cells[c].letter][cells[c].world];
      ts.clear();
      for (int t = 0; t < cells[c].bits; ++t)
        if (masks[c] >> t & 1)
          ts.push_back(decode_tuple(t, cells[c].arity, sizes[cells[c].world]));
    }

    bool keep_going;
    if (modes.equality == EqualityMode::congruence) {
      keep_going = partitions_rec(model, 0, edges_upto, visit);
    } else {
      keep_going = visit(model);
    }
    if (!keep_going) return;

    // Increment with carry toward the front.
    std::size_t c = cells.size();
    while (c > 0) {
      --c;
      if (++masks[c] < (std::int64_t{1} << cells[c].bits)) break;
      masks[c] = 0;
      if (c == 0) return;
    }
    if (cells.empty()) return;
  }
}

std::vector<AugmentedModel> enumerate_models(const KripkeFrame& frame,
                                             const std::vector<int>& sizes,
                                             const std::vector<Letter>& letters,
                                             Modes modes) {
  std::vector<AugmentedModel> out;
  for_each_model(frame, sizes, letters, modes, [&](const AugmentedModel& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::vector<std::vector<int>> size_profiles(const KripkeFrame& frame, Modes modes,
                                            int max_size) {
  int nw = static_cast<int>(frame.worlds.size());
  double space = 1;
  for (int w = 0; w < nw; ++w) space *= max_size;
  if (space > 5e6)
    throw std::runtime_error(
        "size-profile space too large; lower --max-size or pass --bound");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(nw, 1);
  for (;;) {
    if (feasible(frame, cur, modes)) out.push_back(cur);
    int i = nw - 1;
    while (i >= 0 && cur[i] == max_size) cur[i--] = 1;
    if (i < 0) break;
    ++cur[i];
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    long sa = 0, sb = 0;
    for (int x : a) sa += x;
    for (int x : b) sb += x;
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return out;
}

Verdict refute(const KripkeFrame& frame, const Formula& f, Modes modes, int max_size) {
  if (!validate_frame(frame).empty())
    throw std::invalid_argument("refute: frame fails validation");
  if (modes.equality == EqualityMode::none && contains_equality(f))
    throw std::invalid_argument("refute: equality atom in no-equality mode");

  Verdict verdict;
  verdict.bound_used = max_size;
  verdict.budget.max_size = max_size;

  std::vector<Letter> letters = collect_letters(f);
  Formula closed = universal_closure(f);
  int nw = static_cast<int>(frame.worlds.size());

  for (const auto& sizes : size_profiles(frame, modes, max_size)) {
    bool found = false;
    for_each_model(frame, sizes, letters, modes, [&](const AugmentedModel& m) {
      ++verdict.budget.models_checked;
      for (int w = 0; w < nw; ++w) {
        if (!satisfies(m, w, closed, {})) {
          verdict.status = VerdictStatus::countermodel;
          verdict.certified = true;
          verdict.certificate = Certificate{m, w};
          found = true;
          return false;
        }
      }
      return true;
    });
    if (found) return verdict;
  }
  verdict.status = VerdictStatus::unknown;
  return verdict;
}

Verdict decide_validity(const KripkeFrame& frame, const Formula& f, Modes modes,
                        std::optional<std::int64_t> bound_override,
                        bool force_uncertified) {
  if (check_monadic(f) == MonadicClass::non_monadic)
    throw NonMonadicError(
        "decide_validity requires a monadic formula; use refute for sound, "
        "incomplete countermodel search");
  std::int64_t default_bound = domain_bound(f, frame);
  std::int64_t bound = bound_override.value_or(default_bound);
  if (bound < 1) throw std::invalid_argument("bound must be positive");
  int cap = static_cast<int>(std::min<std::int64_t>(bound, std::numeric_limits<int>::max()));

  Verdict v = refute(frame, f, modes, cap);
  v.bound_used = bound;
  if (v.status == VerdictStatus::unknown) {
    v.status = VerdictStatus::valid;
    v.certified = !force_uncertified && bound >= default_bound;
  }
  return v;
}

bool verify_certificate(const Certificate& cert, const KripkeFrame& frame,
                        const Formula& f, Modes modes) {
  const AugmentedModel& m = cert.model;
  if (!(m.frame == frame)) return false;
  if (m.domain_mode != modes.domain || m.equality_mode != modes.equality) return false;
  if (cert.failing_world < 0 ||
      cert.failing_world >= static_cast<int>(m.frame.worlds.size()))
    return false;
  if (!validate_frame(m.frame).empty()) return false;
  if (!validate_model(m).empty()) return false;
  try {
    AugmentedModel checked = m;
    checked.frame.rebuild_index();
    return !true_at(checked, cert.failing_world, f);
  } catch (const EvalError&) {
    return false;
  }
}

}  // namespace finmok
