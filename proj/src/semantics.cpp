#include "finmok/semantics.hpp"

#include <algorithm>
#include <stdexcept>

namespace finmok {

int KripkeFrame::world_index(const std::string& name) const {
  for (std::size_t i = 0; i < worlds.size(); ++i)
    if (worlds[i] == name) return static_cast<int>(i);
  return -1;
}

void KripkeFrame::rebuild_index() {
  succ_.assign(relations.size(), {});
  for (std::size_t k = 0; k < relations.size(); ++k) {
    succ_[k].assign(worlds.size(), {});
    for (const auto& [w, v] : relations[k])
      if (w >= 0 && w < static_cast<int>(worlds.size()))
        succ_[k][w].push_back(v);
    for (auto& s : succ_[k]) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
  }
}

const std::vector<int>& KripkeFrame::successors(int k, int w) const {
  if (succ_.size() != relations.size())
    throw std::logic_error("KripkeFrame: rebuild_index() not called");
  return succ_[k - 1][w];
}

std::string to_string(DomainMode m) {
  return m == DomainMode::expanding ? "expanding" : "locally_constant";
}

std::string to_string(EqualityMode m) {
  switch (m) {
    case EqualityMode::congruence: return "congruence";
    case EqualityMode::identity: return "identity";
    default: return "none";
  }
}

bool AugmentedModel::in_domain(int w, int e) const {
  const auto& d = domains[w];
  return std::binary_search(d.begin(), d.end(), e);
}

bool AugmentedModel::equivalent(int w, int a, int b) const {
  if (a == b) return true;
  if (equality_mode != EqualityMode::congruence) return false;
  for (const auto& cls : equiv[w]) {
    bool has_a = std::find(cls.begin(), cls.end(), a) != cls.end();
    if (has_a) return std::find(cls.begin(), cls.end(), b) != cls.end();
  }
  return false;
}

bool AugmentedModel::holds(const std::string& pred, int w,
                           const std::vector<int>& tuple) const {
  auto it = interp.find(pred);
  if (it == interp.end()) return false;
  const TupleSet& ts = it->second[w];
  return std::find(ts.begin(), ts.end(), tuple) != ts.end();
}

std::vector<Violation> validate_frame(const KripkeFrame& frame) {
  std::vector<Violation> out;
  if (frame.n < 1) out.push_back({"frame", "modal count must be at least 1"});
  if (frame.worlds.empty()) out.push_back({"frame", "world set is empty"});
  if (static_cast<int>(frame.relations.size()) != frame.n)
    out.push_back({"frame", "expected " + std::to_string(frame.n) + " relations, got " +
                                std::to_string(frame.relations.size())});
  int m = static_cast<int>(frame.worlds.size());
  for (std::size_t k = 0; k < frame.relations.size(); ++k)
    for (const auto& [w, v] : frame.relations[k])
      if (w < 0 || w >= m || v < 0 || v >= m)
        out.push_back({"frame", "R_" + std::to_string(k + 1) + " mentions undeclared world in pair (" +
                                    std::to_string(w) + ", " + std::to_string(v) + ")"});
  return out;
}

namespace {

// For each relation, all pairs (w, v) with w R_k v; k reported 1-based.
template <typename Fn>
void for_each_edge(const KripkeFrame& f, Fn fn) {
  for (std::size_t k = 0; k < f.relations.size(); ++k)
    for (const auto& [w, v] : f.relations[k]) fn(static_cast<int>(k) + 1, w, v);
}

}  // namespace

std::vector<Violation> validate_model(const AugmentedModel& m) {
  std::vector<Violation> out;
  const KripkeFrame& fr = m.frame;
  int nw = static_cast<int>(fr.worlds.size());
  auto wname = [&](int w) { return fr.worlds[w]; };

  if (static_cast<int>(m.domains.size()) != nw) {
    out.push_back({"domains", "expected one domain per world"});
    return out;
  }
  for (int w = 0; w < nw; ++w) {
    if (m.domains[w].empty())
      out.push_back({"domains", "domain of " + wname(w) + " is empty"});
    if (!std::is_sorted(m.domains[w].begin(), m.domains[w].end()) ||
        std::adjacent_find(m.domains[w].begin(), m.domains[w].end()) != m.domains[w].end())
      out.push_back({"domains", "domain of " + wname(w) + " is not a sorted set"});
  }

  // (E) and, in locally-constant mode, (C).
  for_each_edge(fr, [&](int k, int w, int v) {
    for (int e : m.domains[w])
      if (!m.in_domain(v, e)) {
        out.push_back({"E", "element " + std::to_string(e) + " of D_" + wname(w) +
                                " missing from D_" + wname(v) + " along R_" + std::to_string(k)});
        return;
      }
  });
  if (m.domain_mode == DomainMode::locally_constant)
    for_each_edge(fr, [&](int k, int w, int v) {
      if (m.domains[w] != m.domains[v])
        out.push_back({"C", "D_" + wname(w) + " != D_" + wname(v) + " along R_" + std::to_string(k)});
    });

  // Interpretations stay inside the domains.
  for (const auto& [pred, per_world] : m.interp) {
    if (static_cast<int>(per_world.size()) != nw) {
      out.push_back({"interp", pred + ": expected one set per world"});
      continue;
    }
    for (int w = 0; w < nw; ++w)
      for (const auto& tuple : per_world[w])
        for (int e : tuple)
          if (!m.in_domain(w, e))
            out.push_back({"interp", pred + " at " + wname(w) + " mentions element " +
                                         std::to_string(e) + " outside the domain"});
  }

  if (m.equality_mode == EqualityMode::none) {
    if (!m.equiv.empty())
      out.push_back({"equivalence", "equivalence relations present in no-equality mode"});
    return out;
  }

  if (static_cast<int>(m.equiv.size()) != nw) {
    out.push_back({"equivalence", "expected one partition per world"});
    return out;
  }

  // Each ==_w must partition D_w exactly.
  for (int w = 0; w < nw; ++w) {
    std::vector<int> seen;
    for (const auto& cls : m.equiv[w]) {
      if (cls.empty()) out.push_back({"equivalence", "empty class at " + wname(w)});
      for (int e : cls) {
        if (!m.in_domain(w, e))
          out.push_back({"equivalence", "class at " + wname(w) + " mentions element " +
                                            std::to_string(e) + " outside the domain"});
        if (std::find(seen.begin(), seen.end(), e) != seen.end())
          out.push_back({"equivalence", "element " + std::to_string(e) +
                                            " appears in two classes at " + wname(w)});
        seen.push_back(e);
      }
    }
    if (seen.size() != m.domains[w].size())
      out.push_back({"equivalence", "partition at " + wname(w) + " does not cover the domain"});
  }

  if (m.equality_mode == EqualityMode::identity) {
    for (int w = 0; w < nw; ++w)
      for (const auto& cls : m.equiv[w])
        if (cls.size() > 1)
          out.push_back({"identity", "non-singleton class at " + wname(w)});
    return out;
  }

  // (H): ==_w included in ==_v along every edge.
  for_each_edge(fr, [&](int k, int w, int v) {
    for (const auto& cls : m.equiv[w])
      for (std::size_t i = 0; i < cls.size(); ++i)
        for (std::size_t j = i + 1; j < cls.size(); ++j)
          if (!m.equivalent(v, cls[i], cls[j])) {
            out.push_back({"H", std::to_string(cls[i]) + " == " + std::to_string(cls[j]) +
                                    " at " + wname(w) + " but not at " + wname(v) +
                                    " along R_" + std::to_string(k)});
            return;
          }
  });

  // Congruence: equivalent elements are indistinguishable by every letter,
  // in every argument position.
  for (const auto& [pred, per_world] : m.interp) {
    if (static_cast<int>(per_world.size()) != nw) continue;
    for (int w = 0; w < nw; ++w) {
      for (const auto& tuple : per_world[w]) {
        for (std::size_t pos = 0; pos < tuple.size(); ++pos) {
          for (int b : m.domains[w]) {
            if (b == tuple[pos] || !m.equivalent(w, tuple[pos], b)) continue;
            std::vector<int> swapped = tuple;
            swapped[pos] = b;
            if (std::find(per_world[w].begin(), per_world[w].end(), swapped) ==
                per_world[w].end())
              out.push_back({"congruence", pred + " at " + wname(w) + " separates " +
                                               std::to_string(tuple[pos]) + " and " +
                                               std::to_string(b)});
          }
        }
      }
    }
  }
  return out;
}

AugmentedModel make_identity_equality(const AugmentedModel& m) {
  AugmentedModel out = m;
  out.equality_mode = EqualityMode::identity;
  out.equiv.clear();
  out.equiv.reserve(m.domains.size());
  for (const auto& d : m.domains) {
    std::vector<std::vector<int>> classes;
    for (int e : d) classes.push_back({e});
    out.equiv.push_back(std::move(classes));
  }
  return out;
}

}  // namespace finmok
