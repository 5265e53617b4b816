#include "finmok/json_io.hpp"

#include <algorithm>
#include <fstream>

namespace finmok {

namespace {

using Kind = Formula::Kind;

std::string require_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw LoadError(std::string("missing or non-string field \"") + key + "\"");
  return j[key].get<std::string>();
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw LoadError(path + ": " + e.what());
  }
  return j;
}

json frame_to_json(const KripkeFrame& frame) {
  json rels = json::object();
  for (int k = 1; k <= frame.n; ++k) {
    json pairs = json::array();
    if (k <= static_cast<int>(frame.relations.size()))
      for (const auto& [w, v] : frame.relations[k - 1])
        pairs.push_back(json::array({frame.worlds[w], frame.worlds[v]}));
    rels[std::to_string(k)] = pairs;
  }
  return {{"schema", 1}, {"n", frame.n}, {"worlds", frame.worlds}, {"relations", rels}};
}

KripkeFrame frame_from_json(const json& j) {
  KripkeFrame frame;
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw LoadError("frame: missing modal count \"n\"");
  frame.n = j["n"].get<int>();
  if (frame.n < 1) throw LoadError("frame: modal count must be at least 1");
  if (!j.contains("worlds") || !j["worlds"].is_array() || j["worlds"].empty())
    throw LoadError("frame: missing or empty \"worlds\"");
  for (const auto& w : j["worlds"]) {
    std::string name = w.get<std::string>();
    if (frame.world_index(name) >= 0) throw LoadError("frame: duplicate world " + name);
    frame.worlds.push_back(name);
  }
  frame.relations.resize(frame.n);
  if (j.contains("relations")) {
    for (const auto& [key, pairs] : j["relations"].items()) {
      int k = std::stoi(key);
      if (k < 1 || k > frame.n) throw LoadError("frame: relation index " + key + " out of range");
      for (const auto& p : pairs) {
        if (!p.is_array() || p.size() != 2) throw LoadError("frame: malformed relation pair");
        int w = frame.world_index(p[0].get<std::string>());
        int v = frame.world_index(p[1].get<std::string>());
        if (w < 0 || v < 0) throw LoadError("frame: relation mentions undeclared world");
        frame.relations[k - 1].emplace_back(w, v);
      }
    }
  }
  frame.rebuild_index();
  return frame;
}

json model_to_json(const AugmentedModel& m) {
  json j = frame_to_json(m.frame);
  json domains = json::object();
  for (std::size_t w = 0; w < m.frame.worlds.size(); ++w)
    domains[m.frame.worlds[w]] = m.domains[w];
  j["domains"] = domains;
  if (m.equality_mode != EqualityMode::none) {
    json equiv = json::object();
    for (std::size_t w = 0; w < m.frame.worlds.size(); ++w)
      equiv[m.frame.worlds[w]] = m.equiv[w];
    j["equiv"] = equiv;
  }
  json interp = json::object();
  for (const auto& [pred, per_world] : m.interp) {
    json by_world = json::object();
    for (std::size_t w = 0; w < m.frame.worlds.size(); ++w) {
      bool monadic = std::all_of(per_world[w].begin(), per_world[w].end(),
                                 [](const auto& t) { return t.size() == 1; });
      if (monadic) {
        std::vector<int> elems;
        for (const auto& t : per_world[w]) elems.push_back(t[0]);
        by_world[m.frame.worlds[w]] = elems;
      } else {
        by_world[m.frame.worlds[w]] = per_world[w];
      }
    }
    interp[pred] = by_world;
  }
  j["interp"] = interp;
  j["domain_mode"] = to_string(m.domain_mode);
  j["equality_mode"] = to_string(m.equality_mode);
  return j;
}

AugmentedModel model_from_json(const json& j) {
  AugmentedModel m;
  m.frame = frame_from_json(j);
  int nw = static_cast<int>(m.frame.worlds.size());

  std::string dm = require_string(j, "domain_mode");
  if (dm == "expanding") m.domain_mode = DomainMode::expanding;
  else if (dm == "locally_constant" || dm == "constant") m.domain_mode = DomainMode::locally_constant;
  else throw LoadError("model: unknown domain_mode \"" + dm + "\"");

  std::string em = require_string(j, "equality_mode");
  if (em == "congruence") m.equality_mode = EqualityMode::congruence;
  else if (em == "identity") m.equality_mode = EqualityMode::identity;
  else if (em == "none") m.equality_mode = EqualityMode::none;
  else throw LoadError("model: unknown equality_mode \"" + em + "\"");

  if (!j.contains("domains")) throw LoadError("model: missing \"domains\"");
  m.domains.resize(nw);
  for (const auto& [name, elems] : j["domains"].items()) {
    int w = m.frame.world_index(name);
    if (w < 0) throw LoadError("model: domain for undeclared world " + name);
    m.domains[w] = elems.get<std::vector<int>>();
    std::sort(m.domains[w].begin(), m.domains[w].end());
  }

  if (m.equality_mode != EqualityMode::none) {
    if (!j.contains("equiv")) throw LoadError("model: missing \"equiv\"");
    m.equiv.resize(nw);
    for (const auto& [name, classes] : j["equiv"].items()) {
      int w = m.frame.world_index(name);
      if (w < 0) throw LoadError("model: equiv for undeclared world " + name);
      m.equiv[w] = classes.get<std::vector<std::vector<int>>>();
    }
  }

  if (j.contains("interp")) {
    for (const auto& [pred, by_world] : j["interp"].items()) {
      auto& per_world = m.interp[pred];
      per_world.resize(nw);
      for (const auto& [name, elems] : by_world.items()) {
        int w = m.frame.world_index(name);
        if (w < 0) throw LoadError("model: interpretation for undeclared world " + name);
        for (const auto& e : elems) {
          if (!e.is_number_integer())
            throw LoadError("model: non-monadic interpretation for " + pred + " rejected");
          per_world[w].push_back({e.get<int>()});
        }
      }
    }
  }
  return m;
}

json formula_to_json(const Formula& f) {
  switch (f.kind) {
    case Kind::Atom: return {{"op", "atom"}, {"pred", f.pred}, {"args", f.args}};
    case Kind::Equal: return {{"op", "eq"}, {"args", f.args}};
    case Kind::Top: return {{"op", "top"}};
    case Kind::Bottom: return {{"op", "bottom"}};
    case Kind::Not: return {{"op", "not"}, {"arg", formula_to_json(f.children[0])}};
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: {
      const char* op = f.kind == Kind::And       ? "and"
                       : f.kind == Kind::Or      ? "or"
                       : f.kind == Kind::Implies ? "implies"
                                                 : "iff";
      return {{"op", op},
              {"lhs", formula_to_json(f.children[0])},
              {"rhs", formula_to_json(f.children[1])}};
    }
    case Kind::Forall:
    case Kind::Exists:
      return {{"op", f.kind == Kind::Forall ? "forall" : "exists"},
              {"var", f.var},
              {"body", formula_to_json(f.children[0])}};
    case Kind::Box:
    case Kind::Diamond:
      return {{"op", f.kind == Kind::Box ? "box" : "diamond"},
              {"index", f.index},
              {"body", formula_to_json(f.children[0])}};
  }
  return {};
}

json violations_to_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back({{"condition", v.condition}, {"detail", v.detail}});
  return out;
}

json verdict_to_json(const Verdict& v, const KripkeFrame& frame) {
  json j = {{"schema", 1},
            {"status", to_string(v.status)},
            {"certified", v.certified},
            {"bound_used", v.bound_used}};
  if (v.certificate) {
    j["certificate"] = {{"model", model_to_json(v.certificate->model)},
                        {"failing_world", frame.worlds[v.certificate->failing_world]}};
  }
  if (v.status != VerdictStatus::countermodel)
    j["budget"] = {{"max_size", v.budget.max_size},
                   {"models_checked", v.budget.models_checked}};
  return j;
}

}  // namespace finmok
