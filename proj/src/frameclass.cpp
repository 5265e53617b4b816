#include "finmok/frameclass.hpp"

#include <algorithm>
#include <stdexcept>

namespace finmok {

namespace {

std::string pred_name(PredKind k) {
  switch (k) {
    case PredKind::reflexive: return "reflexive";
    case PredKind::transitive: return "transitive";
    case PredKind::symmetric: return "symmetric";
    case PredKind::serial: return "serial";
    case PredKind::linear: return "linear";
    default: return "branching";
  }
}

}  // namespace

FrameClassSpec FrameClassSpec::parse(const std::string& text, int n) {
  FrameClassSpec spec;
  spec.n = n;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("frame class spec: " + msg);
  };
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    pos = end + 1;
    if (item.empty()) continue;

    FramePredicate p;
    std::size_t open = item.find('(');
    if (open == std::string::npos || item.back() != ')') fail("malformed entry '" + item + "'");
    std::string name = item.substr(0, open);
    std::string arg = item.substr(open + 1, item.size() - open - 2);
    try {
      p.k = std::stoi(arg);
    } catch (...) {
      fail("bad relation index in '" + item + "'");
    }
    if (p.k < 1 || p.k > n) fail("relation index out of range in '" + item + "'");

    if (name == "reflexive") p.kind = PredKind::reflexive;
    else if (name == "transitive") p.kind = PredKind::transitive;
    else if (name == "symmetric") p.kind = PredKind::symmetric;
    else if (name == "serial") p.kind = PredKind::serial;
    else if (name == "linear") p.kind = PredKind::linear;
    else if (name.rfind("branching<=", 0) == 0) {
      p.kind = PredKind::branching_at_most;
      try {
        p.m = std::stoi(name.substr(11));
      } catch (...) {
        fail("bad branching limit in '" + item + "'");
      }
      if (p.m < 0) fail("negative branching limit");
    } else {
      fail("unknown predicate '" + name + "'");
    }
    spec.predicates.push_back(p);
  }
  return spec;
}

std::string FrameClassSpec::to_string() const {
  std::string out;
  for (const auto& p : predicates) {
    if (!out.empty()) out += ',';
    if (p.kind == PredKind::branching_at_most)
      out += "branching<=" + std::to_string(p.m);
    else
      out += pred_name(p.kind);
    out += '(' + std::to_string(p.k) + ')';
  }
  return out;
}

bool check_predicates(const KripkeFrame& frame, const FrameClassSpec& spec) {
  if (frame.n != spec.n)
    throw std::invalid_argument("check_predicates: modal count mismatch");
  int nw = static_cast<int>(frame.worlds.size());
  auto has = [&](int k, int w, int v) {
    const auto& rel = frame.relations[k - 1];
    return std::find(rel.begin(), rel.end(), std::make_pair(w, v)) != rel.end();
  };
  for (const auto& p : spec.predicates) {
    switch (p.kind) {
      case PredKind::reflexive:
        for (int w = 0; w < nw; ++w)
          if (!has(p.k, w, w)) return false;
        break;
      case PredKind::transitive:
        for (const auto& [w, v] : frame.relations[p.k - 1])
          for (const auto& [v2, u] : frame.relations[p.k - 1])
            if (v == v2 && !has(p.k, w, u)) return false;
        break;
      case PredKind::symmetric:
        for (const auto& [w, v] : frame.relations[p.k - 1])
          if (!has(p.k, v, w)) return false;
        break;
      case PredKind::serial:
        for (int w = 0; w < nw; ++w) {
          bool any = false;
          for (int v = 0; v < nw && !any; ++v) any = has(p.k, w, v);
          if (!any) return false;
        }
        break;
      case PredKind::linear:
        // Trichotomy: any two distinct worlds are comparable.
        for (int w = 0; w < nw; ++w)
          for (int v = w + 1; v < nw; ++v)
            if (!has(p.k, w, v) && !has(p.k, v, w)) return false;
        break;
      case PredKind::branching_at_most:
        for (int w = 0; w < nw; ++w) {
          int count = 0;
          for (int v = 0; v < nw; ++v)
            if (has(p.k, w, v)) ++count;
          if (count > p.m) return false;
        }
        break;
    }
  }
  return true;
}

void for_each_frame(const FrameClassSpec& spec, int max_worlds,
                    const std::function<bool(const KripkeFrame&)>& visit) {
  if (max_worlds < 1) throw std::invalid_argument("max_worlds must be at least 1");
  for (int s = 1; s <= max_worlds; ++s) {
    int bits = spec.n * s * s;
    if (bits > 30) throw std::runtime_error("frame space too large; lower --max-worlds");
    KripkeFrame frame;
    frame.n = spec.n;
    for (int i = 0; i < s; ++i) frame.worlds.push_back("w" + std::to_string(i));
    // Bit ((k-1)*s + i)*s + j of the mask puts (wi, wj) into R_k.
    for (std::int64_t mask = 0; mask < (std::int64_t{1} << bits); ++mask) {
      frame.relations.assign(spec.n, {});
      for (int b = 0; b < bits; ++b)
        if (mask >> b & 1) {
          int j = b % s, i = (b / s) % s, k = b / (s * s);
          frame.relations[k].emplace_back(i, j);
        }
      for (auto& rel : frame.relations) std::sort(rel.begin(), rel.end());
      if (!check_predicates(frame, spec)) continue;
      frame.rebuild_index();
      if (!visit(frame)) return;
    }
  }
}

std::vector<KripkeFrame> enumerate_frames(const FrameClassSpec& spec, int max_worlds) {
  std::vector<KripkeFrame> out;
  for_each_frame(spec, max_worlds, [&](const KripkeFrame& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::vector<KripkeFrame> enumerate_frames_of_size(const FrameClassSpec& spec, int s) {
  std::vector<KripkeFrame> out;
  for_each_frame(spec, s, [&](const KripkeFrame& f) {
    if (static_cast<int>(f.worlds.size()) == s) out.push_back(f);
    return true;
  });
  return out;
}

KripkeFrame subframe(const KripkeFrame& frame, const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("subframe: empty world subset");
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  KripkeFrame out;
  out.n = frame.n;
  std::vector<int> remap(frame.worlds.size(), -1);
  for (int w : sorted) {
    if (w < 0 || w >= static_cast<int>(frame.worlds.size()))
      throw std::invalid_argument("subframe: world index out of range");
    remap[w] = static_cast<int>(out.worlds.size());
    out.worlds.push_back(frame.worlds[w]);
  }
  out.relations.resize(frame.n);
  for (int k = 0; k < frame.n; ++k)
    for (const auto& [w, v] : frame.relations[k])
      if (remap[w] >= 0 && remap[v] >= 0)
        out.relations[k].emplace_back(remap[w], remap[v]);
  out.rebuild_index();
  return out;
}

ClassVerdict class_refute(const FrameClassSpec& spec, const Formula& f, Modes modes,
                          int max_worlds, int max_size) {
  ClassVerdict out;
  out.budget.max_size = max_size;
  out.max_worlds = max_worlds;
  for_each_frame(spec, max_worlds, [&](const KripkeFrame& frame) {
    ++out.frames_checked;
    Verdict v = refute(frame, f, modes, max_size);
    out.budget.models_checked += v.budget.models_checked;
    if (v.status == VerdictStatus::countermodel) {
      out.status = VerdictStatus::countermodel;
      out.frame = frame;
      out.certificate = v.certificate;
      return false;
    }
    return true;
  });
  return out;
}

}  // namespace finmok
