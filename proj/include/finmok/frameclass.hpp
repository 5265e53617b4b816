#ifndef FINMOK_FRAMECLASS_HPP
#define FINMOK_FRAMECLASS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "finmok/decide.hpp"
#include "finmok/semantics.hpp"

namespace finmok {

enum class PredKind { reflexive, transitive, symmetric, serial, linear, branching_at_most };

struct FramePredicate {
  PredKind kind;
  int k = 1;  // relation index
  int m = 0;  // branching_at_most only
  bool operator==(const FramePredicate&) const = default;
};

// Conjunction of decidable per-relation frame predicates.
struct FrameClassSpec {
  int n = 1;
  std::vector<FramePredicate> predicates;

  // Text form: comma-separated entries like "reflexive(1)" or
  // "branching<=2(1)".  Empty text means the class of all n-frames.
  static FrameClassSpec parse(const std::string& text, int n);
  std::string to_string() const;
};

bool check_predicates(const KripkeFrame& frame, const FrameClassSpec& spec);

// Labeled frames on worlds {w0, ..., w(s-1)} for s = 1..max_worlds, in size
// order then numeric order of the relation bitvector, filtered by the spec.
std::vector<KripkeFrame> enumerate_frames(const FrameClassSpec& spec, int max_worlds);
std::vector<KripkeFrame> enumerate_frames_of_size(const FrameClassSpec& spec, int s);
void for_each_frame(const FrameClassSpec& spec, int max_worlds,
                    const std::function<bool(const KripkeFrame&)>& visit);

// Restriction of worlds and all relations to a non-empty subset of world
// indices.  Throws std::invalid_argument on an empty subset.
KripkeFrame subframe(const KripkeFrame& frame, const std::vector<int>& subset);

struct ClassVerdict {
  VerdictStatus status = VerdictStatus::unknown;
  std::optional<KripkeFrame> frame;
  std::optional<Certificate> certificate;
  std::int64_t frames_checked = 0;
  SearchBudget budget;
  int max_worlds = 0;
};

// Interleaved countermodel search over the class: iterates the enumerated
// frames and refutes over each with the given domain budget.  Sound; returns
// `unknown` when the budget is exhausted.
ClassVerdict class_refute(const FrameClassSpec& spec, const Formula& f, Modes modes,
                          int max_worlds, int max_size);

}  // namespace finmok

#endif
