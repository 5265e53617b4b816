#ifndef FINMOK_DECIDE_HPP
#define FINMOK_DECIDE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "finmok/modelcheck.hpp"
#include "finmok/semantics.hpp"
#include "finmok/syntax.hpp"

namespace finmok {

struct Modes {
  DomainMode domain = DomainMode::expanding;
  EqualityMode equality = EqualityMode::congruence;
};

struct Certificate {
  AugmentedModel model;
  int failing_world = 0;
};

enum class VerdictStatus { valid, countermodel, unknown };

std::string to_string(VerdictStatus s);

struct SearchBudget {
  int max_size = 0;
  std::int64_t models_checked = 0;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::unknown;
  std::int64_t bound_used = 0;
  bool certified = false;
  std::optional<Certificate> certificate;
  SearchBudget budget;
};

struct NonMonadicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Default per-world domain-size bound for the monadic fragment:
//   B = max(v, 1) * 2^((k+1) * m)
// with k distinct letters, v distinct variables, m worlds.  Saturates at
// INT64_MAX.  Throws NonMonadicError on non-monadic input.
std::int64_t domain_bound(const Formula& f, const KripkeFrame& frame);

// Visits every model over `frame` with the given per-world domain sizes
// (domains are the initial segments {0, ..., size-1}), all interpretations
// of `letters`, and all equivalence partitions admitted by the modes.
// Canonical order: interpretation bitvectors numerically, then partitions in
// restricted-growth-string order, world-major.  Return false to stop.
// Throws std::invalid_argument on an (E)/(C)-infeasible size profile.
void for_each_model(const KripkeFrame& frame, const std::vector<int>& sizes,
                    const std::vector<Letter>& letters, Modes modes,
                    const std::function<bool(const AugmentedModel&)>& visit);

// Materializing variant for tests and small spaces.
std::vector<AugmentedModel> enumerate_models(const KripkeFrame& frame,
                                             const std::vector<int>& sizes,
                                             const std::vector<Letter>& letters,
                                             Modes modes);

// Feasible size profiles with entries in 1..max_size, ordered by total size
// then lexicographically.
std::vector<std::vector<int>> size_profiles(const KripkeFrame& frame, Modes modes,
                                            int max_size);

// Searches for a countermodel of `f` over `frame` with per-world domains of
// size at most max_size.  Returns the canonically least countermodel with
// its least failing world, or an `unknown` verdict.  Never returns `valid`.
Verdict refute(const KripkeFrame& frame, const Formula& f, Modes modes, int max_size);

// Exhausts the search up to the domain bound (or `bound_override`) and
// returns `valid` when no countermodel exists.  The verdict is certified
// only when the search reached the default bound.  Throws NonMonadicError
// for non-monadic input.
Verdict decide_validity(const KripkeFrame& frame, const Formula& f, Modes modes,
                        std::optional<std::int64_t> bound_override = std::nullopt,
                        bool force_uncertified = false);

// Re-checks a countermodel certificate using only the semantics validators
// and the model checker; independent of the search path above.
bool verify_certificate(const Certificate& cert, const KripkeFrame& frame,
                        const Formula& f, Modes modes);

}  // namespace finmok

#endif
