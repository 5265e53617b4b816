#ifndef FINMOK_MODELCHECK_HPP
#define FINMOK_MODELCHECK_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "finmok/semantics.hpp"
#include "finmok/syntax.hpp"

namespace finmok {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Assignment = std::map<std::string, int>;

// Truth at a world under an assignment.  Every free variable of `f` must be
// assigned to an element of D_w; boxes evaluate the inherited assignment at
// successors, which stays in-domain by (E).
bool satisfies(const AugmentedModel& m, int world, const Formula& f,
               const Assignment& assignment);

// Truth of the universal closure at a world.
bool true_at(const AugmentedModel& m, int world, const Formula& f);

bool true_in_model(const AugmentedModel& m, const Formula& f);

// Least world (in declaration order) where the closure fails, if any.
std::optional<int> find_failure(const AugmentedModel& m, const Formula& f);

}  // namespace finmok

#endif
