#ifndef FINMOK_SEMANTICS_HPP
#define FINMOK_SEMANTICS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace finmok {

// Finite Kripke n-frame: worlds in declaration order, one relation per
// modality index 1..n.  Call rebuild_index() after mutating relations.
struct KripkeFrame {
  int n = 1;
  std::vector<std::string> worlds;
  // relations[k-1] holds the ordered pairs (w, v) of world indices for R_k.
  std::vector<std::vector<std::pair<int, int>>> relations;

  int world_index(const std::string& name) const;
  // Successor list R_k(w), k in 1..n; cached by rebuild_index().
  const std::vector<int>& successors(int k, int w) const;
  void rebuild_index();

  bool operator==(const KripkeFrame& o) const {
    return n == o.n && worlds == o.worlds && relations == o.relations;
  }

 private:
  std::vector<std::vector<std::vector<int>>> succ_;  // [k-1][w]
};

enum class DomainMode { expanding, locally_constant };
enum class EqualityMode { congruence, identity, none };

std::string to_string(DomainMode m);
std::string to_string(EqualityMode m);

// Interpretation of one letter at each world: a set of argument tuples.
using TupleSet = std::vector<std::vector<int>>;

struct AugmentedModel {
  KripkeFrame frame;
  std::vector<std::vector<int>> domains;  // per world, sorted element ids
  // Per-world partition of the domain into equivalence classes; empty when
  // equality_mode == none.
  std::vector<std::vector<std::vector<int>>> equiv;
  std::map<std::string, std::vector<TupleSet>> interp;  // letter -> per world
  DomainMode domain_mode = DomainMode::expanding;
  EqualityMode equality_mode = EqualityMode::congruence;

  bool in_domain(int w, int e) const;
  // a ==_w b; identity and no-equality modes compare element ids.
  bool equivalent(int w, int a, int b) const;
  // Tuple membership in I_w(pred); absent letters denote the empty set.
  bool holds(const std::string& pred, int w, const std::vector<int>& tuple) const;
};

struct Violation {
  std::string condition;  // "frame", "E", "C", "H", "equivalence", "congruence", ...
  std::string detail;
  bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate_frame(const KripkeFrame& frame);

// Checks every structural condition of the declared modes; returns all
// violations rather than stopping at the first.
std::vector<Violation> validate_model(const AugmentedModel& m);

// Replaces every ==_w with the identity relation and switches the model to
// identity mode.  Idempotent.
AugmentedModel make_identity_equality(const AugmentedModel& m);

}  // namespace finmok

#endif
