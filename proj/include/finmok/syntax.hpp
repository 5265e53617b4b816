#ifndef FINMOK_SYNTAX_HPP
#define FINMOK_SYNTAX_HPP

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace finmok {

// AST for the n-modal predicate languages, with a designated binary `=`.
// Nodes are plain values; copying is deep.
struct Formula {
  enum class Kind {
    Atom,     // pred(args...)
    Equal,    // args[0] = args[1]
    Top,
    Bottom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Forall,   // var bound in children[0]
    Exists,
    Box,      // index in 1..n
    Diamond,
  };

  Kind kind = Kind::Top;
  std::string pred;                // Atom
  std::vector<std::string> args;   // Atom, Equal
  std::string var;                 // Forall, Exists
  int index = 0;                   // Box, Diamond
  std::vector<Formula> children;

  bool operator==(const Formula&) const = default;

  static Formula Atom(std::string pred, std::vector<std::string> args);
  static Formula Equal(std::string x, std::string y);
  static Formula Top();
  static Formula Bottom();
  static Formula Not(Formula f);
  static Formula And(Formula l, Formula r);
  static Formula Or(Formula l, Formula r);
  static Formula Implies(Formula l, Formula r);
  static Formula Iff(Formula l, Formula r);
  static Formula Forall(std::string var, Formula body);
  static Formula Exists(std::string var, Formula body);
  static Formula Box(int index, Formula body);
  static Formula Diamond(int index, Formula body);
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg), position(position) {}
  std::size_t position;  // byte offset into the input text
};

// Parses the ASCII grammar (see README). Rejects modality indices > n and
// inconsistent arities for the same letter.
Formula parse_formula(const std::string& text, int n);

// Fixed-point printer: parse_formula(print_formula(f), n) == f.
std::string print_formula(const Formula& f);

std::set<std::string> free_vars(const Formula& f);

// Prefixes a universal quantifier per free variable, outermost first in
// order of first occurrence. Idempotent on closed formulas.
Formula universal_closure(const Formula& f);

struct Metrics {
  int letters = 0;          // distinct non-equality predicate letters
  int variables = 0;        // distinct variable names, free or bound
  int modal_depth = 0;
  int quantifier_rank = 0;
  std::set<int> modal_indices_used;

  bool operator==(const Metrics&) const = default;
};

Metrics metrics(const Formula& f);

enum class MonadicClass {
  monadic_with_equality,
  monadic_without_equality,
  non_monadic,
};

MonadicClass check_monadic(const Formula& f);

bool contains_equality(const Formula& f);

// Distinct predicate letters with their arities, sorted by name.
struct Letter {
  std::string name;
  int arity = 1;
  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;
};
std::vector<Letter> collect_letters(const Formula& f);

}  // namespace finmok

#endif
