#include "finmok/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

namespace finmok {

using Kind = Formula::Kind;

Formula Formula::Atom(std::string pred, std::vector<std::string> args) {
  Formula f;
  f.kind = Kind::Atom;
  f.pred = std::move(pred);
  f.args = std::move(args);
  return f;
}

Formula Formula::Equal(std::string x, std::string y) {
  Formula f;
  f.kind = Kind::Equal;
  f.args = {std::move(x), std::move(y)};
  return f;
}

Formula Formula::Top() {
  Formula f;
  f.kind = Kind::Top;
  return f;
}

Formula Formula::Bottom() {
  Formula f;
  f.kind = Kind::Bottom;
  return f;
}

static Formula unary(Kind k, Formula child) {
  Formula f;
  f.kind = k;
  f.children.push_back(std::move(child));
  return f;
}

static Formula binary(Kind k, Formula l, Formula r) {
  Formula f;
  f.kind = k;
  f.children.push_back(std::move(l));
  f.children.push_back(std::move(r));
  return f;
}

Formula Formula::Not(Formula f) { return unary(Kind::Not, std::move(f)); }
Formula Formula::And(Formula l, Formula r) { return binary(Kind::And, std::move(l), std::move(r)); }
Formula Formula::Or(Formula l, Formula r) { return binary(Kind::Or, std::move(l), std::move(r)); }
Formula Formula::Implies(Formula l, Formula r) { return binary(Kind::Implies, std::move(l), std::move(r)); }
Formula Formula::Iff(Formula l, Formula r) { return binary(Kind::Iff, std::move(l), std::move(r)); }

Formula Formula::Forall(std::string var, Formula body) {
  Formula f = unary(Kind::Forall, std::move(body));
  f.var = std::move(var);
  return f;
}

Formula Formula::Exists(std::string var, Formula body) {
  Formula f = unary(Kind::Exists, std::move(body));
  f.var = std::move(var);
  return f;
}

Formula Formula::Box(int index, Formula body) {
  Formula f = unary(Kind::Box, std::move(body));
  f.index = index;
  return f;
}

Formula Formula::Diamond(int index, Formula body) {
  Formula f = unary(Kind::Diamond, std::move(body));
  f.index = index;
  return f;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  Ident,     // lowercase-initial
  Pred,      // uppercase-initial (except exactly "T"/"F")
  Int,
  LParen, RParen, LBracket, RBracket, Langle, Rangle,
  Comma, Dot, Tilde, Amp, Bar, Arrow, DArrow, Eq, Neq,
  KwForall, KwExists, KwTop, KwBottom,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto isid = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Int, s.substr(start, i - start), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && isid(s[i])) ++i;
      std::string w = s.substr(start, i - start);
      if (w == "forall") out.push_back({Tok::KwForall, w, start});
      else if (w == "exists") out.push_back({Tok::KwExists, w, start});
      else if (w == "T") out.push_back({Tok::KwTop, w, start});
      else if (w == "F") out.push_back({Tok::KwBottom, w, start});
      else if (std::isupper(static_cast<unsigned char>(w[0]))) out.push_back({Tok::Pred, w, start});
      else out.push_back({Tok::Ident, w, start});
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; break;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; break;
      case '[': out.push_back({Tok::LBracket, "[", start}); ++i; break;
      case ']': out.push_back({Tok::RBracket, "]", start}); ++i; break;
      case ',': out.push_back({Tok::Comma, ",", start}); ++i; break;
      case '.': out.push_back({Tok::Dot, ".", start}); ++i; break;
      case '~': out.push_back({Tok::Tilde, "~", start}); ++i; break;
      case '&': out.push_back({Tok::Amp, "&", start}); ++i; break;
      case '|': out.push_back({Tok::Bar, "|", start}); ++i; break;
      case '=': out.push_back({Tok::Eq, "=", start}); ++i; break;
      case '!':
        if (i + 1 < s.size() && s[i + 1] == '=') { out.push_back({Tok::Neq, "!=", start}); i += 2; break; }
        throw ParseError("unexpected character '!'", start);
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') { out.push_back({Tok::Arrow, "->", start}); i += 2; break; }
        throw ParseError("unexpected character '-'", start);
      case '<':
        if (i + 2 < s.size() && s[i + 1] == '-' && s[i + 2] == '>') {
          out.push_back({Tok::DArrow, "<->", start}); i += 3; break;
        }
        out.push_back({Tok::Langle, "<", start}); ++i; break;
      case '>': out.push_back({Tok::Rangle, ">", start}); ++i; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.  `->` is right-associative; quantifier scope
// extends maximally to the right; `&`/`|`/`<->` fold left.

class Parser {
 public:
  Parser(std::vector<Token> toks, int n) : toks_(std::move(toks)), n_(n) {}

  Formula parse() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  int n_;
  std::map<std::string, int> arities_;

  const Token& cur() const { return toks_[at_]; }
  bool accept(Tok k) {
    if (cur().kind == k) { ++at_; return true; }
    return false;
  }
  Token expect(Tok k, const std::string& what) {
    if (cur().kind != k)
      throw ParseError("expected " + what + ", got '" + cur().text + "'", cur().pos);
    return toks_[at_++];
  }

  Formula formula() {
    if (cur().kind == Tok::KwForall || cur().kind == Tok::KwExists) {
      bool uni = cur().kind == Tok::KwForall;
      ++at_;
      Token v = expect(Tok::Ident, "variable");
      expect(Tok::Dot, "'.'");
      Formula body = formula();
      return uni ? Formula::Forall(v.text, std::move(body))
                 : Formula::Exists(v.text, std::move(body));
    }
    return iff();
  }

  Formula iff() {
    Formula l = impl();
    while (accept(Tok::DArrow)) l = Formula::Iff(std::move(l), impl());
    return l;
  }

  Formula impl() {
    Formula l = disj();
    if (accept(Tok::Arrow)) return Formula::Implies(std::move(l), impl());
    return l;
  }

  Formula disj() {
    Formula l = conj();
    while (accept(Tok::Bar)) l = Formula::Or(std::move(l), conj());
    return l;
  }

  Formula conj() {
    Formula l = unaryf();
    while (accept(Tok::Amp)) l = Formula::And(std::move(l), unaryf());
    return l;
  }

  int modal_index(const Token& t) {
    int idx = std::stoi(t.text);
    if (idx < 1 || idx > n_)
      throw ParseError("index out of range: " + t.text + " (n = " + std::to_string(n_) + ")", t.pos);
    return idx;
  }

  Formula unaryf() {
    if (accept(Tok::Tilde)) return Formula::Not(unaryf());
    if (cur().kind == Tok::LBracket) {
      ++at_;
      Token t = expect(Tok::Int, "modality index");
      expect(Tok::RBracket, "']'");
      return Formula::Box(modal_index(t), unaryf());
    }
    if (cur().kind == Tok::Langle) {
      ++at_;
      Token t = expect(Tok::Int, "modality index");
      expect(Tok::Rangle, "'>'");
      return Formula::Diamond(modal_index(t), unaryf());
    }
    return atom();
  }

  Formula atom() {
    if (accept(Tok::KwTop)) return Formula::Top();
    if (accept(Tok::KwBottom)) return Formula::Bottom();
    if (cur().kind == Tok::LParen) {
      ++at_;
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (cur().kind == Tok::Pred) {
      Token p = toks_[at_++];
      expect(Tok::LParen, "'('");
      std::vector<std::string> args;
      args.push_back(expect(Tok::Ident, "variable").text);
      while (accept(Tok::Comma)) args.push_back(expect(Tok::Ident, "variable").text);
      expect(Tok::RParen, "')'");
      auto [it, fresh] = arities_.emplace(p.text, static_cast<int>(args.size()));
      if (!fresh && it->second != static_cast<int>(args.size()))
        throw ParseError("arity mismatch for " + p.text + ": " + std::to_string(args.size()) +
                             " vs earlier " + std::to_string(it->second),
                         p.pos);
      return Formula::Atom(p.text, std::move(args));
    }
    if (cur().kind == Tok::Ident) {
      Token x = toks_[at_++];
      if (accept(Tok::Eq)) {
        Token y = expect(Tok::Ident, "variable");
        return Formula::Equal(x.text, y.text);
      }
      if (accept(Tok::Neq)) {
        Token y = expect(Tok::Ident, "variable");
        return Formula::Not(Formula::Equal(x.text, y.text));
      }
      throw ParseError("expected '=' or '!=' after variable '" + x.text + "'", cur().pos);
    }
    throw ParseError("expected atom, got '" + cur().text + "'", cur().pos);
  }
};

}  // namespace

Formula parse_formula(const std::string& text, int n) {
  if (n < 1) throw ParseError("modal count must be at least 1", 0);
  return Parser(tokenize(text), n).parse();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Precedence levels used for minimal parenthesization.
// formula(0) < iff(1) < impl(2) < disj(3) < conj(4) < unary(5) < atom(6)
int level(const Formula& f) {
  switch (f.kind) {
    case Kind::Forall: case Kind::Exists: return 0;
    case Kind::Iff: return 1;
    case Kind::Implies: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    case Kind::Not: case Kind::Box: case Kind::Diamond: return 5;
    default: return 6;
  }
}

void print(const Formula& f, int min_level, std::string& out) {
  bool parens = level(f) < min_level;
  // Equality under a unary operator gets explicit parens: "~(x = y)".
  if (min_level == 6 && f.kind == Kind::Equal) parens = true;
  if (parens) out += '(';
  switch (f.kind) {
    case Kind::Atom: {
      out += f.pred;
      out += '(';
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += ", ";
        out += f.args[i];
      }
      out += ')';
      break;
    }
    case Kind::Equal:
      out += f.args[0] + " = " + f.args[1];
      break;
    case Kind::Top: out += 'T'; break;
    case Kind::Bottom: out += 'F'; break;
    case Kind::Not:
      out += '~';
      print(f.children[0], 6, out);
      break;
    case Kind::And:
      print(f.children[0], 4, out);
      out += " & ";
      print(f.children[1], 5, out);
      break;
    case Kind::Or:
      print(f.children[0], 3, out);
      out += " | ";
      print(f.children[1], 4, out);
      break;
    case Kind::Implies:
      print(f.children[0], 3, out);
      out += " -> ";
      print(f.children[1], 2, out);
      break;
    case Kind::Iff:
      print(f.children[0], 1, out);
      out += " <-> ";
      print(f.children[1], 2, out);
      break;
    case Kind::Forall:
    case Kind::Exists:
      out += f.kind == Kind::Forall ? "forall " : "exists ";
      out += f.var;
      out += ". ";
      print(f.children[0], 0, out);
      break;
    case Kind::Box:
      out += '[' + std::to_string(f.index) + "] ";
      print(f.children[0], 6, out);
      break;
    case Kind::Diamond:
      out += '<' + std::to_string(f.index) + "> ";
      print(f.children[0], 6, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Structural queries

namespace {

void free_vars_rec(const Formula& f, std::vector<std::string>& bound,
                   std::vector<std::string>& out) {
  switch (f.kind) {
    case Kind::Atom:
    case Kind::Equal:
      for (const auto& a : f.args)
        if (std::find(bound.begin(), bound.end(), a) == bound.end() &&
            std::find(out.begin(), out.end(), a) == out.end())
          out.push_back(a);
      break;
    case Kind::Forall:
    case Kind::Exists:
      bound.push_back(f.var);
      free_vars_rec(f.children[0], bound, out);
      bound.pop_back();
      break;
    default:
      for (const auto& c : f.children) free_vars_rec(c, bound, out);
  }
}

// Free variables in order of first occurrence.
std::vector<std::string> free_vars_ordered(const Formula& f) {
  std::vector<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  auto v = free_vars_ordered(f);
  return std::set<std::string>(v.begin(), v.end());
}

Formula universal_closure(const Formula& f) {
  auto vars = free_vars_ordered(f);
  Formula out = f;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    out = Formula::Forall(*it, std::move(out));
  return out;
}

namespace {

void metrics_rec(const Formula& f, Metrics& m, std::set<std::string>& letters,
                 std::set<std::string>& vars, int mdepth, int qrank) {
  m.modal_depth = std::max(m.modal_depth, mdepth);
  m.quantifier_rank = std::max(m.quantifier_rank, qrank);
  switch (f.kind) {
    case Kind::Atom:
      letters.insert(f.pred);
      for (const auto& a : f.args) vars.insert(a);
      break;
    case Kind::Equal:
      for (const auto& a : f.args) vars.insert(a);
      break;
    case Kind::Forall:
    case Kind::Exists:
      vars.insert(f.var);
      metrics_rec(f.children[0], m, letters, vars, mdepth, qrank + 1);
      break;
    case Kind::Box:
    case Kind::Diamond:
      m.modal_indices_used.insert(f.index);
      metrics_rec(f.children[0], m, letters, vars, mdepth + 1, qrank);
      break;
    default:
      for (const auto& c : f.children) metrics_rec(c, m, letters, vars, mdepth, qrank);
  }
}

}  // namespace

Metrics metrics(const Formula& f) {
  Metrics m;
  std::set<std::string> letters, vars;
  metrics_rec(f, m, letters, vars, 0, 0);
  m.letters = static_cast<int>(letters.size());
  m.variables = static_cast<int>(vars.size());
  return m;
}

namespace {

void collect_letters_rec(const Formula& f, std::map<std::string, int>& out) {
  if (f.kind == Kind::Atom) out.emplace(f.pred, static_cast<int>(f.args.size()));
  for (const auto& c : f.children) collect_letters_rec(c, out);
}

}  // namespace

std::vector<Letter> collect_letters(const Formula& f) {
  std::map<std::string, int> m;
  collect_letters_rec(f, m);
  std::vector<Letter> out;
  for (const auto& [name, arity] : m) out.push_back({name, arity});
  return out;
}

bool contains_equality(const Formula& f) {
  if (f.kind == Kind::Equal) return true;
  for (const auto& c : f.children)
    if (contains_equality(c)) return true;
  return false;
}

MonadicClass check_monadic(const Formula& f) {
  for (const auto& l : collect_letters(f))
    if (l.arity != 1) return MonadicClass::non_monadic;
  return contains_equality(f) ? MonadicClass::monadic_with_equality
                              : MonadicClass::monadic_without_equality;
}

}  // namespace finmok
