#include "bunchkit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace bunchkit {

std::string_view op_name(Op op) {
  switch (op) {
    case Op::Atom: return "atom";
    case Op::Top: return "top";
    case Op::Bot: return "bot";
    case Op::MUnit: return "munit";
    case Op::MBot: return "mbot";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Imp: return "imp";
    case Op::Star: return "star";
    case Op::Wand: return "wand";
    case Op::Dnaw: return "dnaw";
    case Op::MNeg: return "mneg";
    case Op::MOr: return "mor";
    case Op::RSlash: return "rslash";
    case Op::Seq: return "seq";
    case Op::RSeq: return "rseq";
    case Op::LSeq: return "lseq";
    case Op::Dia: return "diamond";
    case Op::Box: return "box";
    case Op::Not: return "not";
    case Op::DiaSub: return "diamond_sub";
    case Op::Eq: return "eq";
    case Op::PointsTo: return "pointsto";
    case Op::Exists: return "exists";
    case Op::Forall: return "forall";
  }
  return "?";
}

int op_arity(Op op) {
  switch (op) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
    case Op::MUnit:
    case Op::MBot:
    case Op::Eq:
    case Op::PointsTo: return 0;
    case Op::MNeg:
    case Op::Dia:
    case Op::Box:
    case Op::Not:
    case Op::Exists:
    case Op::Forall: return 1;
    default: return 2;
  }
}

namespace {
Formula make(Op op) {
  auto n = std::make_shared<Node>();
  n->op = op;
  return n;
}
}  // namespace

Formula atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Atom;
  n->name = std::move(name);
  return n;
}
Formula top() { return make(Op::Top); }
Formula bot() { return make(Op::Bot); }
Formula munit() { return make(Op::MUnit); }
Formula mbot() { return make(Op::MBot); }

Formula unary(Op op, Formula a) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  return n;
}

Formula binary(Op op, Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Formula term_atom(Op op, Term t1, Term t2) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->t1 = std::move(t1);
  n->t2 = std::move(t2);
  return n;
}

Formula quant(Op op, std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->name = std::move(var);
  n->a = std::move(body);
  return n;
}

bool equal(const Formula& x, const Formula& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->op != y->op || x->name != y->name) return false;
  if (x->op == Op::Eq || x->op == Op::PointsTo) return x->t1 == y->t1 && x->t2 == y->t2;
  return equal(x->a, y->a) && equal(x->b, y->b);
}

std::size_t formula_size(const Formula& f) {
  if (!f) return 0;
  return 1 + formula_size(f->a) + formula_size(f->b);
}

int formula_depth(const Formula& f) {
  if (!f) return 0;
  if (!f->a) return 0;
  return 1 + std::max(formula_depth(f->a), f->b ? formula_depth(f->b) : 0);
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (!g) return;
    if (g->op == Op::Atom) out.insert(g->name);
    go(g->a);
    go(g->b);
  };
  go(f);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&, std::vector<std::string>&)> go = [&](const Formula& g,
                                                                         std::vector<std::string>& bound) {
    if (!g) return;
    auto add = [&](const Term& t) {
      if (t.is_var && std::find(bound.begin(), bound.end(), t.var) == bound.end()) out.insert(t.var);
    };
    if (g->op == Op::Eq || g->op == Op::PointsTo) {
      add(g->t1);
      add(g->t2);
      return;
    }
    if (g->op == Op::Exists || g->op == Op::Forall) {
      bound.push_back(g->name);
      go(g->a, bound);
      bound.pop_back();
      return;
    }
    go(g->a, bound);
    go(g->b, bound);
  };
  std::vector<std::string> bound;
  go(f, bound);
  return out;
}

// ---------------------------------------------------------------- lexer

namespace {

enum class Tok {
  End, Ident, Int, LParen, RParen, Dot,
  Top, Bot, Emp, Mbot, Mnot, Mor, Rslash, Exists, Forall,
  And, Or, Imp, Star, Wand, Dnaw, Seq, RSeq, LSeq,
  Dia, Box, Bang, Lt, Gt, PointsTo, Eq, Turnstile,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  static const std::pair<std::string_view, Tok> kSymbols[] = {
      {"|->", Tok::PointsTo}, {"|-", Tok::Turnstile}, {"->", Tok::Imp}, {"-*", Tok::Wand},
      {"*-", Tok::Dnaw},      {"-;", Tok::RSeq},      {";-", Tok::LSeq}, {"/\\", Tok::And},
      {"\\/", Tok::Or},       {"<>", Tok::Dia},       {"[]", Tok::Box},  {"*", Tok::Star},
      {";", Tok::Seq},        {"!", Tok::Bang},       {"<", Tok::Lt},    {">", Tok::Gt},
      {"(", Tok::LParen},     {")", Tok::RParen},     {".", Tok::Dot},   {"=", Tok::Eq},
  };
  static const std::pair<std::string_view, Tok> kWords[] = {
      {"top", Tok::Top},       {"bot", Tok::Bot},       {"emp", Tok::Emp},       {"mbot", Tok::Mbot},
      {"mnot", Tok::Mnot},     {"mor", Tok::Mor},       {"rslash", Tok::Rslash}, {"exists", Tok::Exists},
      {"forall", Tok::Forall},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      std::string w(s.substr(i, j - i));
      Tok k = Tok::Ident;
      for (auto& [kw, t] : kWords)
        if (kw == w) k = t;
      out.push_back({k, w, i});
      i = j;
      continue;
    }
    bool negative = c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]));
    if (negative || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = negative ? i + 1 : i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (auto& [sym, t] : kSymbols) {
      if (s.substr(i, sym.size()) == sym) {
        out.push_back({t, std::string(sym), i});
        i += sym.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : toks_(lex(s)) {}

  Formula formula() {
    if (peek().kind == Tok::Exists || peek().kind == Tok::Forall) {
      Op op = next().kind == Tok::Exists ? Op::Exists : Op::Forall;
      const Token& v = expect(Tok::Ident, "variable");
      std::string var = v.text;
      expect(Tok::Dot, "'.'");
      return quant(op, var, formula());
    }
    return level1();
  }

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
    return next();
  }

 private:
  Formula level1() {
    Formula lhs = level2();
    Op op;
    switch (peek().kind) {
      case Tok::Imp: op = Op::Imp; break;
      case Tok::Wand: op = Op::Wand; break;
      case Tok::Dnaw: op = Op::Dnaw; break;
      case Tok::RSeq: op = Op::RSeq; break;
      case Tok::LSeq: op = Op::LSeq; break;
      case Tok::Rslash: op = Op::RSlash; break;
      default: return lhs;
    }
    next();
    return binary(op, lhs, level1());
  }

  Formula level2() {
    Formula lhs = level3();
    for (;;) {
      Op op;
      if (peek().kind == Tok::Or) op = Op::Or;
      else if (peek().kind == Tok::Mor) op = Op::MOr;
      else return lhs;
      next();
      lhs = binary(op, lhs, level3());
    }
  }

  Formula level3() {
    Formula lhs = level4();
    while (peek().kind == Tok::And) {
      next();
      lhs = binary(Op::And, lhs, level4());
    }
    return lhs;
  }

  Formula level4() {
    Formula lhs = level5();
    for (;;) {
      Op op;
      if (peek().kind == Tok::Star) op = Op::Star;
      else if (peek().kind == Tok::Seq) op = Op::Seq;
      else return lhs;
      next();
      lhs = binary(op, lhs, level5());
    }
  }

  Formula level5() {
    switch (peek().kind) {
      case Tok::Bang: next(); return unary(Op::Not, level5());
      case Tok::Mnot: next(); return unary(Op::MNeg, level5());
      case Tok::Dia: next(); return unary(Op::Dia, level5());
      case Tok::Box: next(); return unary(Op::Box, level5());
      case Tok::Lt: {
        next();
        expect(Tok::LParen, "'(' after '<'");
        Formula sub = formula();
        expect(Tok::RParen, "')'");
        expect(Tok::Gt, "'>'");
        return binary(Op::DiaSub, sub, level5());
      }
      default: return primary();
    }
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) return Term::variable(next().text);
    if (t.kind == Tok::Int) return Term::constant(std::stoll(next().text));
    throw ParseError("expected term", t.pos);
  }

  Formula primary() {
    const Token& t = peek();
    if ((t.kind == Tok::Ident || t.kind == Tok::Int) &&
        (peek(1).kind == Tok::PointsTo || peek(1).kind == Tok::Eq)) {
      Term a = term();
      Op op = next().kind == Tok::PointsTo ? Op::PointsTo : Op::Eq;
      Term b = term();
      return term_atom(op, a, b);
    }
    switch (t.kind) {
      case Tok::Ident: return atom(next().text);
      case Tok::Top: next(); return top();
      case Tok::Bot: next(); return bot();
      case Tok::Emp: next(); return munit();
      case Tok::Mbot: next(); return mbot();
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::End: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

Formula parse_unchecked(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  if (p.peek().kind != Tok::End) throw ParseError("trailing input '" + p.peek().text + "'", p.peek().pos);
  return f;
}

Formula parse_formula(std::string_view text, const Logic& logic) {
  Formula f = parse_unchecked(text);
  check_signature(f, logic);
  return f;
}

Sequent parse_sequent_unchecked(std::string_view text) {
  // Split on the top-level turnstile; "|-" never occurs inside a formula token.
  std::size_t pos = std::string_view::npos;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] == '|' && text[i + 1] == '-' && !(i + 2 < text.size() && text[i + 2] == '>')) {
      if (pos != std::string_view::npos) throw ParseError("more than one '|-'", i);
      pos = i;
    }
  }
  if (pos == std::string_view::npos) throw ParseError("expected '|-'", text.size());
  Sequent s;
  try {
    s.lhs = parse_unchecked(text.substr(0, pos));
  } catch (const ParseError& e) {
    throw ParseError(std::string("left side: ") + e.what(), e.position);
  }
  try {
    s.rhs = parse_unchecked(text.substr(pos + 2));
  } catch (const ParseError& e) {
    throw ParseError(std::string("right side: ") + e.what(), pos + 2 + e.position);
  }
  return s;
}

Sequent parse_sequent(std::string_view text, const Logic& logic) {
  Sequent s = parse_sequent_unchecked(text);
  check_signature(s.lhs, logic);
  check_signature(s.rhs, logic);
  return s;
}

// ---------------------------------------------------------------- printer

namespace {

int level(Op op) {
  switch (op) {
    case Op::Exists:
    case Op::Forall: return 0;
    case Op::Imp:
    case Op::Wand:
    case Op::Dnaw:
    case Op::RSeq:
    case Op::LSeq:
    case Op::RSlash: return 1;
    case Op::Or:
    case Op::MOr: return 2;
    case Op::And: return 3;
    case Op::Star:
    case Op::Seq: return 4;
    case Op::Not:
    case Op::MNeg:
    case Op::Dia:
    case Op::Box:
    case Op::DiaSub: return 5;
    default: return 6;
  }
}

std::string_view symbol(Op op) {
  switch (op) {
    case Op::And: return "/\\";
    case Op::Or: return "\\/";
    case Op::Imp: return "->";
    case Op::Star: return "*";
    case Op::Wand: return "-*";
    case Op::Dnaw: return "*-";
    case Op::MOr: return "mor";
    case Op::RSlash: return "rslash";
    case Op::Seq: return ";";
    case Op::RSeq: return "-;";
    case Op::LSeq: return ";-";
    case Op::Not: return "!";
    case Op::MNeg: return "mnot ";
    case Op::Dia: return "<>";
    case Op::Box: return "[]";
    default: return "?";
  }
}

std::string print_term(const Term& t) { return t.is_var ? t.var : std::to_string(t.value); }

void print(const Formula& f, std::string& out);

void print_child(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print(f, out);
  if (parens) out += ')';
}

void print(const Formula& f, std::string& out) {
  int L = level(f->op);
  switch (f->op) {
    case Op::Atom: out += f->name; return;
    case Op::Top: out += "top"; return;
    case Op::Bot: out += "bot"; return;
    case Op::MUnit: out += "emp"; return;
    case Op::MBot: out += "mbot"; return;
    case Op::Eq: out += print_term(f->t1) + " = " + print_term(f->t2); return;
    case Op::PointsTo: out += print_term(f->t1) + " |-> " + print_term(f->t2); return;
    case Op::Exists:
    case Op::Forall:
      out += f->op == Op::Exists ? "exists " : "forall ";
      out += f->name + ". ";
      print(f->a, out);
      return;
    case Op::Not:
    case Op::MNeg:
    case Op::Dia:
    case Op::Box:
      out += symbol(f->op);
      print_child(f->a, level(f->a->op) < 5, out);
      return;
    case Op::DiaSub:
      out += "<(";
      print(f->a, out);
      out += ")> ";
      print_child(f->b, level(f->b->op) < 5, out);
      return;
    default: break;
  }
  bool right_assoc = L == 1;
  int la = level(f->a->op), lb = level(f->b->op);
  print_child(f->a, right_assoc ? la <= L : la < L, out);
  out += ' ';
  out += symbol(f->op);
  out += ' ';
  print_child(f->b, right_assoc ? lb < L : lb <= L, out);
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string print_sequent(const Sequent& s) { return print_formula(s.lhs) + " |- " + print_formula(s.rhs); }

// ---------------------------------------------------------------- signatures

bool admits(const Logic& logic, Op op) {
  Kind k = logic.kind;
  switch (op) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
    case Op::And:
    case Op::Or:
    case Op::Imp:
    case Op::Star:
    case Op::Wand:
    case Op::Not: return true;
    case Op::Dnaw: return !is_commutative(k);
    case Op::MUnit: return has_unit(k);
    case Op::MNeg: return is_dm(k);
    case Op::MOr:
    case Op::MBot: return is_dm(k) || is_bi_bi(k);
    case Op::RSlash: return is_bi_bi(k);
    case Op::Seq:
    case Op::RSeq:
    case Op::LSeq: return k == Kind::CKBI;
    case Op::Dia:
    case Op::Box:
    case Op::DiaSub: return k == Kind::SML;
    case Op::Eq:
    case Op::PointsTo:
    case Op::Exists:
    case Op::Forall: return logic.fo;
  }
  return false;
}

bool is_sugar(const Logic& logic, Op op) {
  switch (op) {
    case Op::Not:
    case Op::Box:
    case Op::DiaSub: return admits(logic, op);
    case Op::MOr:
    case Op::MBot: return is_dm(logic.kind);
    default: return false;
  }
}

void check_signature(const Formula& f, const Logic& logic) {
  if (!f) return;
  if (!admits(logic, f->op))
    throw SignatureError("connective '" + std::string(op_name(f->op)) + "' is not in the signature of " +
                         logic_name(logic));
  check_signature(f->a, logic);
  check_signature(f->b, logic);
}

Formula expand_defined(const Formula& f, const Logic& logic) {
  if (!f) return f;
  auto ex = [&](const Formula& g) { return expand_defined(g, logic); };
  auto not_ = [](Formula g) { return imp(std::move(g), bot()); };
  switch (f->op) {
    case Op::Not: return not_(ex(f->a));
    case Op::Box: return not_(unary(Op::Dia, not_(ex(f->a))));
    case Op::DiaSub: return not_(wand(ex(f->a), not_(unary(Op::Dia, ex(f->b)))));
    case Op::MBot:
      if (is_dm(logic.kind)) return unary(Op::MNeg, munit());
      return f;
    case Op::MOr:
      if (is_dm(logic.kind))
        return unary(Op::MNeg, star(unary(Op::MNeg, ex(f->a)), unary(Op::MNeg, ex(f->b))));
      return binary(Op::MOr, ex(f->a), ex(f->b));
    default: break;
  }
  if (!f->a) return f;
  if (f->op == Op::Exists || f->op == Op::Forall) return quant(f->op, f->name, ex(f->a));
  if (!f->b) return unary(f->op, ex(f->a));
  return binary(f->op, ex(f->a), ex(f->b));
}

}  // namespace bunchkit
