#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bunchkit/logic.hpp"

namespace bunchkit {

enum class Op {
  Atom, Top, Bot, MUnit, MBot,
  And, Or, Imp,
  Star, Wand, Dnaw,
  MNeg, MOr, RSlash,
  Seq, RSeq, LSeq,
  Dia, Box, Not, DiaSub,
  Eq, PointsTo, Exists, Forall,
};

std::string_view op_name(Op op);
int op_arity(Op op);  // number of formula children

// Terms of the pointer fragment: a variable or an integer constant.
struct Term {
  bool is_var = true;
  std::string var;
  int64_t value = 0;

  static Term variable(std::string v) { return Term{true, std::move(v), 0}; }
  static Term constant(int64_t c) { return Term{false, {}, c}; }
  friend bool operator==(const Term&, const Term&) = default;
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Op op;
  std::string name;  // atom name, or bound variable for quantifiers
  Formula a, b;
  Term t1, t2;
};

Formula atom(std::string name);
Formula top();
Formula bot();
Formula munit();
Formula mbot();
Formula unary(Op op, Formula a);
Formula binary(Op op, Formula a, Formula b);
Formula term_atom(Op op, Term t1, Term t2);  // Eq or PointsTo
Formula quant(Op op, std::string var, Formula body);

inline Formula conj(Formula a, Formula b) { return binary(Op::And, std::move(a), std::move(b)); }
inline Formula disj(Formula a, Formula b) { return binary(Op::Or, std::move(a), std::move(b)); }
inline Formula imp(Formula a, Formula b) { return binary(Op::Imp, std::move(a), std::move(b)); }
inline Formula star(Formula a, Formula b) { return binary(Op::Star, std::move(a), std::move(b)); }
inline Formula wand(Formula a, Formula b) { return binary(Op::Wand, std::move(a), std::move(b)); }
inline Formula neg(Formula a) { return unary(Op::Not, std::move(a)); }

bool equal(const Formula& x, const Formula& y);
std::size_t formula_size(const Formula& f);
int formula_depth(const Formula& f);
std::set<std::string> atoms_of(const Formula& f);
std::set<std::string> free_vars(const Formula& f);

struct Sequent {
  Formula lhs, rhs;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct SignatureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grammar only; no signature check. Used for rule schemas.
Formula parse_unchecked(std::string_view text);
// Parse and check the connectives against the logic's signature.
Formula parse_formula(std::string_view text, const Logic& logic);
// "phi |- psi"
Sequent parse_sequent(std::string_view text, const Logic& logic);
Sequent parse_sequent_unchecked(std::string_view text);

std::string print_formula(const Formula& f);
std::string print_sequent(const Sequent& s);

// Whether the connective may appear in formulas of the logic (primitive or sugar).
bool admits(const Logic& logic, Op op);
// Whether the connective is defined (sugar) in the logic rather than primitive.
bool is_sugar(const Logic& logic, Op op);
// Throws SignatureError naming the first offending connective.
void check_signature(const Formula& f, const Logic& logic);

// Replace every defined connective by its definition, recursively.
Formula expand_defined(const Formula& f, const Logic& logic);

}  // namespace bunchkit
