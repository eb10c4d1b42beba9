#include <doctest.h>

#include <map>
#include <random>

#include "bunchkit/formula.hpp"

using namespace bunchkit;

namespace {

// Random AST over every node kind, including the pointer fragment.
Formula random_ast(std::mt19937_64& rng, int depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  auto term = [&]() {
    return pick(2) ? Term::variable(std::string(1, "xyz"[pick(3)])) : Term::constant(pick(5) - 1);
  };
  if (depth == 0 || pick(4) == 0) {
    switch (pick(7)) {
      case 0: return top();
      case 1: return bot();
      case 2: return munit();
      case 3: return mbot();
      case 4: return term_atom(pick(2) ? Op::Eq : Op::PointsTo, term(), term());
      default: return atom(std::string(1, "pqr"[pick(3)]));
    }
  }
  static const Op unaries[] = {Op::Not, Op::MNeg, Op::Dia, Op::Box};
  static const Op binaries[] = {Op::And, Op::Or,  Op::Imp, Op::Star, Op::Wand, Op::Dnaw,
                                Op::MOr, Op::RSlash, Op::Seq, Op::RSeq, Op::LSeq};
  switch (pick(5)) {
    case 0: return unary(unaries[pick(4)], random_ast(rng, depth - 1));
    case 1:
      if (pick(2)) return binary(Op::DiaSub, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
      return quant(pick(2) ? Op::Exists : Op::Forall, std::string(1, "xyz"[pick(3)]), random_ast(rng, depth - 1));
    default: return binary(binaries[pick(11)], random_ast(rng, depth - 1), random_ast(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("parse shapes") {
  Logic bbi = make_logic(Kind::BBI);
  Formula f = parse_formula("(p * q) -* r", bbi);
  CHECK(equal(f, wand(star(atom("p"), atom("q")), atom("r"))));
  CHECK(equal(parse_formula("mnot emp", make_logic(Kind::CBI)), unary(Op::MNeg, munit())));
  CHECK(print_formula(star(atom("p"), munit())) == "p * emp");
  CHECK(print_formula(atom("p")) == "p");

  // Implication is right associative, conjunction binds tighter than disjunction.
  CHECK(equal(parse_formula("p -> q -> r", bbi), imp(atom("p"), imp(atom("q"), atom("r")))));
  CHECK(equal(parse_formula("p /\\ q \\/ r", bbi), disj(conj(atom("p"), atom("q")), atom("r"))));
  CHECK(equal(parse_formula("!p * q", bbi), star(neg(atom("p")), atom("q"))));

  Sequent s = parse_sequent("p |- p * p", bbi);
  CHECK(print_sequent(s) == "p |- p * p");

  Formula t = parse_formula("x |-> -1", make_logic(Kind::BBI, 0, Modal::None, true));
  CHECK(t->t2.value == -1);
}

TEST_CASE("parse errors carry a position") {
  Logic bbi = make_logic(Kind::BBI);
  try {
    parse_formula("p * (q", bbi);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 6);
  }
  CHECK_THROWS_AS(parse_formula("p ** q", bbi), ParseError);
  CHECK_THROWS_AS(parse_sequent("p", bbi), ParseError);
  CHECK_THROWS_AS(parse_formula("p q", bbi), ParseError);
}

TEST_CASE("signature errors name the connective and logic") {
  try {
    parse_formula("p *- q", make_logic(Kind::BBI));
    FAIL("expected a signature error");
  } catch (const SignatureError& e) {
    std::string msg = e.what();
    CHECK(msg.find("dnaw") != std::string::npos);
    CHECK(msg.find("BBI") != std::string::npos);
  }
  CHECK_NOTHROW(parse_formula("p *- q", make_logic(Kind::ILGL)));
  CHECK_THROWS_AS(parse_formula("x |-> y", make_logic(Kind::BBI)), SignatureError);
  CHECK_NOTHROW(parse_formula("exists x. x |-> y", make_logic(Kind::BBI, 0, Modal::None, true)));
}

// Written out by hand from the grammars; rows are kinds, columns the connectives below.
TEST_CASE("signature table") {
  const std::vector<Op> cols = {Op::Dnaw, Op::MUnit, Op::MNeg, Op::MOr, Op::MBot, Op::RSlash,
                                Op::Seq,  Op::RSeq,  Op::LSeq, Op::Dia, Op::Box, Op::DiaSub};
  const std::map<Kind, std::string> table = {
      {Kind::LGL, "100000000000"},  {Kind::ILGL, "100000000000"}, {Kind::BI, "010000000000"},
      {Kind::BBI, "010000000000"},  {Kind::SML, "010000000111"},  {Kind::DMBI, "011110000000"},
      {Kind::CBI, "011110000000"},  {Kind::BiBI, "010111000000"}, {Kind::BiBBI, "010111000000"},
      {Kind::CKBI, "010000111000"},
  };
  for (auto& [k, row] : table)
    for (std::size_t i = 0; i < cols.size(); ++i) {
      INFO(kind_name(k), " ", op_name(cols[i]));
      CHECK(admits(make_logic(k), cols[i]) == (row[i] == '1'));
    }
  for (Kind k : kAllKinds)
    for (Op op : {Op::Top, Op::Bot, Op::And, Op::Or, Op::Imp, Op::Star, Op::Wand, Op::Not})
      CHECK(admits(make_logic(k), op));
  CHECK(!admits(make_logic(Kind::BI), Op::Exists));
  CHECK(admits(make_logic(Kind::BI, 0, Modal::None, true), Op::Forall));
}

TEST_CASE("defined connectives expand") {
  Logic bi = make_logic(Kind::BI);
  CHECK(equal(expand_defined(neg(atom("p")), bi), imp(atom("p"), bot())));

  Logic sml = make_logic(Kind::SML);
  Formula phi = atom("p"), psi = atom("q");
  Formula want = imp(wand(phi, imp(unary(Op::Dia, psi), bot())), bot());
  CHECK(equal(expand_defined(binary(Op::DiaSub, phi, psi), sml), want));
  Formula box = expand_defined(unary(Op::Box, phi), sml);
  CHECK(equal(box, imp(unary(Op::Dia, imp(phi, bot())), bot())));

  Logic dmbi = make_logic(Kind::DMBI);
  Formula m = expand_defined(binary(Op::MOr, phi, psi), dmbi);
  CHECK(equal(m, unary(Op::MNeg, star(unary(Op::MNeg, phi), unary(Op::MNeg, psi)))));
  CHECK(equal(expand_defined(mbot(), dmbi), unary(Op::MNeg, munit())));

  // mor is primitive in BiBBI and left alone.
  Logic bibbi = make_logic(Kind::BiBBI);
  CHECK(equal(expand_defined(binary(Op::MOr, phi, psi), bibbi), binary(Op::MOr, phi, psi)));
}

TEST_CASE("print then parse is the identity on 1000 random formulas") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_ast(rng, 5);
    std::string text = print_formula(f);
    INFO(text);
    Formula g = parse_unchecked(text);
    REQUIRE(equal(f, g));
    CHECK(print_formula(g) == text);
  }
}

TEST_CASE("size, depth, atoms and free variables") {
  Formula f = parse_unchecked("exists x. x |-> y * (p -> q)");
  CHECK(formula_size(f) == 6);
  CHECK(formula_depth(f) == 3);
  CHECK(atoms_of(f) == std::set<std::string>{"p", "q"});
  CHECK(free_vars(f) == std::set<std::string>{"y"});
}
