#include <doctest.h>

#include "bunchkit/io.hpp"
#include "bunchkit/proof.hpp"

using namespace bunchkit;

namespace {

ProofStep step(const Logic& l, const char* seq, const char* rule, std::vector<int> premises,
               std::map<std::string, std::string> subst) {
  ProofStep s{parse_sequent_unchecked(seq), rule, std::move(premises), {}};
  for (auto& [k, v] : subst) s.subst[k] = parse_formula(v, l);
  return s;
}

// p /\ q |- q /\ p from identity, projections and pairing.
Proof swap_conj(const Logic& l) {
  Proof p;
  p.steps.push_back(step(l, "p /\\ q |- p /\\ q", "R1", {}, {{"phi", "p /\\ q"}}));
  p.steps.push_back(step(l, "p /\\ q |- p", "R5", {0}, {{"phi", "p /\\ q"}, {"psi1", "p"}, {"psi2", "q"}}));
  p.steps.push_back(step(l, "p /\\ q |- q", "R5", {0}, {{"phi", "p /\\ q"}, {"psi1", "p"}, {"psi2", "q"}}));
  p.steps.push_back(step(l, "p /\\ q |- q /\\ p", "R4", {2, 1}, {{"eta", "p /\\ q"}, {"phi", "q"}, {"psi", "p"}}));
  return p;
}

}  // namespace

TEST_CASE("rule counts per logic") {
  auto count = [](Logic l) { return list_rules(l).size(); };
  CHECK(count(make_logic(Kind::LGL)) == 16);
  CHECK(count(make_logic(Kind::ILGL)) == 15);
  CHECK(count(make_logic(Kind::BI)) == 18);
  CHECK(count(make_logic(Kind::BBI)) == 19);
  CHECK(count(make_logic(Kind::DMBI)) == 20);
  CHECK(count(make_logic(Kind::CBI)) == 21);
  CHECK(count(make_logic(Kind::BiBI)) == 22);
  CHECK(count(make_logic(Kind::BiBBI)) == 23);
  CHECK(count(make_logic(Kind::BiBBI, 31)) == 28);
  CHECK(count(make_logic(Kind::CKBI)) == 28);
  CHECK(count(make_logic(Kind::SML)) == 22);
  CHECK(count(make_logic(Kind::SML, 0, Modal::S4)) == 24);
  CHECK(count(make_logic(Kind::SML, 0, Modal::S5)) == 25);
}

TEST_CASE("every schema is in its logic's signature") {
  for (Kind k : kAllKinds) {
    Logic l = make_logic(k, is_bi_bi(k) ? 31 : 0, k == Kind::SML ? Modal::S5 : Modal::None);
    for (const Rule& r : list_rules(l))
      for (const RuleForm& f : r.forms) {
        INFO(logic_name(l), " ", r.id);
        for (auto& p : f.premises) {
          CHECK_NOTHROW(check_signature(p.lhs, l));
          CHECK_NOTHROW(check_signature(p.rhs, l));
        }
        CHECK_NOTHROW(check_signature(f.conclusion.lhs, l));
        CHECK_NOTHROW(check_signature(f.conclusion.rhs, l));
        CHECK(f.premises.size() == r.arity());
      }
  }
}

TEST_CASE("a correct derivation is accepted") {
  for (Kind k : kAllKinds) {
    Logic l = make_logic(k);
    Verdict v = check_proof(swap_conj(l), l);
    INFO(logic_name(l), " ", v.reason);
    CHECK(v.ok);
  }
  Logic bbi = make_logic(Kind::BBI);
  Proof p;
  p.steps.push_back(step(bbi, "p * q |- q * p", "R17", {}, {{"phi", "p"}, {"psi", "q"}}));
  p.steps.push_back(step(bbi, "!!p |- p", "R0", {}, {{"phi", "p"}}));
  CHECK(check_proof(p, bbi).ok);
  // R0 is classical only.
  CHECK_FALSE(check_proof(p, make_logic(Kind::BI)).ok);
}

TEST_CASE("defined connectives are matched up to expansion") {
  Logic bbi = make_logic(Kind::BBI);
  Proof p;
  p.steps.push_back(step(bbi, "p -> bot |- !p", "R1", {}, {{"phi", "!p"}}));
  CHECK(check_proof(p, bbi).ok);
}

TEST_CASE("bad steps are rejected with the step index") {
  Logic bbi = make_logic(Kind::BBI);
  Proof p = swap_conj(bbi);

  Proof wrong_premise = p;
  wrong_premise.steps[3].premises = {1, 2};
  Verdict v = check_proof(wrong_premise, bbi);
  CHECK_FALSE(v.ok);
  CHECK(v.step == 3);

  Proof forward = p;
  forward.steps[1].premises = {2};
  v = check_proof(forward, bbi);
  CHECK(v.step == 1);

  Proof unknown = p;
  unknown.steps[0].rule = "R99";
  CHECK(check_proof(unknown, bbi).step == 0);

  Proof missing = p;
  missing.steps[0].subst.clear();
  v = check_proof(missing, bbi);
  CHECK(v.step == 0);
  CHECK(v.reason.find("missing") != std::string::npos);

  Proof extra = p;
  extra.steps[0].subst["zeta"] = atom("r");
  CHECK(check_proof(extra, bbi).step == 0);

  Proof arity = p;
  arity.steps[3].premises = {2};
  CHECK(check_proof(arity, bbi).step == 3);

  // dnaw is not in the BBI signature.
  Proof sig;
  sig.steps.push_back(step(make_logic(Kind::ILGL), "p *- q |- p *- q", "R1", {}, {{"phi", "p *- q"}}));
  CHECK_FALSE(check_proof(sig, bbi).ok);
  CHECK(check_proof(sig, make_logic(Kind::ILGL)).ok);
}

TEST_CASE("proof documents round trip") {
  Logic bbi = make_logic(Kind::BBI);
  Proof p = swap_conj(bbi);
  Json j = proof_to_json(p, bbi);
  Logic l;
  Proof q = proof_from_json(j, l);
  CHECK(l == bbi);
  REQUIRE(q.steps.size() == p.steps.size());
  CHECK(check_proof(q, l).ok);
  CHECK(proof_to_json(q, l) == j);
  CHECK_THROWS_AS(proof_from_json(Json::parse(R"({"logic":"BBI","steps":[{"rule":"R1"}]})"), l), IoError);
}
