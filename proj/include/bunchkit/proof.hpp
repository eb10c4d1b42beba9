#pragma once

#include <map>
#include <string>
#include <vector>

#include "bunchkit/formula.hpp"
#include "bunchkit/logic.hpp"

namespace bunchkit {

// One shape of a rule: premises over conclusion, all sequents over metavariables.
struct RuleForm {
  std::vector<Sequent> premises;
  Sequent conclusion;
};

struct Rule {
  std::string id;
  std::vector<RuleForm> forms;  // alternatives: both directions of a biconditional, i = 1, 2 variants
  std::vector<std::string> metavars;

  std::size_t arity() const { return forms.front().premises.size(); }
  std::string schema_text() const;
};

// The Hilbert rules of the logic, in presentation order.
std::vector<Rule> list_rules(const Logic& logic);
const Rule* find_rule(const std::vector<Rule>& rules, const std::string& id);

struct ProofStep {
  Sequent seq;
  std::string rule;
  std::vector<int> premises;
  std::map<std::string, Formula> subst;
};

struct Proof {
  std::vector<ProofStep> steps;
};

struct Verdict {
  bool ok = true;
  int step = -1;  // first failing step
  std::string reason;
};

Verdict check_proof(const Proof& p, const Logic& logic);

// Apply a metavariable substitution to a schema; atoms not in the map are kept.
Formula instantiate(const Formula& schema, const std::map<std::string, Formula>& subst);

}  // namespace bunchkit
