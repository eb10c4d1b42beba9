#include "bunchkit/proof.hpp"

#include <algorithm>
#include <set>

namespace bunchkit {

namespace {

Sequent seq(const char* s) { return parse_sequent_unchecked(s); }

Rule axiom(std::string id, std::vector<const char*> alts) {
  Rule r{std::move(id), {}, {}};
  for (auto* a : alts) r.forms.push_back({{}, seq(a)});
  return r;
}

Rule rule(std::string id, std::vector<std::pair<std::vector<const char*>, const char*>> alts) {
  Rule r{std::move(id), {}, {}};
  for (auto& [prem, concl] : alts) {
    RuleForm f;
    for (auto* p : prem) f.premises.push_back(seq(p));
    f.conclusion = seq(concl);
    r.forms.push_back(std::move(f));
  }
  return r;
}

void collect_metavars(Rule& r) {
  std::set<std::string> mv;
  for (auto& f : r.forms) {
    for (auto& p : f.premises) {
      for (auto& a : atoms_of(p.lhs)) mv.insert(a);
      for (auto& a : atoms_of(p.rhs)) mv.insert(a);
    }
    for (auto& a : atoms_of(f.conclusion.lhs)) mv.insert(a);
    for (auto& a : atoms_of(f.conclusion.rhs)) mv.insert(a);
  }
  r.metavars.assign(mv.begin(), mv.end());
}

std::vector<Rule> base_rules(Kind k) {
  bool comm = is_commutative(k);
  std::vector<Rule> rs;
  if (is_boolean(k)) rs.push_back(axiom("R0", {"!!phi |- phi"}));
  rs.push_back(axiom("R1", {"phi |- phi"}));
  rs.push_back(axiom("R2", {"phi |- top"}));
  rs.push_back(axiom("R3", {"bot |- phi"}));
  rs.push_back(rule("R4", {{{"eta |- phi", "eta |- psi"}, "eta |- phi /\\ psi"}}));
  rs.push_back(rule("R5", {{{"phi |- psi1 /\\ psi2"}, "phi |- psi1"}, {{"phi |- psi1 /\\ psi2"}, "phi |- psi2"}}));
  rs.push_back(rule("R6", {{{"phi |- psi"}, "eta /\\ phi |- psi"}}));
  rs.push_back(rule("R7", {{{"eta |- psi", "phi |- psi"}, "eta \\/ phi |- psi"}}));
  rs.push_back(rule("R8", {{{"phi |- psi1"}, "phi |- psi1 \\/ psi2"}, {{"phi |- psi2"}, "phi |- psi1 \\/ psi2"}}));
  rs.push_back(rule("R9", {{{"eta |- phi -> psi", "eta |- phi"}, "eta |- psi"}}));
  rs.push_back(rule("R10", {{{"eta /\\ phi |- psi"}, "eta |- phi -> psi"}}));
  rs.push_back(rule("R11", {{{"xi |- phi", "eta |- psi"}, "xi * eta |- phi * psi"}}));
  rs.push_back(rule("R12", {{{"eta * phi |- psi"}, "eta |- phi -* psi"}}));
  rs.push_back(rule("R13", {{{"xi |- phi -* psi", "eta |- phi"}, "xi * eta |- psi"}}));
  // With * commutative the left residual coincides with -*, which is the only one in the signature.
  if (comm) {
    rs.push_back(rule("R14", {{{"eta * phi |- psi"}, "phi |- eta -* psi"}}));
    rs.push_back(rule("R15", {{{"xi |- phi -* psi", "eta |- phi"}, "eta * xi |- psi"}}));
  } else {
    rs.push_back(rule("R14", {{{"eta * phi |- psi"}, "phi |- eta *- psi"}}));
    rs.push_back(rule("R15", {{{"xi |- phi *- psi", "eta |- phi"}, "eta * xi |- psi"}}));
  }
  if (has_unit(k)) {
    rs.push_back(axiom("R16", {"(phi * psi) * xi |- phi * (psi * xi)"}));
    rs.push_back(axiom("R17", {"phi * psi |- psi * phi"}));
    rs.push_back(axiom("R18", {"phi * emp |- phi", "phi |- phi * emp"}));
  }
  return rs;
}

}  // namespace

std::string Rule::schema_text() const {
  std::string out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (i) out += "  |  ";
    const auto& f = forms[i];
    for (std::size_t j = 0; j < f.premises.size(); ++j) {
      if (j) out += " ; ";
      out += print_sequent(f.premises[j]);
    }
    if (!f.premises.empty()) out += "  ==>  ";
    out += print_sequent(f.conclusion);
  }
  return out;
}

std::vector<Rule> list_rules(const Logic& logic) {
  Kind k = logic.kind;
  std::vector<Rule> rs = base_rules(k == Kind::LGL || k == Kind::ILGL ? k : (is_boolean(k) ? Kind::BBI : Kind::BI));
  if (is_dm(k)) {
    rs.push_back(axiom("R19", {"mnot mnot phi |- phi", "phi |- mnot mnot phi"}));
    rs.push_back(axiom("R20", {"mnot phi |- phi -* mbot", "phi -* mbot |- mnot phi"}));
  }
  if (is_bi_bi(k)) {
    rs.push_back(rule("R21", {{{"eta |- phi mor psi"}, "eta rslash phi |- psi"}}));
    rs.push_back(rule("R22", {{{"eta rslash phi |- psi"}, "eta |- phi mor psi"}}));
    rs.push_back(rule("R23", {{{"xi |- phi", "eta |- psi"}, "xi mor eta |- phi mor psi"}}));
    rs.push_back(axiom("R24", {"phi mor psi |- psi mor phi"}));
    if (logic.has(Sigma::Associativity))
      rs.push_back(axiom("Sigma-Associativity", {"phi mor (psi mor chi) |- (phi mor psi) mor chi"}));
    if (logic.has(Sigma::MbotWeakening)) rs.push_back(axiom("Sigma-MbotWeakening", {"phi |- phi mor mbot"}));
    if (logic.has(Sigma::MbotContraction)) rs.push_back(axiom("Sigma-MbotContraction", {"phi mor mbot |- phi"}));
    if (logic.has(Sigma::MorContraction)) rs.push_back(axiom("Sigma-MorContraction", {"phi mor phi |- phi"}));
    if (logic.has(Sigma::WeakDistributivity))
      rs.push_back(axiom("Sigma-WeakDistributivity", {"phi * (psi mor chi) |- (phi * psi) mor chi"}));
  }
  if (k == Kind::CKBI) {
    rs.push_back(rule("R25", {{{"xi |- phi", "eta |- psi"}, "xi ; eta |- phi ; psi"}}));
    rs.push_back(rule("R26", {{{"eta ; phi |- psi"}, "eta |- phi -; psi"}}));
    rs.push_back(rule("R27", {{{"xi |- phi -; psi", "eta |- phi"}, "xi ; eta |- psi"}}));
    rs.push_back(rule("R28", {{{"eta ; phi |- psi"}, "phi |- eta ;- psi"}}));
    rs.push_back(rule("R29", {{{"xi |- phi ;- psi", "eta |- phi"}, "eta ; xi |- psi"}}));
    rs.push_back(axiom("R30", {"emp ; phi |- phi", "phi |- emp ; phi"}));
    rs.push_back(axiom("R31", {"phi ; emp |- phi", "phi |- phi ; emp"}));
    rs.push_back(axiom("R34", {"phi ; (psi ; chi) |- (phi ; psi) ; chi", "(phi ; psi) ; chi |- phi ; (psi ; chi)"}));
    rs.push_back(axiom("R35", {"(phi * psi) ; (chi * xi) |- (phi ; chi) * (psi ; xi)"}));
  }
  if (k == Kind::SML) {
    rs.push_back(rule("Mono<>", {{{"phi |- psi"}, "<>phi |- <>psi"}}));
    rs.push_back(axiom("Dist<>", {"<>(phi \\/ psi) |- <>phi \\/ <>psi", "<>phi \\/ <>psi |- <>(phi \\/ psi)"}));
    rs.push_back(axiom("Bot<>", {"<>bot |- bot"}));
    if (logic.modal != Modal::None) {
      rs.push_back(axiom("T", {"phi |- <>phi"}));
      rs.push_back(axiom("4", {"<><>phi |- <>phi"}));
    }
    if (logic.modal == Modal::S5) rs.push_back(axiom("B5", {"<>[]phi |- []phi"}));
  }
  for (auto& r : rs) collect_metavars(r);
  return rs;
}

const Rule* find_rule(const std::vector<Rule>& rules, const std::string& id) {
  static const std::pair<const char*, const char*> kAliases[] = {
      {"Mono◇", "Mono<>"}, {"Dist◇∨", "Dist<>"}, {"Dist<>\\/", "Dist<>"},
      {"◇⊥", "Bot<>"}, {"<>bot", "Bot<>"},
  };
  std::string key = id;
  for (auto& [from, to] : kAliases)
    if (key == from) key = to;
  for (const auto& r : rules)
    if (r.id == key) return &r;
  return nullptr;
}

Formula instantiate(const Formula& schema, const std::map<std::string, Formula>& subst) {
  if (!schema) return schema;
  if (schema->op == Op::Atom) {
    auto it = subst.find(schema->name);
    return it == subst.end() ? schema : it->second;
  }
  if (!schema->a) return schema;
  if (schema->op == Op::Exists || schema->op == Op::Forall)
    return quant(schema->op, schema->name, instantiate(schema->a, subst));
  if (!schema->b) return unary(schema->op, instantiate(schema->a, subst));
  return binary(schema->op, instantiate(schema->a, subst), instantiate(schema->b, subst));
}

namespace {

bool same_sequent(const Sequent& x, const Sequent& y, const Logic& logic) {
  return equal(expand_defined(x.lhs, logic), expand_defined(y.lhs, logic)) &&
         equal(expand_defined(x.rhs, logic), expand_defined(y.rhs, logic));
}

std::vector<std::string> form_metavars(const RuleForm& f) {
  std::set<std::string> mv;
  auto add = [&](const Sequent& s) {
    for (auto& a : atoms_of(s.lhs)) mv.insert(a);
    for (auto& a : atoms_of(s.rhs)) mv.insert(a);
  };
  for (auto& p : f.premises) add(p);
  add(f.conclusion);
  return {mv.begin(), mv.end()};
}

}  // namespace

Verdict check_proof(const Proof& p, const Logic& logic) {
  auto rules = list_rules(logic);
  auto fail = [](int i, std::string why) { return Verdict{false, i, std::move(why)}; };
  for (int i = 0; i < static_cast<int>(p.steps.size()); ++i) {
    const ProofStep& st = p.steps[i];
    try {
      check_signature(st.seq.lhs, logic);
      check_signature(st.seq.rhs, logic);
      for (auto& [k, v] : st.subst) check_signature(v, logic);
    } catch (const SignatureError& e) {
      return fail(i, e.what());
    }
    const Rule* r = find_rule(rules, st.rule);
    if (!r) return fail(i, "rule " + st.rule + " is not a rule of " + logic_name(logic));
    for (int q : st.premises)
      if (q < 0 || q >= i) return fail(i, "premise index " + std::to_string(q) + " does not refer to an earlier step");
    if (st.premises.size() != r->arity())
      return fail(i, "rule " + r->id + " takes " + std::to_string(r->arity()) + " premises, got " +
                         std::to_string(st.premises.size()));
    for (auto& [k, v] : st.subst)
      if (std::find(r->metavars.begin(), r->metavars.end(), k) == r->metavars.end())
        return fail(i, "substitution names '" + k + "', which is not a metavariable of " + r->id);
    std::string why;
    bool matched = false;
    for (const RuleForm& f : r->forms) {
      std::string missing;
      for (auto& mv : form_metavars(f))
        if (!st.subst.count(mv)) missing = mv;
      if (!missing.empty()) {
        why = "substitution is missing metavariable '" + missing + "'";
        continue;
      }
      Sequent c{instantiate(f.conclusion.lhs, st.subst), instantiate(f.conclusion.rhs, st.subst)};
      if (!same_sequent(c, st.seq, logic)) {
        why = "instantiation mismatch: rule " + r->id + " yields " + print_sequent(c) + ", step states " +
              print_sequent(st.seq);
        continue;
      }
      bool prem_ok = true;
      for (std::size_t j = 0; j < f.premises.size(); ++j) {
        Sequent ps{instantiate(f.premises[j].lhs, st.subst), instantiate(f.premises[j].rhs, st.subst)};
        if (!same_sequent(ps, p.steps[st.premises[j]].seq, logic)) {
          why = "premise " + std::to_string(j + 1) + " should be " + print_sequent(ps) + ", step " +
                std::to_string(st.premises[j]) + " states " + print_sequent(p.steps[st.premises[j]].seq);
          prem_ok = false;
          break;
        }
      }
      if (prem_ok) {
        matched = true;
        break;
      }
    }
    if (!matched) return fail(i, why);
  }
  return {};
}

}  // namespace bunchkit
