#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bunchkit/duality.hpp"
#include "bunchkit/explorer.hpp"
#include "bunchkit/heap.hpp"
#include "bunchkit/io.hpp"
#include "bunchkit/models.hpp"

using namespace bunchkit;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Opts {
  std::string logic, sigma, modal, mode = "strong", variant = "bbi", out = "text";
  int budget = 3;
  uint64_t seed = 1;
  int jobs = 1;
  double time = 0;

  std::string formula, seq, frame, frame2, algebra, val, state, proof, map, row;
  std::string universe, store, heap, dir;
  int trials = 500;
  bool residuation = false;
};

bool json_out(const Opts& o) { return o.out == "json"; }

void emit(const Json& j) { std::cout << dump_json(j); }

// Logic from the flags, optionally checked against the kind of an input document.
Logic flag_logic(const Opts& o, std::optional<Logic> from_file = std::nullopt) {
  Logic l;
  if (!o.logic.empty()) {
    l = parse_logic(o.logic);
    if (from_file && from_file->kind != l.kind)
      throw UsageError("--logic " + o.logic + " does not match the input's kind " +
                       std::string(kind_name(from_file->kind)));
    if (from_file && o.sigma.empty() && o.modal.empty()) l = *from_file;
  } else if (from_file) {
    l = *from_file;
  } else {
    l = make_logic(Kind::BBI);
  }
  if (!o.sigma.empty()) {
    l.sigma = 0;
    std::stringstream ss(o.sigma);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part == "all") {
        for (Sigma s : kAllSigma) l.sigma |= static_cast<uint8_t>(s);
        continue;
      }
      auto s = sigma_from_name(part);
      if (!s) throw UsageError("unknown sigma row " + part);
      l.sigma |= static_cast<uint8_t>(*s);
    }
  }
  if (!o.modal.empty()) {
    auto m = modal_from_name(o.modal);
    if (!m) throw UsageError("unknown modal class " + o.modal);
    l.modal = *m;
  }
  try {
    validate_logic(l);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return l;
}

Mode flag_mode(const Opts& o) {
  if (o.mode == "strong") return Mode::Strong;
  if (o.mode == "udmf") return Mode::Udmf;
  throw UsageError("--mode must be strong or udmf");
}

Variant flag_variant(const Opts& o) {
  if (o.variant == "bi") return Variant::BI;
  if (o.variant == "bbi") return Variant::BBI;
  throw UsageError("--variant must be bi or bbi");
}

void need(const std::string& v, const char* flag) {
  if (v.empty()) throw UsageError(std::string("missing ") + flag);
}

// A JSON argument is either inline text or a file path.
Json load_json(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    try {
      return Json::parse(arg);
    } catch (const nlohmann::json::exception& e) {
      throw IoError(std::string("inline JSON: ") + e.what());
    }
  }
  return read_json_file(arg);
}

// Sample documents wrap the model under "frame" or "algebra".
Json unwrap(Json j, const char* key) {
  if (j.is_object() && j.contains(key) && j.at(key).is_object()) return j.at(key);
  return j;
}

Frame load_frame(const Opts& o, const std::string& path) {
  need(path, "--frame");
  Frame f = frame_from_json(unwrap(load_json(path), "frame"));
  f.logic = flag_logic(o, f.logic);
  return f;
}

Algebra load_algebra(const Opts& o) {
  need(o.algebra, "--algebra");
  Algebra a = algebra_from_json(unwrap(load_json(o.algebra), "algebra"));
  Logic l = flag_logic(o, a.logic);
  if (!(l == a.logic)) {
    a.logic = l;
    complete_algebra(a);
  }
  return a;
}

int print_report(const Opts& o, const Report& r, Json extra = Json::object()) {
  if (json_out(o)) {
    Json j = report_to_json(r);
    for (auto& [k, v] : extra.items()) j[k] = v;
    emit(j);
  } else {
    for (auto& i : r.items)
      std::cout << (!i.checked ? "skipped " : i.holds ? "holds   " : "FAILS   ") << i.name
                << (i.witness.empty() ? "" : "  [" + i.witness + "]") << "\n";
  }
  return r.all_hold() ? 0 : 1;
}

int print_violations(const Opts& o, const std::vector<Violation>& v, const char* what) {
  if (json_out(o)) {
    emit(Json{{"valid", v.empty()}, {"violations", violations_to_json(v)}});
  } else if (v.empty()) {
    std::cout << what << " ok\n";
  } else {
    for (auto& x : v) {
      std::cout << "violates " << x.axiom;
      for (auto& [var, s] : x.witness) std::cout << " " << var << "=" << s;
      if (!x.detail.empty()) std::cout << " (" << x.detail << ")";
      std::cout << "\n";
    }
  }
  return v.empty() ? 0 : 1;
}

int print_bool(const Opts& o, bool b, const char* key = "result") {
  if (json_out(o)) emit(Json{{key, b}});
  else std::cout << (b ? "true" : "false") << "\n";
  return 0;
}

// ---------------------------------------------------------------- commands

int cmd_parse(const Opts& o) {
  need(o.formula, "--formula");
  Formula f = parse_unchecked(o.formula);
  Logic l = flag_logic(o);
  try {
    check_signature(f, l);
  } catch (const SignatureError& e) {
    if (json_out(o)) emit(Json{{"formula", print_formula(f)}, {"in_signature", false}, {"error", e.what()}});
    else std::cout << print_formula(f) << "\nnot in the signature of " << logic_name(l) << ": " << e.what() << "\n";
    return 1;
  }
  if (json_out(o)) {
    auto atoms = atoms_of(f);
    emit(Json{{"formula", print_formula(f)},
              {"in_signature", true},
              {"atoms", std::vector<std::string>(atoms.begin(), atoms.end())},
              {"size", formula_size(f)},
              {"depth", formula_depth(f)}});
  } else {
    std::cout << print_formula(f) << "\n";
  }
  return 0;
}

int cmd_check_proof(const Opts& o) {
  need(o.proof, "--proof");
  Logic l;
  Proof p = proof_from_json(load_json(o.proof), l);
  if (!o.logic.empty() || !o.sigma.empty() || !o.modal.empty()) l = flag_logic(o, l);
  Verdict v = check_proof(p, l);
  if (json_out(o)) {
    Json j{{"valid", v.ok}};
    if (!v.ok) j["step"] = v.step, j["reason"] = v.reason;
    emit(j);
  } else if (v.ok) {
    std::cout << "proof ok (" << p.steps.size() << " steps)\n";
  } else {
    std::cout << "step " << v.step << ": " << v.reason << "\n";
  }
  return v.ok ? 0 : 1;
}

int cmd_check_frame(const Opts& o) {
  Frame f = load_frame(o, o.frame);
  if (flag_mode(o) == Mode::Udmf) return print_violations(o, check_udmf(f), "udmf");
  return print_violations(o, check_frame(f), "frame");
}

int cmd_check_algebra(const Opts& o) {
  Algebra a = load_algebra(o);
  auto v = check_algebra(a);
  if (!o.residuation) return print_violations(o, v, "algebra");
  Report r = residuation_report(a);
  if (json_out(o)) {
    emit(Json{{"valid", v.empty()}, {"violations", violations_to_json(v)}, {"residuation", report_to_json(r)}});
    return v.empty() && r.all_hold() ? 0 : 1;
  }
  int a1 = print_violations(o, v, "algebra");
  int a2 = print_report(o, r);
  return a1 | a2;
}

int cmd_sat(const Opts& o) {
  Frame f = load_frame(o, o.frame);
  need(o.val, "--val");
  need(o.state, "--state");
  need(o.formula, "--formula");
  Model m{f, valuation_from_json(f, load_json(o.val)), flag_mode(o)};
  int x = f.index_of(o.state);
  if (x < 0) throw UsageError("unknown state " + o.state);
  Formula phi = parse_formula(o.formula, f.logic);
  return print_bool(o, satisfies(m, x, phi));
}

int cmd_entails(const Opts& o) {
  Frame f = load_frame(o, o.frame);
  need(o.seq, "--seq");
  Sequent s = parse_sequent(o.seq, f.logic);
  if (!o.val.empty()) {
    Model m{f, valuation_from_json(f, load_json(o.val)), flag_mode(o)};
    return print_bool(o, entails_in_model(m, s));
  }
  // Validity on the frame: every up-set valuation of the sequent's atoms.
  ComplexAlgebra ca = complex_algebra_sets(f);
  auto bad = falsify_sequent(ca.algebra, s);
  if (!bad) return print_bool(o, true, "valid");
  Valuation v;
  for (auto& [atom, el] : *bad) v[atom] = ca.sets[el];
  Model m{f, v, Mode::Strong};
  StateSet w = extension(m, s.lhs) - extension(m, s.rhs);
  if (json_out(o)) {
    emit(Json{{"valid", false}, {"valuation", valuation_to_json(f, v)}, {"state", f.names[w.first()]}});
  } else {
    std::cout << "false\nat " << f.names[w.first()] << " under";
    for (auto& [atom, el] : *bad) std::cout << " " << atom << "=" << ca.algebra.names[el];
    std::cout << "\n";
  }
  return 1;
}

int cmd_com(const Opts& o) {
  Frame f = load_frame(o, o.frame);
  emit(algebra_to_json(complex_algebra(f)));
  return 0;
}

int cmd_pr(const Opts& o) {
  Algebra a = load_algebra(o);
  emit(frame_to_json(prime_filter_frame(a)));
  return 0;
}

int cmd_roundtrip(const Opts& o) {
  if (!o.algebra.empty()) return print_report(o, theta_check(load_algebra(o)));
  return print_report(o, eta_check(load_frame(o, o.frame)));
}

int cmd_morphism(const Opts& o) {
  Frame a = load_frame(o, o.frame);
  Frame b = load_frame(o, o.frame2);
  need(o.map, "--map");
  Json mj = load_json(o.map);
  if (mj.contains("map")) mj = mj.at("map");
  if (!mj.is_object()) throw IoError("a map must be an object from states to states");
  std::vector<int> g(a.size(), -1);
  for (auto& [k, v] : mj.items()) {
    int x = a.index_of(k);
    int y = v.is_string() ? b.index_of(v.get<std::string>()) : -1;
    if (x < 0 || y < 0) throw IoError("map entry " + k + " refers to an unknown state");
    g[x] = y;
  }
  for (int x = 0; x < a.size(); ++x)
    if (g[x] < 0) throw IoError("map is not total: " + a.names[x] + " has no image");
  auto v = check_morphism(g, a, b);
  if (!v.empty()) return print_violations(o, v, "morphism");
  Report r = inverse_image_check(g, a, b);
  return print_report(o, r, Json{{"morphism", true}});
}

int cmd_correspondence(const Opts& o) {
  Frame f = load_frame(o, o.frame);
  std::vector<Sigma> rows;
  if (o.row.empty() || o.row == "all") rows.assign(std::begin(kAllSigma), std::end(kAllSigma));
  else if (auto s = sigma_from_name(o.row)) rows.push_back(*s);
  else throw UsageError("unknown sigma row " + o.row);
  Json out = Json::array();
  bool sound = true;
  ComplexAlgebra ca = complex_algebra_sets(f);
  for (Sigma s : rows) {
    CorrespondenceReport r = correspondence_check(f, s);
    sound = sound && r.sound();
    Json j{{"row", std::string(sigma_name(s))}, {"property_holds", r.property_holds}, {"axiom_valid", r.axiom_valid}};
    if (r.falsifier) {
      Json fz = Json::object();
      for (auto& [atom, el] : *r.falsifier) fz[atom] = ca.algebra.names[el];
      j["falsifier"] = fz;
    }
    if (r.property_witness) j["property_witness"] = violations_to_json({*r.property_witness})[0];
    if (json_out(o)) out.push_back(j);
    else
      std::cout << sigma_name(s) << ": property " << (r.property_holds ? "holds" : "fails") << ", axiom "
                << (r.axiom_valid ? "valid" : "invalid") << "\n";
  }
  if (json_out(o)) emit(Json{{"sound", sound}, {"rows", out}});
  return sound ? 0 : 1;
}

Formula fo_formula(const Opts& o) {
  need(o.formula, "--formula");
  Variant v = flag_variant(o);
  return parse_formula(o.formula, make_logic(v == Variant::BI ? Kind::BI : Kind::BBI, 0, Modal::None, true));
}

int cmd_heap_sat(const Opts& o, bool indexed) {
  need(o.universe, "--universe");
  need(o.store, "--store");
  need(o.heap, "--heap");
  HeapUniverse u = universe_from_json(load_json(o.universe));
  Store s = store_from_json(load_json(o.store));
  Heap h = heap_from_json(load_json(o.heap));
  Formula f = fo_formula(o);
  Variant v = flag_variant(o);
  bool r = indexed ? indexed_sat(u, s, h, f, v) : pointer_sat(u, s, h, f, v);
  return print_bool(o, r);
}

int cmd_sep_props(const Opts& o) {
  Frame f = !o.frame.empty() ? load_frame(o, o.frame) : Frame{};
  if (o.frame.empty()) {
    need(o.universe, "--universe or --frame");
    f = heap_frame(universe_from_json(load_json(o.universe)), flag_variant(o));
  }
  Report r = separation_properties(f);
  print_report(o, r);
  return 0;
}

int cmd_countermodel(const Opts& o) {
  need(o.seq, "--seq");
  SearchBudget b;
  b.logic = flag_logic(o);
  b.max_states = o.budget;
  b.jobs = o.jobs;
  b.time_limit = o.time;
  try {
    b.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Sequent s = parse_sequent(o.seq, b.logic);
  SearchOutcome r = countermodel_search(s, b);
  if (r.model) {
    if (json_out(o)) {
      emit(countermodel_to_json(*r.model));
    } else {
      std::cout << "countermodel with " << r.model->frame.size() << " states at " << r.model->frame.names[r.model->state]
                << "\n";
      emit(countermodel_to_json(*r.model));
    }
    return 1;
  }
  if (json_out(o))
    emit(Json{{"countermodel", nullptr}, {"complete", r.complete}, {"max_states", b.max_states}, {"note", r.note}});
  else
    std::cout << (r.complete ? "no countermodel up to " + std::to_string(b.max_states) + " states"
                             : "search stopped (" + r.note + ")")
              << "\n";
  return 0;
}

int cmd_fuzz(const Opts& o) {
  SearchBudget b;
  b.logic = flag_logic(o);
  b.max_states = o.budget;
  try {
    b.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  FuzzReport r = soundness_fuzz(b, o.trials, o.seed);
  if (json_out(o)) {
    emit(fuzz_to_json(r));
  } else {
    uint64_t checks = 0, nv = 0;
    for (auto& x : r.rules) checks += x.checks, nv += x.non_vacuous;
    std::cout << logic_name(r.logic) << ": " << r.models << " models, " << r.rules.size() << " rules, " << checks
              << " checks (" << nv << " non-vacuous), " << r.violations.size() << " violations\n";
    for (auto& v : r.violations) std::cout << "  " << v.rule << ": " << v.instance << " on " << v.frame << "\n";
  }
  return r.ok() ? 0 : 1;
}

int cmd_samples(const Opts& o) {
  need(o.dir, "DIR");
  std::filesystem::create_directories(o.dir);
  Json index = Json::array();
  for (auto& s : sample_library()) {
    std::ofstream out(std::filesystem::path(o.dir) / (s.name + ".json"), std::ios::binary);
    out << dump_json(sample_to_json(s));
    if (!out) throw IoError("cannot write " + s.name + ".json");
    index.push_back(s.name);
  }
  if (json_out(o)) emit(Json{{"written", index}});
  else std::cout << index.size() << " samples written to " << o.dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bunchkit: finite models, algebras and proofs for bunched logics"};
  app.require_subcommand(1);
  app.fallthrough();
  Opts o;
  app.add_option("--logic", o.logic, "Logic, e.g. BBI or BiBBI+Associativity");
  app.add_option("--sigma", o.sigma, "Comma-separated sigma rows, or all");
  app.add_option("--modal", o.modal, "Modal class for SML: none, S4, S5");
  app.add_option("--mode", o.mode, "Satisfaction mode: strong or udmf");
  app.add_option("--variant", o.variant, "Heap model variant: bi or bbi");
  app.add_option("--budget", o.budget, "Largest number of states searched (1..5)");
  app.add_option("--time", o.time, "Time limit in seconds for searches (0 = none)");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--out", o.out, "Output format: text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", o.jobs, "Worker threads for countermodel search");

  std::map<std::string, std::function<int()>> run;
  auto sub = [&](const char* name, const char* help, std::function<int()> f) {
    run[name] = std::move(f);
    return app.add_subcommand(name, help);
  };
  auto* c = sub("parse", "Parse a formula and check it against the logic", [&] { return cmd_parse(o); });
  c->add_option("--formula", o.formula);
  c = sub("check-proof", "Check a Hilbert proof", [&] { return cmd_check_proof(o); });
  c->add_option("--proof", o.proof);
  c = sub("check-frame", "Check the frame axioms (or the UDMF conditions with --mode udmf)",
          [&] { return cmd_check_frame(o); });
  c->add_option("--frame", o.frame);
  c = sub("check-algebra", "Check the algebra axioms", [&] { return cmd_check_algebra(o); });
  c->add_option("--algebra", o.algebra);
  c->add_flag("--residuation", o.residuation, "Also report residuation consequences");
  c = sub("sat", "Satisfaction at a state", [&] { return cmd_sat(o); });
  c->add_option("--frame", o.frame);
  c->add_option("--val", o.val);
  c->add_option("--state", o.state);
  c->add_option("--formula", o.formula);
  c = sub("entails", "Entailment in a model (with --val) or validity on a frame", [&] { return cmd_entails(o); });
  c->add_option("--frame", o.frame);
  c->add_option("--val", o.val);
  c->add_option("--seq", o.seq);
  c = sub("com", "Complex algebra of a frame", [&] { return cmd_com(o); });
  c->add_option("--frame", o.frame);
  c = sub("pr", "Prime filter frame of an algebra", [&] { return cmd_pr(o); });
  c->add_option("--algebra", o.algebra);
  c = sub("roundtrip", "Embedding report for an algebra or a frame", [&] { return cmd_roundtrip(o); });
  c->add_option("--algebra", o.algebra);
  c->add_option("--frame", o.frame);
  c = sub("morphism", "Check a frame morphism and its inverse image", [&] { return cmd_morphism(o); });
  c->add_option("--frame", o.frame, "Source frame");
  c->add_option("--frame2", o.frame2, "Target frame");
  c->add_option("--map", o.map, "JSON object from source to target states");
  c = sub("correspondence", "Sigma row property versus axiom validity", [&] { return cmd_correspondence(o); });
  c->add_option("--frame", o.frame);
  c->add_option("--row", o.row);
  c = sub("heap-sat", "Pointer-logic satisfaction on a store and heap", [&] { return cmd_heap_sat(o, false); });
  c->add_option("--universe", o.universe);
  c->add_option("--store", o.store);
  c->add_option("--heap", o.heap);
  c->add_option("--formula", o.formula);
  c = sub("indexed-sat", "Satisfaction on the indexed store frame", [&] { return cmd_heap_sat(o, true); });
  c->add_option("--universe", o.universe);
  c->add_option("--store", o.store);
  c->add_option("--heap", o.heap);
  c->add_option("--formula", o.formula);
  c = sub("sep-props", "Separation properties of a heap frame or a given frame", [&] { return cmd_sep_props(o); });
  c->add_option("--universe", o.universe);
  c->add_option("--frame", o.frame);
  c = sub("countermodel", "Search for a smallest countermodel", [&] { return cmd_countermodel(o); });
  c->add_option("--seq", o.seq);
  c = sub("fuzz", "Soundness fuzzing of the Hilbert rules", [&] { return cmd_fuzz(o); });
  c->add_option("--trials", o.trials);
  c = sub("samples", "Write the sample library to a directory", [&] { return cmd_samples(o); });
  c->add_option("DIR", o.dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    for (auto* s : app.get_subcommands()) return run.at(s->get_name())();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const SignatureError& e) {
    std::cerr << "signature error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
