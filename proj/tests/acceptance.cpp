// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "bunchkit/duality.hpp"
#include "bunchkit/explorer.hpp"
#include "bunchkit/heap.hpp"
#include "bunchkit/io.hpp"
#include "heap_oracle.hpp"

using namespace bunchkit;

namespace {

// Per-run limits, in seconds, for enumerations that cannot finish at 3 states on
// every kind. Anything cut short counts as a failure.
constexpr double kEnumerationLimit = 20;
constexpr double kCorrespondenceLimit = 30;

struct Result {
  bool pass = true;
  std::string detail;
};

void note(Result& r, const std::string& s, bool ok = true) {
  if (!ok) r.pass = false;
  if (!r.detail.empty()) r.detail += "; ";
  r.detail += s;
}

std::string str(uint64_t v) { return std::to_string(v); }

std::vector<Logic> logics_with_variants() {
  std::vector<Logic> out;
  for (Kind k : kAllKinds) {
    if (is_bi_bi(k)) {
      out.push_back(make_logic(k));
      out.push_back(make_logic(k, 31));
    } else if (k == Kind::SML) {
      for (Modal m : {Modal::None, Modal::S4, Modal::S5}) out.push_back(make_logic(k, 0, m));
    } else {
      out.push_back(make_logic(k));
    }
  }
  return out;
}

// 1. theta is an embedding on random finite algebras.
Result representation() {
  Result r;
  std::mt19937_64 rng(1001);
  for (Kind k : kAllKinds) {
    // Kinds with variants cycle through them.
    std::vector<Logic> ls;
    for (auto& l : logics_with_variants())
      if (l.kind == k) ls.push_back(l);
    int good = 0, made = 0, largest = 0;
    for (int i = 0; i < 200; ++i) {
      Logic l = ls[i % ls.size()];
      auto a = random_algebra(l, 8, rng);
      if (!a) continue;
      made++;
      largest = std::max(largest, a->size());
      Report rep = theta_check(*a);
      if (rep.all_hold()) good++;
      else if (r.pass)
        for (auto& it : rep.items)
          if (!it.holds) note(r, logic_name(l) + ": " + it.name + " " + it.witness, false);
    }
    note(r, std::string(kind_name(k)) + " " + str(good) + "/200 (max " + str(largest) + ")", good == 200 && made == 200);
  }
  return r;
}

// 2. complex algebra, prime filter frame and eta over every frame with at most 3 states.
Result round_trip() {
  Result r;
  for (Kind k : kAllKinds) {
    SearchBudget b;
    b.logic = make_logic(k);
    b.max_states = 3;
    b.time_limit = kEnumerationLimit;
    uint64_t bad = 0;
    std::string first_bad;
    EnumerationStats st = enumerate_frames(b, [&](const Frame& f) {
      Algebra ca = complex_algebra(f);
      bool ok = check_algebra(ca).empty() && check_frame(prime_filter_frame(ca)).empty() && eta_check(f).all_hold();
      if (!ok && bad++ == 0) first_bad = std::to_string(f.size()) + "-state frame";
      return true;
    });
    std::string counts;
    for (std::size_t n = 1; n < st.per_size.size(); ++n) counts += (n > 1 ? "," : "") + str(st.per_size[n]);
    std::string s = std::string(kind_name(k)) + " [" + counts + "]";
    if (!st.complete) s += " incomplete at 3 states (" + st.stop_reason + ")";
    if (bad) s += " " + str(bad) + " failures, first " + first_bad;
    note(r, s, st.complete && bad == 0);
  }
  return r;
}

// 3. No rule instance fails in a sampled model.
Result soundness() {
  Result r;
  for (const Logic& l : logics_with_variants()) {
    SearchBudget b;
    b.logic = l;
    b.max_states = 3;
    FuzzReport rep = soundness_fuzz(b, 500, 3003);
    uint64_t checks = 0, live = 0;
    bool vacuous = false;
    for (auto& rs : rep.rules) {
      checks += rs.checks;
      live += rs.non_vacuous;
      if (rs.non_vacuous == 0) vacuous = true;
    }
    std::string s = logic_name(l) + " " + str(rep.rules.size()) + " rules " + str(live) + "/" + str(checks);
    if (vacuous) s += " (a rule never fired)";
    if (!rep.ok()) s += " VIOLATION " + rep.violations[0].rule + ": " + rep.violations[0].instance;
    note(r, s, rep.ok() && rep.models >= 500 && !vacuous);
  }
  return r;
}

// 4. Strong satisfaction on a BI frame equals udmf satisfaction on its updown closure.
Result strong_vs_udmf() {
  Result r;
  std::mt19937_64 rng(4004);
  Logic bi = make_logic(Kind::BI);
  std::vector<std::string> atoms = {"p", "q", "r"};
  uint64_t triples = 0, bad = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto f = random_frame(bi, 1 + trial % 4, rng);
    if (!f) {
      note(r, "no random frame", false);
      return r;
    }
    Frame g = updown_closure(*f);
    Valuation v = random_valuation(*f, atoms, rng);
    Model strong{*f, v, Mode::Strong}, udmf{g, v, Mode::Udmf};
    for (int i = 0; i < 8; ++i) {
      Formula phi = random_formula(bi, 4, atoms, rng);
      StateSet a = extension(strong, phi), c = extension(udmf, phi);
      for (int x = 0; x < f->size(); ++x, ++triples)
        if (a.test(x) != c.test(x)) bad++;
    }
  }
  note(r, str(triples) + " triples, " + str(bad) + " disagreements", triples >= 1000 && bad == 0);
  return r;
}

Formula random_pointer_formula(std::mt19937_64& rng, int depth, std::vector<std::string> vars,
                               const std::vector<int64_t>& vals) {
  auto pick = [&](std::size_t n) { return static_cast<int>(rng() % n); };
  auto term = [&]() {
    if (!vars.empty() && pick(3)) return Term::variable(vars[pick(vars.size())]);
    return Term::constant(vals[pick(vals.size())]);
  };
  if (depth == 0 || pick(4) == 0) {
    switch (pick(6)) {
      case 0: return munit();
      case 1: return pick(2) ? top() : bot();
      case 2: return term_atom(Op::Eq, term(), term());
      default: return term_atom(Op::PointsTo, term(), term());
    }
  }
  auto sub = [&]() { return random_pointer_formula(rng, depth - 1, vars, vals); };
  switch (pick(7)) {
    case 0: return conj(sub(), sub());
    case 1: return disj(sub(), sub());
    case 2: return imp(sub(), sub());
    case 3: return star(sub(), sub());
    case 4: return wand(sub(), sub());
    default: {
      std::string z = "z" + std::to_string(depth);
      vars.push_back(z);
      return quant(pick(2) ? Op::Exists : Op::Forall, z, random_pointer_formula(rng, depth - 1, vars, vals));
    }
  }
}

// 5. Pointer satisfaction equals satisfaction in the indexed store frame.
Result pointer_vs_indexed() {
  Result r;
  HeapUniverse u{{1, 2}, {0, 1, 2}};
  std::mt19937_64 rng(5005);
  const std::vector<std::string> names = {"x", "y"};
  const auto heaps = all_heaps(u);
  uint64_t checks = 0, bad = 0, formulas = 0;
  for (Variant v : {Variant::BI, Variant::BBI})
    for (int n = 0; n <= 2; ++n) {
      std::vector<std::string> ctx(names.begin(), names.begin() + n);
      StoreFrame sf = make_store_frame(u, n, v);
      for (int i = 0; i < 5000; ++i, ++formulas) {
        Formula f = random_pointer_formula(rng, 4, ctx, u.val);
        StateSet ext = indexed_extension(u, ctx, f, v);
        for (int s = 0; s < sf.num_stores(); ++s) {
          Store st{ctx, sf.vector_of(s)};
          for (int h = 0; h < sf.num_heaps(); ++h, ++checks) {
            bool p = pointer_sat(u, st, heaps[h], f, v);
            if (p != ext.test(sf.state(s, h))) {
              if (bad++ == 0) note(r, "first mismatch " + print_formula(f), false);
            }
          }
        }
      }
    }
  note(r, str(formulas) + " formulas, " + str(checks) + " (store, heap) checks, " + str(bad) + " mismatches",
       bad == 0);
  return r;
}

// 6. A row's frame property makes its axiom valid; violating frames can falsify it.
Result correspondence() {
  Result r;
  SearchBudget b;
  b.logic = make_logic(Kind::BiBBI);
  b.max_states = 3;
  b.time_limit = kCorrespondenceLimit;
  std::map<Sigma, uint64_t> with_property;
  uint64_t unsound = 0;
  EnumerationStats st = enumerate_frames(b, [&](const Frame& f) {
    for (Sigma row : kAllSigma) {
      auto rep = correspondence_check(f, row);
      if (rep.property_holds) with_property[row]++;
      if (!rep.sound()) unsound++;
    }
    return true;
  });
  std::string counts;
  for (std::size_t n = 1; n < st.per_size.size(); ++n) counts += (n > 1 ? "," : "") + str(st.per_size[n]);
  std::string s = "frames [" + counts + "]";
  if (!st.complete) s += " incomplete at 3 states (" + st.stop_reason + ")";
  s += ", " + str(unsound) + " unsound";
  note(r, s, st.complete && unsound == 0);

  std::mt19937_64 rng(6006);
  for (Sigma row : kAllSigma) {
    bool found = false;
    int tries = 0;
    for (; tries < 5000 && !found; ++tries) {
      auto f = random_frame(b.logic, 2 + tries % 2, rng);
      if (!f) continue;
      auto rep = correspondence_check(*f, row);
      found = !rep.property_holds && rep.falsifier.has_value();
    }
    note(r, std::string(sigma_name(row)) + " " + str(with_property[row]) + " with property, " +
                (found ? "falsified after " + str(tries) + " seeded frames" : "no falsifying frame"),
         found);
  }
  return r;
}

// 7. Separation properties of the heap frame, cross-checked on raw heaps.
Result separation() {
  Result r;
  HeapUniverse u{{1, 2}, {1, 2}};
  Report rep = separation_properties(heap_frame(u, Variant::BBI));
  oracle::RawProps p = oracle::raw_props(u);
  const std::map<std::string, bool> expected = {
      {"Partial deterministic", true}, {"Cancellative", true}, {"Indivisible Units", true},
      {"Disjointness", true},          {"Divisibility", false}, {"Cross Split", true}};
  const std::map<std::string, bool> brute = {
      {"Partial deterministic", p.partial_det}, {"Cancellative", p.cancel}, {"Indivisible Units", p.indiv},
      {"Disjointness", p.disjoint},             {"Divisibility", p.divisible}, {"Cross Split", p.cross}};
  if (rep.items.size() != expected.size()) note(r, "wrong number of properties", false);
  for (auto& it : rep.items) {
    bool ok = expected.count(it.name) && expected.at(it.name) == it.holds && brute.at(it.name) == it.holds;
    note(r, it.name + "=" + (it.holds ? "true" : "false"), ok);
  }
  return r;
}

// 8. ASL Frame and Concurrency rules in every CKBI algebra with at most 6 elements.
Result asl() {
  Result r;
  uint64_t count = 0, bad = 0;
  std::map<int, uint64_t> by_size;
  EnumerationStats st = enumerate_ckbi_algebras(6, [&](const Algebra& a) {
    count++;
    by_size[a.size()]++;
    if (!check_algebra(a).empty() || !asl_check(a).all_hold()) bad++;
    return true;
  });
  std::string s = str(count) + " algebras (";
  for (auto [n, c] : by_size) s += "size " + str(n) + ": " + str(c) + " ";
  s.back() = ')';
  note(r, s + ", " + str(bad) + " failing", st.complete && count > 0 && bad == 0);
  return r;
}

// 9. Minimal countermodels and independence from the job count.
Result countermodels() {
  Result r;
  Logic bbi = make_logic(Kind::BBI);
  struct Case {
    const char* seq;
    int size;
  };
  for (Case c : {Case{"p |- p * p", 2}, Case{"emp |- bot", 1}}) {
    Sequent s = parse_sequent(c.seq, bbi);
    SearchBudget b;
    b.logic = bbi;
    b.jobs = 1;
    auto one = countermodel_search(s, b);
    b.jobs = 4;
    auto four = countermodel_search(s, b);
    bool found = one.model && four.model;
    int size = found ? one.model->frame.size() : 0;
    bool same = found && countermodel_to_json(*one.model) == countermodel_to_json(*four.model);
    note(r, std::string(c.seq) + ": " + (found ? str(size) + " states" : "none") + (same ? ", same for 1 and 4 jobs" : ""),
         found && size == c.size && same);
  }
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Result()> run;
  };
  const Criterion all[] = {
      {1, "representation", representation},
      {2, "frame/algebra round trip", round_trip},
      {3, "soundness", soundness},
      {4, "strong vs udmf", strong_vs_udmf},
      {5, "pointer vs indexed", pointer_vs_indexed},
      {6, "sigma correspondence", correspondence},
      {7, "separation properties", separation},
      {8, "ASL rules", asl},
      {9, "countermodels", countermodels},
  };
  int failed = 0;
  for (auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s (%.1fs): %s\n", res.pass ? "PASS" : "FAIL", c.id, c.title, secs, res.detail.c_str());
    std::fflush(stdout);
    failed += !res.pass;
  }
  return failed ? 1 : 0;
}
