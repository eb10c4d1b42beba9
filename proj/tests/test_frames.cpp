#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bunchkit/explorer.hpp"
#include "bunchkit/frame.hpp"
#include "bunchkit/models.hpp"

using namespace bunchkit;

namespace {

// BBI frame conditions straight from the definition, on a discrete order.
bool bbi_oracle(int n, const std::vector<std::set<int>>& comp, const std::set<int>& E) {
  auto c = [&](int x, int y) -> const std::set<int>& { return comp[x * n + y]; };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z : c(x, y))
        if (!c(y, x).count(z)) return false;
  for (int x = 0; x < n; ++x) {
    bool unit = false;
    for (int e : E) unit = unit || c(x, e).count(x);
    if (!unit) return false;
  }
  for (int e : E)
    for (int y = 0; y < n; ++y)
      for (int x : c(y, e))
        if (x != y) return false;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int t : c(x, y))
        for (int z = 0; z < n; ++z)
          for (int w : c(t, z)) {
            bool found = false;
            for (int s = 0; s < n && !found; ++s) found = c(y, z).count(s) && c(x, s).count(w);
            if (!found) return false;
          }
  return true;
}

// Brute-force satisfaction for the propositional (I)LGL/(B)BI connectives.
// Strong clauses close * down and -*, *- up along the order; Udmf clauses do not.
bool sat_oracle(const Frame& f, const Valuation& v, int x, const Formula& phi, Mode mode) {
  int n = f.size();
  auto S = [&](int y, const Formula& g) { return sat_oracle(f, v, y, g, mode); };
  auto ge = [&](int a, int b) { return f.leq(b, a); };
  switch (phi->op) {
    case Op::Atom: return v.at(phi->name).test(x);
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::MUnit: return f.E.test(x);
    case Op::And: return S(x, phi->a) && S(x, phi->b);
    case Op::Or: return S(x, phi->a) || S(x, phi->b);
    case Op::Not:
    case Op::Imp:
      for (int y = 0; y < n; ++y)
        if (ge(y, x) && S(y, phi->a) && (phi->op == Op::Not || !S(y, phi->b))) return false;
      return true;
    case Op::Star:
      for (int x2 = 0; x2 < n; ++x2) {
        if (mode == Mode::Strong ? !ge(x, x2) : x2 != x) continue;
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z)
            if (f.c(y, z).test(x2) && S(y, phi->a) && S(z, phi->b)) return true;
      }
      return false;
    case Op::Wand:
    case Op::Dnaw:
      for (int x2 = 0; x2 < n; ++x2) {
        if (mode == Mode::Strong ? !ge(x2, x) : x2 != x) continue;
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z) {
            bool in = phi->op == Op::Wand ? f.c(x2, y).test(z) : f.c(y, x2).test(z);
            if (in && S(y, phi->a) && !S(z, phi->b)) return false;
          }
      }
      return true;
    default: throw std::logic_error("oracle does not cover this connective");
  }
}

Frame raw_bbi(int n, unsigned comp_bits, unsigned e_bits) {
  Frame f = make_frame(make_logic(Kind::BBI), n);
  for (int i = 0; i < n * n * n; ++i)
    if (comp_bits >> i & 1) f.comp[i / n].set(i % n);
  for (int x = 0; x < n; ++x)
    if (e_bits >> x & 1) f.E.set(x);
  return f;
}

}  // namespace

TEST_CASE("frame_ok agrees with the BBI definition on every 2-state structure") {
  // Raw structures: 8 composition bits and 4 unit sets. Iso classes under the swap.
  int n = 2;
  std::set<std::pair<unsigned, unsigned>> classes;
  for (unsigned cb = 0; cb < 256; ++cb)
    for (unsigned eb = 0; eb < 4; ++eb) {
      Frame f = raw_bbi(n, cb, eb);
      std::vector<std::set<int>> comp(n * n);
      for (int i = 0; i < n * n; ++i) f.comp[i].for_each([&](int z) { comp[i].insert(z); });
      std::set<int> E;
      f.E.for_each([&](int e) { E.insert(e); });
      bool want = bbi_oracle(n, comp, E);
      INFO(cb, " ", eb);
      REQUIRE(frame_ok(f) == want);
      if (!want) continue;
      // Swap 0 and 1: bit (x,y,z) moves to (1-x,1-y,1-z).
      unsigned sw = 0;
      for (int i = 0; i < 8; ++i)
        if (cb >> i & 1) sw |= 1u << (7 - i);
      unsigned se = ((eb & 1) << 1) | (eb >> 1);
      classes.insert(std::min(std::make_pair(cb, eb), std::make_pair(sw, se)));
    }
  CHECK(classes.size() == 5);

  SearchBudget b;
  b.logic = make_logic(Kind::BBI);
  b.min_states = b.max_states = 2;
  CHECK(enumerate_frames(b).size() == 5);
}

TEST_CASE("1-state frame counts") {
  SearchBudget b;
  b.max_states = 1;
  b.logic = make_logic(Kind::ILGL);
  CHECK(enumerate_frames(b).size() == 2);
  b.logic = make_logic(Kind::BBI);
  CHECK(enumerate_frames(b).size() == 1);
  b.logic = make_logic(Kind::LGL);
  CHECK(enumerate_frames(b).size() == 2);
}

TEST_CASE("a BBI frame with a.a undefined") {
  Frame f = find_sample("bbi-2pt")->frame.value();
  CHECK(frame_ok(f));
  int a = f.index_of("a");
  Model m{f, {{"p", StateSet::single(2, a)}}, Mode::Strong};
  CHECK(satisfies(m, a, parse_formula("p", f.logic)));
  CHECK_FALSE(satisfies(m, a, parse_formula("p * p", f.logic)));
  CHECK(satisfies(m, a, parse_formula("p * emp", f.logic)));
  CHECK(satisfies(m, a, parse_formula("p -* bot", f.logic)));
  CHECK_FALSE(entails_in_model(m, parse_sequent("p |- p * p", f.logic)));
  CHECK(entails_in_model(m, parse_sequent("p |- p * emp", f.logic)));
}

TEST_CASE("violations name the failing condition") {
  Frame f = raw_bbi(2, 0, 1);
  auto v = check_frame(f);
  REQUIRE_FALSE(v.empty());
  bool unit = std::any_of(v.begin(), v.end(), [](auto& x) { return x.axiom.find("Unit") != std::string::npos; });
  CHECK(unit);
}

TEST_CASE("satisfaction matches the brute-force clauses") {
  std::mt19937_64 rng(11);
  std::vector<std::string> atoms = {"p", "q"};
  for (Kind k : {Kind::ILGL, Kind::LGL, Kind::BI, Kind::BBI}) {
    Logic l = make_logic(k);
    for (int trial = 0; trial < 40; ++trial) {
      auto f = random_frame(l, 1 + trial % 3, rng);
      REQUIRE(f);
      Valuation v = random_valuation(*f, atoms, rng);
      Model m{*f, v, Mode::Strong};
      for (int i = 0; i < 10; ++i) {
        Formula phi = random_formula(l, 3, atoms, rng);
        StateSet ext = extension(m, phi);
        for (int x = 0; x < f->size(); ++x) {
          INFO(kind_name(k), " ", print_formula(phi));
          REQUIRE(ext.test(x) == sat_oracle(*f, v, x, phi, Mode::Strong));
        }
      }
    }
  }
}

TEST_CASE("persistence holds for up-set valuations") {
  std::mt19937_64 rng(5);
  std::vector<std::string> atoms = {"p", "q", "r"};
  for (Kind k : {Kind::ILGL, Kind::BI, Kind::DMBI, Kind::BiBI}) {
    Logic l = make_logic(k);
    for (int trial = 0; trial < 20; ++trial) {
      auto f = random_frame(l, 2 + trial % 2, rng);
      REQUIRE(f);
      Valuation v = random_valuation(*f, atoms, rng);
      CHECK(check_persistent(*f, v));
      std::vector<Formula> fs;
      for (int i = 0; i < 30; ++i) fs.push_back(random_formula(l, 4, atoms, rng));
      auto bad = persistence_sweep(Model{*f, v, Mode::Strong}, fs);
      INFO(kind_name(k), " ", bad.empty() ? "" : bad[0].formula);
      CHECK(bad.empty());
    }
  }
}

TEST_CASE("strong satisfaction equals udmf satisfaction on the closure") {
  std::mt19937_64 rng(3);
  std::vector<std::string> atoms = {"p", "q"};
  Logic bi = make_logic(Kind::BI);
  int triples = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_frame(bi, 1 + trial % 3, rng);
    REQUIRE(f);
    Frame g = updown_closure(*f);
    Valuation v = random_valuation(*f, atoms, rng);
    Model strong{*f, v, Mode::Strong}, udmf{g, v, Mode::Udmf};
    for (int i = 0; i < 10; ++i) {
      Formula phi = random_formula(bi, 4, atoms, rng);
      for (int x = 0; x < f->size(); ++x, ++triples) {
        bool want = sat_oracle(g, v, x, phi, Mode::Udmf);
        REQUIRE(satisfies(udmf, x, phi) == want);
        REQUIRE(satisfies(strong, x, phi) == want);
      }
    }
  }
  CHECK(triples > 0);
}

TEST_CASE("udmf mode is refused outside (B)BI") {
  Frame f = make_frame(make_logic(Kind::ILGL), 1);
  Model m{f, {}, Mode::Udmf};
  CHECK_THROWS(extension(m, top()));
}

TEST_CASE("morphisms") {
  Frame two = find_sample("bbi-2pt")->frame.value();
  Frame one = find_sample("bbi-1pt")->frame.value();
  CHECK(check_morphism({0, 1}, two, two).empty());
  // Collapsing a onto the unit sends a non-unit to a unit.
  auto v = check_morphism({0, 0}, two, one);
  CHECK_FALSE(v.empty());
  CHECK(check_morphism({0}, two, one).at(0).axiom == "total");
}

TEST_CASE("CBI infinity set") {
  Frame f = find_sample("cbi-1pt")->frame.value();
  CHECK(frame_ok(f));
  CHECK(check_infinity_uniqueness(f));
  CHECK(infinity_set(f).count() == 1);
}
