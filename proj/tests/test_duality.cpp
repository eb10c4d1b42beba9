#include <doctest.h>

#include <algorithm>
#include <random>

#include "bunchkit/duality.hpp"
#include "bunchkit/explorer.hpp"
#include "bunchkit/models.hpp"

using namespace bunchkit;

namespace {

// Prime filters from the definition, scanning every subset.
std::vector<StateSet> prime_filter_oracle(const Algebra& a) {
  int n = a.size();
  std::vector<StateSet> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    auto in = [&](int x) { return (mask >> x & 1) != 0; };
    if (in(a.bot)) continue;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y) {
        if (in(x) && a.le(x, y) && !in(y)) ok = false;
        if (in(x) && in(y) && !in(a.op(a.meet, x, y))) ok = false;
        if (in(a.op(a.join, x, y)) && !in(x) && !in(y)) ok = false;
      }
    if (!ok) continue;
    StateSet s(n);
    for (int x = 0; x < n; ++x)
      if (in(x)) s.set(x);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Logic full(Kind k) {
  return make_logic(k, is_bi_bi(k) ? 31 : 0, k == Kind::SML ? Modal::S4 : Modal::None);
}

}  // namespace

TEST_CASE("prime filters match the definition") {
  std::mt19937_64 rng(4);
  for (Kind k : kAllKinds) {
    for (int i = 0; i < 6; ++i) {
      auto a = random_algebra(make_logic(k), 8, rng);
      REQUIRE(a);
      auto want = prime_filter_oracle(*a);
      INFO(kind_name(k));
      CHECK(enumerate_prime_filters(*a, PrimeMethod::BruteForce) == want);
      CHECK(enumerate_prime_filters(*a, PrimeMethod::JoinIrreducible) == want);
      for (auto& f : want) CHECK(is_prime_filter(*a, f));
    }
  }
}

TEST_CASE("complex algebra evaluation equals satisfaction") {
  std::mt19937_64 rng(12);
  std::vector<std::string> atoms = {"p", "q"};
  for (Kind k : kAllKinds) {
    Logic l = make_logic(k);
    for (int trial = 0; trial < 8; ++trial) {
      auto f = random_frame(l, 1 + trial % 3, rng);
      REQUIRE(f);
      ComplexAlgebra ca = complex_algebra_sets(*f);
      REQUIRE(algebra_ok(ca.algebra));
      Valuation v = random_valuation(*f, atoms, rng);
      Interpretation in;
      for (auto& [p, s] : v) in[p] = ca.element(s);
      Model m{*f, v, Mode::Strong};
      for (int i = 0; i < 15; ++i) {
        Formula phi = random_formula(l, 3, atoms, rng);
        INFO(kind_name(k), " ", print_formula(phi));
        CHECK(ca.sets[evaluate(ca.algebra, in, phi)] == extension(m, phi));
      }
    }
  }
}

TEST_CASE("samples embed both ways") {
  for (auto& s : sample_library()) {
    INFO(s.name);
    if (s.frame) {
      Report r = eta_check(*s.frame);
      CHECK(r.all_hold());
      CHECK(check_algebra(complex_algebra(*s.frame)).empty());
    }
    if (s.algebra) {
      CHECK(theta_check(*s.algebra).all_hold());
      CHECK(frame_ok(prime_filter_frame(*s.algebra)));
    }
  }
}

TEST_CASE("theta on random algebras of every kind") {
  std::mt19937_64 rng(31);
  for (Kind k : kAllKinds) {
    Logic l = full(k);
    for (int i = 0; i < 5; ++i) {
      auto a = random_algebra(l, 8, rng);
      REQUIRE(a);
      Report r = theta_check(*a);
      INFO(logic_name(l));
      for (auto& item : r.items) {
        INFO(item.name, " ", item.witness);
        CHECK(item.holds);
      }
    }
  }
}

TEST_CASE("eta over small enumerated frames") {
  for (Kind k : kAllKinds) {
    SearchBudget b;
    b.logic = make_logic(k);
    b.max_states = 2;
    int seen = 0;
    enumerate_frames(b, [&](const Frame& f) {
      INFO(kind_name(k), " frame ", seen);
      CHECK(eta_check(f).all_hold());
      CHECK(frame_ok(prime_filter_frame(complex_algebra(f))));
      return ++seen < 200;
    });
    CHECK(seen > 0);
  }
}

TEST_CASE("inverse images of morphisms are homomorphisms") {
  Frame two = find_sample("bbi-2pt")->frame.value();
  CHECK(inverse_image_check({0, 1}, two, two).all_hold());
  Frame chain = find_sample("bi-chain3")->frame.value();
  CHECK(inverse_image_check({0, 1, 2}, chain, chain).all_hold());
}

TEST_CASE("sigma axioms and correspondence") {
  CHECK(print_sequent(sigma_axiom(Sigma::MorContraction)) == "a mor a |- a");
  Frame f = find_sample("bibbi-2pt")->frame.value();
  for (Sigma s : kAllSigma) {
    auto r = correspondence_check(f, s);
    CHECK(r.property_holds);
    CHECK(r.axiom_valid);
    CHECK(r.sound());
  }
}
