#include <doctest.h>

#include <random>

#include "bunchkit/algebra.hpp"
#include "bunchkit/explorer.hpp"
#include "bunchkit/io.hpp"
#include "bunchkit/models.hpp"

using namespace bunchkit;

namespace {

// (B)BI algebra conditions on a finite distributive lattice, checked entry by entry.
bool bi_oracle(const Algebra& a) {
  int n = a.size();
  auto s = [&](int x, int y) { return a.op(a.star, x, y); };
  for (int x = 0; x < n; ++x) {
    if (s(x, a.munit) != x) return false;
    for (int y = 0; y < n; ++y) {
      if (s(x, y) != s(y, x)) return false;
      for (int z = 0; z < n; ++z) {
        if (s(s(x, y), z) != s(x, s(y, z))) return false;
        if (a.le(s(x, y), z) != a.le(x, a.op(a.wand, y, z))) return false;
      }
    }
  }
  return true;
}

Algebra sample_algebra(const char* name) { return find_sample(name)->algebra.value(); }

}  // namespace

TEST_CASE("sample algebras satisfy their axioms") {
  for (auto& s : sample_library())
    if (s.algebra) {
      INFO(s.name);
      CHECK(check_algebra(*s.algebra).empty());
      CHECK(residuation_report(*s.algebra).all_hold());
    }
}

TEST_CASE("check_algebra agrees with the oracle on single-entry mutations") {
  std::mt19937_64 rng(21);
  int caught = 0, total = 0;
  for (Kind k : {Kind::BI, Kind::BBI}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto a = random_algebra(make_logic(k), 6, rng);
      REQUIRE(a);
      REQUIRE(bi_oracle(*a));
      REQUIRE(algebra_ok(*a));
      int n = a->size();
      for (int i = 0; i < 10; ++i) {
        Algebra b = *a;
        int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
        b.star[x * n + y] = v;
        b.star[y * n + x] = v;
        bool want = bi_oracle(b);
        INFO(kind_name(k), " ", x, " ", y, " ", v);
        CHECK(algebra_ok(b) == want);
        total++;
        caught += !want;
      }
    }
  }
  CHECK(caught > 0);
  CHECK(total == 400);
}

TEST_CASE("complete_algebra derives lattice tables") {
  Algebra a = sample_algebra("chain3-bi");
  Algebra b;
  b.logic = a.logic;
  b.names = a.names;
  b.leq = a.leq;
  b.star = a.star;
  b.wand = a.wand;
  b.munit = a.munit;
  Algebra broken = b;
  complete_algebra(b);
  CHECK(same_algebra(a, b));
  broken.leq.assign(broken.leq.size(), 0);
  CHECK_THROWS_AS(complete_algebra(broken), std::invalid_argument);
}

TEST_CASE("evaluation and sequent validity") {
  Algebra a = sample_algebra("bool2-bbi");
  Logic l = a.logic;
  CHECK(validates_sequent(a, parse_sequent("p * q |- q * p", l)));
  CHECK(validates_sequent(a, parse_sequent("p |- p * emp", l)));
  // * is meet here, so contraction holds, unlike in the 2-state frame.
  CHECK(validates_sequent(a, parse_sequent("p |- p * p", l)));
  CHECK_FALSE(validates_sequent(a, parse_sequent("p |- q", l)));
  auto bad = falsify_sequent(a, parse_sequent("top |- p", l));
  REQUIRE(bad);
  CHECK(evaluate(a, *bad, atom("p")) != a.top);
}

// Joins over X and meets over Y as subsets of the carrier.
TEST_CASE("mor/rslash distribution: corrected forms hold, printed forms fail") {
  std::mt19937_64 rng(8);
  int printed_fail = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_algebra(make_logic(Kind::BiBI), 6, rng);
    REQUIRE(a);
    int n = a->size();
    auto R = [&](int x, int y) { return a->op(a->rslash, x, y); };
    auto big = [&](unsigned mask, bool join) {
      int acc = join ? a->bot : a->top;
      for (int x = 0; x < n; ++x)
        if (mask >> x & 1) acc = join ? a->op(a->join, acc, x) : a->op(a->meet, acc, x);
      return acc;
    };
    for (unsigned mask = 1; mask < (1u << n); ++mask)
      for (int z = 0; z < n; ++z) {
        int left1 = a->bot, left2 = a->bot;
        for (int x = 0; x < n; ++x)
          if (mask >> x & 1) {
            left1 = a->op(a->join, left1, R(x, z));
            left2 = a->op(a->join, left2, R(z, x));
          }
        CHECK(left1 == R(big(mask, true), z));
        CHECK(left2 == R(z, big(mask, false)));
        if (left1 != R(big(mask, false), z) || left2 != R(z, big(mask, true))) printed_fail++;
      }
  }
  CHECK(printed_fail > 0);
}

TEST_CASE("random algebras pass their checks for every kind") {
  std::mt19937_64 rng(99);
  for (Kind k : kAllKinds) {
    Logic l = make_logic(k, k == Kind::BiBBI ? 31 : 0, k == Kind::SML ? Modal::S4 : Modal::None);
    for (int i = 0; i < 5; ++i) {
      auto a = random_algebra(l, 8, rng);
      INFO(logic_name(l));
      REQUIRE(a);
      CHECK(check_algebra(*a).empty());
      CHECK(residuation_report(*a).all_hold());
    }
  }
}

TEST_CASE("distributive lattice counts") {
  // Distributive lattices with 1..8 elements: 1, 1, 1, 2, 3, 5, 8, 15.
  const int cumulative[] = {1, 2, 3, 5, 8, 13, 21, 36};
  for (int m = 1; m <= 8; ++m) CHECK(distributive_lattices(Kind::BI, m).size() == cumulative[m - 1]);
  // Boolean carriers: sizes 1, 2, 4, 8.
  CHECK(distributive_lattices(Kind::BBI, 8).size() == 4);
}

TEST_CASE("CKBI algebras and the ASL rules") {
  int count = 0;
  auto st = enumerate_ckbi_algebras(4, [&](const Algebra& a) {
    count++;
    CHECK(check_algebra(a).empty());
    CHECK(asl_check(a).all_hold());
    return true;
  });
  CHECK(st.complete);
  CHECK(count == 14);
}

TEST_CASE("algebra documents round trip") {
  for (auto& s : sample_library())
    if (s.algebra) {
      Json j = algebra_to_json(*s.algebra);
      CHECK(same_algebra(algebra_from_json(j), *s.algebra));
    }
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"kind":"BBI","elements":["a"],"leq":[["a","b"]]})")), IoError);
}
