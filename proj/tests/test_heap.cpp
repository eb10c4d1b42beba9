#include <doctest.h>

#include <random>

#include "bunchkit/explorer.hpp"
#include "bunchkit/heap.hpp"
#include "heap_oracle.hpp"

using namespace bunchkit;
using oracle::plus;
using oracle::raw_heaps;
using oracle::raw_props;
using oracle::RawProps;

namespace {

using Env = std::map<std::string, int64_t>;

// Classical pointer-logic satisfaction on raw heaps.
bool bbi_sat(const HeapUniverse& u, Env& s, const Heap& h, const Formula& f) {
  auto term = [&](const Term& t) { return t.is_var ? s.at(t.var) : t.value; };
  switch (f->op) {
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::MUnit: return h.empty();
    case Op::Eq: return term(f->t1) == term(f->t2);
    case Op::PointsTo: return h.size() == 1 && h.begin()->first == term(f->t1) && h.begin()->second == term(f->t2);
    case Op::And: return bbi_sat(u, s, h, f->a) && bbi_sat(u, s, h, f->b);
    case Op::Or: return bbi_sat(u, s, h, f->a) || bbi_sat(u, s, h, f->b);
    case Op::Imp: return !bbi_sat(u, s, h, f->a) || bbi_sat(u, s, h, f->b);
    case Op::Not: return !bbi_sat(u, s, h, f->a);
    case Op::Star:
      for (auto& h1 : raw_heaps(u)) {
        Heap h2;
        bool sub = true;
        for (auto& [l, v] : h1) sub = sub && h.count(l) && h.at(l) == v;
        if (!sub) continue;
        for (auto& [l, v] : h)
          if (!h1.count(l)) h2[l] = v;
        if (bbi_sat(u, s, h1, f->a) && bbi_sat(u, s, h2, f->b)) return true;
      }
      return false;
    case Op::Wand:
      for (auto& h1 : raw_heaps(u)) {
        auto g = plus(h, h1);
        if (g && bbi_sat(u, s, h1, f->a) && !bbi_sat(u, s, *g, f->b)) return false;
      }
      return true;
    case Op::Exists:
    case Op::Forall: {
      bool ex = f->op == Op::Exists;
      auto saved = s.count(f->name) ? std::optional<int64_t>(s.at(f->name)) : std::nullopt;
      bool result = !ex;
      for (auto v : u.val) {
        s[f->name] = v;
        if (bbi_sat(u, s, h, f->a) == ex) {
          result = ex;
          break;
        }
      }
      if (saved) s[f->name] = *saved;
      else s.erase(f->name);
      return result;
    }
    default: throw std::logic_error("oracle does not cover this connective");
  }
}

Formula random_fo(std::mt19937_64& rng, int depth, std::vector<std::string> vars) {
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  auto term = [&]() { return pick(4) ? Term::variable(vars[pick(static_cast<int>(vars.size()))]) : Term::constant(1); };
  if (depth == 0 || pick(3) == 0) {
    switch (pick(4)) {
      case 0: return munit();
      case 1: return term_atom(Op::Eq, term(), term());
      default: return term_atom(Op::PointsTo, term(), term());
    }
  }
  switch (pick(7)) {
    case 0: return conj(random_fo(rng, depth - 1, vars), random_fo(rng, depth - 1, vars));
    case 1: return disj(random_fo(rng, depth - 1, vars), random_fo(rng, depth - 1, vars));
    case 2: return imp(random_fo(rng, depth - 1, vars), random_fo(rng, depth - 1, vars));
    case 3: return star(random_fo(rng, depth - 1, vars), random_fo(rng, depth - 1, vars));
    case 4: return wand(random_fo(rng, depth - 1, vars), random_fo(rng, depth - 1, vars));
    default: {
      std::string z = "z" + std::to_string(depth);
      auto inner = vars;
      inner.push_back(z);
      return quant(pick(2) ? Op::Exists : Op::Forall, z, random_fo(rng, depth - 1, inner));
    }
  }
}

}  // namespace

TEST_CASE("heap universes") {
  HeapUniverse u{{1, 2}, {0, 1, 2}};
  CHECK_NOTHROW(validate_universe(u));
  CHECK(all_heaps(u).size() == 16);
  CHECK(raw_heaps(u).size() == 16);
  CHECK_THROWS_AS(validate_universe(HeapUniverse{{3}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_universe(HeapUniverse{{}, {}}), std::invalid_argument);
  for (auto& h : all_heaps(u)) CHECK(all_heaps(u)[heap_code(u, h)] == h);
  CHECK(compose_heaps({{1, 0}}, {{1, 2}}) == std::nullopt);
  CHECK(heap_extends({{1, 0}, {2, 2}}, {{2, 2}}));
}

TEST_CASE("heap frames are frames of their kind") {
  HeapUniverse u{{1, 2}, {1, 2}};
  Frame bbi = heap_frame(u, Variant::BBI);
  Frame bi = heap_frame(u, Variant::BI);
  CHECK(bbi.logic.kind == Kind::BBI);
  CHECK(bi.logic.kind == Kind::BI);
  CHECK(frame_ok(bbi));
  CHECK(frame_ok(bi));
  CHECK(bbi.E.count() == 1);
  CHECK(bi.E.count() == static_cast<std::size_t>(bi.size()));
}

TEST_CASE("separation properties agree with raw heaps") {
  for (HeapUniverse u : {HeapUniverse{{1, 2}, {1, 2}}, HeapUniverse{{1}, {1, 2}}, HeapUniverse{{1, 2}, {1, 2, 3}}}) {
    RawProps p = raw_props(u);
    Report r = separation_properties(heap_frame(u, Variant::BBI));
    std::map<std::string, bool> got;
    for (auto& i : r.items) got[i.name] = i.holds;
    CHECK(got.at("Partial deterministic") == p.partial_det);
    CHECK(got.at("Cancellative") == p.cancel);
    CHECK(got.at("Indivisible Units") == p.indiv);
    CHECK(got.at("Disjointness") == p.disjoint);
    CHECK(got.at("Divisibility") == p.divisible);
    CHECK(got.at("Cross Split") == p.cross);
  }
  // A one-cell heap has no split into two non-empty heaps.
  CHECK_FALSE(raw_props(HeapUniverse{{1, 2}, {1, 2}}).divisible);
}

TEST_CASE("pointer satisfaction examples") {
  HeapUniverse u{{1, 2}, {0, 1, 2}};
  Store s{{"x", "y"}, {1, 2}};
  Logic fo = make_logic(Kind::BBI, 0, Modal::None, true);
  Heap h{{1, 2}};
  auto sat = [&](const char* text, const Heap& hh, Variant v) { return pointer_sat(u, s, hh, parse_formula(text, fo), v); };
  CHECK(sat("x |-> y", h, Variant::BBI));
  CHECK_FALSE(sat("x |-> x", h, Variant::BBI));
  CHECK_FALSE(sat("emp", h, Variant::BBI));
  CHECK(sat("emp", h, Variant::BI));
  CHECK(sat("exists z. x |-> z", h, Variant::BBI));
  CHECK_FALSE(sat("x |-> y", {{1, 2}, {2, 0}}, Variant::BBI));
  CHECK(sat("x |-> y", {{1, 2}, {2, 0}}, Variant::BI));
  CHECK(sat("x |-> y * y |-> 0", {{1, 2}, {2, 0}}, Variant::BBI));
  CHECK_FALSE(sat("x |-> y * x |-> y", {{1, 2}}, Variant::BBI));
  CHECK(sat("(y |-> 0) -* (x |-> y * y |-> 0)", h, Variant::BBI));
  CHECK_THROWS_AS(sat("w |-> y", h, Variant::BBI), std::invalid_argument);
}

TEST_CASE("classical pointer satisfaction matches the raw-heap evaluator") {
  HeapUniverse u{{1, 2}, {0, 1, 2}};
  std::mt19937_64 rng(17);
  auto heaps = raw_heaps(u);
  for (int i = 0; i < 300; ++i) {
    Formula f = random_fo(rng, 3, {"x", "y"});
    Store s{{"x", "y"}, {u.val[rng() % 3], u.val[rng() % 3]}};
    for (auto& h : heaps) {
      Env env{{"x", s.vals[0]}, {"y", s.vals[1]}};
      INFO(print_formula(f), " on ", heap_to_string(h));
      REQUIRE(pointer_sat(u, s, h, f, Variant::BBI) == bbi_sat(u, env, h, f));
    }
  }
}

TEST_CASE("indexed satisfaction agrees with pointer satisfaction") {
  HeapUniverse u{{1, 2}, {0, 1, 2}};
  std::mt19937_64 rng(23);
  auto heaps = all_heaps(u);
  for (Variant v : {Variant::BI, Variant::BBI})
    for (int i = 0; i < 60; ++i) {
      Formula f = random_fo(rng, 3, {"x"});
      Store s{{"x"}, {u.val[rng() % 3]}};
      for (auto& h : heaps) {
        INFO(print_formula(f), " on ", heap_to_string(h));
        REQUIRE(pointer_sat(u, s, h, f, v) == indexed_sat(u, s, h, f, v));
      }
    }
}

TEST_CASE("store frames: adjoints and base change") {
  HeapUniverse u{{1}, {1, 2}};
  for (Variant v : {Variant::BI, Variant::BBI}) {
    StoreFrame sf = make_store_frame(u, 1, v);
    CHECK(sf.num_stores() == 2);
    CHECK(sf.size() == 2 * static_cast<int>(all_heaps(u).size()));
    CHECK(sf.store_index(sf.vector_of(1)) == 1);
    CHECK(adjunction_check(u, 0, v).all_hold());
    CHECK(adjunction_check(u, 1, v).all_hold());
    CHECK(pseudo_epi_check(u, TermMap{1, {0, 0}}, v).all_hold());
    CHECK(pseudo_epi_check(u, TermMap{2, {1}}, v).all_hold());
    CHECK(pseudo_epi_check(u, TermMap{0, {-1}}, v).all_hold());
  }
}
