#include <doctest.h>

#include <random>
#include <set>

#include "bunchkit/explorer.hpp"
#include "bunchkit/io.hpp"

using namespace bunchkit;

namespace {

// Every 2-state structure of the kind, kept when frame_ok, counted up to the swap.
std::size_t raw_count_2(const Logic& l) {
  const int n = 2;
  Kind k = l.kind;
  // Preorders on two points: discrete, 0<=1, 1<=0, both.
  std::vector<std::pair<bool, bool>> orders = {{false, false}};
  if (!is_boolean(k)) orders = {{false, false}, {true, false}, {false, true}, {true, true}};
  int minus_choices = is_dm(k) ? 4 : 1;
  int nabla_bits = is_bi_bi(k) ? 8 : 0, seq_bits = k == Kind::CKBI ? 8 : 0, r_bits = k == Kind::SML ? 4 : 0;
  int u_choices = is_bi_bi(k) ? 4 : 1;
  std::set<std::vector<uint32_t>> classes;
  for (auto [a, b] : orders)
    for (unsigned cb = 0; cb < 256; ++cb)
      for (unsigned eb = 0; eb < (has_unit(k) ? 4u : 1u); ++eb)
        for (int mc = 0; mc < minus_choices; ++mc)
          for (unsigned nb = 0; nb < (1u << nabla_bits); ++nb)
            for (int ub = 0; ub < u_choices; ++ub)
              for (unsigned sb = 0; sb < (1u << seq_bits); ++sb)
                for (unsigned rb = 0; rb < (1u << r_bits); ++rb) {
                  Frame f = make_frame(l, n);
                  if (a) f.up[0].set(1);
                  if (b) f.up[1].set(0);
                  for (int i = 0; i < 8; ++i) {
                    if (cb >> i & 1) f.comp[i / n].set(i % n);
                    if (nb >> i & 1) f.nabla[i / n].set(i % n);
                    if (sb >> i & 1) f.seq[i / n].set(i % n);
                  }
                  for (int x = 0; x < n; ++x) {
                    if (eb >> x & 1) f.E.set(x);
                    if (ub >> x & 1) f.U.set(x);
                    if (is_dm(k)) f.minus[x] = mc >> x & 1;
                  }
                  if (r_bits)
                    for (int i = 0; i < 4; ++i)
                      if (rb >> i & 1) f.R[i / n].set(i % n);
                  if (!frame_ok(f)) continue;
                  auto c1 = frame_code(f), c2 = frame_code(permute_frame(f, {1, 0}));
                  classes.insert(std::min(c1, c2));
                }
  return classes.size();
}

}  // namespace

TEST_CASE("2-state enumeration matches a raw scan for every kind") {
  for (Kind k : kAllKinds) {
    Logic l = make_logic(k);
    SearchBudget b;
    b.logic = l;
    b.min_states = b.max_states = 2;
    EnumerationStats st;
    auto frames = enumerate_frames(b, &st);
    INFO(kind_name(k));
    CHECK(st.complete);
    CHECK(frames.size() == raw_count_2(l));
  }
}

TEST_CASE("enumerated frames are valid and pairwise non-isomorphic") {
  for (Kind k : {Kind::BI, Kind::BBI, Kind::DMBI, Kind::CBI, Kind::CKBI}) {
    SearchBudget b;
    b.logic = make_logic(k);
    b.max_states = 3;
    std::set<std::vector<uint32_t>> codes;
    EnumerationStats st = enumerate_frames(b, [&](const Frame& f) {
      CHECK(frame_ok(f));
      CHECK(codes.insert(frame_code(canonical_form(f))).second);
      return true;
    });
    CHECK(st.complete);
    CHECK(st.total() == codes.size());
  }
  SearchBudget b;
  b.logic = make_logic(Kind::BBI);
  b.max_states = 3;
  EnumerationStats st;
  enumerate_frames(b, &st);
  CHECK(st.per_size == std::vector<uint64_t>{0, 1, 5, 57});
}

TEST_CASE("canonical form is invariant under relabelling") {
  std::mt19937_64 rng(2);
  for (Kind k : kAllKinds) {
    for (int i = 0; i < 10; ++i) {
      auto f = random_frame(make_logic(k), 3, rng);
      REQUIRE(f);
      std::vector<int> perm = {0, 1, 2};
      std::shuffle(perm.begin(), perm.end(), rng);
      Frame g = permute_frame(*f, perm);
      CHECK(frame_ok(g));
      CHECK(frame_code(canonical_form(*f)) == frame_code(canonical_form(g)));
    }
  }
}

TEST_CASE("frame budgets and time limits stop enumeration") {
  SearchBudget b;
  b.logic = make_logic(Kind::BI);
  b.max_states = 3;
  b.max_frames = 10;
  EnumerationStats st;
  auto frames = enumerate_frames(b, &st);
  CHECK(frames.size() == 10);
  CHECK_FALSE(st.complete);
  CHECK(st.stop_reason == "frame limit");
  b.max_states = 6;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
}

TEST_CASE("minimal countermodels") {
  SearchBudget b;
  b.logic = make_logic(Kind::BBI);
  auto r = countermodel_search(parse_sequent("p |- p * p", b.logic), b);
  REQUIRE(r.model);
  CHECK(r.model->frame.size() == 2);
  Model m{r.model->frame, r.model->val, Mode::Strong};
  CHECK(satisfies(m, r.model->state, atom("p")));
  CHECK_FALSE(satisfies(m, r.model->state, parse_formula("p * p", b.logic)));

  r = countermodel_search(parse_sequent("emp |- bot", b.logic), b);
  REQUIRE(r.model);
  CHECK(r.model->frame.size() == 1);

  r = countermodel_search(parse_sequent("p /\\ q |- p", b.logic), b);
  CHECK_FALSE(r.model);
  CHECK(r.complete);

  CHECK_THROWS_AS(countermodel_search(parse_sequent_unchecked("p *- q |- p"), b), SignatureError);
}

TEST_CASE("countermodel search does not depend on the number of jobs") {
  const char* seqs[] = {"p |- p * p", "p -* q |- q", "p * q |- p", "emp |- p \\/ !p"};
  for (Kind k : {Kind::BBI, Kind::BI}) {
    for (auto text : seqs) {
      SearchBudget b;
      b.logic = make_logic(k);
      Sequent s = parse_sequent(text, b.logic);
      b.jobs = 1;
      auto one = countermodel_search(s, b);
      b.jobs = 3;
      auto three = countermodel_search(s, b);
      INFO(kind_name(k), " ", text);
      REQUIRE(one.model.has_value() == three.model.has_value());
      if (one.model) CHECK(countermodel_to_json(*one.model) == countermodel_to_json(*three.model));
    }
  }
}

TEST_CASE("soundness fuzzing finds no violations") {
  for (Kind k : kAllKinds) {
    SearchBudget b;
    b.logic = make_logic(k, is_bi_bi(k) ? 31 : 0, k == Kind::SML ? Modal::S5 : Modal::None);
    b.max_states = 2;
    FuzzReport r = soundness_fuzz(b, 30, 1);
    INFO(logic_name(b.logic));
    CHECK(r.ok());
    CHECK(r.models == 30);
    for (auto& rule : r.rules) {
      INFO(rule.rule);
      CHECK(rule.checks > 0);
    }
  }
}

TEST_CASE("contraction for * is refuted") {
  SearchBudget b;
  b.logic = make_logic(Kind::BBI);
  auto r = countermodel_search(parse_sequent("p * p |- p", b.logic), b);
  CHECK(r.model.has_value());
}

TEST_CASE("random generators") {
  std::mt19937_64 rng(6);
  for (Kind k : kAllKinds) {
    Logic l = make_logic(k);
    auto f = random_frame(l, 3, rng);
    REQUIRE(f);
    CHECK(f->size() == 3);
    CHECK(frame_ok(*f));
    Valuation v = random_valuation(*f, {"p"}, rng);
    CHECK(f->is_up_set(v.at("p")));
    Formula phi = random_formula(l, 4, {"p", "q"}, rng);
    CHECK_NOTHROW(check_signature(phi, l));
    CHECK(formula_depth(phi) <= 4);
  }
}
