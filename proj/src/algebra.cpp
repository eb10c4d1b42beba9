#include "bunchkit/algebra.hpp"

#include <functional>
#include <stdexcept>

namespace bunchkit {

namespace {

int glb(const Algebra& a, int x, int y) {
  int n = a.size(), best = -1;
  for (int z = 0; z < n; ++z) {
    if (!a.le(z, x) || !a.le(z, y)) continue;
    if (best < 0 || a.le(best, z)) best = z;
  }
  if (best < 0) return -1;
  for (int z = 0; z < n; ++z)
    if (a.le(z, x) && a.le(z, y) && !a.le(z, best)) return -1;
  return best;
}

int lub(const Algebra& a, int x, int y) {
  int n = a.size(), best = -1;
  for (int z = 0; z < n; ++z) {
    if (!a.le(x, z) || !a.le(y, z)) continue;
    if (best < 0 || a.le(z, best)) best = z;
  }
  if (best < 0) return -1;
  for (int z = 0; z < n; ++z)
    if (a.le(x, z) && a.le(y, z) && !a.le(best, z)) return -1;
  return best;
}

void require_total(const std::vector<int>& t, const char* what) {
  for (int v : t)
    if (v < 0) throw std::invalid_argument(std::string("no ") + what + " exists for some pair");
}

}  // namespace

std::vector<int> right_residual(const Algebra& a, const std::vector<int>& op) {
  int n = a.size();
  std::vector<int> r(n * n, -1);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      int best = -1;
      for (int x = 0; x < n; ++x)
        if (a.le(op[x * n + b], c) && (best < 0 || a.le(best, x))) best = x;
      if (best >= 0)
        for (int x = 0; x < n; ++x)
          if (a.le(op[x * n + b], c) && !a.le(x, best)) best = -1;
      r[b * n + c] = best;
    }
  return r;
}

std::vector<int> left_residual(const Algebra& a, const std::vector<int>& op) {
  int n = a.size();
  std::vector<int> r(n * n, -1);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      int best = -1;
      for (int x = 0; x < n; ++x)
        if (a.le(op[b * n + x], c) && (best < 0 || a.le(best, x))) best = x;
      if (best >= 0)
        for (int x = 0; x < n; ++x)
          if (a.le(op[b * n + x], c) && !a.le(x, best)) best = -1;
      r[b * n + c] = best;
    }
  return r;
}

void complete_algebra(Algebra& a) {
  int n = a.size();
  if (static_cast<int>(a.leq.size()) != n * n) throw std::invalid_argument("leq has the wrong size");
  auto find_bound = [&](bool top) {
    for (int x = 0; x < n; ++x) {
      bool ok = true;
      for (int y = 0; y < n; ++y) ok = ok && (top ? a.le(y, x) : a.le(x, y));
      if (ok) return x;
    }
    throw std::invalid_argument(top ? "no greatest element" : "no least element");
  };
  if (a.top < 0) a.top = find_bound(true);
  if (a.bot < 0) a.bot = find_bound(false);
  if (a.meet.empty()) {
    a.meet.resize(n * n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) a.meet[x * n + y] = glb(a, x, y);
    require_total(a.meet, "meet");
  }
  if (a.join.empty()) {
    a.join.resize(n * n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) a.join[x * n + y] = lub(a, x, y);
    require_total(a.join, "join");
  }
  if (a.imp.empty()) {
    a.imp = right_residual(a, a.meet);
    require_total(a.imp, "implication");
  }
  Kind k = a.logic.kind;
  if (a.wand.empty() && !a.star.empty()) {
    a.wand = right_residual(a, a.star);
    require_total(a.wand, "-* residual");
  }
  if (a.dnaw.empty() && !a.star.empty()) {
    if (is_commutative(k)) a.dnaw = a.wand;
    else {
      a.dnaw = left_residual(a, a.star);
      require_total(a.dnaw, "*- residual");
    }
  }
  if (is_dm(k) && a.mneg.empty() && !a.wand.empty() && a.mbot >= 0) {
    a.mneg.resize(n);
    for (int x = 0; x < n; ++x) a.mneg[x] = a.op(a.wand, x, a.mbot);
  }
  if (is_bi_bi(k) && a.rslash.empty() && !a.mor.empty()) {
    // a \ b = least c with a <= b mor c
    a.rslash.assign(n * n, -1);
    for (int x = 0; x < n; ++x)
      for (int b = 0; b < n; ++b) {
        int best = -1;
        for (int c = 0; c < n; ++c)
          if (a.le(x, a.op(a.mor, b, c)) && (best < 0 || a.le(c, best))) best = c;
        if (best >= 0)
          for (int c = 0; c < n; ++c)
            if (a.le(x, a.op(a.mor, b, c)) && !a.le(best, c)) best = -1;
        a.rslash[x * n + b] = best;
      }
    require_total(a.rslash, "rslash residual");
  }
  if (k == Kind::CKBI && !a.seq.empty()) {
    if (a.rseq.empty()) {
      a.rseq = right_residual(a, a.seq);
      require_total(a.rseq, "-; residual");
    }
    if (a.lseq.empty()) {
      a.lseq = left_residual(a, a.seq);
      require_total(a.lseq, ";- residual");
    }
  }
}

// ---------------------------------------------------------------- axioms

namespace {

class AlgChecker {
 public:
  AlgChecker(const Algebra& a, bool stop) : a_(a), stop_(stop), n_(a.size()) {}
  std::vector<Violation>& out() { return out_; }
  bool done() const { return stop_ && !out_.empty(); }

  std::pair<std::string, std::string> w(const char* v, int x) const { return {v, a_.names[x]}; }

  // Checks pred over all tuples of the given arity; reports the first failure.
  void forall1(const std::string& name, const std::function<bool(int)>& p) {
    if (done()) return;
    for (int x = 0; x < n_; ++x)
      if (!p(x)) {
        out_.push_back({name, {w("a", x)}, ""});
        return;
      }
  }
  void forall2(const std::string& name, const std::function<bool(int, int)>& p) {
    if (done()) return;
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        if (!p(x, y)) {
          out_.push_back({name, {w("a", x), w("b", y)}, ""});
          return;
        }
  }
  void forall3(const std::string& name, const std::function<bool(int, int, int)>& p) {
    if (done()) return;
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        for (int z = 0; z < n_; ++z)
          if (!p(x, y, z)) {
            out_.push_back({name, {w("a", x), w("b", y), w("c", z)}, ""});
            return;
          }
  }
  void forall4(const std::string& name, const std::function<bool(int, int, int, int)>& p) {
    if (done()) return;
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        for (int z = 0; z < n_; ++z)
          for (int v = 0; v < n_; ++v)
            if (!p(x, y, z, v)) {
              out_.push_back({name, {w("a", x), w("b", y), w("c", z), w("d", v)}, ""});
              return;
            }
  }
  bool table(const std::vector<int>& t, std::size_t len, const char* name) {
    if (done()) return false;
    if (t.size() != len) {
      out_.push_back({std::string("missing table ") + name, {}, ""});
      return false;
    }
    for (int v : t)
      if (v < 0 || v >= n_) {
        out_.push_back({std::string("table out of range ") + name, {}, ""});
        return false;
      }
    return true;
  }
  bool constant(int c, const char* name) {
    if (done()) return false;
    if (c < 0 || c >= n_) {
      out_.push_back({std::string("missing constant ") + name, {}, ""});
      return false;
    }
    return true;
  }

  void run() {
    const Algebra& a = a_;
    std::size_t nn = static_cast<std::size_t>(n_) * n_;
    if (static_cast<int>(a.leq.size()) != n_ * n_) {
      out_.push_back({"missing leq", {}, ""});
      return;
    }
    auto le = [&](int x, int y) { return a.le(x, y); };
    forall1("order reflexive", [&](int x) { return le(x, x); });
    forall2("order antisymmetric", [&](int x, int y) { return !(le(x, y) && le(y, x)) || x == y; });
    forall3("order transitive", [&](int x, int y, int z) { return !(le(x, y) && le(y, z)) || le(x, z); });
    bool lat = table(a.meet, nn, "meet") & table(a.join, nn, "join") & constant(a.top, "top") &
               constant(a.bot, "bot");
    if (!lat) return;
    auto M = [&](int x, int y) { return a.op(a.meet, x, y); };
    auto J = [&](int x, int y) { return a.op(a.join, x, y); };
    forall1("top is greatest", [&](int x) { return le(x, a.top); });
    forall1("bot is least", [&](int x) { return le(a.bot, x); });
    forall3("meet is greatest lower bound",
            [&](int x, int y, int z) { return le(M(x, y), x) && le(M(x, y), y) && (!(le(z, x) && le(z, y)) || le(z, M(x, y))); });
    forall3("join is least upper bound",
            [&](int x, int y, int z) { return le(x, J(x, y)) && le(y, J(x, y)) && (!(le(x, z) && le(y, z)) || le(J(x, y), z)); });
    forall3("distributivity", [&](int x, int y, int z) { return M(x, J(y, z)) == J(M(x, y), M(x, z)); });
    if (table(a.imp, nn, "imp"))
      forall3("Heyting residual", [&](int x, int y, int z) { return le(M(z, x), y) == le(z, a.op(a.imp, x, y)); });
    if (done()) return;
    Kind k = a.logic.kind;
    if (is_boolean(k) && !a.imp.empty())
      forall1("Boolean complement", [&](int x) {
        int nx = a.op(a.imp, x, a.bot);
        return M(x, nx) == a.bot && J(x, nx) == a.top;
      });

    bool mult = table(a.star, nn, "star") & table(a.wand, nn, "wand") & table(a.dnaw, nn, "dnaw");
    if (!mult) return;
    auto S = [&](int x, int y) { return a.op(a.star, x, y); };
    forall3("residuation a*b<=c iff a<=b-*c", [&](int x, int y, int z) { return le(S(x, y), z) == le(x, a.op(a.wand, y, z)); });
    forall3("residuation a*b<=c iff b<=a*-c", [&](int x, int y, int z) { return le(S(x, y), z) == le(y, a.op(a.dnaw, x, z)); });
    if (has_unit(k)) {
      if (!constant(a.munit, "munit")) return;
      forall1("unit law a*emp=a", [&](int x) { return S(x, a.munit) == x && S(a.munit, x) == x; });
      forall2("star commutative", [&](int x, int y) { return S(x, y) == S(y, x); });
      forall3("star associative", [&](int x, int y, int z) { return S(S(x, y), z) == S(x, S(y, z)); });
    }
    if (is_dm(k)) {
      if (!constant(a.mbot, "mbot") || !table(a.mneg, n_, "mneg")) return;
      forall1("mnot a = a -* mbot", [&](int x) { return a.mneg[x] == a.op(a.wand, x, a.mbot); });
      forall1("mnot involutive", [&](int x) { return a.mneg[a.mneg[x]] == x; });
      forall1("mnot emp = mbot", [&](int) { return a.mneg[a.munit] == a.mbot; });
    }
    if (is_bi_bi(k)) {
      if (!constant(a.mbot, "mbot") || !table(a.mor, nn, "mor") || !table(a.rslash, nn, "rslash")) return;
      auto P = [&](int x, int y) { return a.op(a.mor, x, y); };
      forall2("mor commutative", [&](int x, int y) { return P(x, y) == P(y, x); });
      forall3("residuation a<=b mor c iff a\\b<=c",
              [&](int x, int y, int z) { return le(x, P(y, z)) == le(a.op(a.rslash, x, y), z); });
      const Logic& l = a.logic;
      if (l.has(Sigma::Associativity))
        forall3("Sigma Associativity", [&](int x, int y, int z) { return le(P(x, P(y, z)), P(P(x, y), z)); });
      if (l.has(Sigma::MbotWeakening)) forall1("Sigma MbotWeakening", [&](int x) { return le(x, P(x, a.mbot)); });
      if (l.has(Sigma::MbotContraction)) forall1("Sigma MbotContraction", [&](int x) { return le(P(x, a.mbot), x); });
      if (l.has(Sigma::MorContraction)) forall1("Sigma MorContraction", [&](int x) { return le(P(x, x), x); });
      if (l.has(Sigma::WeakDistributivity))
        forall3("Sigma WeakDistributivity", [&](int x, int y, int z) { return le(S(x, P(y, z)), P(S(x, y), z)); });
    }
    if (k == Kind::CKBI) {
      if (!table(a.seq, nn, "seq") || !table(a.rseq, nn, "rseq") || !table(a.lseq, nn, "lseq")) return;
      auto Q = [&](int x, int y) { return a.op(a.seq, x, y); };
      forall3("seq associative", [&](int x, int y, int z) { return Q(Q(x, y), z) == Q(x, Q(y, z)); });
      forall1("seq unit emp", [&](int x) { return Q(x, a.munit) == x && Q(a.munit, x) == x; });
      forall3("residuation a;b<=c iff a<=b-;c", [&](int x, int y, int z) { return le(Q(x, y), z) == le(x, a.op(a.rseq, y, z)); });
      forall3("residuation a;b<=c iff b<=a;-c", [&](int x, int y, int z) { return le(Q(x, y), z) == le(y, a.op(a.lseq, x, z)); });
      forall4("Exchange", [&](int x, int y, int z, int v) { return le(Q(S(x, y), S(z, v)), S(Q(x, z), Q(y, v))); });
    }
    if (k == Kind::SML) {
      if (!table(a.dia, n_, "dia")) return;
      const auto& D = a.dia;
      forall1("dia bot = bot", [&](int) { return D[a.bot] == a.bot; });
      forall2("dia preserves joins", [&](int x, int y) { return D[J(x, y)] == J(D[x], D[y]); });
      if (a.logic.modal != Modal::None) {
        forall1("a <= dia a", [&](int x) { return le(x, D[x]); });
        forall1("dia dia a <= dia a", [&](int x) { return le(D[D[x]], D[x]); });
      }
      if (a.logic.modal == Modal::S5) forall1("dia box a <= box a", [&](int x) { return le(D[a.box(x)], a.box(x)); });
    }
  }

 private:
  const Algebra& a_;
  bool stop_;
  int n_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> check_algebra(const Algebra& a, bool stop_at_first) {
  AlgChecker c(a, stop_at_first);
  c.run();
  return std::move(c.out());
}

// ---------------------------------------------------------------- evaluation

int evaluate(const Algebra& a, const Interpretation& i, const Formula& f) {
  auto ev = [&](const Formula& g) { return evaluate(a, i, g); };
  Kind k = a.logic.kind;
  switch (f->op) {
    case Op::Atom: {
      auto it = i.find(f->name);
      if (it == i.end()) throw std::invalid_argument("interpretation does not cover atom " + f->name);
      return it->second;
    }
    case Op::Top: return a.top;
    case Op::Bot: return a.bot;
    case Op::MUnit: return a.munit;
    case Op::MBot: return a.mbot;
    case Op::And: return a.op(a.meet, ev(f->a), ev(f->b));
    case Op::Or: return a.op(a.join, ev(f->a), ev(f->b));
    case Op::Imp: return a.op(a.imp, ev(f->a), ev(f->b));
    case Op::Not: return a.neg(ev(f->a));
    case Op::Star: return a.op(a.star, ev(f->a), ev(f->b));
    case Op::Wand: return a.op(a.wand, ev(f->a), ev(f->b));
    case Op::Dnaw: return a.op(a.dnaw, ev(f->a), ev(f->b));
    case Op::MNeg: return a.mneg[ev(f->a)];
    case Op::MOr:
      if (is_dm(k)) return a.mneg[a.op(a.star, a.mneg[ev(f->a)], a.mneg[ev(f->b)])];
      return a.op(a.mor, ev(f->a), ev(f->b));
    case Op::RSlash: return a.op(a.rslash, ev(f->a), ev(f->b));
    case Op::Seq: return a.op(a.seq, ev(f->a), ev(f->b));
    case Op::RSeq: return a.op(a.rseq, ev(f->a), ev(f->b));
    case Op::LSeq: return a.op(a.lseq, ev(f->a), ev(f->b));
    case Op::Dia: return a.dia[ev(f->a)];
    case Op::Box: return a.box(ev(f->a));
    case Op::DiaSub: return a.neg(a.op(a.wand, ev(f->a), a.neg(a.dia[ev(f->b)])));
    default: throw std::invalid_argument("pointer-logic formulas have no propositional algebraic value");
  }
}

std::optional<Interpretation> falsify_sequent(const Algebra& a, const Sequent& s, uint64_t cap) {
  std::set<std::string> at = atoms_of(s.lhs);
  for (auto& x : atoms_of(s.rhs)) at.insert(x);
  std::vector<std::string> atoms(at.begin(), at.end());
  uint64_t total = 1;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    total *= static_cast<uint64_t>(a.size());
    if (total > cap) throw std::length_error("too many interpretations to enumerate");
  }
  Interpretation i;
  std::vector<int> cur(atoms.size(), 0);
  for (uint64_t c = 0; c < total; ++c) {
    for (std::size_t j = 0; j < atoms.size(); ++j) i[atoms[j]] = cur[j];
    if (!a.le(evaluate(a, i, s.lhs), evaluate(a, i, s.rhs))) return i;
    for (std::size_t j = 0; j < cur.size(); ++j) {
      if (++cur[j] < a.size()) break;
      cur[j] = 0;
    }
  }
  return std::nullopt;
}

bool validates_sequent(const Algebra& a, const Sequent& s, uint64_t cap) { return !falsify_sequent(a, s, cap); }

// ---------------------------------------------------------------- residuation report

Report residuation_report(const Algebra& a, int subset_cap) {
  Report r;
  int n = a.size();
  auto le = [&](int x, int y) { return a.le(x, y); };
  auto J = [&](int x, int y) { return a.op(a.join, x, y); };
  auto M = [&](int x, int y) { return a.op(a.meet, x, y); };
  auto item = [&](std::string name, const std::function<std::string()>& body) {
    ReportItem it{std::move(name), true, true, ""};
    it.witness = body();
    it.holds = it.witness.empty();
    r.items.push_back(std::move(it));
  };
  auto nm = [&](int x) { return a.names[x]; };
  bool subsets = n <= subset_cap;
  std::vector<int> joinX, meetX;
  if (subsets) {
    joinX.assign(1u << n, a.bot);
    meetX.assign(1u << n, a.top);
    for (unsigned m = 1; m < (1u << n); ++m) {
      int low = __builtin_ctz(m);
      joinX[m] = J(joinX[m & (m - 1)], low);
      meetX[m] = M(meetX[m & (m - 1)], low);
    }
  }
  auto skipped = [&](std::string name) { r.items.push_back({std::move(name), false, true, ""}); };

  // Generic checks for a binary operation.
  auto monotone = [&](const std::vector<int>& t) -> std::string {
    for (int x = 0; x < n; ++x)
      for (int x2 = 0; x2 < n; ++x2)
        if (le(x, x2))
          for (int y = 0; y < n; ++y)
            for (int y2 = 0; y2 < n; ++y2)
              if (le(y, y2) && !le(a.op(t, x, y), a.op(t, x2, y2)))
                return nm(x) + "<=" + nm(x2) + ", " + nm(y) + "<=" + nm(y2);
    return "";
  };
  // op(fold X, fold Y) == fold over pairs, with fold = join (preserve joins) or meet.
  auto preserves = [&](const std::vector<int>& t, bool joins) -> std::string {
    const auto& fx = joins ? joinX : meetX;
    int unit = joins ? a.bot : a.top;
    // row[x][mask] = fold_{y in mask} op(x, y)
    std::vector<int> row(static_cast<std::size_t>(n) << n);
    for (int x = 0; x < n; ++x) {
      row[(static_cast<std::size_t>(x) << n)] = unit;
      for (unsigned m = 1; m < (1u << n); ++m) {
        int low = __builtin_ctz(m);
        int prev = row[(static_cast<std::size_t>(x) << n) | (m & (m - 1))];
        int v = a.op(t, x, low);
        row[(static_cast<std::size_t>(x) << n) | m] = joins ? J(prev, v) : M(prev, v);
      }
    }
    for (unsigned X = 0; X < (1u << n); ++X)
      for (unsigned Y = 0; Y < (1u << n); ++Y) {
        int acc = unit;
        for (int x = 0; x < n; ++x)
          if (X >> x & 1) acc = joins ? J(acc, row[(static_cast<std::size_t>(x) << n) | Y]) : M(acc, row[(static_cast<std::size_t>(x) << n) | Y]);
        if (acc != a.op(t, fx[X], fx[Y])) return "X=" + std::to_string(X) + ", Y=" + std::to_string(Y);
      }
    return "";
  };
  // fold_{x in X} op(arg(x, z)) == op(arg(fold' X, z)) over all X, z.
  auto subset_rule = [&](const std::vector<int>& t, bool first_arg, bool fold_join, bool inner_join) -> std::string {
    const auto& fx = inner_join ? joinX : meetX;
    int unit = fold_join ? a.bot : a.top;
    for (int z = 0; z < n; ++z)
      for (unsigned X = 0; X < (1u << n); ++X) {
        int acc = unit;
        for (int x = 0; x < n; ++x)
          if (X >> x & 1) {
            int v = first_arg ? a.op(t, x, z) : a.op(t, z, x);
            acc = fold_join ? J(acc, v) : M(acc, v);
          }
        int rhs = first_arg ? a.op(t, fx[X], z) : a.op(t, z, fx[X]);
        if (acc != rhs) return "X=" + std::to_string(X) + ", z=" + nm(z);
      }
    return "";
  };

  if (!a.star.empty()) {
    item("star monotone", [&] { return monotone(a.star); });
    if (subsets) item("star preserves joins in each argument", [&] { return preserves(a.star, true); });
    else skipped("star preserves joins in each argument");
    item("bot annihilates star", [&]() -> std::string {
      for (int x = 0; x < n; ++x)
        if (a.op(a.star, x, a.bot) != a.bot || a.op(a.star, a.bot, x) != a.bot) return nm(x);
      return "";
    });
    if (subsets) {
      item("wand turns joins in its first argument into meets", [&] {
        std::string s = subset_rule(a.wand, true, false, true);
        return s.empty() ? subset_rule(a.dnaw, true, false, true) : s;
      });
      item("wand preserves meets in its second argument", [&] {
        std::string s = subset_rule(a.wand, false, false, false);
        return s.empty() ? subset_rule(a.dnaw, false, false, false) : s;
      });
    } else {
      skipped("wand turns joins in its first argument into meets");
      skipped("wand preserves meets in its second argument");
    }
    item("wands into top and out of bot are top", [&]() -> std::string {
      for (int x = 0; x < n; ++x)
        if (a.op(a.wand, x, a.top) != a.top || a.op(a.dnaw, x, a.top) != a.top || a.op(a.wand, a.bot, x) != a.top ||
            a.op(a.dnaw, a.bot, x) != a.top)
          return nm(x);
      return "";
    });
  }
  if (is_bi_bi(a.logic.kind) && !a.mor.empty()) {
    item("mor monotone", [&] { return monotone(a.mor); });
    if (subsets) item("mor preserves meets in each argument", [&] { return preserves(a.mor, false); });
    else skipped("mor preserves meets in each argument");
    item("top absorbs mor", [&]() -> std::string {
      for (int x = 0; x < n; ++x)
        if (a.op(a.mor, x, a.top) != a.top || a.op(a.mor, a.top, x) != a.top) return nm(x);
      return "";
    });
    if (subsets) {
      item("rslash preserves joins in its first argument", [&] { return subset_rule(a.rslash, true, true, true); });
      item("rslash turns meets in its second argument into joins",
           [&] { return subset_rule(a.rslash, false, true, false); });
    } else {
      skipped("rslash preserves joins in its first argument");
      skipped("rslash turns meets in its second argument into joins");
    }
    item("rslash by top and from bot is bot", [&]() -> std::string {
      for (int x = 0; x < n; ++x)
        if (a.op(a.rslash, x, a.top) != a.bot || a.op(a.rslash, a.bot, x) != a.bot) return nm(x);
      return "";
    });
  }
  return r;
}

bool same_algebra(const Algebra& x, const Algebra& y) {
  return x.logic == y.logic && x.names == y.names && x.leq == y.leq && x.meet == y.meet && x.join == y.join &&
         x.imp == y.imp && x.star == y.star && x.wand == y.wand && x.dnaw == y.dnaw && x.mor == y.mor &&
         x.rslash == y.rslash && x.seq == y.seq && x.rseq == y.rseq && x.lseq == y.lseq && x.mneg == y.mneg &&
         x.dia == y.dia && x.top == y.top && x.bot == y.bot && x.munit == y.munit && x.mbot == y.mbot;
}

Report asl_check(const Algebra& a) {
  if (a.logic.kind != Kind::CKBI) throw std::invalid_argument("asl_check needs a CKBI algebra");
  int n = a.size();
  auto nm = [&](int x) { return a.names[x]; };
  Report r;
  ReportItem frame{"ASL Frame rule", true, true, ""};
  for (int p = 0; p < n && frame.holds; ++p)
    for (int c = 0; c < n && frame.holds; ++c)
      for (int q = 0; q < n && frame.holds; ++q) {
        if (!a.le(a.op(a.seq, p, c), q)) continue;
        for (int x = 0; x < n; ++x)
          if (!a.le(a.op(a.seq, a.op(a.star, p, x), c), a.op(a.star, q, x))) {
            frame.holds = false;
            frame.witness = "p=" + nm(p) + " c=" + nm(c) + " q=" + nm(q) + " r=" + nm(x);
            break;
          }
      }
  r.items.push_back(frame);
  // Triples that hold, grouped by command.
  std::vector<std::vector<std::pair<int, int>>> holds(n);
  for (int p = 0; p < n; ++p)
    for (int c = 0; c < n; ++c)
      for (int q = 0; q < n; ++q)
        if (a.le(a.op(a.seq, p, c), q)) holds[c].push_back({p, q});
  ReportItem conc{"ASL Concurrency rule", true, true, ""};
  for (int c1 = 0; c1 < n && conc.holds; ++c1)
    for (int c2 = 0; c2 < n && conc.holds; ++c2) {
      int c = a.op(a.star, c1, c2);
      for (auto [p1, q1] : holds[c1]) {
        for (auto [p2, q2] : holds[c2])
          if (!a.le(a.op(a.seq, a.op(a.star, p1, p2), c), a.op(a.star, q1, q2))) {
            conc.holds = false;
            conc.witness = "p1=" + nm(p1) + " c1=" + nm(c1) + " q1=" + nm(q1) + " p2=" + nm(p2) + " c2=" + nm(c2) +
                           " q2=" + nm(q2);
            break;
          }
        if (!conc.holds) break;
      }
    }
  r.items.push_back(conc);
  return r;
}

}  // namespace bunchkit
