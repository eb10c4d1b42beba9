#include "bunchkit/frame.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

namespace bunchkit {

StateSet Frame::down(int x) const {
  StateSet s = none();
  for (int y = 0; y < size(); ++y)
    if (up[y].test(x)) s.set(y);
  return s;
}

StateSet Frame::up_closure(const StateSet& s) const {
  StateSet r = none();
  s.for_each([&](int x) { r |= up[x]; });
  return r;
}

StateSet Frame::down_closure(const StateSet& s) const {
  StateSet r = none();
  for (int y = 0; y < size(); ++y)
    if (up[y].intersects(s)) r.set(y);
  return r;
}

bool Frame::is_up_set(const StateSet& s) const {
  bool ok = true;
  s.for_each([&](int x) { ok = ok && up[x].subset_of(s); });
  return ok;
}

int Frame::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == name) return i;
  return -1;
}

Frame make_frame(const Logic& logic, std::vector<std::string> names) {
  Frame f;
  f.logic = logic;
  f.names = std::move(names);
  std::size_t n = f.names.size();
  for (std::size_t i = 0; i < n; ++i) f.up.push_back(StateSet::single(n, i));
  f.comp.assign(n * n, StateSet(n));
  f.E = StateSet(n);
  f.U = StateSet(n);
  Kind k = logic.kind;
  if (is_dm(k)) {
    f.minus.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.minus[i] = static_cast<int>(i);
  }
  if (is_bi_bi(k)) f.nabla.assign(n * n, StateSet(n));
  if (k == Kind::CKBI) f.seq.assign(n * n, StateSet(n));
  if (k == Kind::SML) f.R.assign(n, StateSet(n));
  return f;
}

Frame make_frame(const Logic& logic, int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return make_frame(logic, std::move(names));
}

bool same_frame(const Frame& a, const Frame& b) {
  return a.logic == b.logic && a.names == b.names && a.up == b.up && a.comp == b.comp && a.E == b.E &&
         a.minus == b.minus && a.nabla == b.nabla && a.U == b.U && a.seq == b.seq && a.R == b.R;
}

// ---------------------------------------------------------------- frame axioms

namespace {

class Checker {
 public:
  Checker(const Frame& f, bool stop) : f_(f), stop_(stop), n_(f.size()) {}

  bool done() const { return stop_ && !out_.empty(); }
  std::vector<Violation>& out() { return out_; }

  // Runs body; body returns a violation or nothing.
  void rule(const std::function<std::optional<Violation>()>& body) {
    if (done()) return;
    if (auto v = body()) out_.push_back(std::move(*v));
  }

  std::pair<std::string, std::string> w(const char* var, int s) const { return {var, f_.names[s]}; }

  void order() {
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x)
        if (!f_.leq(x, x)) return Violation{"Preorder reflexivity", {w("x", x)}, ""};
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x)
        for (int y : f_.up[x].elements())
          if (!f_.up[y].subset_of(f_.up[x])) {
            int z = (f_.up[y] - f_.up[x]).first();
            return Violation{"Preorder transitivity", {w("x", x), w("y", y), w("z", z)}, ""};
          }
      return std::nullopt;
    });
    if (is_boolean(f_.logic.kind)) {
      rule([&]() -> std::optional<Violation> {
        for (int x = 0; x < n_; ++x)
          for (int y : f_.up[x].elements())
            if (y != x) return Violation{"Discrete order", {w("x", x), w("y", y)}, "Boolean kinds order states by equality"};
        return std::nullopt;
      });
    }
  }

  void monoid() {
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y)
          if (!f_.c(x, y).subset_of(f_.c(y, x)))
            return Violation{"Commutativity", {w("x", x), w("y", y), w("z", (f_.c(x, y) - f_.c(y, x)).first())}, ""};
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int e : f_.E.elements())
        if (!f_.up[e].subset_of(f_.E))
          return Violation{"Closure", {w("e", e), w("e'", (f_.up[e] - f_.E).first())}, ""};
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x) {
        bool ok = false;
        f_.E.for_each([&](int e) { ok = ok || f_.c(x, e).test(x); });
        if (!ok) return Violation{"Unit Existence", {w("x", x)}, ""};
      }
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int e : f_.E.elements())
        for (int y = 0; y < n_; ++y)
          for (int x : f_.c(y, e).elements())
            if (!f_.leq(y, x)) return Violation{"Coherence", {w("e", e), w("y", y), w("x", x)}, ""};
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y) {
          StateSet ts = f_.up_closure(f_.c(x, y));
          for (int z = 0; z < n_; ++z) {
            StateSet reach = f_.none();
            f_.up_closure(f_.c(y, z)).for_each([&](int s) { reach |= f_.c(x, s); });
            StateSet good = f_.up_closure(reach);
            for (int t : ts.elements())
              if (!f_.c(t, z).subset_of(good))
                return Violation{"Associativity",
                                 {w("x", x), w("y", y), w("z", z), w("t'", t), w("w", (f_.c(t, z) - good).first())},
                                 ""};
          }
        }
      return std::nullopt;
    });
  }

  void de_morgan() {
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x)
        if (f_.minus[f_.minus[x]] != x) return Violation{"Involutive", {w("x", x)}, ""};
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x)
        for (int y : f_.up[x].elements())
          if (!f_.leq(f_.minus[y], f_.minus[x])) return Violation{"Dual", {w("x", x), w("y", y)}, ""};
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y)
          for (int z : f_.c(x, y).elements())
            if (!f_.c(f_.minus[z], y).test(f_.minus[x]))
              return Violation{"Compatibility", {w("x", x), w("y", y), w("z", z)}, ""};
      return std::nullopt;
    });
  }

  void bi_bi() {
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y)
          if (!f_.nab(x, y).subset_of(f_.nab(y, x)))
            return Violation{"Nabla commutativity",
                             {w("x", x), w("y", y), w("z", (f_.nab(x, y) - f_.nab(y, x)).first())}, ""};
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      StateSet d = f_.down_closure(f_.U);
      if (!d.subset_of(f_.U)) {
        int u2 = (d - f_.U).first();
        int u = (f_.up[u2] & f_.U).first();
        return Violation{"U-Closure", {w("u", u), w("u'", u2)}, ""};
      }
      return std::nullopt;
    });
  }

  void ckbi() {
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x) {
        bool ok = false;
        f_.E.for_each([&](int e) { ok = ok || f_.sq(e, x).test(x); });
        if (!ok) return Violation{"Unit Existence L", {w("x", x)}, ""};
      }
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x) {
        bool ok = false;
        f_.E.for_each([&](int e) { ok = ok || f_.sq(x, e).test(x); });
        if (!ok) return Violation{"Unit Existence R", {w("x", x)}, ""};
      }
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int e : f_.E.elements())
        for (int y = 0; y < n_; ++y)
          for (int x : f_.sq(e, y).elements())
            if (x != y) return Violation{"Coherence L", {w("e", e), w("y", y), w("x", x)}, ""};
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int e : f_.E.elements())
        for (int y = 0; y < n_; ++y)
          for (int x : f_.sq(y, e).elements())
            if (x != y) return Violation{"Coherence R", {w("e", e), w("y", y), w("x", x)}, ""};
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y)
          for (int z = 0; z < n_; ++z) {
            StateSet l = f_.none(), r = f_.none();
            f_.sq(x, y).for_each([&](int t) { l |= f_.sq(t, z); });
            f_.sq(y, z).for_each([&](int t) { r |= f_.sq(x, t); });
            if (!(l == r)) {
              int wv = (l - r).any() ? (l - r).first() : (r - l).first();
              return Violation{"Seq associativity", {w("x", x), w("y", y), w("z", z), w("w", wv)}, ""};
            }
          }
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int wv = 0; wv < n_; ++wv)
        for (int x = 0; x < n_; ++x)
          for (int y = 0; y < n_; ++y)
            for (int z = 0; z < n_; ++z) {
              StateSet good = f_.none();
              f_.sq(wv, x).for_each([&](int r) { f_.sq(y, z).for_each([&](int v) { good |= f_.c(r, v); }); });
              StateSet lhs = f_.none();
              f_.c(wv, y).for_each([&](int t) { f_.c(x, z).for_each([&](int s) { lhs |= f_.sq(t, s); }); });
              if (!lhs.subset_of(good))
                return Violation{"Exchange",
                                 {w("w", wv), w("x", x), w("y", y), w("z", z), w("u", (lhs - good).first())}, ""};
            }
      return std::nullopt;
    });
  }

  void modal() {
    Modal m = f_.logic.modal;
    if (m == Modal::None) return;
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x)
        if (!f_.R[x].test(x)) return Violation{"R reflexive", {w("x", x)}, ""};
      return std::nullopt;
    });
    rule([&]() -> std::optional<Violation> {
      for (int x = 0; x < n_; ++x)
        for (int y : f_.R[x].elements())
          if (!f_.R[y].subset_of(f_.R[x]))
            return Violation{"R transitive", {w("x", x), w("y", y), w("z", (f_.R[y] - f_.R[x]).first())}, ""};
      return std::nullopt;
    });
    if (m == Modal::S5) {
      rule([&]() -> std::optional<Violation> {
        for (int x = 0; x < n_; ++x)
          for (int y : f_.R[x].elements())
            if (!f_.R[y].test(x)) return Violation{"R symmetric", {w("x", x), w("y", y)}, ""};
        return std::nullopt;
      });
    }
  }

  void sigma(Sigma row) {
    switch (row) {
      case Sigma::Associativity:
        rule([&]() -> std::optional<Violation> {
          for (int x = 0; x < n_; ++x)
            for (int y = 0; y < n_; ++y) {
              StateSet ts = f_.down_closure(f_.nab(x, y));
              for (int z = 0; z < n_; ++z) {
                StateSet reach = f_.none();
                f_.down_closure(f_.nab(y, z)).for_each([&](int s) { reach |= f_.nab(x, s); });
                StateSet good = f_.down_closure(reach);
                for (int t : ts.elements())
                  if (!f_.nab(t, z).subset_of(good))
                    return Violation{"Sigma Associativity",
                                     {w("x", x), w("y", y), w("z", z), w("t'", t),
                                      w("w", (f_.nab(t, z) - good).first())},
                                     ""};
              }
            }
          return std::nullopt;
        });
        break;
      case Sigma::MbotWeakening:
        rule([&]() -> std::optional<Violation> {
          for (int u : f_.U.elements())
            for (int y = 0; y < n_; ++y)
              for (int x : f_.nab(y, u).elements())
                if (!f_.leq(x, y)) return Violation{"Sigma MbotWeakening", {w("u", u), w("y", y), w("x", x)}, ""};
          return std::nullopt;
        });
        break;
      case Sigma::MbotContraction:
        rule([&]() -> std::optional<Violation> {
          for (int x = 0; x < n_; ++x) {
            bool ok = false;
            f_.U.for_each([&](int u) { ok = ok || f_.nab(x, u).test(x); });
            if (!ok) return Violation{"Sigma MbotContraction", {w("w", x)}, ""};
          }
          return std::nullopt;
        });
        break;
      case Sigma::MorContraction:
        rule([&]() -> std::optional<Violation> {
          for (int x = 0; x < n_; ++x)
            if (!f_.nab(x, x).test(x)) return Violation{"Sigma MorContraction", {w("x", x)}, ""};
          return std::nullopt;
        });
        break;
      case Sigma::WeakDistributivity:
        rule([&]() -> std::optional<Violation> {
          for (int x1 = 0; x1 < n_; ++x1)
            for (int x2 = 0; x2 < n_; ++x2) {
              StateSet ts = f_.up_closure(f_.c(x1, x2));
              for (int y1 = 0; y1 < n_; ++y1)
                for (int y2 = 0; y2 < n_; ++y2) {
                  if (!ts.intersects(f_.nab(y1, y2))) continue;
                  bool ok = false;
                  for (int wv = 0; wv < n_ && !ok; ++wv) ok = f_.c(x1, wv).test(y1) && f_.nab(wv, y2).test(x2);
                  if (!ok)
                    return Violation{"Sigma WeakDistributivity",
                                     {w("x1", x1), w("x2", x2), w("y1", y1), w("y2", y2)}, ""};
                }
            }
          return std::nullopt;
        });
        break;
    }
  }

 private:
  const Frame& f_;
  bool stop_;
  int n_;
  std::vector<Violation> out_;
};

void check_shape(const Frame& f) {
  std::size_t n = f.names.size();
  auto bad = [](const std::string& m) { throw std::invalid_argument("malformed frame: " + m); };
  if (f.up.size() != n || f.comp.size() != n * n) bad("order or composition has the wrong size");
  Kind k = f.logic.kind;
  if (is_dm(k) != (f.minus.size() == n) && n > 0) bad("minus must be present exactly for DMBI/CBI");
  for (int m : f.minus)
    if (m < 0 || m >= static_cast<int>(n)) bad("minus maps outside the states");
  if (is_bi_bi(k) != (f.nabla.size() == n * n) && n > 0) bad("nabla must be present exactly for BiBI/BiBBI");
  if ((k == Kind::CKBI) != (f.seq.size() == n * n) && n > 0) bad("seq must be present exactly for CKBI");
  if ((k == Kind::SML) != (f.R.size() == n) && n > 0) bad("R must be present exactly for SML");
}

}  // namespace

std::vector<Violation> check_frame(const Frame& f, bool stop_at_first) {
  check_shape(f);
  Checker c(f, stop_at_first);
  c.order();
  Kind k = f.logic.kind;
  if (has_unit(k)) c.monoid();
  if (is_dm(k)) c.de_morgan();
  if (is_bi_bi(k)) {
    c.bi_bi();
    for (Sigma s : kAllSigma)
      if (f.logic.has(s)) c.sigma(s);
  }
  if (k == Kind::CKBI) c.ckbi();
  if (k == Kind::SML) c.modal();
  return std::move(c.out());
}

std::vector<Violation> check_sigma_row(const Frame& f, Sigma row, bool stop_at_first) {
  check_shape(f);
  Checker c(f, stop_at_first);
  c.sigma(row);
  return std::move(c.out());
}

std::vector<Violation> check_udmf(const Frame& f) {
  std::vector<Violation> out;
  int n = f.size();
  auto w = [&](const char* v, int s) { return std::pair<std::string, std::string>{v, f.names[s]}; };
  auto once = [&](const std::function<std::optional<Violation>()>& body) {
    if (auto v = body()) out.push_back(*v);
  };
  // Reuse the shared order, commutativity, unit and coherence checks.
  Frame g = f;
  for (auto& v : check_frame(g))
    if (v.axiom != "Associativity") out.push_back(v);
  once([&]() -> std::optional<Violation> {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          StateSet good = f.none();
          f.c(y, z).for_each([&](int s2) { good |= f.c(x, s2); });
          for (int s : f.c(x, y).elements())
            if (!f.c(s, z).subset_of(good))
              return Violation{"Non-deterministic associativity",
                               {w("x", x), w("y", y), w("z", z), w("s", s), w("t", (f.c(s, z) - good).first())}, ""};
        }
    return std::nullopt;
  });
  once([&]() -> std::optional<Violation> {
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int x : f.c(y, z).elements())
          for (int y2 : f.down(y).elements())
            for (int z2 : f.down(z).elements())
              if (!f.c(y2, z2).intersects(f.down(x)))
                return Violation{"Downwards-closed", {w("x", x), w("y", y), w("z", z), w("y'", y2), w("z'", z2)}, ""};
    return std::nullopt;
  });
  once([&]() -> std::optional<Violation> {
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int x : f.c(y, z).elements())
          for (int x2 : f.up[x].elements()) {
            bool ok = false;
            for (int y2 : f.up[y].elements())
              for (int z2 : f.up[z].elements()) ok = ok || f.c(y2, z2).test(x2);
            if (!ok) return Violation{"Upwards-closed", {w("x", x), w("y", y), w("z", z), w("x'", x2)}, ""};
          }
    return std::nullopt;
  });
  return out;
}

// ---------------------------------------------------------------- satisfaction

namespace {

StateSet upset_forall(const Frame& fr, const StateSet& good) {
  // {x | up(x) subset of good}
  StateSet r = fr.none();
  for (int x = 0; x < fr.size(); ++x)
    if (fr.up[x].subset_of(good)) r.set(x);
  return r;
}

StateSet ext(const Model& m, const Formula& f) {
  const Frame& fr = m.frame;
  int n = fr.size();
  Kind k = fr.logic.kind;
  switch (f->op) {
    case Op::Atom: {
      auto it = m.val.find(f->name);
      return it == m.val.end() ? fr.none() : it->second;
    }
    case Op::Top: return fr.all();
    case Op::Bot: return fr.none();
    case Op::MUnit: return fr.E;
    case Op::MBot: {
      if (is_bi_bi(k)) return ~fr.U;
      StateSet r = fr.none();
      for (int x = 0; x < n; ++x)
        if (!fr.E.test(fr.minus[x])) r.set(x);
      return r;
    }
    case Op::And: return ext(m, f->a) & ext(m, f->b);
    case Op::Or: return ext(m, f->a) | ext(m, f->b);
    case Op::Imp: {
      StateSet a = ext(m, f->a), b = ext(m, f->b);
      StateSet r = fr.none();
      for (int x = 0; x < n; ++x)
        if ((fr.up[x] & a).subset_of(b)) r.set(x);
      return r;
    }
    case Op::Not: {
      StateSet a = ext(m, f->a);
      StateSet r = fr.none();
      for (int x = 0; x < n; ++x)
        if (!fr.up[x].intersects(a)) r.set(x);
      return r;
    }
    case Op::Star: {
      StateSet a = ext(m, f->a), b = ext(m, f->b);
      StateSet r = fr.none();
      a.for_each([&](int y) { b.for_each([&](int z) { r |= fr.c(y, z); }); });
      return m.mode == Mode::Udmf ? r : fr.up_closure(r);
    }
    case Op::Wand:
    case Op::Dnaw: {
      StateSet a = ext(m, f->a), b = ext(m, f->b);
      StateSet good = fr.none();
      for (int x = 0; x < n; ++x) {
        bool ok = true;
        a.for_each([&](int y) { ok = ok && (f->op == Op::Wand ? fr.c(x, y) : fr.c(y, x)).subset_of(b); });
        if (ok) good.set(x);
      }
      return m.mode == Mode::Udmf ? good : upset_forall(fr, good);
    }
    case Op::MNeg: {
      StateSet a = ext(m, f->a);
      StateSet r = fr.none();
      for (int x = 0; x < n; ++x)
        if (!a.test(fr.minus[x])) r.set(x);
      return r;
    }
    case Op::MOr: {
      if (is_dm(k)) return ext(m, expand_defined(f, fr.logic));
      StateSet na = ~ext(m, f->a), nb = ~ext(m, f->b);
      StateSet bad = fr.none();
      na.for_each([&](int t) { nb.for_each([&](int u) { bad |= fr.nab(t, u); }); });
      StateSet r = fr.none();
      for (int x = 0; x < n; ++x)
        if (!fr.up[x].intersects(bad)) r.set(x);
      return r;
    }
    case Op::RSlash: {
      StateSet a = ext(m, f->a), nb = ~ext(m, f->b);
      StateSet g = fr.none();
      for (int s = 0; s < n; ++s) {
        bool ok = false;
        nb.for_each([&](int t) { ok = ok || fr.nab(t, s).intersects(a); });
        if (ok) g.set(s);
      }
      return fr.up_closure(g);
    }
    case Op::Seq: {
      StateSet a = ext(m, f->a), b = ext(m, f->b);
      StateSet r = fr.none();
      a.for_each([&](int y) { b.for_each([&](int z) { r |= fr.sq(y, z); }); });
      return r;
    }
    case Op::RSeq:
    case Op::LSeq: {
      StateSet a = ext(m, f->a), b = ext(m, f->b);
      StateSet r = fr.none();
      for (int x = 0; x < n; ++x) {
        bool ok = true;
        a.for_each([&](int y) { ok = ok && (f->op == Op::RSeq ? fr.sq(x, y) : fr.sq(y, x)).subset_of(b); });
        if (ok) r.set(x);
      }
      return r;
    }
    case Op::Dia: {
      StateSet a = ext(m, f->a);
      StateSet r = fr.none();
      for (int x = 0; x < n; ++x)
        if (fr.R[x].intersects(a)) r.set(x);
      return r;
    }
    case Op::Box: {
      StateSet a = ext(m, f->a);
      StateSet r = fr.none();
      for (int x = 0; x < n; ++x)
        if (fr.R[x].subset_of(a)) r.set(x);
      return r;
    }
    case Op::DiaSub: {
      StateSet a = ext(m, f->a), b = ext(m, f->b);
      StateSet d = fr.none();
      for (int z = 0; z < n; ++z)
        if (fr.R[z].intersects(b)) d.set(z);
      StateSet r = fr.none();
      for (int x = 0; x < n; ++x) {
        bool ok = false;
        a.for_each([&](int y) { ok = ok || fr.c(x, y).intersects(d); });
        if (ok) r.set(x);
      }
      return r;
    }
    case Op::Eq:
    case Op::PointsTo:
    case Op::Exists:
    case Op::Forall:
      throw std::invalid_argument("pointer-logic formulas are evaluated by the heap module, not on frames");
  }
  return fr.none();
}

}  // namespace

StateSet extension(const Model& m, const Formula& f) {
  if (m.mode == Mode::Udmf && base_kind(m.frame.logic.kind) != Kind::BI && base_kind(m.frame.logic.kind) != Kind::BBI)
    throw std::invalid_argument("udmf mode is only defined for (B)BI frames");
  return ext(m, f);
}

bool satisfies(const Model& m, int x, const Formula& f) { return extension(m, f).test(x); }

bool entails_in_model(const Model& m, const Sequent& s) {
  return extension(m, s.lhs).subset_of(extension(m, s.rhs));
}

bool check_persistent(const Frame& f, const Valuation& v) {
  for (auto& [name, set] : v)
    if (!f.is_up_set(set)) return false;
  return true;
}

std::vector<PersistenceViolation> persistence_sweep(const Model& m, const std::vector<Formula>& fs) {
  std::vector<PersistenceViolation> out;
  for (const auto& f : fs) {
    StateSet e = extension(m, f);
    for (int x : e.elements())
      for (int y : m.frame.up[x].elements())
        if (!e.test(y)) out.push_back({print_formula(f), x, y});
  }
  return out;
}

Frame updown_closure(const Frame& f) {
  if (f.logic.kind != Kind::BI) throw std::invalid_argument("updown_closure expects a BI frame");
  auto v = check_frame(f, true);
  if (!v.empty()) throw std::invalid_argument("input is not a BI frame: " + v.front().axiom);
  Frame g = f;
  int n = f.size();
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      StateSet r = f.none();
      f.up[y].for_each([&](int y2) { f.up[z].for_each([&](int z2) { r |= f.c(y2, z2); }); });
      g.c(y, z) = f.up_closure(r);
    }
  return g;
}

// ---------------------------------------------------------------- morphisms

std::vector<Violation> check_morphism(const std::vector<int>& g, const Frame& a, const Frame& b) {
  std::vector<Violation> out;
  int n = a.size(), m = b.size();
  if (static_cast<int>(g.size()) != n) {
    out.push_back({"total", {}, "map must send every state of the source"});
    return out;
  }
  for (int x = 0; x < n; ++x)
    if (g[x] < 0 || g[x] >= m) {
      out.push_back({"total", {{"x", a.names[x]}}, "image outside the target"});
      return out;
    }
  Kind k = a.logic.kind;
  if (b.logic.kind != k) {
    out.push_back({"kind", {}, "frames have different kinds"});
    return out;
  }
  auto wa = [&](const char* v, int s) { return std::pair<std::string, std::string>{v, a.names[s]}; };
  auto wb = [&](const char* v, int s) { return std::pair<std::string, std::string>{v, b.names[s]}; };
  auto once = [&](const std::function<std::optional<Violation>()>& body) {
    if (auto v = body()) out.push_back(*v);
  };
  // Preimage g^-1 of a target state, and the image of a set.
  auto pre = [&](int y2) {
    StateSet s = a.none();
    for (int x = 0; x < n; ++x)
      if (g[x] == y2) s.set(x);
    return s;
  };

  // Forth/back clauses for a ternary relation, LGL style (order is equality).
  auto lgl_clauses = [&](auto rel_a, auto rel_b, const std::string& prefix) {
    once([&]() -> std::optional<Violation> {
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (int x : rel_a(y, z).elements())
            if (!rel_b(g[y], g[z]).test(g[x])) return Violation{prefix + "1", {wa("x", x), wa("y", y), wa("z", z)}, ""};
      return std::nullopt;
    });
    once([&]() -> std::optional<Violation> {
      for (int x = 0; x < n; ++x)
        for (int y2 = 0; y2 < m; ++y2)
          for (int z2 = 0; z2 < m; ++z2) {
            if (!rel_b(y2, z2).test(g[x])) continue;
            bool ok = false;
            pre(y2).for_each([&](int y) { pre(z2).for_each([&](int z) { ok = ok || rel_a(y, z).test(x); }); });
            if (!ok) return Violation{prefix + "2", {wa("x", x), wb("y'", y2), wb("z'", z2)}, ""};
          }
      return std::nullopt;
    });
    once([&]() -> std::optional<Violation> {
      for (int x = 0; x < n; ++x)
        for (int y2 = 0; y2 < m; ++y2)
          for (int z2 : rel_b(g[x], y2).elements()) {
            bool ok = false;
            pre(y2).for_each([&](int y) { ok = ok || rel_a(x, y).intersects(pre(z2)); });
            if (!ok) return Violation{prefix + "3", {wa("x", x), wb("y'", y2), wb("z'", z2)}, ""};
          }
      return std::nullopt;
    });
    once([&]() -> std::optional<Violation> {
      for (int x = 0; x < n; ++x)
        for (int y2 = 0; y2 < m; ++y2)
          for (int z2 : rel_b(y2, g[x]).elements()) {
            bool ok = false;
            pre(y2).for_each([&](int y) { ok = ok || rel_a(y, x).intersects(pre(z2)); });
            if (!ok) return Violation{prefix + "4", {wa("x", x), wb("y'", y2), wb("z'", z2)}, ""};
          }
      return std::nullopt;
    });
  };

  auto comp_a = [&](int x, int y) -> const StateSet& { return a.c(x, y); };
  auto comp_b = [&](int x, int y) -> const StateSet& { return b.c(x, y); };

  if (is_boolean(k)) {
    lgl_clauses(comp_a, comp_b, "");
  } else {
    once([&]() -> std::optional<Violation> {
      for (int x = 0; x < n; ++x)
        for (int y : a.up[x].elements())
          if (!b.leq(g[x], g[y])) return Violation{"1", {wa("x", x), wa("y", y)}, ""};
      return std::nullopt;
    });
    once([&]() -> std::optional<Violation> {
      for (int x = 0; x < n; ++x)
        for (int y2 : b.up[g[x]].elements())
          if (!a.up[x].intersects(pre(y2))) return Violation{"2", {wa("x", x), wb("y'", y2)}, ""};
      return std::nullopt;
    });
    once([&]() -> std::optional<Violation> {
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (int x : a.c(y, z).elements())
            if (!b.c(g[y], g[z]).test(g[x])) return Violation{"3", {wa("x", x), wa("y", y), wa("z", z)}, ""};
      return std::nullopt;
    });
    once([&]() -> std::optional<Violation> {
      for (int x = 0; x < n; ++x)
        for (int w2 : b.down(g[x]).elements())
          for (int y2 = 0; y2 < m; ++y2)
            for (int z2 = 0; z2 < m; ++z2) {
              if (!b.c(y2, z2).test(w2)) continue;
              bool ok = false;
              for (int w : a.down(x).elements())
                for (int y = 0; y < n && !ok; ++y)
                  for (int z = 0; z < n && !ok; ++z)
                    ok = a.c(y, z).test(w) && b.leq(y2, g[y]) && b.leq(z2, g[z]);
              if (!ok) return Violation{"4", {wa("x", x), wb("w'", w2), wb("y'", y2), wb("z'", z2)}, ""};
            }
      return std::nullopt;
    });
    auto clause56 = [&](bool left) {
      once([&]() -> std::optional<Violation> {
        for (int x = 0; x < n; ++x)
          for (int w2 : b.up[g[x]].elements())
            for (int y2 = 0; y2 < m; ++y2)
              for (int z2 : (left ? b.c(w2, y2) : b.c(y2, w2)).elements()) {
                bool ok = false;
                for (int w : a.up[x].elements())
                  for (int y = 0; y < n && !ok; ++y)
                    for (int z : (left ? a.c(w, y) : a.c(y, w)).elements())
                      ok = ok || (b.leq(y2, g[y]) && b.leq(g[z], z2));
                if (!ok)
                  return Violation{left ? "5" : "6", {wa("x", x), wb("w'", w2), wb("y'", y2), wb("z'", z2)}, ""};
              }
        return std::nullopt;
      });
    };
    clause56(true);
    clause56(false);
  }
  if (has_unit(k)) {
    once([&]() -> std::optional<Violation> {
      for (int e = 0; e < n; ++e)
        if (a.E.test(e) != b.E.test(g[e])) return Violation{"7", {wa("e", e)}, "e in E iff g(e) in E'"};
      return std::nullopt;
    });
  }
  if (is_dm(k)) {
    once([&]() -> std::optional<Violation> {
      for (int x = 0; x < n; ++x)
        if (g[a.minus[x]] != b.minus[g[x]]) return Violation{"8", {wa("x", x)}, "g(-x) = -g(x)"};
      return std::nullopt;
    });
  }
  if (is_bi_bi(k)) {
    once([&]() -> std::optional<Violation> {
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (int x : a.nab(y, z).elements())
            if (!b.nab(g[y], g[z]).test(g[x])) return Violation{"8", {wa("x", x), wa("y", y), wa("z", z)}, ""};
      return std::nullopt;
    });
    once([&]() -> std::optional<Violation> {
      for (int x = 0; x < n; ++x)
        for (int s2 : b.up[g[x]].elements())
          for (int t2 = 0; t2 < m; ++t2)
            for (int u2 = 0; u2 < m; ++u2) {
              if (!b.nab(t2, u2).test(s2)) continue;
              bool ok = false;
              for (int s : a.up[x].elements())
                for (int t = 0; t < n && !ok; ++t)
                  for (int u = 0; u < n && !ok; ++u)
                    ok = a.nab(t, u).test(s) && b.leq(g[t], t2) && b.leq(g[u], u2);
              if (!ok) return Violation{"9", {wa("x", x), wb("s'", s2), wb("t'", t2), wb("u'", u2)}, ""};
            }
      return std::nullopt;
    });
    once([&]() -> std::optional<Violation> {
      for (int x = 0; x < n; ++x)
        for (int s2 : b.down(g[x]).elements())
          for (int t2 = 0; t2 < m; ++t2)
            for (int u2 : b.nab(t2, s2).elements()) {
              bool ok = false;
              for (int s : a.down(x).elements())
                for (int t = 0; t < n && !ok; ++t)
                  for (int u : a.nab(t, s).elements()) ok = ok || (b.leq(u2, g[u]) && b.leq(g[t], t2));
              if (!ok) return Violation{"10", {wa("x", x), wb("s'", s2), wb("t'", t2), wb("u'", u2)}, ""};
            }
      return std::nullopt;
    });
    once([&]() -> std::optional<Violation> {
      for (int u = 0; u < n; ++u)
        if (a.U.test(u) != b.U.test(g[u])) return Violation{"U", {wa("u", u)}, "u in U iff g(u) in U'"};
      return std::nullopt;
    });
  }
  if (k == Kind::CKBI) {
    auto sq_a = [&](int x, int y) -> const StateSet& { return a.sq(x, y); };
    auto sq_b = [&](int x, int y) -> const StateSet& { return b.sq(x, y); };
    lgl_clauses(sq_a, sq_b, "seq-");
  }
  if (k == Kind::SML) {
    once([&]() -> std::optional<Violation> {
      for (int x = 0; x < n; ++x)
        for (int y : a.R[x].elements())
          if (!b.R[g[x]].test(g[y])) return Violation{"R-forth", {wa("x", x), wa("y", y)}, ""};
      return std::nullopt;
    });
    once([&]() -> std::optional<Violation> {
      for (int x = 0; x < n; ++x)
        for (int y2 : b.R[g[x]].elements())
          if (!a.R[x].intersects(pre(y2))) return Violation{"R-back", {wa("x", x), wb("y'", y2)}, ""};
      return std::nullopt;
    });
  }
  return out;
}

StateSet infinity_set(const Frame& f) {
  StateSet s = f.none();
  f.E.for_each([&](int e) { s.set(f.minus[e]); });
  return s;
}

bool check_infinity_uniqueness(const Frame& f) {
  StateSet inf = infinity_set(f);
  for (int x = 0; x < f.size(); ++x)
    for (int y = 0; y < f.size(); ++y)
      if (f.c(y, x).intersects(inf) != (y == f.minus[x])) return false;
  return true;
}

}  // namespace bunchkit
