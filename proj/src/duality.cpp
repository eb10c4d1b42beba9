#include "bunchkit/duality.hpp"

#include <algorithm>
#include <stdexcept>

namespace bunchkit {

namespace {

std::string set_name(const Frame& f, const StateSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int x) {
    if (!first) out += ",";
    out += f.names[x];
    first = false;
  });
  return out + "}";
}

StateSet upset_forall(const Frame& f, const StateSet& good) {
  StateSet r = f.none();
  for (int x = 0; x < f.size(); ++x)
    if (f.up[x].subset_of(good)) r.set(x);
  return r;
}

// Builds the tables without validating the frame first.
ComplexAlgebra build_complex(const Frame& f) {
  int n = f.size();
  if (n > 20) throw std::invalid_argument("complex algebra limited to 20 states");
  Kind k = f.logic.kind;
  ComplexAlgebra out;
  Algebra& a = out.algebra;
  a.logic = f.logic;
  for (uint32_t m = 0; m < (1u << n); ++m) {
    StateSet s(n);
    for (int x = 0; x < n; ++x)
      if (m >> x & 1) s.set(x);
    if (!f.is_up_set(s)) continue;
    out.index.emplace(s, static_cast<int>(out.sets.size()));
    a.names.push_back(set_name(f, s));
    out.sets.push_back(std::move(s));
  }
  const auto& S = out.sets;
  int c = static_cast<int>(S.size());
  auto idx = [&](const StateSet& s) {
    int i = out.element(s);
    if (i < 0) throw std::logic_error("complex algebra operation left the up-sets: " + set_name(f, s));
    return i;
  };
  auto table = [&](auto fn) {
    std::vector<int> t(static_cast<std::size_t>(c) * c);
    for (int x = 0; x < c; ++x)
      for (int y = 0; y < c; ++y) t[x * c + y] = idx(fn(S[x], S[y]));
    return t;
  };
  a.leq.resize(static_cast<std::size_t>(c) * c);
  for (int x = 0; x < c; ++x)
    for (int y = 0; y < c; ++y) a.leq[x * c + y] = S[x].subset_of(S[y]);
  a.bot = idx(f.none());
  a.top = idx(f.all());
  a.meet = table([](const StateSet& x, const StateSet& y) { return x & y; });
  a.join = table([](const StateSet& x, const StateSet& y) { return x | y; });
  a.imp = table([&](const StateSet& x, const StateSet& y) {
    StateSet r = f.none();
    for (int s = 0; s < n; ++s)
      if ((f.up[s] & x).subset_of(y)) r.set(s);
    return r;
  });
  a.star = table([&](const StateSet& x, const StateSet& y) {
    StateSet r = f.none();
    x.for_each([&](int p) { y.for_each([&](int q) { r |= f.c(p, q); }); });
    return f.up_closure(r);
  });
  // wand[b][c] = {x | forall y in b, x.y in c}; dnaw[a][c] = {y | forall x in a, x.y in c}
  auto resid = [&](const std::vector<StateSet>& rel, bool right) {
    return table([&](const StateSet& b, const StateSet& cc) {
      StateSet good = f.none();
      for (int x = 0; x < n; ++x) {
        bool ok = true;
        b.for_each([&](int y) { ok = ok && (right ? rel[x * n + y] : rel[y * n + x]).subset_of(cc); });
        if (ok) good.set(x);
      }
      return upset_forall(f, good);
    });
  };
  a.wand = resid(f.comp, true);
  a.dnaw = resid(f.comp, false);
  if (has_unit(k)) a.munit = idx(f.E);
  if (is_dm(k)) {
    StateSet u = f.none();
    for (int x = 0; x < n; ++x)
      if (!f.E.test(f.minus[x])) u.set(x);
    a.mbot = idx(u);
    a.mneg.resize(c);
    for (int x = 0; x < c; ++x) {
      StateSet r = f.none();
      for (int s = 0; s < n; ++s)
        if (!S[x].test(f.minus[s])) r.set(s);
      a.mneg[x] = idx(r);
    }
  }
  if (is_bi_bi(k)) {
    a.mbot = idx(~f.U);
    a.mor = table([&](const StateSet& x, const StateSet& y) {
      StateSet bad = f.none();
      (~x).for_each([&](int t) { (~y).for_each([&](int u) { bad |= f.nab(t, u); }); });
      StateSet r = f.none();
      for (int s = 0; s < n; ++s)
        if (!f.up[s].intersects(bad)) r.set(s);
      return r;
    });
    a.rslash = table([&](const StateSet& x, const StateSet& y) {
      StateSet g = f.none();
      for (int s = 0; s < n; ++s) {
        bool ok = false;
        (~y).for_each([&](int t) { ok = ok || f.nab(t, s).intersects(x); });
        if (ok) g.set(s);
      }
      return f.up_closure(g);
    });
  }
  if (k == Kind::CKBI) {
    a.seq = table([&](const StateSet& x, const StateSet& y) {
      StateSet r = f.none();
      x.for_each([&](int p) { y.for_each([&](int q) { r |= f.sq(p, q); }); });
      return r;
    });
    a.rseq = resid(f.seq, true);
    a.lseq = resid(f.seq, false);
  }
  if (k == Kind::SML) {
    a.dia.resize(c);
    for (int x = 0; x < c; ++x) {
      StateSet r = f.none();
      for (int s = 0; s < n; ++s)
        if (f.R[s].intersects(S[x])) r.set(s);
      a.dia[x] = idx(r);
    }
  }
  return out;
}

// Checks h(op(x, y)) == op'(h(x), h(y)) for every operation of the kind.
void homomorphism_items(Report& r, const Algebra& src, const Algebra& dst, const std::vector<int>& h,
                        const std::string& map) {
  int n = src.size();
  auto add = [&](const std::string& what, std::string witness) {
    r.items.push_back({map + " preserves " + what, true, witness.empty(), std::move(witness)});
  };
  struct Bin {
    const char* name;
    std::vector<int> Algebra::*t;
  };
  static const Bin bins[] = {{"meet", &Algebra::meet}, {"join", &Algebra::join},  {"imp", &Algebra::imp},
                             {"star", &Algebra::star}, {"wand", &Algebra::wand},  {"dnaw", &Algebra::dnaw},
                             {"mor", &Algebra::mor},   {"rslash", &Algebra::rslash}, {"seq", &Algebra::seq},
                             {"rseq", &Algebra::rseq}, {"lseq", &Algebra::lseq}};
  for (const auto& b : bins) {
    const auto& ts = src.*(b.t);
    const auto& td = dst.*(b.t);
    if (ts.empty()) continue;
    std::string w;
    if (td.empty()) w = "missing in target";
    for (int x = 0; x < n && w.empty(); ++x)
      for (int y = 0; y < n && w.empty(); ++y)
        if (h[src.op(ts, x, y)] != dst.op(td, h[x], h[y])) w = src.names[x] + ", " + src.names[y];
    add(b.name, w);
  }
  struct Un {
    const char* name;
    std::vector<int> Algebra::*t;
  };
  static const Un uns[] = {{"mnot", &Algebra::mneg}, {"dia", &Algebra::dia}};
  for (const auto& u : uns) {
    const auto& ts = src.*(u.t);
    const auto& td = dst.*(u.t);
    if (ts.empty()) continue;
    std::string w;
    if (td.empty()) w = "missing in target";
    for (int x = 0; x < n && w.empty(); ++x)
      if (h[ts[x]] != td[h[x]]) w = src.names[x];
    add(u.name, w);
  }
  struct Con {
    const char* name;
    int Algebra::*c;
  };
  static const Con cons[] = {{"top", &Algebra::top}, {"bot", &Algebra::bot}, {"emp", &Algebra::munit},
                             {"mbot", &Algebra::mbot}};
  for (const auto& c : cons) {
    int cs = src.*(c.c);
    if (cs < 0) continue;
    add(c.name, h[cs] == dst.*(c.c) ? "" : src.names[cs]);
  }
}

}  // namespace

ComplexAlgebra complex_algebra_sets(const Frame& f) {
  auto v = check_frame(f, true);
  if (!v.empty()) throw std::invalid_argument("not a valid " + logic_name(f.logic) + " frame: " + v.front().axiom);
  return build_complex(f);
}

// ---------------------------------------------------------------- prime filters

bool is_prime_filter(const Algebra& a, const StateSet& F) {
  int n = a.size();
  if (F.none() || F.test(a.bot)) return false;
  for (int x : F.elements())
    for (int y = 0; y < n; ++y) {
      if (a.le(x, y) && !F.test(y)) return false;
      if (F.test(y) && !F.test(a.op(a.meet, x, y))) return false;
    }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (F.test(a.op(a.join, x, y)) && !F.test(x) && !F.test(y)) return false;
  return true;
}

std::vector<StateSet> enumerate_prime_filters(const Algebra& a, PrimeMethod m) {
  int n = a.size();
  if (m == PrimeMethod::Auto) m = n <= 16 ? PrimeMethod::BruteForce : PrimeMethod::JoinIrreducible;
  std::vector<StateSet> out;
  if (m == PrimeMethod::BruteForce) {
    if (n > 20) throw std::invalid_argument("brute-force prime filter search limited to 20 elements");
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (!(mask >> a.top & 1) || (mask >> a.bot & 1)) continue;
      StateSet F(n);
      for (int x = 0; x < n; ++x)
        if (mask >> x & 1) F.set(x);
      if (is_prime_filter(a, F)) out.push_back(std::move(F));
    }
  } else {
    for (int j = 0; j < n; ++j) {
      if (j == a.bot) continue;
      bool irreducible = true;
      for (int x = 0; x < n && irreducible; ++x)
        for (int y = 0; y < n && irreducible; ++y)
          if (a.op(a.join, x, y) == j && x != j && y != j) irreducible = false;
      if (!irreducible) continue;
      StateSet F(n);
      for (int x = 0; x < n; ++x)
        if (a.le(j, x)) F.set(x);
      out.push_back(std::move(F));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Frame prime_filter_frame(const Algebra& a) {
  auto pf = enumerate_prime_filters(a);
  int m = static_cast<int>(pf.size());
  int n = a.size();
  std::vector<std::string> names;
  for (const auto& F : pf) {
    int least = a.top;
    F.for_each([&](int x) { least = a.op(a.meet, least, x); });
    names.push_back("^" + a.names[least]);
  }
  Kind k = a.logic.kind;
  Frame fr = make_frame(a.logic, names);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (pf[i].subset_of(pf[j])) fr.up[i].set(j);
  auto find = [&](const StateSet& s) {
    auto it = std::lower_bound(pf.begin(), pf.end(), s);
    if (it == pf.end() || !(*it == s)) throw std::logic_error("expected a prime filter");
    return static_cast<int>(it - pf.begin());
  };
  // k in rel(i, j) iff op(x, y) in F_k for all x in F_i, y in F_j
  auto forward = [&](const std::vector<int>& op, std::vector<StateSet>& rel) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k2 = 0; k2 < m; ++k2) {
          bool ok = true;
          pf[i].for_each([&](int x) { pf[j].for_each([&](int y) { ok = ok && pf[k2].test(a.op(op, x, y)); }); });
          if (ok) rel[i * m + j].set(k2);
        }
  };
  forward(a.star, fr.comp);
  if (has_unit(k))
    for (int i = 0; i < m; ++i)
      if (pf[i].test(a.munit)) fr.E.set(i);
  if (is_dm(k))
    for (int i = 0; i < m; ++i) {
      StateSet g(n);
      for (int b = 0; b < n; ++b)
        if (!pf[i].test(a.mneg[b])) g.set(b);
      fr.minus[i] = find(g);
    }
  if (is_bi_bi(k)) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k2 = 0; k2 < m; ++k2) {
          bool ok = true;
          for (int x = 0; x < n && ok; ++x)
            for (int y = 0; y < n && ok; ++y)
              if (pf[k2].test(a.op(a.mor, x, y)) && !pf[i].test(x) && !pf[j].test(y)) ok = false;
          if (ok) fr.nab(i, j).set(k2);
        }
    for (int i = 0; i < m; ++i)
      if (!pf[i].test(a.mbot)) fr.U.set(i);
  }
  if (k == Kind::CKBI) forward(a.seq, fr.seq);
  if (k == Kind::SML)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        bool ok = true;
        pf[j].for_each([&](int x) { ok = ok && pf[i].test(a.dia[x]); });
        if (ok) fr.R[i].set(j);
      }
  return fr;
}

// ---------------------------------------------------------------- theta / eta

Report theta_check(const Algebra& a) {
  Report r;
  Frame pff = prime_filter_frame(a);
  auto pf = enumerate_prime_filters(a);
  auto viol = check_frame(pff, true);
  r.items.push_back({"prime filter frame satisfies its axioms", true, viol.empty(),
                     viol.empty() ? "" : viol.front().axiom});
  if (!viol.empty()) return r;
  ComplexAlgebra C = build_complex(pff);
  int n = a.size();
  std::vector<int> th(n);
  std::string miss;
  for (int x = 0; x < n; ++x) {
    StateSet s = pff.none();
    for (int i = 0; i < pff.size(); ++i)
      if (pf[i].test(x)) s.set(i);
    th[x] = C.element(s);
    if (th[x] < 0 && miss.empty()) miss = a.names[x];
  }
  r.items.push_back({"theta lands in up-sets", true, miss.empty(), miss});
  if (!miss.empty()) return r;
  std::string inj;
  for (int x = 0; x < n && inj.empty(); ++x)
    for (int y = x + 1; y < n && inj.empty(); ++y)
      if (th[x] == th[y]) inj = a.names[x] + ", " + a.names[y];
  r.items.push_back({"theta is injective", true, inj.empty(), inj});
  homomorphism_items(r, a, C.algebra, th, "theta");
  if (is_boolean(a.logic.kind)) {
    bool onto = C.algebra.size() == n;
    r.items.push_back({"theta is surjective", true, onto, onto ? "" : std::to_string(C.algebra.size()) + " up-sets"});
  }
  return r;
}

Report eta_check(const Frame& f) {
  Report r;
  ComplexAlgebra C = complex_algebra_sets(f);
  Frame P = prime_filter_frame(C.algebra);
  auto pf = enumerate_prime_filters(C.algebra);
  int n = f.size(), c = C.algebra.size();
  std::vector<int> eta(n, -1);
  std::string miss;
  for (int x = 0; x < n; ++x) {
    StateSet s(c);
    for (int A = 0; A < c; ++A)
      if (C.sets[A].test(x)) s.set(A);
    auto it = std::lower_bound(pf.begin(), pf.end(), s);
    if (it != pf.end() && *it == s) eta[x] = static_cast<int>(it - pf.begin());
    else if (miss.empty()) miss = f.names[x];
  }
  r.items.push_back({"eta lands in prime filters", true, miss.empty(), miss});
  if (!miss.empty()) return r;
  std::string w;
  bool antisym = true;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      bool equiv = f.leq(x, y) && f.leq(y, x);
      if (equiv && x != y) antisym = false;
      if ((eta[x] == eta[y]) != equiv && w.empty()) w = f.names[x] + ", " + f.names[y];
    }
  r.items.push_back({"kernel of eta is order equivalence", true, w.empty(), w});
  std::vector<bool> hit(P.size(), false);
  for (int x = 0; x < n; ++x) hit[eta[x]] = true;
  w.clear();
  for (int i = 0; i < P.size() && w.empty(); ++i)
    if (!hit[i]) w = P.names[i];
  r.items.push_back({"eta is surjective", true, w.empty(), w});
  w.clear();
  for (int x = 0; x < n && w.empty(); ++x)
    for (int y = 0; y < n && w.empty(); ++y)
      if (f.leq(x, y) != P.leq(eta[x], eta[y])) w = f.names[x] + ", " + f.names[y];
  r.items.push_back({"eta preserves and reflects order", true, w.empty(), w});
  auto mv = check_morphism(eta, f, P);
  r.items.push_back({"eta is a frame morphism", true, mv.empty(), mv.empty() ? "" : "clause " + mv.front().axiom});
  r.items.push_back({"eta is injective", antisym, !antisym || n == P.size(), ""});
  return r;
}

Report inverse_image_check(const std::vector<int>& g, const Frame& a, const Frame& b) {
  Report r;
  ComplexAlgebra CA = complex_algebra_sets(a), CB = complex_algebra_sets(b);
  int n = a.size();
  std::vector<int> pre(CB.sets.size());
  std::string miss;
  for (std::size_t B = 0; B < CB.sets.size(); ++B) {
    StateSet s = a.none();
    for (int x = 0; x < n; ++x)
      if (CB.sets[B].test(g[x])) s.set(x);
    pre[B] = CA.element(s);
    if (pre[B] < 0 && miss.empty()) miss = CB.algebra.names[B];
  }
  r.items.push_back({"inverse image lands in up-sets", true, miss.empty(), miss});
  if (!miss.empty()) return r;
  homomorphism_items(r, CB.algebra, CA.algebra, pre, "inverse image");
  return r;
}

// ---------------------------------------------------------------- correspondence

Sequent sigma_axiom(Sigma row) {
  Formula a = atom("a"), b = atom("b"), c = atom("c");
  auto P = [](Formula x, Formula y) { return binary(Op::MOr, std::move(x), std::move(y)); };
  switch (row) {
    case Sigma::Associativity: return {P(a, P(b, c)), P(P(a, b), c)};
    case Sigma::MbotWeakening: return {a, P(a, mbot())};
    case Sigma::MbotContraction: return {P(a, mbot()), a};
    case Sigma::MorContraction: return {P(a, a), a};
    case Sigma::WeakDistributivity: return {star(a, P(b, c)), P(star(a, b), c)};
  }
  throw std::invalid_argument("unknown sigma row");
}

CorrespondenceReport correspondence_check(const Frame& f, Sigma row) {
  if (!is_bi_bi(f.logic.kind)) throw std::invalid_argument("correspondence rows apply to BiBI and BiBBI frames");
  CorrespondenceReport r;
  r.row = row;
  auto pv = check_sigma_row(f, row, true);
  r.property_holds = pv.empty();
  if (!pv.empty()) r.property_witness = pv.front();
  Frame base = f;
  base.logic.sigma = 0;
  Algebra com = complex_algebra(base);
  r.falsifier = falsify_sequent(com, sigma_axiom(row));
  r.axiom_valid = !r.falsifier;
  return r;
}

}  // namespace bunchkit
