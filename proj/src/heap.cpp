#include "bunchkit/heap.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>

namespace bunchkit {

void validate_universe(const HeapUniverse& u) {
  if (u.loc.empty() || u.val.empty()) throw std::invalid_argument("universe needs at least one location and one value");
  for (auto l : u.loc)
    if (std::find(u.val.begin(), u.val.end(), l) == u.val.end())
      throw std::invalid_argument("location " + std::to_string(l) + " is not a value");
  auto sorted_unique = [](std::vector<int64_t> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!sorted_unique(u.loc) || !sorted_unique(u.val)) throw std::invalid_argument("duplicate location or value");
  double heaps = 1;
  for (std::size_t i = 0; i < u.loc.size(); ++i) heaps *= static_cast<double>(u.val.size() + 1);
  if (heaps > 65536) throw std::invalid_argument("universe has more than 65536 heaps");
}

std::optional<Heap> compose_heaps(const Heap& h1, const Heap& h2) {
  Heap r = h1;
  for (auto [l, v] : h2)
    if (!r.emplace(l, v).second) return std::nullopt;
  return r;
}

bool heap_extends(const Heap& big, const Heap& small) {
  for (auto [l, v] : small) {
    auto it = big.find(l);
    if (it == big.end() || it->second != v) return false;
  }
  return true;
}

std::string heap_to_string(const Heap& h) {
  std::string s = "[";
  bool first = true;
  for (auto [l, v] : h) {
    if (!first) s += ",";
    s += std::to_string(l) + ":" + std::to_string(v);
    first = false;
  }
  return s + "]";
}

std::vector<Heap> all_heaps(const HeapUniverse& u) {
  validate_universe(u);
  int base = static_cast<int>(u.val.size()) + 1;
  int total = 1;
  for (std::size_t i = 0; i < u.loc.size(); ++i) total *= base;
  std::vector<Heap> out(total);
  for (int c = 0; c < total; ++c) {
    int r = c;
    for (auto l : u.loc) {
      int d = r % base;
      r /= base;
      if (d) out[c][l] = u.val[d - 1];
    }
  }
  return out;
}

int heap_code(const HeapUniverse& u, const Heap& h) {
  int base = static_cast<int>(u.val.size()) + 1;
  int code = 0, mul = 1;
  std::size_t used = 0;
  for (auto l : u.loc) {
    auto it = h.find(l);
    if (it != h.end()) {
      auto v = std::find(u.val.begin(), u.val.end(), it->second);
      if (v == u.val.end()) return -1;
      code += mul * static_cast<int>(v - u.val.begin() + 1);
      ++used;
    }
    mul *= base;
  }
  return used == h.size() ? code : -1;
}

Frame heap_frame(const HeapUniverse& u, Variant v) {
  auto hs = all_heaps(u);
  int n = static_cast<int>(hs.size());
  std::vector<std::string> names;
  for (auto& h : hs) names.push_back(heap_to_string(h));
  Frame f = make_frame(make_logic(v == Variant::BI ? Kind::BI : Kind::BBI), names);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (auto z = compose_heaps(hs[x], hs[y])) f.c(x, y).set(heap_code(u, *z));
      if (v == Variant::BI && heap_extends(hs[y], hs[x])) f.up[x].set(y);
    }
  if (v == Variant::BI) f.E = f.all();
  else f.E.set(0);
  return f;
}

// Pointer satisfaction

namespace {

// Heap codes make composition cheap: disjoint heaps have digit-disjoint codes and
// the composite's code is the sum.
struct HeapTable {
  HeapUniverse u;
  int base = 0, count = 0;
  std::vector<std::vector<int>> digits;  // per code, per location
  std::vector<int> dom;                  // per code, bitmask of allocated locations
  std::vector<std::vector<int>> sub;     // per code, the codes of its subheaps
  std::vector<std::vector<int>> free_ext; // per code, codes of heaps disjoint from it

  explicit HeapTable(const HeapUniverse& uu) : u(uu) {
    validate_universe(u);
    base = static_cast<int>(u.val.size()) + 1;
    count = 1;
    for (std::size_t i = 0; i < u.loc.size(); ++i) count *= base;
    digits.resize(count);
    dom.resize(count);
    for (int c = 0; c < count; ++c) {
      int r = c;
      for (std::size_t i = 0; i < u.loc.size(); ++i) {
        digits[c].push_back(r % base);
        if (r % base) dom[c] |= 1 << i;
        r /= base;
      }
    }
    sub.resize(count);
    free_ext.resize(count);
    for (int c = 0; c < count; ++c)
      for (int d = 0; d < count; ++d) {
        if ((dom[d] & ~dom[c]) == 0) {
          bool ok = true;
          for (std::size_t i = 0; i < u.loc.size(); ++i)
            if (digits[d][i] && digits[d][i] != digits[c][i]) ok = false;
          if (ok) sub[c].push_back(d);
        }
        if ((dom[c] & dom[d]) == 0) free_ext[c].push_back(d);
      }
  }
  int lookup(int64_t loc) const {
    auto it = std::find(u.loc.begin(), u.loc.end(), loc);
    return it == u.loc.end() ? -1 : static_cast<int>(it - u.loc.begin());
  }
};

std::shared_ptr<const HeapTable> table_for(const HeapUniverse& u) {
  static std::mutex mu;
  static std::shared_ptr<const HeapTable> last;
  std::lock_guard<std::mutex> lock(mu);
  if (!last || last->u.loc != u.loc || last->u.val != u.val) last = std::make_shared<HeapTable>(u);
  return last;
}

using Env = std::vector<std::pair<std::string, int64_t>>;

int64_t eval_term(const Term& t, const Env& env, const HeapUniverse& u) {
  if (!t.is_var) {
    if (std::find(u.val.begin(), u.val.end(), t.value) == u.val.end())
      throw std::invalid_argument("constant " + std::to_string(t.value) + " is not a value");
    return t.value;
  }
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == t.var) return it->second;
  throw std::invalid_argument("variable " + t.var + " is not in the store");
}

bool psat(const HeapTable& T, Env& env, int h, const Formula& f, Variant v) {
  bool bi = v == Variant::BI;
  switch (f->op) {
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::MUnit: return bi || h == 0;
    case Op::Eq: return eval_term(f->t1, env, T.u) == eval_term(f->t2, env, T.u);
    case Op::PointsTo: {
      int i = T.lookup(eval_term(f->t1, env, T.u));
      if (i < 0 || !(T.dom[h] >> i & 1)) return false;
      if (!bi && T.dom[h] != (1 << i)) return false;
      return T.u.val[T.digits[h][i] - 1] == eval_term(f->t2, env, T.u);
    }
    case Op::And: return psat(T, env, h, f->a, v) && psat(T, env, h, f->b, v);
    case Op::Or: return psat(T, env, h, f->a, v) || psat(T, env, h, f->b, v);
    case Op::Imp:
    case Op::Not: {
      auto check = [&](int h2) {
        if (!psat(T, env, h2, f->a, v)) return true;
        return f->op == Op::Not ? false : psat(T, env, h2, f->b, v);
      };
      if (!bi) return check(h);
      for (int h2 = 0; h2 < T.count; ++h2)
        if (std::find(T.sub[h2].begin(), T.sub[h2].end(), h) != T.sub[h2].end() && !check(h2)) return false;
      return true;
    }
    case Op::Star:
      for (int h1 : T.sub[h])
        if (psat(T, env, h1, f->a, v) && psat(T, env, h - h1, f->b, v)) return true;
      return false;
    case Op::Wand:
      for (int h1 : T.free_ext[h])
        if (psat(T, env, h1, f->a, v) && !psat(T, env, h + h1, f->b, v)) return false;
      return true;
    case Op::Exists:
    case Op::Forall: {
      bool ex = f->op == Op::Exists;
      for (auto a : T.u.val) {
        env.emplace_back(f->name, a);
        bool r = psat(T, env, h, f->a, v);
        env.pop_back();
        if (r == ex) return ex;
      }
      return !ex;
    }
    default:
      throw std::invalid_argument(std::string("connective ") + std::string(op_name(f->op)) +
                                  " is not part of pointer logic");
  }
}

}  // namespace

bool pointer_sat(const HeapUniverse& u, const Store& s, const Heap& h, const Formula& f, Variant v) {
  if (s.ctx.size() != s.vals.size()) throw std::invalid_argument("store length does not match its context");
  auto T = table_for(u);
  int code = heap_code(u, h);
  if (code < 0) throw std::invalid_argument("heap is not over the universe");
  Env env;
  for (std::size_t i = 0; i < s.ctx.size(); ++i) env.emplace_back(s.ctx[i], s.vals[i]);
  return psat(*T, env, code, f, v);
}

// ---------------------------------------------------------------- Store frames

int StoreFrame::num_stores() const {
  int s = 1;
  for (int i = 0; i < n; ++i) s *= static_cast<int>(u.val.size());
  return s;
}

std::vector<int64_t> StoreFrame::vector_of(int store) const {
  std::vector<int64_t> out;
  int b = static_cast<int>(u.val.size());
  for (int i = 0; i < n; ++i) {
    out.push_back(u.val[store % b]);
    store /= b;
  }
  return out;
}

int StoreFrame::store_index(const std::vector<int64_t>& vals) const {
  int b = static_cast<int>(u.val.size());
  int idx = 0, mul = 1;
  for (auto x : vals) {
    auto it = std::find(u.val.begin(), u.val.end(), x);
    if (it == u.val.end()) return -1;
    idx += mul * static_cast<int>(it - u.val.begin());
    mul *= b;
  }
  return idx;
}

int StoreFrame::project(int x_next) const {
  int s = x_next / num_heaps(), h = x_next % num_heaps();
  return state(s % num_stores(), h);
}

int StoreFrame::duplicate(int x) const {
  if (n < 1) throw std::invalid_argument("duplicate needs a non-empty context");
  int s = store_of(x);
  int last = (s / (num_stores() / static_cast<int>(u.val.size()))) % static_cast<int>(u.val.size());
  return (s + num_stores() * last) * num_heaps() + heap_of(x);
}

StoreFrame make_store_frame(const HeapUniverse& u, int n, Variant v) {
  if (n < 0) throw std::invalid_argument("context size must be non-negative");
  StoreFrame sf;
  sf.u = u;
  sf.n = n;
  sf.variant = v;
  sf.heaps = heap_frame(u, v);
  return sf;
}

Frame store_frame(const HeapUniverse& u, int n, Variant v) {
  StoreFrame sf = make_store_frame(u, n, v);
  if (sf.size() > 4096) throw std::invalid_argument("store frame too large to materialize");
  std::vector<std::string> names;
  for (int s = 0; s < sf.num_stores(); ++s) {
    std::string vec = "(";
    auto vals = sf.vector_of(s);
    for (std::size_t i = 0; i < vals.size(); ++i) vec += (i ? "," : "") + std::to_string(vals[i]);
    vec += ")";
    for (int h = 0; h < sf.num_heaps(); ++h) names.push_back(vec + sf.heaps.names[h]);
  }
  Frame f = make_frame(sf.heaps.logic, names);
  int H = sf.num_heaps();
  for (int s = 0; s < sf.num_stores(); ++s)
    for (int h = 0; h < H; ++h) {
      int x = sf.state(s, h);
      f.up[x] = f.none();
      sf.heaps.up[h].for_each([&](int h2) { f.up[x].set(sf.state(s, h2)); });
      if (sf.heaps.E.test(h)) f.E.set(x);
      for (int h2 = 0; h2 < H; ++h2)
        sf.heaps.c(h, h2).for_each([&](int h3) { f.c(x, sf.state(s, h2)).set(sf.state(s, h3)); });
    }
  return f;
}

// Satisfaction on the Store frame

namespace {

// Extension per store index: heaps satisfying the formula there.
using Ext = std::vector<StateSet>;

class Indexed {
 public:
  Indexed(const HeapUniverse& u, Variant v) : u_(u), v_(v) {
    frames_.push_back(make_store_frame(u, 0, v));
    const StoreFrame& two = frame(2);
    const Frame& H = two.heaps;
    // Interpretation of the points-to predicate on Store(Val^2).
    points_to_ = Ext(two.num_stores(), H.none());
    auto hs = all_heaps(u);
    for (int s = 0; s < two.num_stores(); ++s) {
      auto ab = two.vector_of(s);
      for (int h = 0; h < H.size(); ++h) {
        auto it = hs[h].find(ab[0]);
        bool in = it != hs[h].end() && it->second == ab[1];
        if (v == Variant::BBI) in = in && hs[h].size() == 1;
        if (in) points_to_[s].set(h);
      }
    }
    // Range of R(Delta_Val): Store(Val) -> Store(Val^2).
    const StoreFrame& one = frame(1);
    diagonal_ = Ext(two.num_stores(), H.none());
    for (int x = 0; x < one.size(); ++x) {
      int y = one.duplicate(x);
      diagonal_[two.store_of(y)].set(two.heap_of(y));
    }
  }

  const StoreFrame& frame(int n) {
    while (static_cast<int>(frames_.size()) <= n) {
      StoreFrame sf = frames_.front();
      sf.n = static_cast<int>(frames_.size());
      frames_.push_back(std::move(sf));
    }
    return frames_[n];
  }

  Ext eval(const std::vector<std::string>& ctx, const Formula& f) {
    const StoreFrame& F = frame(static_cast<int>(ctx.size()));
    const Frame& H = F.heaps;
    int S = F.num_stores(), nh = H.size();
    Ext out(S, H.none());
    switch (f->op) {
      case Op::Top:
        for (auto& s : out) s = H.all();
        return out;
      case Op::Bot: return out;
      case Op::MUnit:
        for (auto& s : out) s = H.E;
        return out;
      case Op::Eq:
      case Op::PointsTo: {
        const Ext& P = f->op == Op::Eq ? diagonal_ : points_to_;
        const StoreFrame& two = frame(2);
        for (int s = 0; s < S; ++s) {
          auto vec = F.vector_of(s);
          int target = two.store_index({term(ctx, vec, f->t1), term(ctx, vec, f->t2)});
          if (target >= 0) out[s] = P[target];
        }
        return out;
      }
      case Op::And:
      case Op::Or: {
        Ext a = eval(ctx, f->a), b = eval(ctx, f->b);
        for (int s = 0; s < S; ++s) out[s] = f->op == Op::And ? (a[s] & b[s]) : (a[s] | b[s]);
        return out;
      }
      case Op::Imp:
      case Op::Not: {
        Ext a = eval(ctx, f->a);
        Ext b = f->op == Op::Not ? Ext(S, H.none()) : eval(ctx, f->b);
        for (int s = 0; s < S; ++s)
          for (int h = 0; h < nh; ++h)
            if ((H.up[h] & a[s]).subset_of(b[s])) out[s].set(h);
        return out;
      }
      case Op::Star: {
        Ext a = eval(ctx, f->a), b = eval(ctx, f->b);
        for (int s = 0; s < S; ++s) {
          StateSet r = H.none();
          a[s].for_each([&](int y) { b[s].for_each([&](int z) { r |= H.c(y, z); }); });
          out[s] = H.up_closure(r);
        }
        return out;
      }
      case Op::Wand: {
        Ext a = eval(ctx, f->a), b = eval(ctx, f->b);
        for (int s = 0; s < S; ++s)
          for (int h = 0; h < nh; ++h) {
            bool ok = true;
            H.up[h].for_each([&](int h2) { a[s].for_each([&](int y) { ok = ok && H.c(h2, y).subset_of(b[s]); }); });
            if (ok) out[s].set(h);
          }
        return out;
      }
      case Op::Exists:
      case Op::Forall: {
        std::vector<std::string> ctx2 = ctx;
        ctx2.push_back(f->name);
        Ext a = eval(ctx2, f->a);
        const StoreFrame& G = frame(static_cast<int>(ctx2.size()));
        bool ex = f->op == Op::Exists;
        if (!ex)
          for (auto& s : out) s = H.all();
        for (int y = 0; y < G.size(); ++y) {
          int x = F.project(y);  // projection lands in F
          int s = F.store_of(x), h = F.heap_of(x);
          bool in = a[G.store_of(y)].test(G.heap_of(y));
          if (ex) {
            if (in) out[s].set(h);
          } else if (!in) {
            // every x' below pi(y) loses forall
            for (int h0 = 0; h0 < nh; ++h0)
              if (H.leq(h0, h)) out[s].reset(h0);
          }
        }
        return out;
      }
      default:
        throw std::invalid_argument(std::string("connective ") + std::string(op_name(f->op)) +
                                    " is not part of pointer logic");
    }
  }

 private:
  int64_t term(const std::vector<std::string>& ctx, const std::vector<int64_t>& vec, const Term& t) {
    if (!t.is_var) {
      if (std::find(u_.val.begin(), u_.val.end(), t.value) == u_.val.end())
        throw std::invalid_argument("constant " + std::to_string(t.value) + " is not a value");
      return t.value;
    }
    for (int i = static_cast<int>(ctx.size()) - 1; i >= 0; --i)
      if (ctx[i] == t.var) return vec[i];
    throw std::invalid_argument("variable " + t.var + " is not in the context");
  }

  HeapUniverse u_;
  Variant v_;
  std::deque<StoreFrame> frames_;
  Ext points_to_, diagonal_;
};

}  // namespace

StateSet indexed_extension(const HeapUniverse& u, const std::vector<std::string>& ctx, const Formula& f, Variant v) {
  Indexed ix(u, v);
  Ext e = ix.eval(ctx, f);
  const StoreFrame& F = ix.frame(static_cast<int>(ctx.size()));
  StateSet out(F.size());
  for (int s = 0; s < F.num_stores(); ++s) e[s].for_each([&](int h) { out.set(F.state(s, h)); });
  return out;
}

bool indexed_sat(const HeapUniverse& u, const Store& s, const Heap& h, const Formula& f, Variant v) {
  if (s.ctx.size() != s.vals.size()) throw std::invalid_argument("store length does not match its context");
  StoreFrame F = make_store_frame(u, static_cast<int>(s.ctx.size()), v);
  int si = F.store_index(s.vals), hi = heap_code(u, h);
  if (si < 0 || hi < 0) throw std::invalid_argument("store or heap is not over the universe");
  return indexed_extension(u, s.ctx, f, v).test(F.state(si, hi));
}

// ---------------------------------------------------------------- adjoints

Adjoints quantifier_adjoints(const StoreFrame& F, const StateSet& A) {
  StoreFrame G = F;
  G.n = F.n + 1;
  if (static_cast<int>(A.universe()) != G.size()) throw std::invalid_argument("set is not over the extended context");
  const Frame& H = F.heaps;
  Adjoints r{StateSet(F.size()), StateSet::full(F.size())};
  for (int y = 0; y < G.size(); ++y) {
    int p = G.project(y);
    int s = F.store_of(p), h = F.heap_of(p);
    if (A.test(y)) H.up[h].for_each([&](int h2) { r.exists_image.set(F.state(s, h2)); });
    else
      for (int h0 = 0; h0 < H.size(); ++h0)
        if (H.leq(h0, h)) r.forall_image.reset(F.state(s, h0));
  }
  return r;
}

namespace {

bool is_up(const StoreFrame& F, const StateSet& A) {
  bool ok = true;
  A.for_each([&](int x) {
    F.heaps.up[F.heap_of(x)].for_each([&](int h2) { ok = ok && A.test(F.state(F.store_of(x), h2)); });
  });
  return ok;
}

std::vector<StateSet> up_sets(const StoreFrame& F) {
  int n = F.size();
  if (n > 20) throw std::invalid_argument("store frame too large for exhaustive up-set enumeration");
  std::vector<StateSet> out;
  for (uint32_t m = 0; m < (1u << n); ++m) {
    StateSet s(n);
    for (int i = 0; i < n; ++i)
      if (m >> i & 1) s.set(i);
    if (is_up(F, s)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

Report adjunction_check(const HeapUniverse& u, int n, Variant v) {
  StoreFrame F = make_store_frame(u, n, v), G = make_store_frame(u, n + 1, v);
  auto As = up_sets(G), Bs = up_sets(F);
  std::vector<Adjoints> adj;
  for (auto& A : As) adj.push_back(quantifier_adjoints(F, A));
  auto pullback = [&](const StateSet& B) {
    StateSet r(G.size());
    for (int y = 0; y < G.size(); ++y)
      if (B.test(G.project(y))) r.set(y);
    return r;
  };
  Report rep;
  auto item = [&](const std::string& name, std::string w) {
    rep.items.push_back({name, true, w.empty(), std::move(w)});
  };
  std::string w1, w2, w3, w4;
  for (std::size_t i = 0; i < As.size(); ++i) {
    if (!is_up(F, adj[i].exists_image) && w1.empty()) w1 = "A#" + std::to_string(i);
    if (!is_up(F, adj[i].forall_image) && w1.empty()) w1 = "A#" + std::to_string(i);
    StateSet direct(F.size());
    As[i].for_each([&](int y) { direct.set(G.project(y)); });
    if (!(direct == adj[i].exists_image) && w4.empty()) w4 = "A#" + std::to_string(i);
    for (std::size_t j = 0; j < Bs.size(); ++j) {
      StateSet pb = pullback(Bs[j]);
      if (adj[i].exists_image.subset_of(Bs[j]) != As[i].subset_of(pb) && w2.empty())
        w2 = "A#" + std::to_string(i) + ", B#" + std::to_string(j);
      if (pb.subset_of(As[i]) != Bs[j].subset_of(adj[i].forall_image) && w3.empty())
        w3 = "A#" + std::to_string(i) + ", B#" + std::to_string(j);
    }
  }
  item("images are up-sets", w1);
  item("exists is left adjoint to pullback", w2);
  item("forall is right adjoint to pullback", w3);
  item("exists image equals direct image", w4);
  item("exists of bot is bot", quantifier_adjoints(F, StateSet(G.size())).exists_image.none() ? "" : "nonempty");
  item("forall of top is top",
       quantifier_adjoints(F, StateSet::full(G.size())).forall_image == StateSet::full(F.size()) ? "" : "not full");
  return rep;
}

Report pseudo_epi_check(const HeapUniverse& u, const TermMap& s, Variant v) {
  int m = static_cast<int>(s.out.size());
  StoreFrame Gam = make_store_frame(u, s.n, v), GamX = make_store_frame(u, s.n + 1, v);
  StoreFrame Gp = make_store_frame(u, m, v), GpX = make_store_frame(u, m + 1, v);
  const Frame& H = Gam.heaps;
  auto apply = [&](const std::vector<int64_t>& vec) {
    std::vector<int64_t> out;
    for (int c : s.out) {
      if (c >= s.n) throw std::invalid_argument("term map refers to a missing coordinate");
      out.push_back(c >= 0 ? vec[c] : u.val.at(-c - 1));
    }
    return out;
  };
  // R(s) and R(s x id) on states
  auto Rs = [&](int x) { return Gp.state(Gp.store_index(apply(Gam.vector_of(Gam.store_of(x)))), Gam.heap_of(x)); };
  auto RsX = [&](int z) {
    auto vec = GamX.vector_of(GamX.store_of(z));
    auto out = apply(std::vector<int64_t>(vec.begin(), vec.end() - 1));
    out.push_back(vec.back());
    return GpX.state(GpX.store_index(out), GamX.heap_of(z));
  };
  auto le = [&](const StoreFrame& F, int a, int b) {
    return F.store_of(a) == F.store_of(b) && H.leq(F.heap_of(a), F.heap_of(b));
  };
  std::string w;
  for (int x = 0; x < Gam.size() && w.empty(); ++x)
    for (int y = 0; y < GpX.size() && w.empty(); ++y) {
      if (!le(Gp, GpX.project(y), Rs(x))) continue;
      bool found = false;
      for (int z = 0; z < GamX.size() && !found; ++z)
        found = le(Gam, GamX.project(z), x) && le(GpX, y, RsX(z));
      if (!found) w = "x=" + std::to_string(x) + ", y=" + std::to_string(y);
    }
  Report r;
  r.items.push_back({v == Variant::BI ? "pseudo epi" : "quasi-pullback", true, w.empty(), w});
  return r;
}

// ---------------------------------------------------------------- separation properties

Report separation_properties(const Frame& f) {
  int n = f.size();
  auto nm = [&](int x) { return f.names[x]; };
  Report r;
  auto item = [&](const char* name, std::string w) { r.items.push_back({name, true, w.empty(), std::move(w)}); };
  std::string w;
  for (int x = 0; x < n && w.empty(); ++x)
    for (int y = 0; y < n && w.empty(); ++y)
      if (f.c(x, y).count() > 1) w = nm(x) + ", " + nm(y);
  item("Partial deterministic", w);
  w.clear();
  for (int x = 0; x < n && w.empty(); ++x)
    for (int y = 0; y < n && w.empty(); ++y)
      for (int z = y + 1; z < n && w.empty(); ++z)
        if (f.c(x, y).intersects(f.c(x, z))) w = nm(x) + ", " + nm(y) + ", " + nm(z);
  item("Cancellative", w);
  w.clear();
  for (int x = 0; x < n && w.empty(); ++x)
    for (int y = 0; y < n && w.empty(); ++y)
      if (f.c(x, y).intersects(f.E) && !f.E.test(x)) w = nm(x) + ", " + nm(y);
  item("Indivisible Units", w);
  w.clear();
  for (int x = 0; x < n && w.empty(); ++x)
    if (f.c(x, x).any() && !f.E.test(x)) w = nm(x);
  item("Disjointness", w);
  w.clear();
  for (int x = 0; x < n && w.empty(); ++x) {
    if (f.E.test(x)) continue;
    bool ok = false;
    for (int y = 0; y < n && !ok; ++y)
      for (int z = 0; z < n && !ok; ++z) ok = !f.E.test(y) && !f.E.test(z) && f.c(y, z).test(x);
    if (!ok) w = nm(x);
  }
  item("Divisibility", w);
  w.clear();
  std::vector<std::vector<std::pair<int, int>>> splits(n);
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) f.c(y, z).for_each([&](int x) { splits[x].emplace_back(y, z); });
  for (int t = 0; t < n && w.empty(); ++t)
    for (int u = 0; u < n && w.empty(); ++u)
      for (int v = 0; v < n && w.empty(); ++v)
        for (int x = 0; x < n && w.empty(); ++x) {
          if (!f.c(t, u).intersects(f.c(v, x))) continue;
          bool ok = false;
          for (auto [tv, tw] : splits[t]) {
            for (auto [uv, uw] : splits[u])
              if (f.c(tv, uv).test(v) && f.c(tw, uw).test(x)) {
                ok = true;
                break;
              }
            if (ok) break;
          }
          if (!ok) w = nm(t) + ", " + nm(u) + ", " + nm(v) + ", " + nm(x);
        }
  item("Cross Split", w);
  return r;
}

}  // namespace bunchkit
