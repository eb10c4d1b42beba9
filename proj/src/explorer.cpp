#include "bunchkit/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <bitset>
#include <chrono>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "bunchkit/proof.hpp"

namespace bunchkit {

uint64_t EnumerationStats::total() const { return std::accumulate(per_size.begin(), per_size.end(), uint64_t{0}); }

void SearchBudget::validate() const {
  validate_logic(logic);
  if (min_states < 1 || max_states > 5 || min_states > max_states)
    throw std::invalid_argument("state bounds must satisfy 1 <= min <= max <= 5");
  if (jobs < 1) throw std::invalid_argument("jobs must be positive");
  if (time_limit < 0) throw std::invalid_argument("time limit must be non-negative");
}

namespace {

using Clock = std::chrono::steady_clock;

uint32_t pmask(uint32_t m, const std::vector<int>& perm) {
  uint32_t r = 0;
  while (m) {
    int b = std::countr_zero(m);
    r |= 1u << perm[b];
    m &= m - 1;
  }
  return r;
}

// Frame contents as bit masks; n <= 5.
struct Skel {
  int n = 0;
  std::vector<uint32_t> up;
  uint32_t E = 0, U = 0;
  std::vector<int> minus;
  std::vector<uint32_t> comp, nabla, seq, R;
};

std::vector<uint32_t> perm_cells(const std::vector<uint32_t>& c, int n, const std::vector<int>& p) {
  std::vector<uint32_t> out(c.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) out[p[x] * n + p[y]] = pmask(c[x * n + y], p);
  return out;
}
std::vector<uint32_t> perm_rows(const std::vector<uint32_t>& c, const std::vector<int>& p) {
  std::vector<uint32_t> out(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) out[p[x]] = pmask(c[x], p);
  return out;
}
std::vector<int> perm_map(const std::vector<int>& m, const std::vector<int>& p) {
  std::vector<int> out(m.size());
  for (std::size_t x = 0; x < m.size(); ++x) out[p[x]] = p[m[x]];
  return out;
}

Skel to_skel(const Frame& f) {
  Skel s;
  s.n = f.size();
  auto mask = [](const StateSet& x) { return static_cast<uint32_t>(x.universe() ? x.word(0) : 0); };
  for (auto& u : f.up) s.up.push_back(mask(u));
  s.E = mask(f.E);
  s.U = mask(f.U);
  s.minus = f.minus;
  for (auto& c : f.comp) s.comp.push_back(mask(c));
  for (auto& c : f.nabla) s.nabla.push_back(mask(c));
  for (auto& c : f.seq) s.seq.push_back(mask(c));
  for (auto& c : f.R) s.R.push_back(mask(c));
  return s;
}

StateSet to_set(uint32_t m, int n) {
  StateSet s(n);
  for (int i = 0; i < n; ++i)
    if (m >> i & 1) s.set(i);
  return s;
}

Frame to_frame(const Logic& logic, const Skel& s) {
  Frame f = make_frame(logic, s.n);
  for (int x = 0; x < s.n; ++x) f.up[x] = to_set(s.up[x], s.n);
  f.E = to_set(s.E, s.n);
  f.U = to_set(s.U, s.n);
  if (!s.minus.empty()) f.minus = s.minus;
  for (std::size_t i = 0; i < s.comp.size(); ++i) f.comp[i] = to_set(s.comp[i], s.n);
  for (std::size_t i = 0; i < s.nabla.size() && i < f.nabla.size(); ++i) f.nabla[i] = to_set(s.nabla[i], s.n);
  for (std::size_t i = 0; i < s.seq.size() && i < f.seq.size(); ++i) f.seq[i] = to_set(s.seq[i], s.n);
  for (std::size_t i = 0; i < s.R.size() && i < f.R.size(); ++i) f.R[i] = to_set(s.R[i], s.n);
  return f;
}

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Keeps the permutations fixing the new component; false if one makes it smaller.
template <class Perm>
bool refine(std::vector<std::vector<int>>& group, Perm&& permuted_less_or_equal) {
  std::vector<std::vector<int>> keep;
  for (auto& p : group) {
    int c = permuted_less_or_equal(p);  // <0 smaller, 0 equal, >0 larger
    if (c < 0) return false;
    if (c == 0) keep.push_back(p);
  }
  group = std::move(keep);
  return true;
}

template <class T>
int cmp_vec(const std::vector<T>& a, const std::vector<T>& b) {
  if (a < b) return -1;
  return a == b ? 0 : 1;
}

int cmp_u(uint32_t a, uint32_t b) { return a < b ? -1 : (a == b ? 0 : 1); }

// Orbits of triples (x, y, z) under the given maps, minus forbidden ones.
using Triples = std::bitset<128>;

struct Orbits {
  std::vector<Triples> free;  // sets of triple indices
  Triples forced;
  bool impossible = false;
};

Orbits make_orbits(int n, const std::vector<std::function<int(int, int, int)>>& maps,
                   const std::function<bool(int, int, int)>& forbidden,
                   const std::function<bool(int, int, int)>& forced) {
  int t = n * n * n;
  std::vector<int> parent(t);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (int i = 0; i < t; ++i) {
    int x = i / (n * n), y = i / n % n, z = i % n;
    for (auto& m : maps) parent[find(i)] = find(m(x, y, z));
  }
  std::vector<Triples> orbit(t);
  for (int i = 0; i < t; ++i) orbit[find(i)].set(i);
  Orbits out;
  for (int i = 0; i < t; ++i) {
    if (orbit[i].none()) continue;
    bool bad = false, must = false;
    for (int j = 0; j < t; ++j)
      if (orbit[i].test(j)) {
        int x = j / (n * n), y = j / n % n, z = j % n;
        bad = bad || forbidden(x, y, z);
        must = must || forced(x, y, z);
      }
    if (bad && must) out.impossible = true;
    else if (must) out.forced |= orbit[i];
    else if (!bad) out.free.push_back(orbit[i]);
  }
  return out;
}

std::vector<uint32_t> cells_of(const Triples& triples, int n) {
  std::vector<uint32_t> c(n * n, 0);
  for (int j = 0; j < n * n * n; ++j)
    if (triples.test(j)) c[j / n] |= 1u << (j % n);
  return c;
}

bool bit(uint32_t m, int i) { return m >> i & 1; }

Logic mid_logic(const Logic& l) {
  if (is_dm(l.kind)) return l;
  return make_logic(base_kind(l.kind));
}

class Enumerator {
 public:
  Enumerator(const SearchBudget& b, const std::function<bool(const Frame&)>& visit)
      : b_(b), visit_(visit), k_(b.logic.kind) {
    if (b.time_limit > 0)
      deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(b.time_limit));
  }

  EnumerationStats run() {
    stats_.per_size.assign(b_.max_states + 1, 0);
    for (int n = b_.min_states; n <= b_.max_states && !stop_; ++n) {
      n_ = n;
      s_ = Skel{};
      s_.n = n;
      orders();
    }
    return stats_;
  }

 private:
  void halt(const char* why) {
    if (!stop_) {
      stop_ = true;
      stats_.complete = false;
      stats_.stop_reason = why;
    }
  }
  bool timed_out() {
    if (b_.time_limit > 0 && (++tick_ & 255) == 0 && Clock::now() > deadline_) halt("time limit");
    return stop_;
  }

  void orders() {
    auto group = all_perms(n_);
    if (is_boolean(k_) || k_ == Kind::LGL) {
      s_.up.assign(n_, 0);
      for (int x = 0; x < n_; ++x) s_.up[x] = 1u << x;
      units(group);
      return;
    }
    int pairs = n_ * (n_ - 1);
    for (uint32_t m = 0; m < (1u << pairs) && !stop_; ++m) {
      std::vector<uint32_t> up(n_);
      int b = 0;
      for (int x = 0; x < n_; ++x) {
        up[x] = 1u << x;
        for (int y = 0; y < n_; ++y)
          if (x != y && (m >> b++ & 1)) up[x] |= 1u << y;
      }
      bool trans = true;
      for (int x = 0; x < n_ && trans; ++x)
        for (int y = 0; y < n_; ++y)
          if (bit(up[x], y) && (up[y] & ~up[x])) trans = false;
      if (!trans) continue;
      auto g = group;
      if (!refine(g, [&](const std::vector<int>& p) { return cmp_vec(perm_rows(up, p), up); })) continue;
      s_.up = up;
      units(g);
    }
  }

  uint32_t up_close(uint32_t m) const {
    uint32_t r = m;
    for (int x = 0; x < n_; ++x)
      if (bit(m, x)) r |= s_.up[x];
    return r;
  }
  uint32_t down_close(uint32_t m) const {
    uint32_t r = m;
    for (int x = 0; x < n_; ++x)
      if (s_.up[x] & m) r |= 1u << x;
    return r;
  }

  void units(std::vector<std::vector<int>> group) {
    if (!has_unit(k_)) {
      s_.E = 0;
      minuses(group);
      return;
    }
    for (uint32_t e = 1; e < (1u << n_) && !stop_; ++e) {
      if (up_close(e) != e) continue;
      auto g = group;
      if (!refine(g, [&](const std::vector<int>& p) { return cmp_u(pmask(e, p), e); })) continue;
      s_.E = e;
      minuses(g);
    }
  }

  void minuses(std::vector<std::vector<int>> group) {
    if (!is_dm(k_)) {
      s_.minus.clear();
      us(group);
      return;
    }
    std::vector<int> m(n_);
    std::function<void(int)> rec = [&](int x) {
      if (stop_) return;
      if (x == n_) {
        for (int a = 0; a < n_; ++a)
          if (m[m[a]] != a) return;
        for (int a = 0; a < n_; ++a)
          for (int c = 0; c < n_; ++c)
            if (bit(s_.up[a], c) && !bit(s_.up[m[c]], m[a])) return;
        auto g = group;
        if (!refine(g, [&](const std::vector<int>& p) { return cmp_vec(perm_map(m, p), m); })) return;
        s_.minus = m;
        us(g);
        return;
      }
      for (int v = 0; v < n_; ++v) {
        m[x] = v;
        rec(x + 1);
      }
    };
    rec(0);
  }

  void us(std::vector<std::vector<int>> group) {
    if (!is_bi_bi(k_)) {
      s_.U = 0;
      comps(group);
      return;
    }
    for (uint32_t u = 0; u < (1u << n_) && !stop_; ++u) {
      if (down_close(u) != u) continue;
      auto g = group;
      if (!refine(g, [&](const std::vector<int>& p) { return cmp_u(pmask(u, p), u); })) continue;
      s_.U = u;
      comps(g);
    }
  }

  // Enumerates subsets of the orbits, keeps canonical ones and hands them on.
  void relation(const Orbits& o, std::vector<uint32_t>& slot, std::vector<std::vector<int>>& group,
                const std::function<void(std::vector<std::vector<int>>&)>& next) {
    if (o.impossible) return;
    std::size_t k = o.free.size();
    if (k >= 64) {
      halt("search space too large");
      return;
    }
    for (uint64_t m = 0; m < (uint64_t{1} << k) && !stop_; ++m) {
      if (timed_out()) return;
      Triples t = o.forced;
      for (std::size_t i = 0; i < k; ++i)
        if (m >> i & 1) t |= o.free[i];
      slot = cells_of(t, n_);
      auto g = group;
      if (!refine(g, [&](const std::vector<int>& p) { return cmp_vec(perm_cells(slot, n_, p), slot); })) continue;
      next(g);
    }
  }

  void comps(std::vector<std::vector<int>> group) {
    std::vector<std::function<int(int, int, int)>> maps;
    int n = n_;
    if (is_commutative(k_)) maps.push_back([n](int x, int y, int z) { return (y * n + x) * n + z; });
    if (is_dm(k_)) {
      auto mi = s_.minus;
      maps.push_back([n, mi](int x, int y, int z) { return (mi[z] * n + y) * n + mi[x]; });
    }
    bool unit = has_unit(k_);
    Orbits o = make_orbits(
        n, maps,
        [&](int y, int e, int x) { return unit && bit(s_.E, e) && !bit(s_.up[y], x); },
        [](int, int, int) { return false; });
    relation(o, s_.comp, group, [&](std::vector<std::vector<int>>& g) {
      // Prune on the monoid and De Morgan axioms before the remaining structure.
      if (k_ == Kind::BiBI || k_ == Kind::BiBBI || k_ == Kind::CKBI || k_ == Kind::SML) {
        Skel base = s_;
        base.U = 0;
        base.nabla.clear();
        base.seq.clear();
        base.R.clear();
        if (!frame_ok(to_frame(mid_logic(b_.logic), base))) return;
      }
      nablas(g);
    });
  }

  void nablas(std::vector<std::vector<int>>& group) {
    if (!is_bi_bi(k_)) {
      s_.nabla.clear();
      seqs(group);
      return;
    }
    int n = n_;
    const Logic& l = b_.logic;
    Orbits o = make_orbits(
        n, {[n](int x, int y, int z) { return (y * n + x) * n + z; }},
        [&](int y, int u, int x) { return l.has(Sigma::MbotWeakening) && bit(s_.U, u) && !bit(s_.up[x], y); },
        [&](int x, int y, int z) { return l.has(Sigma::MorContraction) && x == y && y == z; });
    relation(o, s_.nabla, group, [&](std::vector<std::vector<int>>& g) { seqs(g); });
  }

  void seqs(std::vector<std::vector<int>>& group) {
    if (k_ != Kind::CKBI) {
      s_.seq.clear();
      rs(group);
      return;
    }
    Orbits o = make_orbits(
        n_, {},
        [&](int x, int y, int z) { return (bit(s_.E, x) && z != y) || (bit(s_.E, y) && z != x); },
        [&](int x, int y, int z) { return std::popcount(s_.E) == 1 && (bit(s_.E, x) ? z == y : bit(s_.E, y) && z == x); });
    relation(o, s_.seq, group, [&](std::vector<std::vector<int>>& g) { rs(g); });
  }

  void rs(std::vector<std::vector<int>>& group) {
    if (k_ != Kind::SML) {
      s_.R.clear();
      leaf(group);
      return;
    }
    int cells = n_ * n_;
    for (uint32_t m = 0; m < (1u << cells) && !stop_; ++m) {
      std::vector<uint32_t> r(n_);
      for (int x = 0; x < n_; ++x) r[x] = (m >> (x * n_)) & ((1u << n_) - 1);
      Modal md = b_.logic.modal;
      if (md != Modal::None) {
        bool ok = true;
        for (int x = 0; x < n_ && ok; ++x) {
          if (!bit(r[x], x)) ok = false;
          for (int y = 0; y < n_ && ok; ++y)
            if (bit(r[x], y) && ((r[y] & ~r[x]) || (md == Modal::S5 && !bit(r[y], x)))) ok = false;
        }
        if (!ok) continue;
      }
      auto g = group;
      if (!refine(g, [&](const std::vector<int>& p) { return cmp_vec(perm_rows(r, p), r); })) continue;
      s_.R = r;
      leaf(g);
    }
  }

  void leaf(std::vector<std::vector<int>>&) {
    if (timed_out()) return;
    ++stats_.leaves;
    Frame f = to_frame(b_.logic, s_);
    if (!frame_ok(f)) return;
    if (stats_.total() >= b_.max_frames) {
      halt("frame limit");
      return;
    }
    ++stats_.per_size[n_];
    if (!visit_(f)) halt("stopped by caller");
  }

  const SearchBudget& b_;
  const std::function<bool(const Frame&)>& visit_;
  Kind k_;
  Clock::time_point deadline_{};
  EnumerationStats stats_;
  Skel s_;
  int n_ = 0;
  bool stop_ = false;
  uint64_t tick_ = 0;
};

}  // namespace

EnumerationStats enumerate_frames(const SearchBudget& b, const std::function<bool(const Frame&)>& visit) {
  b.validate();
  return Enumerator(b, visit).run();
}

std::vector<Frame> enumerate_frames(const SearchBudget& b, EnumerationStats* stats) {
  std::vector<Frame> out;
  auto st = enumerate_frames(b, [&](const Frame& f) {
    out.push_back(f);
    return true;
  });
  if (stats) *stats = st;
  return out;
}

std::vector<uint32_t> frame_code(const Frame& f) {
  if (f.size() > 32) throw std::invalid_argument("frame_code needs at most 32 states");
  Skel s = to_skel(f);
  std::vector<uint32_t> c = s.up;
  c.push_back(s.E);
  for (int m : s.minus) c.push_back(static_cast<uint32_t>(m));
  c.push_back(s.U);
  for (auto* part : {&s.comp, &s.nabla, &s.seq, &s.R}) c.insert(c.end(), part->begin(), part->end());
  return c;
}

Frame permute_frame(const Frame& f, const std::vector<int>& perm) {
  int n = f.size();
  Skel s = to_skel(f);
  Skel t;
  t.n = n;
  t.up = perm_rows(s.up, perm);
  t.E = pmask(s.E, perm);
  t.U = pmask(s.U, perm);
  t.minus = perm_map(s.minus, perm);
  t.comp = perm_cells(s.comp, n, perm);
  if (!s.nabla.empty()) t.nabla = perm_cells(s.nabla, n, perm);
  if (!s.seq.empty()) t.seq = perm_cells(s.seq, n, perm);
  if (!s.R.empty()) t.R = perm_rows(s.R, perm);
  Frame g = to_frame(f.logic, t);
  for (int x = 0; x < n; ++x) g.names[perm[x]] = f.names[x];
  return g;
}

Frame canonical_form(const Frame& f) {
  if (f.size() > 8) throw std::invalid_argument("canonical_form needs at most 8 states");
  Frame best = f;
  auto best_code = frame_code(f);
  for (auto& p : all_perms(f.size())) {
    Frame g = permute_frame(f, p);
    auto c = frame_code(g);
    if (c < best_code) {
      best_code = c;
      best = g;
    }
  }
  return best;
}

// ---------------------------------------------------------------- random generation

std::optional<Frame> random_frame(const Logic& logic, int n, std::mt19937_64& rng, int max_tries) {
  validate_logic(logic);
  if (n < 1 || n > 5) throw std::invalid_argument("random_frame supports 1..5 states");
  Kind k = logic.kind;
  std::uniform_real_distribution<double> unif(0, 1);
  auto coin = [&](double p) { return unif(rng) < p; };
  auto pick = [&](uint32_t m) {
    std::vector<int> el;
    for (int i = 0; i < n; ++i)
      if (bit(m, i)) el.push_back(i);
    return el[rng() % el.size()];
  };
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    Skel s;
    s.n = n;
    s.up.assign(n, 0);
    bool discrete = is_boolean(k) || k == Kind::LGL;
    for (int x = 0; x < n; ++x) {
      s.up[x] = 1u << x;
      if (!discrete)
        for (int y = 0; y < n; ++y)
          if (coin(0.25)) s.up[x] |= 1u << y;
    }
    for (int it = 0; it < n; ++it)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (bit(s.up[x], y)) s.up[x] |= s.up[y];
    auto up_close = [&](uint32_t m) {
      uint32_t r = m;
      for (int x = 0; x < n; ++x)
        if (bit(m, x)) r |= s.up[x];
      return r;
    };
    auto down_close = [&](uint32_t m) {
      uint32_t r = m;
      for (int x = 0; x < n; ++x)
        if (s.up[x] & m) r |= 1u << x;
      return r;
    };
    if (has_unit(k)) s.E = up_close(1u << (rng() % n) | (coin(0.3) ? static_cast<uint32_t>(rng() % (1u << n)) : 0u));
    if (is_dm(k)) {
      std::vector<int> p(n);
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      s.minus.assign(n, 0);
      for (int i = 0; i < n; i += 2) {
        if (i + 1 < n && coin(0.6)) {
          s.minus[p[i]] = p[i + 1];
          s.minus[p[i + 1]] = p[i];
        } else {
          s.minus[p[i]] = p[i];
          if (i + 1 < n) s.minus[p[i + 1]] = p[i + 1];
        }
      }
    }
    if (is_bi_bi(k)) s.U = down_close(coin(0.8) ? 1u << (rng() % n) : 0u);
    double p = 0.1 + 0.4 * unif(rng);
    auto orbit_rel = [&](const Orbits& o, double prob) {
      Triples t = o.forced;
      for (auto& f : o.free)
        if (coin(prob)) t |= f;
      return t;
    };
    auto add_orbit = [&](const Orbits& o, Triples& t, int x, int y, int z) {
      int idx = (x * n + y) * n + z;
      for (auto& f : o.free)
        if (f.test(idx)) t |= f;
    };
    std::vector<std::function<int(int, int, int)>> maps;
    if (is_commutative(k)) maps.push_back([n](int x, int y, int z) { return (y * n + x) * n + z; });
    if (is_dm(k)) {
      auto mi = s.minus;
      maps.push_back([n, mi](int x, int y, int z) { return (mi[z] * n + y) * n + mi[x]; });
    }
    Orbits oc = make_orbits(
        n, maps, [&](int y, int e, int x) { return has_unit(k) && bit(s.E, e) && !bit(s.up[y], x); },
        [](int, int, int) { return false; });
    if (oc.impossible) continue;
    Triples tc = orbit_rel(oc, p);
    if (has_unit(k))
      for (int x = 0; x < n; ++x) add_orbit(oc, tc, x, pick(s.E), x);
    s.comp = cells_of(tc, n);
    if (is_bi_bi(k)) {
      Orbits on = make_orbits(
          n, {[n](int x, int y, int z) { return (y * n + x) * n + z; }},
          [&](int y, int u, int x) { return logic.has(Sigma::MbotWeakening) && bit(s.U, u) && !bit(s.up[x], y); },
          [&](int x, int y, int z) { return logic.has(Sigma::MorContraction) && x == y && y == z; });
      if (on.impossible) continue;
      Triples tn = orbit_rel(on, p);
      if (logic.has(Sigma::MbotContraction) && s.U)
        for (int x = 0; x < n; ++x) add_orbit(on, tn, x, pick(s.U), x);
      s.nabla = cells_of(tn, n);
    }
    if (k == Kind::CKBI) {
      Orbits os = make_orbits(
          n, {}, [&](int x, int y, int z) { return (bit(s.E, x) && z != y) || (bit(s.E, y) && z != x); },
          [](int, int, int) { return false; });
      Triples ts = orbit_rel(os, p);
      for (int x = 0; x < n; ++x) {
        add_orbit(os, ts, pick(s.E), x, x);
        add_orbit(os, ts, x, pick(s.E), x);
      }
      s.seq = cells_of(ts, n);
    }
    if (k == Kind::SML) {
      s.R.assign(n, 0);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (coin(0.4)) s.R[x] |= 1u << y;
      if (logic.modal != Modal::None) {
        for (int x = 0; x < n; ++x) s.R[x] |= 1u << x;
        if (logic.modal == Modal::S5)
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
              if (bit(s.R[x], y)) s.R[y] |= 1u << x;
        for (int it = 0; it < n; ++it)
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
              if (bit(s.R[x], y)) s.R[x] |= s.R[y];
      }
    }
    Frame f = to_frame(logic, s);
    if (frame_ok(f)) return f;
  }
  return std::nullopt;
}

Valuation random_valuation(const Frame& f, const std::vector<std::string>& atoms, std::mt19937_64& rng) {
  Valuation v;
  for (auto& a : atoms) {
    StateSet s = f.none();
    for (int x = 0; x < f.size(); ++x)
      if (rng() & 1) s.set(x);
    v[a] = f.up_closure(s);
  }
  return v;
}

Formula random_formula(const Logic& logic, int depth, const std::vector<std::string>& atoms, std::mt19937_64& rng) {
  static const Op kConsts[] = {Op::Top, Op::Bot, Op::MUnit, Op::MBot};
  static const Op kOps[] = {Op::And,  Op::Or,    Op::Imp, Op::Star, Op::Wand, Op::Dnaw, Op::MNeg,
                            Op::MOr,  Op::RSlash, Op::Seq, Op::RSeq, Op::LSeq, Op::Dia,  Op::Box,
                            Op::Not,  Op::DiaSub};
  std::vector<Op> consts, ops;
  for (Op o : kConsts)
    if (admits(logic, o)) consts.push_back(o);
  for (Op o : kOps)
    if (admits(logic, o)) ops.push_back(o);
  std::function<Formula(int)> gen = [&](int d) -> Formula {
    if (d == 0 || rng() % 4 == 0) {
      if (!consts.empty() && rng() % 5 == 0) {
        Op c = consts[rng() % consts.size()];
        switch (c) {
          case Op::Top: return top();
          case Op::Bot: return bot();
          case Op::MUnit: return munit();
          default: return mbot();
        }
      }
      return atom(atoms[rng() % atoms.size()]);
    }
    Op o = ops[rng() % ops.size()];
    if (op_arity(o) == 1) return unary(o, gen(d - 1));
    Formula a = gen(d - 1);
    return binary(o, a, gen(d - 1));
  };
  return gen(depth);
}

// ---------------------------------------------------------------- countermodels

namespace {

struct FrameHit {
  Valuation val;
  int state;
};

// Valuations of the atoms by up-sets, ordered by total population count and then
// lexicographically by up-set rank. Returns the first hit; sets exhausted_budget when
// the valuation cap stopped the scan.
std::optional<FrameHit> search_frame(const Frame& f, const Sequent& s, const std::vector<std::string>& atoms,
                                     uint64_t cap, bool& capped) {
  int n = f.size();
  std::vector<StateSet> ups;
  for (uint32_t m = 0; m < (1u << n); ++m) {
    StateSet x = to_set(m, n);
    if (f.is_up_set(x)) ups.push_back(x);
  }
  std::stable_sort(ups.begin(), ups.end(), [](const StateSet& a, const StateSet& b) { return a.count() < b.count(); });
  std::size_t k = atoms.size();
  Model m{f, {}, Mode::Strong};
  std::vector<int> pick(k, 0);
  uint64_t seen = 0;
  std::optional<FrameHit> hit;
  std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int remaining) -> bool {
    if (i == k) {
      if (remaining != 0) return false;
      if (++seen > cap) {
        capped = true;
        return true;
      }
      for (std::size_t a = 0; a < k; ++a) m.val[atoms[a]] = ups[pick[a]];
      StateSet bad = extension(m, s.lhs) - extension(m, s.rhs);
      if (bad.any()) {
        hit = FrameHit{m.val, bad.first()};
        return true;
      }
      return false;
    }
    for (std::size_t u = 0; u < ups.size(); ++u) {
      int c = static_cast<int>(ups[u].count());
      if (c > remaining) break;
      pick[i] = static_cast<int>(u);
      if (rec(i + 1, remaining - c)) return true;
    }
    return false;
  };
  if (k == 0) {
    StateSet bad = extension(m, s.lhs) - extension(m, s.rhs);
    if (bad.any()) return FrameHit{{}, bad.first()};
    return std::nullopt;
  }
  for (int total = 0; total <= static_cast<int>(k) * n; ++total)
    if (rec(0, total)) break;
  return hit;
}

}  // namespace

SearchOutcome countermodel_search(const Sequent& s, const SearchBudget& b) {
  b.validate();
  check_signature(s.lhs, b.logic);
  check_signature(s.rhs, b.logic);
  std::set<std::string> as = atoms_of(s.lhs);
  for (auto& a : atoms_of(s.rhs)) as.insert(a);
  std::vector<std::string> atoms(as.begin(), as.end());
  SearchOutcome out;
  out.stats.per_size.assign(b.max_states + 1, 0);
  auto start = Clock::now();
  for (int n = b.min_states; n <= b.max_states; ++n) {
    SearchBudget bn = b;
    bn.min_states = bn.max_states = n;
    if (b.time_limit > 0) {
      double left = b.time_limit - std::chrono::duration<double>(Clock::now() - start).count();
      if (left <= 0) {
        out.complete = false;
        out.note = "time limit";
        break;
      }
      bn.time_limit = left;
    }
    EnumerationStats st;
    std::vector<Frame> frames = enumerate_frames(bn, &st);
    out.stats.per_size[n] = st.per_size[n];
    out.stats.leaves += st.leaves;
    if (!st.complete) {
      out.complete = false;
      out.stats.complete = false;
      out.stats.stop_reason = st.stop_reason;
      out.note = st.stop_reason;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{frames.size()};
    std::vector<std::optional<FrameHit>> hits(frames.size());
    std::vector<char> capped(frames.size(), 0);
    auto work = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= frames.size() || i > best.load()) return;
        bool cap = false;
        hits[i] = search_frame(frames[i], s, atoms, b.max_valuations, cap);
        capped[i] = cap;
        if (hits[i]) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    };
    int jobs = std::max(1, std::min<int>(b.jobs, static_cast<int>(frames.size())));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    std::size_t bi = best.load();
    out.frames_tried += std::min(bi + 1, frames.size());
    for (std::size_t i = 0; i < std::min(bi, frames.size()); ++i)
      if (capped[i]) {
        out.complete = false;
        out.note = "valuation limit";
      }
    if (bi < frames.size()) {
      Countermodel cm{frames[bi], hits[bi]->val, hits[bi]->state};
      Model m{cm.frame, cm.val, Mode::Strong};
      if (!satisfies(m, cm.state, s.lhs) || satisfies(m, cm.state, s.rhs))
        throw std::logic_error("countermodel failed its self-check");
      out.model = std::move(cm);
      return out;
    }
    if (!st.complete) break;
  }
  return out;
}

// ---------------------------------------------------------------- soundness fuzz

FuzzReport soundness_fuzz(const SearchBudget& b, int models, uint64_t seed, int instances_per_rule) {
  b.validate();
  FuzzReport rep;
  rep.logic = b.logic;
  std::mt19937_64 rng(seed);
  auto rules = list_rules(b.logic);
  for (auto& r : rules) rep.rules.push_back({r.id, 0, 0});
  const std::vector<std::string> atoms = {"p", "q", "r"};
  for (int t = 0; t < models; ++t) {
    int n = b.min_states + static_cast<int>(rng() % (b.max_states - b.min_states + 1));
    std::optional<Frame> f;
    for (int m = n; m >= 1 && !f; --m) f = random_frame(b.logic, m, rng);
    if (!f) continue;
    ++rep.models;
    Model model{*f, random_valuation(*f, atoms, rng), Mode::Strong};
    for (std::size_t ri = 0; ri < rules.size(); ++ri) {
      const Rule& rule = rules[ri];
      for (int inst = 0; inst < instances_per_rule; ++inst) {
        std::map<std::string, Formula> subst;
        for (auto& mv : rule.metavars) subst[mv] = random_formula(b.logic, inst == 0 ? 0 : 1 + inst % 2, atoms, rng);
        for (auto& form : rule.forms) {
          ++rep.rules[ri].checks;
          bool premises = true;
          for (auto& p : form.premises)
            premises = premises && entails_in_model(model, {instantiate(p.lhs, subst), instantiate(p.rhs, subst)});
          if (!premises) continue;
          ++rep.rules[ri].non_vacuous;
          Sequent c{instantiate(form.conclusion.lhs, subst), instantiate(form.conclusion.rhs, subst)};
          if (!entails_in_model(model, c)) {
            std::string val;
            for (auto& [a, sset] : model.val) {
              val += a + "={";
              bool first = true;
              sset.for_each([&](int x) {
                val += (first ? "" : ",") + model.frame.names[x];
                first = false;
              });
              val += "} ";
            }
            rep.violations.push_back({rule.id, print_sequent(c), std::to_string(model.frame.size()) + " states", val});
          }
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- algebras

namespace {

// Up-set lattice of a poset on m points. above[p] = up-set of p (including p).
struct UpLattice {
  int m = 0;
  std::vector<uint32_t> above;
  std::vector<uint32_t> elems;  // up-sets, by size then mask
  std::vector<int> index;       // mask -> element

  int k() const { return static_cast<int>(elems.size()); }
};

UpLattice make_lattice(const std::vector<uint32_t>& above) {
  UpLattice L;
  L.m = static_cast<int>(above.size());
  L.above = above;
  L.index.assign(1u << L.m, -1);
  for (uint32_t s = 0; s < (1u << L.m); ++s) {
    bool up = true;
    for (int p = 0; p < L.m && up; ++p)
      if (bit(s, p) && (L.above[p] & ~s)) up = false;
    if (up) L.elems.push_back(s);
  }
  std::stable_sort(L.elems.begin(), L.elems.end(),
                   [](uint32_t a, uint32_t b) { return std::popcount(a) < std::popcount(b); });
  for (int i = 0; i < L.k(); ++i) L.index[L.elems[i]] = i;
  return L;
}

std::string set_name(uint32_t s, int m) {
  std::string out = "{";
  bool first = true;
  for (int p = 0; p < m; ++p)
    if (bit(s, p)) {
      out += (first ? "" : ",") + std::to_string(p);
      first = false;
    }
  return out + "}";
}

// Join-preserving binary operation generated by f over pairs of points.
uint32_t apply(const std::vector<uint32_t>& f, int m, uint32_t a, uint32_t b) {
  uint32_t r = 0;
  for (int p = 0; p < m; ++p)
    if (bit(a, p))
      for (int q = 0; q < m; ++q)
        if (bit(b, q)) r |= f[p * m + q];
  return r;
}

std::vector<int> table_of(const UpLattice& L, const std::vector<uint32_t>& f) {
  int k = L.k();
  std::vector<int> t(k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) t[a * k + b] = L.index[apply(f, L.m, L.elems[a], L.elems[b])];
  return t;
}

// Backtracking search for generator tables f (point pairs -> up-sets), antitone in
// each argument, so that the generated operation is as requested.
struct TableSearch {
  explicit TableSearch(const UpLattice& l) : L(l) {}
  const UpLattice& L;
  bool commutative = false;
  int unit = -1;  // element index
  bool associative = false;
  std::mt19937_64* rng = nullptr;  // random value order when set
  uint64_t node_limit = UINT64_MAX;
  std::function<bool(const std::vector<uint32_t>&)> leaf;  // return false to stop

  uint64_t nodes = 0;
  bool stopped = false;

  void run() {
    int m = L.m;
    f.assign(m * m, 0);
    if (unit >= 0) {
      umask = L.elems[unit];
      if (m > 0 && umask == 0) return;
      umax = umask ? 31 - std::countl_zero(umask) : -1;
    }
    rec(0);
  }

 private:
  std::vector<uint32_t> f;
  uint32_t umask = 0;
  int umax = -1;

  bool le_point(int p, int q) const { return bit(L.above[p], q); }  // p <= q

  bool consistent(int p, int q) const {
    int m = L.m;
    uint32_t v = f[p * m + q];
    for (int p2 = 0; p2 < p; ++p2) {
      uint32_t w = f[p2 * m + q];
      if (le_point(p2, p) && (v & ~w)) return false;
      if (le_point(p, p2) && (w & ~v)) return false;
    }
    for (int q2 = 0; q2 < q; ++q2) {
      uint32_t w = f[p * m + q2];
      if (le_point(q2, q) && (v & ~w)) return false;
      if (le_point(q, q2) && (w & ~v)) return false;
    }
    if (unit >= 0) {
      if (p == umax) {
        uint32_t r = 0;
        for (int u = 0; u < m; ++u)
          if (bit(umask, u)) r |= f[u * m + q];
        if (r != L.above[q]) return false;
      }
      if (q == umax) {
        uint32_t r = 0;
        for (int u = 0; u < m; ++u)
          if (bit(umask, u)) r |= f[p * m + u];
        if (r != L.above[p]) return false;
      }
    }
    return true;
  }

  bool assoc_ok() const {
    int m = L.m;
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        uint32_t pq = f[p * m + q];
        for (int r = 0; r < m; ++r)
          if (apply(f, m, pq, L.above[r]) != apply(f, m, L.above[p], f[q * m + r])) return false;
      }
    return true;
  }

  void rec(int cell) {
    if (stopped) return;
    int m = L.m;
    if (cell == m * m) {
      if (associative && !assoc_ok()) return;
      if (!leaf(f)) stopped = true;
      return;
    }
    int p = cell / m, q = cell % m;
    if (commutative && q < p) {
      f[cell] = f[q * m + p];
      if (consistent(p, q)) rec(cell + 1);
      return;
    }
    std::vector<int> order(L.k());
    std::iota(order.begin(), order.end(), 0);
    if (rng) std::shuffle(order.begin(), order.end(), *rng);
    for (int v : order) {
      if (stopped) return;
      if (++nodes > node_limit) {
        stopped = true;
        return;
      }
      f[cell] = L.elems[v];
      if (consistent(p, q)) rec(cell + 1);
    }
  }
};

// Posets on m points given as above[] masks, one per isomorphism class, whose
// up-set lattice has at most max_size elements.
std::vector<std::vector<uint32_t>> posets(int max_size, bool antichains_only) {
  std::vector<std::vector<uint32_t>> out;
  std::set<std::vector<uint32_t>> seen;
  auto count_ups = [](const std::vector<uint32_t>& above) {
    int m = static_cast<int>(above.size()), c = 0;
    for (uint32_t s = 0; s < (1u << m); ++s) {
      bool up = true;
      for (int p = 0; p < m && up; ++p)
        if (bit(s, p) && (above[p] & ~s)) up = false;
      c += up;
    }
    return c;
  };
  auto canon = [](const std::vector<uint32_t>& above) {
    int m = static_cast<int>(above.size());
    std::vector<uint32_t> best = above;
    for (auto& p : all_perms(m)) {
      auto c = perm_rows(above, p);
      best = std::min(best, c);
    }
    return best;
  };
  // Points are added in a linear extension: each new point is maximal so far,
  // given by the set of earlier points below it (a down-set).
  std::function<void(std::vector<uint32_t>&)> rec = [&](std::vector<uint32_t>& above) {
    if (count_ups(above) > max_size) return;
    auto c = canon(above);
    if (seen.insert(c).second) out.push_back(c);
    int m = static_cast<int>(above.size());
    if (m >= 7) return;
    for (uint32_t below = 0; below < (1u << m); ++below) {
      if (antichains_only && below) break;
      bool down = true;
      for (int p = 0; p < m && down; ++p)
        if (bit(below, p))
          for (int q = 0; q < m; ++q)
            if (bit(above[q], p) && !bit(below, q)) down = false;
      if (!down) continue;
      auto next = above;
      for (int p = 0; p < m; ++p)
        if (bit(below, p)) next[p] |= 1u << m;
      next.push_back(1u << m);
      rec(next);
    }
  };
  std::vector<uint32_t> empty;
  rec(empty);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

Algebra lattice_algebra(const Logic& logic, const UpLattice& L) {
  Algebra a;
  a.logic = logic;
  int k = L.k();
  for (uint32_t s : L.elems) a.names.push_back(set_name(s, L.m));
  a.leq.assign(k * k, 0);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) a.leq[x * k + y] = (L.elems[x] & ~L.elems[y]) == 0;
  return a;
}

bool exchange_ok(const UpLattice& L, const std::vector<uint32_t>& st, const std::vector<uint32_t>& sq) {
  int m = L.m;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          uint32_t lhs = apply(sq, m, st[a * m + b], st[c * m + d]);
          uint32_t rhs = apply(st, m, sq[a * m + c], sq[b * m + d]);
          if (lhs & ~rhs) return false;
        }
  return true;
}

}  // namespace

std::vector<Algebra> distributive_lattices(Kind k, int max_size) {
  std::vector<Algebra> out;
  for (auto& p : posets(max_size, is_boolean(k))) {
    UpLattice L = make_lattice(p);
    Algebra a = lattice_algebra(make_logic(k), L);
    complete_algebra(a);
    out.push_back(std::move(a));
  }
  return out;
}

EnumerationStats enumerate_ckbi_algebras(int max_size, const std::function<bool(const Algebra&)>& visit,
                                         double time_limit) {
  EnumerationStats st;
  st.per_size.assign(max_size + 1, 0);
  auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(time_limit));
  bool stop = false;
  for (auto& p : posets(max_size, is_boolean(Kind::CKBI))) {
    if (stop) break;
    UpLattice L = make_lattice(p);
    if (L.m == 0) continue;  // one element: emp = bot, degenerate
    for (int u = 0; u < L.k() && !stop; ++u) {
      TableSearch star{L};
      star.commutative = true;
      star.unit = u;
      star.associative = true;
      star.leaf = [&](const std::vector<uint32_t>& fst) {
        TableSearch seq{L};
        seq.unit = u;
        seq.associative = true;
        seq.leaf = [&](const std::vector<uint32_t>& fsq) {
          ++st.leaves;
          if (time_limit > 0 && Clock::now() > deadline) {
            st.complete = false;
            st.stop_reason = "time limit";
            stop = true;
            return false;
          }
          if (!exchange_ok(L, fst, fsq)) return true;
          Algebra a = lattice_algebra(make_logic(Kind::CKBI), L);
          a.star = table_of(L, fst);
          a.seq = table_of(L, fsq);
          a.munit = u;
          complete_algebra(a);
          ++st.per_size[L.k()];
          if (!visit(a)) {
            st.complete = false;
            st.stop_reason = "stopped by caller";
            stop = true;
          }
          return !stop;
        };
        seq.run();
        return !stop;
      };
      star.run();
    }
  }
  return st;
}

std::optional<Algebra> random_algebra(const Logic& logic, int max_size, std::mt19937_64& rng, int max_tries) {
  validate_logic(logic);
  Kind k = logic.kind;
  static thread_local std::map<std::pair<int, bool>, std::vector<std::vector<uint32_t>>> cache;
  auto key = std::make_pair(max_size, is_boolean(k));
  if (!cache.count(key)) cache[key] = posets(max_size, is_boolean(k));
  const auto& ps = cache[key];
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    const auto& p = ps[rng() % ps.size()];
    UpLattice L = make_lattice(p);
    if (L.m == 0) continue;
    Algebra a = lattice_algebra(logic, L);
    std::optional<std::vector<uint32_t>> fst;
    TableSearch star{L};
    star.rng = &rng;
    star.node_limit = 5000;
    if (has_unit(k)) {
      star.commutative = is_commutative(k);
      star.unit = static_cast<int>(rng() % L.k());
      star.associative = true;
    }
    star.leaf = [&](const std::vector<uint32_t>& f) {
      fst = f;
      return false;
    };
    star.run();
    if (!fst) continue;
    a.star = table_of(L, *fst);
    if (has_unit(k)) a.munit = star.unit;
    bool ok = true;
    if (k == Kind::CKBI) {
      std::optional<std::vector<uint32_t>> fsq;
      TableSearch seq{L};
      seq.rng = &rng;
      seq.node_limit = 5000;
      seq.unit = a.munit;
      seq.associative = true;
      seq.leaf = [&](const std::vector<uint32_t>& f) {
        if (!exchange_ok(L, *fst, f)) return true;
        fsq = f;
        return false;
      };
      seq.run();
      if (!fsq) continue;
      a.seq = table_of(L, *fsq);
    }
    if (k == Kind::SML) {
      std::vector<uint32_t> d(L.m);
      for (int q = 0; q < L.m; ++q) d[q] = L.elems[rng() % L.k()];
      if (logic.modal != Modal::None)
        for (int q = 0; q < L.m; ++q) d[q] |= L.above[q];
      a.dia.resize(L.k());
      for (int x = 0; x < L.k(); ++x) {
        uint32_t r = 0;
        for (int q = 0; q < L.m; ++q)
          if (bit(L.elems[x], q)) r |= d[q];
        a.dia[x] = L.index[r];
      }
    }
    if (is_bi_bi(k)) {
      // mor is meet-preserving: search a join-preserving table on the complements,
      // which form the up-set lattice of the opposite poset.
      std::vector<uint32_t> op(L.m);
      for (int p2 = 0; p2 < L.m; ++p2)
        for (int q = 0; q < L.m; ++q)
          if (bit(L.above[q], p2)) op[p2] |= 1u << q;
      UpLattice D = make_lattice(op);
      uint32_t all = (1u << L.m) - 1;
      std::vector<int> mb(L.k());
      std::iota(mb.begin(), mb.end(), 0);
      std::shuffle(mb.begin(), mb.end(), rng);
      ok = false;
      for (int mbot : mb) {
        TableSearch mor{D};
        mor.rng = &rng;
        mor.node_limit = 3000;
        mor.commutative = true;
        mor.associative = logic.has(Sigma::Associativity);
        if (logic.has(Sigma::MbotWeakening) && logic.has(Sigma::MbotContraction))
          mor.unit = D.index[all & ~L.elems[mbot]];
        mor.leaf = [&](const std::vector<uint32_t>& f) {
          a.mor.assign(L.k() * L.k(), 0);
          for (int x = 0; x < L.k(); ++x)
            for (int y = 0; y < L.k(); ++y)
              a.mor[x * L.k() + y] = L.index[all & ~apply(f, D.m, all & ~L.elems[x], all & ~L.elems[y])];
          a.mbot = mbot;
          Algebra t = a;
          t.rslash.clear();
          try {
            complete_algebra(t);
          } catch (const std::invalid_argument&) {
            return true;
          }
          if (!algebra_ok(t)) return true;
          ok = true;
          return false;
        };
        mor.run();
        if (ok) break;
      }
      if (!ok) continue;
    }
    if (is_dm(k)) {
      std::vector<int> mb(L.k());
      std::iota(mb.begin(), mb.end(), 0);
      std::shuffle(mb.begin(), mb.end(), rng);
      ok = false;
      for (int mbot : mb) {
        Algebra t = a;
        t.mbot = mbot;
        try {
          complete_algebra(t);
        } catch (const std::invalid_argument&) {
          continue;
        }
        if (algebra_ok(t)) {
          a = t;
          ok = true;
          break;
        }
      }
      if (!ok) continue;
    }
    try {
      complete_algebra(a);
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (algebra_ok(a)) return a;
  }
  return std::nullopt;
}

}  // namespace bunchkit
