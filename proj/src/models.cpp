#include "bunchkit/models.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "bunchkit/heap.hpp"

namespace bunchkit {

namespace {

bool reaches(const Scaffold& s, const Subgraph& h, const Subgraph& k) {
  for (auto [a, b] : s.distinguished)
    if (std::binary_search(h.vertices.begin(), h.vertices.end(), a) &&
        std::binary_search(k.vertices.begin(), k.vertices.end(), b))
      return true;
  return false;
}

std::string subgraph_name(const Scaffold& s, const Subgraph& g) {
  std::string out = "{";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) out += (i ? "," : "") + s.vertices[g.vertices[i]];
  if (!g.edges.empty()) {
    out += "|";
    for (std::size_t i = 0; i < g.edges.size(); ++i)
      out += (i ? "," : "") + s.vertices[g.edges[i].first] + ">" + s.vertices[g.edges[i].second];
  }
  return out + "}";
}

Subgraph normalized(Subgraph g) {
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

}  // namespace

std::optional<Subgraph> layer(const Scaffold& s, const Subgraph& h, const Subgraph& k) {
  for (int v : h.vertices)
    if (std::binary_search(k.vertices.begin(), k.vertices.end(), v)) return std::nullopt;
  if (!reaches(s, h, k) || reaches(s, k, h)) return std::nullopt;
  Subgraph g;
  g.vertices = h.vertices;
  g.vertices.insert(g.vertices.end(), k.vertices.begin(), k.vertices.end());
  g.edges = h.edges;
  g.edges.insert(g.edges.end(), k.edges.begin(), k.edges.end());
  for (auto e : s.distinguished) {
    bool hk = std::binary_search(h.vertices.begin(), h.vertices.end(), e.first) &&
              std::binary_search(k.vertices.begin(), k.vertices.end(), e.second);
    bool kh = std::binary_search(k.vertices.begin(), k.vertices.end(), e.first) &&
              std::binary_search(h.vertices.begin(), h.vertices.end(), e.second);
    if (hk || kh) g.edges.push_back(e);
  }
  return normalized(std::move(g));
}

void validate_scaffold(const Scaffold& s) {
  int nv = static_cast<int>(s.vertices.size());
  if (nv > 4) throw std::invalid_argument("scaffolds are limited to 4 vertices");
  auto vertex_ok = [&](int v) { return v >= 0 && v < nv; };
  for (auto [a, b] : s.edges)
    if (!vertex_ok(a) || !vertex_ok(b)) throw std::invalid_argument("edge endpoint out of range");
  for (auto e : s.distinguished)
    if (std::find(s.edges.begin(), s.edges.end(), e) == s.edges.end())
      throw std::invalid_argument("distinguished edge is not an edge of the graph");
  for (const auto& g : s.X) {
    if (!(normalized(g) == g)) throw std::invalid_argument("subgraph lists must be sorted and duplicate-free");
    for (int v : g.vertices)
      if (!vertex_ok(v)) throw std::invalid_argument("subgraph vertex out of range");
    for (auto e : g.edges) {
      if (std::find(s.edges.begin(), s.edges.end(), e) == s.edges.end())
        throw std::invalid_argument("subgraph edge is not an edge of the graph");
      if (!std::binary_search(g.vertices.begin(), g.vertices.end(), e.first) ||
          !std::binary_search(g.vertices.begin(), g.vertices.end(), e.second))
        throw std::invalid_argument("subgraph edge leaves its vertices");
    }
  }
  for (std::size_t i = 0; i < s.X.size(); ++i)
    for (std::size_t j = i + 1; j < s.X.size(); ++j)
      if (s.X[i] == s.X[j]) throw std::invalid_argument("X lists a subgraph twice");
  auto in_X = [&](const Subgraph& g) { return std::find(s.X.begin(), s.X.end(), g) != s.X.end(); };
  // H, K in X implies H @ K in X
  for (const auto& h : s.X)
    for (const auto& k : s.X)
      if (auto g = layer(s, h, k); g && !in_X(*g))
        throw std::invalid_argument("X is not closed: " + subgraph_name(s, h) + " @ " + subgraph_name(s, k) +
                                    " is missing");
  // H @ K in X implies H, K in X; decompositions of g split its vertices in two.
  for (const auto& g : s.X) {
    int m = static_cast<int>(g.vertices.size());
    for (uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
      Subgraph h, k;
      for (int i = 0; i < m; ++i) (mask >> i & 1 ? h : k).vertices.push_back(g.vertices[i]);
      for (auto e : g.edges) {
        bool eh = std::binary_search(h.vertices.begin(), h.vertices.end(), e.first);
        bool fh = std::binary_search(h.vertices.begin(), h.vertices.end(), e.second);
        if (eh && fh) h.edges.push_back(e);
        else if (!eh && !fh) k.edges.push_back(e);
      }
      auto lk = layer(s, h, k);
      if (lk && *lk == g && (!in_X(h) || !in_X(k)))
        throw std::invalid_argument("X is not closed: " + subgraph_name(s, g) + " splits into " +
                                    subgraph_name(s, h) + " @ " + subgraph_name(s, k));
    }
  }
}

Frame scaffold_frame(const Scaffold& s) {
  validate_scaffold(s);
  std::vector<std::string> names;
  for (const auto& g : s.X) names.push_back(subgraph_name(s, g));
  Frame f = make_frame(make_logic(s.order == GraphOrder::Equality ? Kind::LGL : Kind::ILGL), names);
  int n = f.size();
  auto sub = [](const Subgraph& a, const Subgraph& b) {
    return std::includes(b.vertices.begin(), b.vertices.end(), a.vertices.begin(), a.vertices.end()) &&
           std::includes(b.edges.begin(), b.edges.end(), a.edges.begin(), a.edges.end());
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if ((s.order == GraphOrder::Subgraph && sub(s.X[x], s.X[y])) ||
          (s.order == GraphOrder::Supergraph && sub(s.X[y], s.X[x])))
        f.up[x].set(y);
      if (auto g = layer(s, s.X[x], s.X[y])) {
        auto it = std::find(s.X.begin(), s.X.end(), *g);
        f.c(x, y).set(static_cast<int>(it - s.X.begin()));
      }
    }
  return f;
}

Frame monoid_frame(const PartialMonoid& m) {
  int n = static_cast<int>(m.names.size());
  if (n == 0 || static_cast<int>(m.op.size()) != n * n) throw std::invalid_argument("monoid table has the wrong size");
  if (m.unit < 0 || m.unit >= n) throw std::invalid_argument("unit out of range");
  auto op = [&](int x, int y) { return m.op[x * n + y]; };
  for (int v : m.op)
    if (v < -1 || v >= n) throw std::invalid_argument("product out of range");
  for (int x = 0; x < n; ++x) {
    if (op(m.unit, x) != x) throw std::invalid_argument("unit law fails at " + m.names[x]);
    for (int y = 0; y < n; ++y) {
      if (op(x, y) != op(y, x)) throw std::invalid_argument("table is not commutative");
      for (int z = 0; z < n; ++z) {
        int l = op(x, y) < 0 ? -1 : op(op(x, y), z);
        int r = op(y, z) < 0 ? -1 : op(x, op(y, z));
        if (l != r) throw std::invalid_argument("table is not associative");
      }
    }
  }
  bool discrete = true;
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int x = 0; x < n; ++x) le[x][x] = true;
  for (auto [x, y] : m.order) {
    if (x < 0 || x >= n || y < 0 || y >= n) throw std::invalid_argument("order pair out of range");
    if (x != y) discrete = false;
    le[x][y] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2)
      for (int b = 0; b < n; ++b)
        for (int b2 = 0; b2 < n; ++b2)
          if (le[a][a2] && le[b][b2] && op(a, b) >= 0 && op(a2, b2) >= 0 && !le[op(a, b)][op(a2, b2)])
            throw std::invalid_argument("order is not bifunctorial");
  Frame f = make_frame(make_logic(discrete ? Kind::BBI : Kind::BI), m.names);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (le[x][y]) f.up[x].set(y);
      if (op(x, y) >= 0) f.c(x, y).set(op(x, y));
    }
  f.E = f.up[m.unit];
  if (frame_ok(f)) return f;
  Frame g = f;
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      StateSet r = f.none();
      f.up[y].for_each([&](int y2) { f.up[z].for_each([&](int z2) { r |= f.c(y2, z2); }); });
      g.c(y, z) = f.up_closure(r);
    }
  auto v = check_frame(g, true);
  if (!v.empty()) throw std::invalid_argument("monoid does not give a frame: " + v.front().axiom);
  return g;
}

// ---------------------------------------------------------------- samples

namespace {

Frame bbi_2pt(Logic l = make_logic(Kind::BBI)) {
  Frame f = make_frame(l, {"e", "a"});
  f.E.set(0);
  f.c(0, 0).set(0);
  f.c(0, 1).set(1);
  f.c(1, 0).set(1);
  return f;
}

Algebra bool2() {
  Algebra a;
  a.logic = make_logic(Kind::BBI);
  a.names = {"0", "1"};
  a.leq = {1, 1, 0, 1};
  a.star = {0, 0, 0, 1};
  a.munit = 1;
  complete_algebra(a);
  return a;
}

Algebra chain3() {
  Algebra a;
  a.logic = make_logic(Kind::BI);
  a.names = {"0", "m", "1"};
  a.leq = {1, 1, 1, 0, 1, 1, 0, 0, 1};
  complete_algebra(a);
  a.star = a.meet;
  a.munit = a.top;
  complete_algebra(a);
  return a;
}

}  // namespace

std::vector<Sample> sample_library() {
  std::vector<Sample> out;
  {
    Frame f = make_frame(make_logic(Kind::BBI), {"e"});
    f.E.set(0);
    f.c(0, 0).set(0);
    out.push_back({"bbi-1pt", "one-point resource monoid", f, std::nullopt});
  }
  {
    Frame f = make_frame(make_logic(Kind::DMBI), {"e"});
    f.E.set(0);
    f.c(0, 0).set(0);
    f.minus = {0};
    out.push_back({"dmbi-1pt", "one-point De Morgan frame", f, std::nullopt});
  }
  out.push_back({"bbi-2pt", "unit e and a resource a with a.a undefined", bbi_2pt(), std::nullopt});
  out.push_back({"bi-chain3", "naturals capped at 2 under addition, ordered by <=",
                 monoid_frame({{"0", "1", "2"}, {0, 1, 2, 1, 2, -1, 2, -1, -1}, 0, {{0, 1}, {1, 2}}}),
                 std::nullopt});
  {
    Frame f = make_frame(make_logic(Kind::CBI), {"e"});
    f.E.set(0);
    f.c(0, 0).set(0);
    f.minus = {0};
    out.push_back({"cbi-1pt", "one-point CBI frame with -e = e", f, std::nullopt});
  }
  {
    Frame f = bbi_2pt(make_logic(Kind::CKBI));
    f.sq(0, 0).set(0);
    f.sq(0, 1).set(1);
    f.sq(1, 0).set(1);
    out.push_back({"ckbi-2pt", "bbi-2pt with sequential composition e;x = x;e = x and a;a undefined", f,
                   std::nullopt});
  }
  {
    uint8_t all = 0;
    for (Sigma s : kAllSigma) all |= static_cast<uint8_t>(s);
    Frame f = bbi_2pt(make_logic(Kind::BiBBI, all));
    f.nab(0, 0).set(0);
    f.nab(0, 1).set(0);
    f.nab(1, 0).set(0);
    f.nab(1, 1).set(1);
    f.U.set(1);
    out.push_back({"bibbi-2pt", "BiBBI frame over bbi-2pt satisfying every sigma row", f, std::nullopt});
  }
  {
    Frame f = bbi_2pt(make_logic(Kind::SML, 0, Modal::S5));
    f.R[0] = f.all();
    f.R[1] = f.all();
    out.push_back({"sml-s5-2pt", "bbi-2pt with the universal accessibility relation", f, std::nullopt});
  }
  {
    Scaffold s;
    s.vertices = {"u", "v"};
    s.edges = {{0, 1}};
    s.distinguished = {{0, 1}};
    s.X = {{{0}, {}}, {{1}, {}}, {{0, 1}, {{0, 1}}}};
    out.push_back({"ilgl-layer", "layering of u above v along the edge u>v, subgraph order", scaffold_frame(s),
                   std::nullopt});
  }
  out.push_back({"heap-bbi-small", "heaps over one location and values {0,1}",
                 heap_frame({{1}, {0, 1}}, Variant::BBI), std::nullopt});
  out.push_back({"bool2-bbi", "two-element Boolean algebra with * as meet", std::nullopt, bool2()});
  out.push_back({"chain3-bi", "three-element chain with * as meet", std::nullopt, chain3()});
  return out;
}

std::optional<Sample> find_sample(const std::string& name) {
  for (auto& s : sample_library())
    if (s.name == name) return s;
  return std::nullopt;
}

}  // namespace bunchkit
