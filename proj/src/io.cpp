#include "bunchkit/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace bunchkit {

namespace {

[[noreturn]] void fail(const std::string& m) { throw IoError(m); }

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string str(const Json& j, const char* what) {
  if (!j.is_string()) fail(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const Json& arr(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  return j;
}

Json logic_fields(const Logic& l) {
  Json sig = Json::array();
  for (Sigma s : kAllSigma)
    if (l.has(s)) sig.push_back(std::string(sigma_name(s)));
  return sig;
}

Logic logic_of(const Json& j) {
  auto k = kind_from_name(str(need(j, "kind"), "kind"));
  if (!k) fail("unknown kind " + j.at("kind").dump());
  Logic l = make_logic(*k);
  if (j.contains("sigma"))
    for (auto& s : arr(j.at("sigma"), "sigma")) {
      auto x = sigma_from_name(str(s, "sigma row"));
      if (!x) fail("unknown sigma row " + s.dump());
      l.sigma |= static_cast<uint8_t>(*x);
    }
  if (j.contains("modal")) {
    auto m = modal_from_name(str(j.at("modal"), "modal"));
    if (!m) fail("unknown modal class " + j.at("modal").dump());
    l.modal = *m;
  }
  try {
    validate_logic(l);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return l;
}

struct Names {
  std::map<std::string, int> index;
  const std::vector<std::string>* names = nullptr;

  explicit Names(const std::vector<std::string>& n) : names(&n) {
    for (std::size_t i = 0; i < n.size(); ++i)
      if (!index.emplace(n[i], static_cast<int>(i)).second) fail("duplicate name \"" + n[i] + "\"");
  }
  int operator()(const Json& j) const {
    std::string s = str(j, "name");
    auto it = index.find(s);
    if (it == index.end()) fail("unknown name \"" + s + "\"");
    return it->second;
  }
};

std::vector<std::string> string_list(const Json& j, const char* what) {
  std::vector<std::string> out;
  for (auto& x : arr(j, what)) out.push_back(str(x, what));
  return out;
}

Json triples(const std::vector<StateSet>& rel, const std::vector<std::string>& names) {
  Json out = Json::array();
  int n = static_cast<int>(names.size());
  if (rel.size() != static_cast<std::size_t>(n * n)) return out;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) rel[x * n + y].for_each([&](int z) { out.push_back({names[x], names[y], names[z]}); });
  return out;
}

Json set_json(const StateSet& s, const std::vector<std::string>& names) {
  Json out = Json::array();
  s.for_each([&](int x) { out.push_back(names[x]); });
  return out;
}

void read_triples(const Json& j, const char* what, const Names& nm, std::vector<StateSet>& rel, int n) {
  for (auto& t : arr(j, what)) {
    if (!t.is_array() || t.size() != 3) fail(std::string(what) + " entries must be [x,y,z]");
    rel[nm(t[0]) * n + nm(t[1])].set(nm(t[2]));
  }
}

StateSet read_set(const Json& j, const char* what, const Names& nm, int n) {
  StateSet s(n);
  for (auto& x : arr(j, what)) s.set(nm(x));
  return s;
}

}  // namespace

Logic parse_logic(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '+')) parts.push_back(part);
  if (parts.empty()) fail("empty logic name");
  auto k = kind_from_name(parts[0]);
  if (!k) fail("unknown logic \"" + parts[0] + "\"");
  Logic l = make_logic(*k);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (auto s = sigma_from_name(parts[i])) l.sigma |= static_cast<uint8_t>(*s);
    else if (auto m = modal_from_name(parts[i])) l.modal = *m;
    else if (parts[i] == "fo") l.fo = true;
    else fail("unknown logic flag \"" + parts[i] + "\"");
  }
  try {
    validate_logic(l);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return l;
}

Json frame_to_json(const Frame& f) {
  const auto& nm = f.names;
  int n = f.size();
  Json j;
  j["kind"] = std::string(kind_name(f.logic.kind));
  j["states"] = nm;
  Json order = Json::array();
  for (int x = 0; x < n; ++x) f.up[x].for_each([&](int y) { order.push_back({nm[x], nm[y]}); });
  j["order"] = order;
  j["comp"] = triples(f.comp, nm);
  j["E"] = set_json(f.E, nm);
  Json minus = Json::object();
  for (std::size_t x = 0; x < f.minus.size(); ++x) minus[nm[x]] = nm[f.minus[x]];
  j["minus"] = minus;
  j["nabla"] = triples(f.nabla, nm);
  j["U"] = set_json(f.U, nm);
  j["seq"] = triples(f.seq, nm);
  Json r = Json::array();
  for (std::size_t x = 0; x < f.R.size() && x < nm.size(); ++x) f.R[x].for_each([&](int y) { r.push_back({nm[x], nm[y]}); });
  j["R"] = r;
  j["sigma"] = logic_fields(f.logic);
  j["modal"] = std::string(modal_name(f.logic.modal));
  return j;
}

Frame frame_from_json(const Json& j) {
  Logic l = logic_of(j);
  Frame f = make_frame(l, string_list(need(j, "states"), "states"));
  Names nm(f.names);
  int n = f.size();
  if (j.contains("order"))
    for (auto& p : arr(j.at("order"), "order")) {
      if (!p.is_array() || p.size() != 2) fail("order entries must be [x,y]");
      f.up[nm(p[0])].set(nm(p[1]));
    }
  if (j.contains("comp")) read_triples(j.at("comp"), "comp", nm, f.comp, n);
  if (j.contains("E")) f.E = read_set(j.at("E"), "E", nm, n);
  if (j.contains("minus") && !j.at("minus").empty()) {
    if (!is_dm(l.kind)) fail("minus is only allowed for DMBI and CBI");
    if (!j.at("minus").is_object()) fail("minus must be an object");
    for (auto& [k, v] : j.at("minus").items()) f.minus[nm(Json(k))] = nm(v);
  }
  auto extra = [&](const char* key, bool allowed) {
    if (j.contains(key) && !j.at(key).empty() && !allowed)
      fail(std::string(key) + " is not allowed for " + std::string(kind_name(l.kind)));
    return j.contains(key);
  };
  if (extra("nabla", is_bi_bi(l.kind))) read_triples(j.at("nabla"), "nabla", nm, f.nabla, n);
  if (extra("U", is_bi_bi(l.kind))) f.U = read_set(j.at("U"), "U", nm, n);
  if (extra("seq", l.kind == Kind::CKBI)) read_triples(j.at("seq"), "seq", nm, f.seq, n);
  if (extra("R", l.kind == Kind::SML))
    for (auto& p : arr(j.at("R"), "R")) {
      if (!p.is_array() || p.size() != 2) fail("R entries must be [x,y]");
      f.R[nm(p[0])].set(nm(p[1]));
    }
  return f;
}

Json algebra_to_json(const Algebra& a) {
  const auto& nm = a.names;
  int n = a.size();
  Json j;
  j["kind"] = std::string(kind_name(a.logic.kind));
  j["sigma"] = logic_fields(a.logic);
  j["modal"] = std::string(modal_name(a.logic.modal));
  j["elements"] = nm;
  Json leq = Json::array();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (a.le(x, y)) leq.push_back({nm[x], nm[y]});
  j["leq"] = leq;
  auto bin = [&](const char* key, const std::vector<int>& t) {
    if (t.empty()) return;
    Json out = Json::array();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) out.push_back({nm[x], nm[y], nm[t[x * n + y]]});
    j[key] = out;
  };
  auto un = [&](const char* key, const std::vector<int>& t) {
    if (t.empty()) return;
    Json out = Json::array();
    for (int x = 0; x < n; ++x) out.push_back({nm[x], nm[t[x]]});
    j[key] = out;
  };
  bin("meet", a.meet);
  bin("join", a.join);
  bin("imp", a.imp);
  bin("star", a.star);
  bin("wand", a.wand);
  bin("dnaw", a.dnaw);
  bin("mor", a.mor);
  bin("rslash", a.rslash);
  bin("seq", a.seq);
  bin("rseq", a.rseq);
  bin("lseq", a.lseq);
  un("mnot", a.mneg);
  un("dia", a.dia);
  auto cst = [&](const char* key, int v) {
    if (v >= 0) j[key] = nm[v];
  };
  cst("top", a.top);
  cst("bot", a.bot);
  cst("emp", a.munit);
  cst("mbot", a.mbot);
  return j;
}

Algebra algebra_from_json(const Json& j) {
  Algebra a;
  a.logic = logic_of(j);
  a.names = string_list(need(j, "elements"), "elements");
  if (a.names.empty()) fail("an algebra needs at least one element");
  Names nm(a.names);
  int n = a.size();
  a.leq.assign(n * n, 0);
  for (auto& p : arr(need(j, "leq"), "leq")) {
    if (!p.is_array() || p.size() != 2) fail("leq entries must be [a,b]");
    a.leq[nm(p[0]) * n + nm(p[1])] = 1;
  }
  auto bin = [&](const char* key, std::vector<int>& t) {
    if (!j.contains(key)) return;
    t.assign(n * n, -1);
    for (auto& e : arr(j.at(key), key)) {
      if (!e.is_array() || e.size() != 3) fail(std::string(key) + " entries must be [a,b,c]");
      t[nm(e[0]) * n + nm(e[1])] = nm(e[2]);
    }
    for (int v : t)
      if (v < 0) fail(std::string(key) + " is not total");
  };
  auto un = [&](const char* key, std::vector<int>& t) {
    if (!j.contains(key)) return;
    t.assign(n, -1);
    for (auto& e : arr(j.at(key), key)) {
      if (!e.is_array() || e.size() != 2) fail(std::string(key) + " entries must be [a,b]");
      t[nm(e[0])] = nm(e[1]);
    }
    for (int v : t)
      if (v < 0) fail(std::string(key) + " is not total");
  };
  bin("meet", a.meet);
  bin("join", a.join);
  bin("imp", a.imp);
  bin("star", a.star);
  bin("wand", a.wand);
  bin("dnaw", a.dnaw);
  bin("mor", a.mor);
  bin("rslash", a.rslash);
  bin("seq", a.seq);
  bin("rseq", a.rseq);
  bin("lseq", a.lseq);
  un("mnot", a.mneg);
  un("dia", a.dia);
  auto cst = [&](const char* key, int& v) {
    if (j.contains(key)) v = nm(j.at(key));
  };
  cst("top", a.top);
  cst("bot", a.bot);
  cst("emp", a.munit);
  cst("mbot", a.mbot);
  try {
    complete_algebra(a);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return a;
}

Json valuation_to_json(const Frame& f, const Valuation& v) {
  Json j = Json::object();
  for (auto& [k, s] : v) j[k] = set_json(s, f.names);
  return j;
}

Valuation valuation_from_json(const Frame& f, const Json& j) {
  if (!j.is_object()) fail("a valuation must be an object");
  Names nm(f.names);
  Valuation v;
  for (auto& [k, s] : j.items()) v[k] = read_set(s, "valuation", nm, f.size());
  return v;
}

Proof proof_from_json(const Json& j, Logic& logic) {
  logic = parse_logic(str(need(j, "logic"), "logic"));
  Proof p;
  for (auto& s : arr(need(j, "steps"), "steps")) {
    ProofStep st;
    const Json& seq = need(s, "seq");
    if (!seq.is_array() || seq.size() != 2) fail("seq must be [lhs, rhs]");
    try {
      st.seq.lhs = parse_unchecked(str(seq[0], "formula"));
      st.seq.rhs = parse_unchecked(str(seq[1], "formula"));
      st.rule = str(need(s, "rule"), "rule");
      if (s.contains("premises"))
        for (auto& i : arr(s.at("premises"), "premises")) {
          if (!i.is_number_integer()) fail("premises must be step indices");
          st.premises.push_back(i.get<int>());
        }
      if (s.contains("subst")) {
        if (!s.at("subst").is_object()) fail("subst must be an object");
        for (auto& [k, v] : s.at("subst").items()) st.subst[k] = parse_unchecked(str(v, "formula"));
      }
    } catch (const ParseError& e) {
      fail(e.what());
    }
    p.steps.push_back(std::move(st));
  }
  return p;
}

Json proof_to_json(const Proof& p, const Logic& logic) {
  Json j;
  j["logic"] = logic_name(logic);
  Json steps = Json::array();
  for (auto& s : p.steps) {
    Json st;
    st["seq"] = {print_formula(s.seq.lhs), print_formula(s.seq.rhs)};
    st["rule"] = s.rule;
    st["premises"] = s.premises;
    Json sub = Json::object();
    for (auto& [k, v] : s.subst) sub[k] = print_formula(v);
    st["subst"] = sub;
    steps.push_back(st);
  }
  j["steps"] = steps;
  return j;
}

Heap heap_from_json(const Json& j) {
  const Json& h = j.is_object() && j.contains("heap") ? j.at("heap") : j;
  if (!h.is_object()) fail("a heap must be an object from locations to values");
  Heap out;
  for (auto& [k, v] : h.items()) {
    if (!v.is_number_integer()) fail("heap values must be integers");
    try {
      std::size_t used = 0;
      int64_t l = std::stoll(k, &used);
      if (used != k.size()) fail("bad heap location \"" + k + "\"");
      out[l] = v.get<int64_t>();
    } catch (const std::logic_error&) {
      fail("bad heap location \"" + k + "\"");
    }
  }
  return out;
}

Json heap_to_json(const Heap& h) {
  Json m = Json::object();
  for (auto& [l, v] : h) m[std::to_string(l)] = v;
  return Json{{"heap", m}};
}

Store store_from_json(const Json& j) {
  Store s;
  s.ctx = string_list(need(j, "ctx"), "ctx");
  for (auto& v : arr(need(j, "vals"), "vals")) {
    if (!v.is_number_integer()) fail("store values must be integers");
    s.vals.push_back(v.get<int64_t>());
  }
  if (s.ctx.size() != s.vals.size()) fail("ctx and vals differ in length");
  return s;
}

HeapUniverse universe_from_json(const Json& j) {
  HeapUniverse u;
  for (auto& v : arr(need(j, "loc"), "loc")) {
    if (!v.is_number_integer()) fail("locations must be integers");
    u.loc.push_back(v.get<int64_t>());
  }
  for (auto& v : arr(need(j, "val"), "val")) {
    if (!v.is_number_integer()) fail("values must be integers");
    u.val.push_back(v.get<int64_t>());
  }
  try {
    validate_universe(u);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return u;
}

Json universe_to_json(const HeapUniverse& u) { return Json{{"loc", u.loc}, {"val", u.val}}; }

Scaffold scaffold_from_json(const Json& j) {
  Scaffold s;
  s.vertices = string_list(need(j, "vertices"), "vertices");
  Names nm(s.vertices);
  auto edges = [&](const Json& e, const char* what) {
    std::vector<Edge> out;
    for (auto& p : arr(e, what)) {
      if (!p.is_array() || p.size() != 2) fail(std::string(what) + " entries must be [u,v]");
      out.push_back({nm(p[0]), nm(p[1])});
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  s.edges = edges(need(j, "edges"), "edges");
  if (j.contains("distinguished")) s.distinguished = edges(j.at("distinguished"), "distinguished");
  for (auto& g : arr(need(j, "X"), "X")) {
    Subgraph h;
    for (auto& v : arr(need(g, "vertices"), "vertices")) h.vertices.push_back(nm(v));
    std::sort(h.vertices.begin(), h.vertices.end());
    if (g.contains("edges")) h.edges = edges(g.at("edges"), "edges");
    s.X.push_back(h);
  }
  std::string order = j.contains("order") ? str(j.at("order"), "order") : "subgraph";
  if (order == "subgraph") s.order = GraphOrder::Subgraph;
  else if (order == "supergraph") s.order = GraphOrder::Supergraph;
  else if (order == "equality") s.order = GraphOrder::Equality;
  else fail("order must be subgraph, supergraph or equality");
  return s;
}

Json scaffold_to_json(const Scaffold& s) {
  auto edges = [&](const std::vector<Edge>& es) {
    Json out = Json::array();
    for (auto [a, b] : es) out.push_back({s.vertices[a], s.vertices[b]});
    return out;
  };
  Json x = Json::array();
  for (auto& g : s.X) {
    Json vs = Json::array();
    for (int v : g.vertices) vs.push_back(s.vertices[v]);
    x.push_back(Json{{"vertices", vs}, {"edges", edges(g.edges)}});
  }
  const char* order = s.order == GraphOrder::Subgraph ? "subgraph"
                      : s.order == GraphOrder::Supergraph ? "supergraph" : "equality";
  return Json{{"vertices", s.vertices}, {"edges", edges(s.edges)}, {"distinguished", edges(s.distinguished)},
              {"X", x}, {"order", order}};
}

Json report_to_json(const Report& r) {
  Json items = Json::array();
  for (auto& i : r.items) {
    Json it{{"name", i.name}, {"checked", i.checked}, {"holds", i.holds}};
    if (!i.witness.empty()) it["witness"] = i.witness;
    items.push_back(it);
  }
  return Json{{"holds", r.all_hold()}, {"items", items}};
}

Json violations_to_json(const std::vector<Violation>& v) {
  Json out = Json::array();
  for (auto& x : v) {
    Json w = Json::object();
    for (auto& [var, st] : x.witness) w[var] = st;
    Json e{{"axiom", x.axiom}, {"witness", w}};
    if (!x.detail.empty()) e["detail"] = x.detail;
    out.push_back(e);
  }
  return out;
}

Json countermodel_to_json(const Countermodel& c) {
  Json j = frame_to_json(c.frame);
  j["valuation"] = valuation_to_json(c.frame, c.val);
  j["state"] = c.frame.names[c.state];
  return j;
}

Json fuzz_to_json(const FuzzReport& r) {
  Json rules = Json::array();
  for (auto& x : r.rules) rules.push_back(Json{{"rule", x.rule}, {"checks", x.checks}, {"non_vacuous", x.non_vacuous}});
  Json viol = Json::array();
  for (auto& v : r.violations)
    viol.push_back(Json{{"rule", v.rule}, {"instance", v.instance}, {"frame", v.frame}, {"valuation", v.valuation}});
  return Json{{"logic", logic_name(r.logic)}, {"models", r.models}, {"violations", viol}, {"rules", rules}};
}

Json sample_to_json(const Sample& s) {
  Json j{{"name", s.name}, {"description", s.description}};
  if (s.frame) j["frame"] = frame_to_json(*s.frame);
  if (s.algebra) j["algebra"] = algebra_to_json(*s.algebra);
  return j;
}

namespace {

bool flat(const Json& j) {
  if (!j.is_array()) return false;
  for (auto& x : j)
    if (x.is_structured() && !(x.is_array() && std::all_of(x.begin(), x.end(), [](const Json& y) {
                                 return !y.is_structured();
                               })))
      return false;
  return true;
}

void dump_into(const Json& j, int indent, std::string& out) {
  if (!j.is_structured() || j.empty() || flat(j)) {
    out += j.dump();
    return;
  }
  std::string pad(indent + 2, ' ');
  bool obj = j.is_object();
  out += obj ? "{\n" : "[\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (obj) out += Json(it.key()).dump() + ": ";
    dump_into(it.value(), indent + 2, out);
  }
  out += "\n" + std::string(indent, ' ') + (obj ? "}" : "]");
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(j, 0, out);
  out += "\n";
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(path + ": " + e.what());
  }
}

}  // namespace bunchkit
