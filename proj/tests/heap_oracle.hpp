#pragma once

// Brute-force heap model shared by the heap tests and the acceptance run.

#include <optional>
#include <vector>

#include "bunchkit/heap.hpp"

namespace oracle {

using bunchkit::Heap;
using bunchkit::HeapUniverse;

// Raw heaps over the universe and disjoint union, without going through Frame.
inline std::vector<Heap> raw_heaps(const HeapUniverse& u) {
  std::vector<Heap> out{Heap{}};
  for (auto l : u.loc) {
    std::vector<Heap> next;
    for (auto& h : out) {
      next.push_back(h);
      for (auto v : u.val) {
        Heap g = h;
        g[l] = v;
        next.push_back(g);
      }
    }
    out = next;
  }
  return out;
}

inline std::optional<Heap> plus(const Heap& a, const Heap& b) {
  Heap out = a;
  for (auto& [l, v] : b)
    if (!out.emplace(l, v).second) return std::nullopt;
  return out;
}

struct RawProps {
  bool partial_det = true, cancel = true, indiv = true, disjoint = true, divisible = true, cross = true;
};

inline RawProps raw_props(const HeapUniverse& u) {
  auto H = raw_heaps(u);
  RawProps p;
  auto comp = [&](const Heap& a, const Heap& b) { return plus(a, b); };
  for (auto& w : H)
    for (auto& w2 : H) {
      auto c = comp(w, w2);
      // Only the empty heap is a unit.
      if (c && c->empty() && !w.empty()) p.indiv = false;
      for (auto& w3 : H) {
        auto d = comp(w, w3);
        if (c && d && *c == *d && w2 != w3) p.cancel = false;
      }
    }
  for (auto& w : H)
    if (comp(w, w) && !w.empty()) p.disjoint = false;
  for (auto& w : H) {
    if (w.empty()) continue;
    bool found = false;
    for (auto& a : H)
      for (auto& b : H)
        if (!a.empty() && !b.empty() && comp(a, b) == std::optional<Heap>(w)) found = true;
    if (!found) p.divisible = false;
  }
  // Composition is a partial function on raw heaps, so it is partial deterministic by construction.
  for (auto& t : H)
    for (auto& uu : H)
      for (auto& v : H)
        for (auto& w : H) {
          auto l = comp(t, uu), r = comp(v, w);
          if (!l || !r || *l != *r) continue;
          bool found = false;
          for (auto& tv : H)
            for (auto& tw : H)
              for (auto& uv : H)
                for (auto& uw : H) {
                  if (found) break;
                  found = comp(tv, tw) == std::optional<Heap>(t) && comp(uv, uw) == std::optional<Heap>(uu) &&
                          comp(tv, uv) == std::optional<Heap>(v) && comp(tw, uw) == std::optional<Heap>(w);
                }
          if (!found) p.cross = false;
        }
  return p;
}

}  // namespace oracle
