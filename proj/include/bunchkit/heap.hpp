#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bunchkit/algebra.hpp"
#include "bunchkit/formula.hpp"
#include "bunchkit/frame.hpp"

namespace bunchkit {

enum class Variant { BI, BBI };

struct HeapUniverse {
  std::vector<int64_t> loc;
  std::vector<int64_t> val;
};

// Throws std::invalid_argument when empty, when a location is not a value,
// or when the universe has more than 2^16 heaps.
void validate_universe(const HeapUniverse& u);

using Heap = std::map<int64_t, int64_t>;

std::optional<Heap> compose_heaps(const Heap& h1, const Heap& h2);
bool heap_extends(const Heap& big, const Heap& small);  // small is a subgraph of big
std::string heap_to_string(const Heap& h);

// Every heap over the universe, ordered by code: each location contributes a digit
// (0 = unallocated, 1 + i = val[i]), first location least significant.
std::vector<Heap> all_heaps(const HeapUniverse& u);
int heap_code(const HeapUniverse& u, const Heap& h);  // -1 if not over u

// BI: order is heap extension and E is every heap. BBI: discrete order, E = {[]}.
Frame heap_frame(const HeapUniverse& u, Variant v);

struct Store {
  std::vector<std::string> ctx;
  std::vector<int64_t> vals;
};

// Satisfaction on a store and heap; quantifiers range over u.val.
// Throws std::invalid_argument for a free variable outside the store.
bool pointer_sat(const HeapUniverse& u, const Store& s, const Heap& h, const Formula& f, Variant v);

// States (store vector, heap); index = store_index * |H| + heap code, with the
// store vector read as a base-|Val| number, first coordinate least significant.
struct StoreFrame {
  HeapUniverse u;
  int n = 0;
  Variant variant = Variant::BI;
  Frame heaps;  // heap_frame(u, variant)

  int num_stores() const;
  int num_heaps() const { return heaps.size(); }
  int size() const { return num_stores() * num_heaps(); }
  int state(int store, int heap) const { return store * num_heaps() + heap; }
  int store_of(int x) const { return x / num_heaps(); }
  int heap_of(int x) const { return x % num_heaps(); }
  std::vector<int64_t> vector_of(int store) const;
  int store_index(const std::vector<int64_t>& vals) const;  // -1 if a value is outside Val

  // R(pi): drop the last coordinate, from the (n+1)-context frame to this one.
  int project(int x_next) const;
  // R(Delta): duplicate the last coordinate, from this frame to the (n+1)-context one. Needs n >= 1.
  int duplicate(int x) const;
};

StoreFrame make_store_frame(const HeapUniverse& u, int n, Variant v);
// Explicit frame; for small instances (at most 4096 states).
Frame store_frame(const HeapUniverse& u, int n, Variant v);

// Satisfaction on the indexed Store frame, computed as the set of (vector, heap)
// states in context ctx that satisfy f.
StateSet indexed_extension(const HeapUniverse& u, const std::vector<std::string>& ctx, const Formula& f,
                           Variant v);
bool indexed_sat(const HeapUniverse& u, const Store& s, const Heap& h, const Formula& f, Variant v);

// Images of a subset A of the (n+1)-context states along R(pi):
// exists = {x | some y in A with pi(y) <= x}, forall = {x | every y with x <= pi(y) is in A}.
struct Adjoints {
  StateSet exists_image, forall_image;
};
Adjoints quantifier_adjoints(const StoreFrame& ctx_n, const StateSet& A);

// Exhaustive adjunction laws between contexts n and n+1 (over all up-sets, so the
// frames must be small), plus agreement of the exists image with the direct image.
Report adjunction_check(const HeapUniverse& u, int n, Variant v);

// A base morphism Val^n -> Val^m: each output coordinate is an input coordinate
// (>= 0) or the constant val[-c - 1] (< 0).
struct TermMap {
  int n = 0;
  std::vector<int> out;
};
// Pseudo Epi (BI) or quasi-pullback (BBI) for the square of R(pi) and R(s).
Report pseudo_epi_check(const HeapUniverse& u, const TermMap& s, Variant v);

// Separation properties of a BBI-style frame.
Report separation_properties(const Frame& f);

}  // namespace bunchkit
