#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bunchkit/algebra.hpp"
#include "bunchkit/frame.hpp"

namespace bunchkit {

// Complex algebra of a frame together with the state set behind each element.
struct ComplexAlgebra {
  Algebra algebra;
  std::vector<StateSet> sets;
  std::unordered_map<StateSet, int, StateSetHash> index;

  int element(const StateSet& s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
  }
};

// Carrier: up-sets of the frame (all subsets for Boolean kinds), at most 2^20 of them.
// Element names are "{x,y}". Throws std::invalid_argument for an invalid frame.
ComplexAlgebra complex_algebra_sets(const Frame& f);
inline Algebra complex_algebra(const Frame& f) { return complex_algebra_sets(f).algebra; }

enum class PrimeMethod { Auto, BruteForce, JoinIrreducible };

// Prime filters as subsets of the carrier. Brute force scans all subsets and is
// limited to 20 elements; the join-irreducible route uses F = up(j).
// Auto picks brute force up to 16 elements. Sorted by the set order.
std::vector<StateSet> enumerate_prime_filters(const Algebra& a, PrimeMethod m = PrimeMethod::Auto);
bool is_prime_filter(const Algebra& a, const StateSet& f);

// States are prime filters named "^j" after their least element j.
Frame prime_filter_frame(const Algebra& a);

// theta(a) = {F | a in F} into the complex algebra of the prime filter frame.
Report theta_check(const Algebra& a);

// eta(x) = {A | x in A} into the prime filter frame of the complex algebra.
Report eta_check(const Frame& f);

// g^-1 from the complex algebra of b to that of a must be a homomorphism.
Report inverse_image_check(const std::vector<int>& g, const Frame& a, const Frame& b);

// The axiom of a sigma row as a sequent over atoms a, b, c.
Sequent sigma_axiom(Sigma row);

struct CorrespondenceReport {
  Sigma row;
  bool property_holds = false;
  std::optional<Violation> property_witness;
  bool axiom_valid = false;
  std::optional<Interpretation> falsifier;  // element names via the complex algebra
  bool sound() const { return !property_holds || axiom_valid; }
};

// Frame property of the row versus validity of the row's axiom in the complex algebra.
CorrespondenceReport correspondence_check(const Frame& f, Sigma row);

}  // namespace bunchkit
