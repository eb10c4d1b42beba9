#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bunchkit/algebra.hpp"
#include "bunchkit/formula.hpp"
#include "bunchkit/frame.hpp"
#include "bunchkit/logic.hpp"

namespace bunchkit {

struct SearchBudget {
  Logic logic;
  int min_states = 1;
  int max_states = 3;                    // at most 5
  uint64_t max_frames = UINT64_MAX;      // frames yielded
  uint64_t max_valuations = 1'000'000;   // per frame, countermodel search
  double time_limit = 0;                 // seconds, 0 = unlimited
  int jobs = 1;

  // Throws std::invalid_argument.
  void validate() const;
};

struct EnumerationStats {
  std::vector<uint64_t> per_size;  // index = number of states
  uint64_t leaves = 0;             // candidates that reached the full axiom check
  bool complete = true;
  std::string stop_reason;         // "time limit", "frame limit", "stopped by caller"
  uint64_t total() const;
};

// Every frame of the budget's logic with min..max states passing check_frame, one per
// isomorphism class, in order of size and then of canonical code. States are "0", "1", ...
// visit returns false to stop early.
EnumerationStats enumerate_frames(const SearchBudget& b, const std::function<bool(const Frame&)>& visit);
std::vector<Frame> enumerate_frames(const SearchBudget& b, EnumerationStats* stats = nullptr);

// Encoding used for canonical labelling: order, E, minus, U, comp, nabla, seq, R.
std::vector<uint32_t> frame_code(const Frame& f);
// perm[x] is the new index of state x; names move with their states.
Frame permute_frame(const Frame& f, const std::vector<int>& perm);
// The permutation with the lexicographically least code.
Frame canonical_form(const Frame& f);

// A random frame of the logic with exactly n states, by rejection; nullopt after max_tries.
std::optional<Frame> random_frame(const Logic& logic, int n, std::mt19937_64& rng, int max_tries = 20000);
// A random up-set valuation for the atoms.
Valuation random_valuation(const Frame& f, const std::vector<std::string>& atoms, std::mt19937_64& rng);
// A random propositional formula over the logic's connectives (sugar included).
Formula random_formula(const Logic& logic, int depth, const std::vector<std::string>& atoms, std::mt19937_64& rng);

struct Countermodel {
  Frame frame;
  Valuation val;
  int state = 0;
};

struct SearchOutcome {
  std::optional<Countermodel> model;
  EnumerationStats stats;
  bool complete = true;  // false when a frame or valuation budget ran out
  uint64_t frames_tried = 0;
  std::string note;
};

// Frames by size ascending, then valuations by total population count. The returned
// countermodel is the first in that order, independent of b.jobs, and is re-verified
// with satisfies(); throws std::logic_error if that self-check fails.
// Throws SignatureError when the sequent is not in the logic's signature.
SearchOutcome countermodel_search(const Sequent& s, const SearchBudget& b);

struct FuzzViolation {
  std::string rule;
  std::string instance;   // the instantiated conclusion
  std::string frame;      // short description
  std::string valuation;
};

struct RuleStats {
  std::string rule;
  uint64_t checks = 0;       // instances evaluated
  uint64_t non_vacuous = 0;  // instances whose premises all held
};

struct FuzzReport {
  Logic logic;
  uint64_t models = 0;
  std::vector<RuleStats> rules;
  std::vector<FuzzViolation> violations;
  bool ok() const { return violations.empty(); }
};

// For every Hilbert rule of b.logic and `models` sampled models with 1..b.max_states
// states: instantiate the rule's metavariables with random formulas and, when every
// premise holds in the model, check the conclusion. Deterministic in seed.
FuzzReport soundness_fuzz(const SearchBudget& b, int models, uint64_t seed, int instances_per_rule = 4);

// Finite CKBI algebras whose carrier is a Boolean algebra with at most max_size
// elements, one per choice of lattice (up to isomorphism), unit and tables. The
// one-element algebra is left out as degenerate.
// visit returns false to stop early.
EnumerationStats enumerate_ckbi_algebras(int max_size, const std::function<bool(const Algebra&)>& visit,
                                         double time_limit = 0);

// Distributive lattices of at most max_size elements up to isomorphism, as the up-set
// lattices of posets; leq only, completed.
std::vector<Algebra> distributive_lattices(Kind k, int max_size);

// Random algebra of the kind: an up-set lattice of a random poset with at most
// max_size elements (a Boolean one for Boolean kinds) and operation tables found by
// random search among join-preserving tables. nullopt after max_tries.
std::optional<Algebra> random_algebra(const Logic& logic, int max_size, std::mt19937_64& rng, int max_tries = 20000);

}  // namespace bunchkit
