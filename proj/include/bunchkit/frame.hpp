#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bunchkit/formula.hpp"
#include "bunchkit/logic.hpp"
#include "bunchkit/stateset.hpp"

namespace bunchkit {

// A finite Kripke frame. Ternary relations are stored as n*n output sets,
// rel[x * n + y] = x . y. The order is stored as up-sets: up[x] = {y | x <= y}.
struct Frame {
  Logic logic;
  std::vector<std::string> names;
  std::vector<StateSet> up;
  std::vector<StateSet> comp;
  StateSet E;
  std::vector<int> minus;        // DMBI / CBI
  std::vector<StateSet> nabla;   // BiBI / BiBBI
  StateSet U;                    // BiBI / BiBBI
  std::vector<StateSet> seq;     // CKBI
  std::vector<StateSet> R;       // SML, R[x] = successors

  int size() const { return static_cast<int>(names.size()); }
  bool leq(int x, int y) const { return up[x].test(y); }
  const StateSet& c(int x, int y) const { return comp[x * size() + y]; }
  StateSet& c(int x, int y) { return comp[x * size() + y]; }
  const StateSet& nab(int x, int y) const { return nabla[x * size() + y]; }
  StateSet& nab(int x, int y) { return nabla[x * size() + y]; }
  const StateSet& sq(int x, int y) const { return seq[x * size() + y]; }
  StateSet& sq(int x, int y) { return seq[x * size() + y]; }

  StateSet none() const { return StateSet(names.size()); }
  StateSet all() const { return StateSet::full(names.size()); }
  StateSet down(int x) const;
  StateSet up_closure(const StateSet& s) const;
  StateSet down_closure(const StateSet& s) const;
  bool is_up_set(const StateSet& s) const;
  int index_of(const std::string& name) const;  // -1 when absent
};

// Empty frame of the given logic with discrete order and empty relations.
Frame make_frame(const Logic& logic, std::vector<std::string> names);
// Names "0", "1", ...
Frame make_frame(const Logic& logic, int n);
bool same_frame(const Frame& a, const Frame& b);

struct Violation {
  std::string axiom;
  std::vector<std::pair<std::string, std::string>> witness;  // variable -> state
  std::string detail;
};

// All axioms of the frame's kind, enabled sigma rows and modal class.
// At most one violation is reported per axiom; stop_at_first ends after the first.
std::vector<Violation> check_frame(const Frame& f, bool stop_at_first = false);
inline bool frame_ok(const Frame& f) { return check_frame(f, true).empty(); }

// Frame correspondent of one sigma row.
std::vector<Violation> check_sigma_row(const Frame& f, Sigma row, bool stop_at_first = false);

// Monoidal frame conditions plus upwards and downwards closure.
std::vector<Violation> check_udmf(const Frame& f);

using Valuation = std::map<std::string, StateSet>;

enum class Mode { Strong, Udmf };

struct Model {
  Frame frame;
  Valuation val;
  Mode mode = Mode::Strong;
};

// Set of states satisfying f.
StateSet extension(const Model& m, const Formula& f);
bool satisfies(const Model& m, int x, const Formula& f);
bool entails_in_model(const Model& m, const Sequent& s);
bool check_persistent(const Frame& f, const Valuation& v);

struct PersistenceViolation {
  std::string formula;
  int x, y;
};
std::vector<PersistenceViolation> persistence_sweep(const Model& m, const std::vector<Formula>& fs);

// x in y .' z iff there are x' <= x, y <= y', z <= z' with x' in y' . z'.
Frame updown_closure(const Frame& f);

// Violations carry the clause number ("1".."10") or an added clause name.
std::vector<Violation> check_morphism(const std::vector<int>& g, const Frame& a, const Frame& b);

// {-e | e in E} for a CBI frame, and the check that -x is the unique y with
// infinity meeting y . x.
StateSet infinity_set(const Frame& f);
bool check_infinity_uniqueness(const Frame& f);

}  // namespace bunchkit
