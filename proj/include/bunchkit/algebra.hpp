#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bunchkit/formula.hpp"
#include "bunchkit/frame.hpp"
#include "bunchkit/logic.hpp"

namespace bunchkit {

// A finite algebra. Elements are 0..n-1; binary tables are n*n, t[a*n+b].
// Tables that the kind does not use stay empty.
struct Algebra {
  Logic logic;
  std::vector<std::string> names;
  std::vector<uint8_t> leq;
  std::vector<int> meet, join, imp;
  std::vector<int> star, wand, dnaw;
  std::vector<int> mor, rslash;
  std::vector<int> seq, rseq, lseq;
  std::vector<int> mneg, dia;
  int top = -1, bot = -1, munit = -1, mbot = -1;

  int size() const { return static_cast<int>(names.size()); }
  bool le(int a, int b) const { return leq[a * size() + b]; }
  static int at(const std::vector<int>& t, int n, int a, int b) { return t[a * n + b]; }
  int op(const std::vector<int>& t, int a, int b) const { return t[a * size() + b]; }
  int neg(int a) const { return op(imp, a, bot); }
  int box(int a) const { return neg(dia[neg(a)]); }
};

// Fill derivable parts: top/bot and meet/join from leq, imp as the Heyting
// residual, dnaw = wand for commutative kinds, mneg = a -* mbot for DMBI/CBI.
// Throws std::invalid_argument when leq is not a lattice or a residual is missing.
void complete_algebra(Algebra& a);

// Right residual of a binary table in the lattice: r(b, c) = max{x | op(x, b) <= c},
// and the left one l(a, c) = max{x | op(a, x) <= c}; -1 where no maximum exists.
std::vector<int> right_residual(const Algebra& a, const std::vector<int>& op);
std::vector<int> left_residual(const Algebra& a, const std::vector<int>& op);

std::vector<Violation> check_algebra(const Algebra& a, bool stop_at_first = false);
inline bool algebra_ok(const Algebra& a) { return check_algebra(a, true).empty(); }

using Interpretation = std::map<std::string, int>;

int evaluate(const Algebra& a, const Interpretation& i, const Formula& f);

// True iff [lhs] <= [rhs] for every interpretation of the sequent's atoms.
// Throws std::length_error when n^atoms exceeds the cap.
bool validates_sequent(const Algebra& a, const Sequent& s, uint64_t cap = 20'000'000);
// A falsifying interpretation, if any.
std::optional<Interpretation> falsify_sequent(const Algebra& a, const Sequent& s, uint64_t cap = 20'000'000);

struct ReportItem {
  std::string name;
  bool checked = true;  // false when skipped by the subset cap
  bool holds = true;
  std::string witness;
};

struct Report {
  std::vector<ReportItem> items;
  bool all_hold() const {
    for (auto& i : items)
      if (!i.holds) return false;
    return true;
  }
};

// Residuation consequences for * / -* / *- and, for BiBI kinds, mor / rslash.
// Subset-quantified items are checked over all subsets when the carrier has at most
// subset_cap elements.
Report residuation_report(const Algebra& a, int subset_cap = 8);

bool same_algebra(const Algebra& x, const Algebra& y);

// Hoare triples {p} c {q} read as p;c <= q in a CKBI algebra. Checks, over all
// elements, the Frame rule (p;c <= q implies (p*r);c <= q*r) and the Concurrency
// rule (p1;c1 <= q1 and p2;c2 <= q2 imply (p1*p2);(c1*c2) <= q1*q2).
Report asl_check(const Algebra& a);

}  // namespace bunchkit
