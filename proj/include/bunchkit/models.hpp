#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bunchkit/algebra.hpp"
#include "bunchkit/frame.hpp"

namespace bunchkit {

using Edge = std::pair<int, int>;

struct Subgraph {
  std::vector<int> vertices;  // sorted
  std::vector<Edge> edges;    // sorted
  friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

enum class GraphOrder { Subgraph, Supergraph, Equality };

struct Scaffold {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::vector<Edge> distinguished;
  std::vector<Subgraph> X;
  GraphOrder order = GraphOrder::Subgraph;
};

// H @ K when defined: disjoint vertices, an E-edge from H into K and none back.
std::optional<Subgraph> layer(const Scaffold& s, const Subgraph& h, const Subgraph& k);

// Throws std::invalid_argument when the scaffold is malformed or X is not closed
// under the layering condition. More than 4 vertices are rejected.
void validate_scaffold(const Scaffold& s);
// LGL for the equality order, ILGL otherwise. States are named "{u,v|u>v}".
Frame scaffold_frame(const Scaffold& s);

// A finite partial commutative monoid: op[x * n + y] is the product or -1.
struct PartialMonoid {
  std::vector<std::string> names;
  std::vector<int> op;
  int unit = 0;
  std::vector<std::pair<int, int>> order;  // extra x <= y pairs; reflexive-transitive closure is taken
};

// BBI frame for the discrete order, BI frame otherwise, with E the up-closure of the
// unit. Composition is closed up and down when the plain table is not a BI frame.
// Throws std::invalid_argument on a malformed table.
Frame monoid_frame(const PartialMonoid& m);

struct Sample {
  std::string name;
  std::string description;
  std::optional<Frame> frame;
  std::optional<Algebra> algebra;
};

std::vector<Sample> sample_library();
std::optional<Sample> find_sample(const std::string& name);

}  // namespace bunchkit
