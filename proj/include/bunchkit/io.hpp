#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bunchkit/algebra.hpp"
#include "bunchkit/explorer.hpp"
#include "bunchkit/frame.hpp"
#include "bunchkit/heap.hpp"
#include "bunchkit/models.hpp"
#include "bunchkit/proof.hpp"

namespace bunchkit {

// Key order is kept so that output is byte-stable.
using Json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "BiBBI+Associativity+MorContraction", "SML+S4".
Logic parse_logic(const std::string& text);

// {"kind":"BBI","states":[...],"order":[[x,y],...],"comp":[[x,y,z],...],"E":[...],
//  "minus":{x:y},"nabla":[[x,y,z],...],"U":[...],"seq":[[x,y,z],...],"R":[[x,y],...],
//  "sigma":[...],"modal":"none"}. Order pairs mean x <= y, triples z in x.y.
Json frame_to_json(const Frame& f);
// Throws IoError on unknown names or a malformed document.
Frame frame_from_json(const Json& j);

// {"kind":...,"sigma":[...],"modal":...,"elements":[...],"leq":[[a,b],...],
//  "star":[[a,b,c],...],...,"mnot":[[a,b],...],"top":"...","emp":"...",...}.
// Derivable tables may be omitted; they are filled by complete_algebra.
Json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const Json& j);

// {"p": ["a", "e"], ...}
Json valuation_to_json(const Frame& f, const Valuation& v);
Valuation valuation_from_json(const Frame& f, const Json& j);

// {"logic":"BBI","steps":[{"seq":["phi","psi"],"rule":"R17","premises":[],"subst":{...}}]}
Proof proof_from_json(const Json& j, Logic& logic);
Json proof_to_json(const Proof& p, const Logic& logic);

// {"heap": {"1": 5}}, {"ctx": ["x"], "vals": [1]}, {"loc": [1], "val": [0, 1]}
Heap heap_from_json(const Json& j);
Json heap_to_json(const Heap& h);
Store store_from_json(const Json& j);
HeapUniverse universe_from_json(const Json& j);
Json universe_to_json(const HeapUniverse& u);

// {"vertices":[...],"edges":[[u,v],...],"distinguished":[[u,v],...],
//  "X":[{"vertices":[...],"edges":[[u,v],...]},...],"order":"subgraph"}
Scaffold scaffold_from_json(const Json& j);
Json scaffold_to_json(const Scaffold& s);

Json report_to_json(const Report& r);
Json violations_to_json(const std::vector<Violation>& v);
// Frame document plus "valuation" and "state".
Json countermodel_to_json(const Countermodel& c);
Json fuzz_to_json(const FuzzReport& r);
// {"name":..,"description":..,"frame":{..}} or with "algebra".
Json sample_to_json(const Sample& s);

// Two-space indentation with arrays of scalars kept on one line; ends with a newline.
std::string dump_json(const Json& j);

// Reads and parses a UTF-8 JSON file; throws IoError.
Json read_json_file(const std::string& path);

}  // namespace bunchkit
