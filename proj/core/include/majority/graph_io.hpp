#pragma once

#include <iosfwd>
#include <string>

#include "majority/graph.hpp"

namespace majority {

// Edge-list text format.  First significant line is "n m", followed by m
// lines "u v" with 0 <= u < v < n.  Lines starting with '#' and blank
// lines are ignored.  Output is LF-terminated with edges in canonical
// ascending order, so save/load round-trips byte-identically.

// Throws ParseError (message carries the 1-based line number) on malformed
// input, out-of-range endpoints, u >= v, duplicate edges, or an edge count
// that disagrees with the header.
Graph parse_graph(std::istream& in);
Graph load_graph(const std::string& path);

void write_graph(const Graph& g, std::ostream& out);
void save_graph(const Graph& g, const std::string& path);

// The canonical serialization as a string (exactly what save_graph writes).
std::string graph_to_string(const Graph& g);

}  // namespace majority
