#pragma once

#include <string>
#include <string_view>

#include "majority/graph.hpp"

namespace majority {

// SHA-1 digest as 40 lowercase hex characters.
std::string sha1_hex(std::string_view data);

// Content hash of a graph: SHA-1 over "blob <size>\0" + canonical edge-list
// serialization, so the hash of a saved file matches the in-memory hash.
std::string graph_content_hash(const Graph& g);

}  // namespace majority
