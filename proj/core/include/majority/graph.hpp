#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace majority {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Immutable undirected simple graph in compressed adjacency form.
// Adjacency lists are sorted, so adjacency tests are binary searches.
class Graph {
 public:
  // Builds from an edge list.  Endpoints may come in either order.
  // Throws ParameterError on out-of-range endpoints, self-loops, or
  // duplicate edges.
  Graph(NodeId n, const std::vector<Edge>& edges);

  NodeId node_count() const { return n_; }
  std::uint64_t edge_count() const { return m_; }

  std::uint32_t degree(NodeId v) const {
    return offsets_[v + 1] - offsets_[v];
  }
  std::uint32_t max_degree() const { return max_degree_; }
  std::uint32_t min_degree() const { return min_degree_; }

  // Vol(V) = sum of all degrees = 2|E|.
  std::uint64_t total_volume() const { return 2 * m_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  bool adjacent(NodeId u, NodeId v) const;
  bool connected() const;

  // Canonical edge list: u < v within each pair, pairs in ascending order.
  std::vector<Edge> edges() const;

 private:
  NodeId n_ = 0;
  std::uint64_t m_ = 0;
  std::uint32_t max_degree_ = 0;
  std::uint32_t min_degree_ = 0;
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> adj_;
};

}  // namespace majority
