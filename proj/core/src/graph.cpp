#include "majority/graph.hpp"

#include <algorithm>
#include <string>

#include "majority/errors.hpp"

namespace majority {

Graph::Graph(NodeId n, const std::vector<Edge>& edges) : n_(n) {
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw ParameterError("edge endpoint " + std::to_string(std::max(a, b)) +
                           " out of range for " + std::to_string(n) +
                           " nodes");
    }
    if (a == b) {
      throw ParameterError("self-loop at node " + std::to_string(a));
    }
    canon.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(canon.begin(), canon.end());
  const auto dup = std::adjacent_find(canon.begin(), canon.end());
  if (dup != canon.end()) {
    throw ParameterError("duplicate edge (" + std::to_string(dup->first) +
                         ", " + std::to_string(dup->second) + ")");
  }
  m_ = canon.size();

  std::vector<std::uint32_t> deg(n_, 0);
  for (const auto& [a, b] : canon) {
    ++deg[a];
    ++deg[b];
  }
  offsets_.assign(n_ + 1, 0);
  for (NodeId v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adj_.resize(2 * m_);
  std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [a, b] : canon) {
    adj_[cursor[a]++] = b;
    adj_[cursor[b]++] = a;
  }
  for (NodeId v = 0; v < n_; ++v) {
    auto nb = adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto ne = adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(nb, ne);
  }

  max_degree_ = 0;
  min_degree_ = n_ > 0 ? ~0u : 0;
  for (NodeId v = 0; v < n_; ++v) {
    max_degree_ = std::max(max_degree_, deg[v]);
    min_degree_ = std::min(min_degree_, deg[v]);
  }
  if (n_ == 0) min_degree_ = 0;
}

bool Graph::adjacent(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::connected() const {
  if (n_ <= 1) return true;
  std::vector<std::uint8_t> seen(n_, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  NodeId visited = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (const NodeId u : neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        ++visited;
        stack.push_back(u);
      }
    }
  }
  return visited == n_;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (NodeId v = 0; v < n_; ++v) {
    for (const NodeId u : neighbors(v)) {
      if (v < u) out.emplace_back(v, u);
    }
  }
  return out;
}

}  // namespace majority
