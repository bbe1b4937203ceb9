#include "majority/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <unordered_set>
#include <vector>

#include "majority/errors.hpp"
#include "majority/rng.hpp"

namespace majority {
namespace {

using Family = GraphFamilySpec::Family;

Graph make_complete(std::uint32_t n) {
  if (n < 1) throw ParameterError("complete(n) requires n >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

Graph make_star(std::uint32_t leaves) {
  if (leaves < 1) throw ParameterError("star(leaves) requires leaves >= 1");
  std::vector<Edge> edges;
  edges.reserve(leaves);
  for (NodeId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, edges);
}

Graph make_cycle(std::uint32_t n) {
  if (n < 3) throw ParameterError("cycle(n) requires n >= 3");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(0, n - 1);
  return Graph(n, edges);
}

// Pairing construction: match random stub pairs, rejecting any pair that
// would create a self-loop or a duplicate edge.  When no valid pair is left
// among the remaining stubs the attempt restarts from scratch.
Graph make_random_regular(std::uint32_t n, std::uint32_t d,
                          std::uint64_t seed) {
  if (d < 1 || d >= n) {
    throw ParameterError("random_regular(n,d) requires 1 <= d < n");
  }
  if ((static_cast<std::uint64_t>(n) * d) % 2 != 0) {
    throw ParameterError("random_regular(n,d) requires n*d even");
  }

  constexpr int kMaxAttempts = 1000;
  SplitMix64 rng(derive_stream(seed, 0x5265675265670000ULL));
  const std::uint64_t stub_total = static_cast<std::uint64_t>(n) * d;

  auto edge_key = [n](NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * n + b;
  };

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<NodeId> stubs;
    stubs.reserve(stub_total);
    for (NodeId v = 0; v < n; ++v) {
      for (std::uint32_t k = 0; k < d; ++k) stubs.push_back(v);
    }
    std::unordered_set<std::uint64_t> used;
    used.reserve(stub_total);
    std::vector<Edge> edges;
    edges.reserve(stub_total / 2);

    std::uint64_t remaining = stub_total;
    bool dead_end = false;
    while (remaining > 0 && !dead_end) {
      int rejects = 0;
      for (;;) {
        const std::uint64_t i = rng.bounded(remaining);
        std::swap(stubs[i], stubs[remaining - 1]);
        const std::uint64_t j = rng.bounded(remaining - 1);
        std::swap(stubs[j], stubs[remaining - 2]);
        const NodeId u = stubs[remaining - 1];
        const NodeId v = stubs[remaining - 2];
        if (u != v && !used.count(edge_key(u, v))) {
          used.insert(edge_key(u, v));
          edges.emplace_back(u, v);
          remaining -= 2;
          break;
        }
        // After a long rejection streak, check whether any valid pair is
        // still possible; if not, this attempt is stuck.
        if (++rejects >= 64) {
          bool feasible = false;
          for (std::uint64_t a = 0; a < remaining && !feasible; ++a) {
            for (std::uint64_t b = a + 1; b < remaining; ++b) {
              if (stubs[a] != stubs[b] &&
                  !used.count(edge_key(stubs[a], stubs[b]))) {
                feasible = true;
                break;
              }
            }
          }
          if (!feasible) {
            dead_end = true;
            break;
          }
          rejects = 0;
        }
      }
    }
    if (!dead_end) return Graph(n, edges);
  }
  throw GenerationError("random_regular(" + std::to_string(n) + "," +
                        std::to_string(d) +
                        ") exhausted its retry budget of " +
                        std::to_string(kMaxAttempts) + " attempts");
}

// m-clique where every clique node carries `leaves` pendant leaves.
// Clique nodes are 0..m-1; the leaves of clique node i are
// m + i*leaves ... m + (i+1)*leaves - 1.
Graph make_clique_with_leaves(std::uint32_t m, std::uint32_t leaves) {
  if (m < 1) throw ParameterError("clique_with_leaves(m,l) requires m >= 1");
  const std::uint64_t n = static_cast<std::uint64_t>(m) * (1 + leaves);
  if (n > std::numeric_limits<NodeId>::max()) {
    throw ParameterError("clique_with_leaves(m,l) node count overflows");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m) * (m - 1) / 2 +
                static_cast<std::size_t>(m) * leaves);
  for (NodeId u = 0; u < m; ++u) {
    for (NodeId v = u + 1; v < m; ++v) edges.emplace_back(u, v);
  }
  for (NodeId i = 0; i < m; ++i) {
    for (std::uint32_t t = 0; t < leaves; ++t) {
      edges.emplace_back(i, m + i * leaves + t);
    }
  }
  return Graph(static_cast<NodeId>(n), edges);
}

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty()) throw ParseError("empty argument in family spec");
  std::uint64_t value = 0;
  for (const char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("non-numeric argument '" + s + "' in family spec");
    }
    const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
      throw ParseError("argument '" + s + "' out of range");
    }
    value = value * 10 + digit;
  }
  return value;
}

std::uint32_t narrow_u32(std::uint64_t v, const std::string& what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw ParseError(what + " out of range");
  }
  return static_cast<std::uint32_t>(v);
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

GraphFamilySpec GraphFamilySpec::complete(std::uint32_t n) {
  GraphFamilySpec s;
  s.family = Family::Complete;
  s.n = n;
  return s;
}

GraphFamilySpec GraphFamilySpec::star(std::uint32_t leaves) {
  GraphFamilySpec s;
  s.family = Family::Star;
  s.leaves = leaves;
  return s;
}

GraphFamilySpec GraphFamilySpec::cycle(std::uint32_t n) {
  GraphFamilySpec s;
  s.family = Family::Cycle;
  s.n = n;
  return s;
}

GraphFamilySpec GraphFamilySpec::random_regular(std::uint32_t n,
                                                std::uint32_t d,
                                                std::uint64_t seed) {
  GraphFamilySpec s;
  s.family = Family::RandomRegular;
  s.n = n;
  s.degree = d;
  s.seed = seed;
  return s;
}

GraphFamilySpec GraphFamilySpec::clique_with_leaves(std::uint32_t m,
                                                    std::uint32_t leaves) {
  GraphFamilySpec s;
  s.family = Family::CliqueWithLeaves;
  s.clique = m;
  s.leaves = leaves;
  return s;
}

GraphFamilySpec GraphFamilySpec::parse(const std::string& text) {
  const std::string t = trim(text);
  const std::size_t open = t.find('(');
  if (open == std::string::npos || t.back() != ')') {
    throw ParseError("family spec '" + text + "' is not name(arg,...)");
  }
  const std::string name = trim(t.substr(0, open));
  const std::string body = t.substr(open + 1, t.size() - open - 2);

  std::vector<std::uint64_t> args;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = body.find(',', pos);
    const std::string piece =
        trim(comma == std::string::npos ? body.substr(pos)
                                        : body.substr(pos, comma - pos));
    args.push_back(parse_u64(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

  auto expect = [&](std::size_t k) {
    if (args.size() != k) {
      throw ParseError("family '" + name + "' expects " + std::to_string(k) +
                       " argument(s), got " + std::to_string(args.size()));
    }
  };

  if (name == "complete") {
    expect(1);
    return complete(narrow_u32(args[0], "n"));
  }
  if (name == "star") {
    expect(1);
    return star(narrow_u32(args[0], "leaves"));
  }
  if (name == "cycle") {
    expect(1);
    return cycle(narrow_u32(args[0], "n"));
  }
  if (name == "random_regular") {
    if (args.size() != 2 && args.size() != 3) {
      throw ParseError("random_regular expects (n,d) or (n,d,seed)");
    }
    return random_regular(narrow_u32(args[0], "n"), narrow_u32(args[1], "d"),
                          args.size() == 3 ? args[2] : 0);
  }
  if (name == "clique_with_leaves") {
    expect(2);
    return clique_with_leaves(narrow_u32(args[0], "m"),
                              narrow_u32(args[1], "leaves"));
  }
  throw ParseError("unknown graph family '" + name + "'");
}

std::string GraphFamilySpec::name() const {
  switch (family) {
    case Family::Complete:
      return "complete(" + std::to_string(n) + ")";
    case Family::Star:
      return "star(" + std::to_string(leaves) + ")";
    case Family::Cycle:
      return "cycle(" + std::to_string(n) + ")";
    case Family::RandomRegular:
      return "random_regular(" + std::to_string(n) + "," +
             std::to_string(degree) + "," + std::to_string(seed) + ")";
    case Family::CliqueWithLeaves:
      return "clique_with_leaves(" + std::to_string(clique) + "," +
             std::to_string(leaves) + ")";
  }
  return "";
}

std::uint32_t GraphFamilySpec::node_count() const {
  switch (family) {
    case Family::Complete:
    case Family::Cycle:
    case Family::RandomRegular:
      return n;
    case Family::Star:
      return leaves + 1;
    case Family::CliqueWithLeaves:
      return clique * (1 + leaves);
  }
  return 0;
}

Graph generate(const GraphFamilySpec& spec) {
  switch (spec.family) {
    case Family::Complete:
      return make_complete(spec.n);
    case Family::Star:
      return make_star(spec.leaves);
    case Family::Cycle:
      return make_cycle(spec.n);
    case Family::RandomRegular:
      return make_random_regular(spec.n, spec.degree, spec.seed);
    case Family::CliqueWithLeaves:
      return make_clique_with_leaves(spec.clique, spec.leaves);
  }
  throw ParameterError("unknown graph family");
}

}  // namespace majority
