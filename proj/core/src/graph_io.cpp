#include "majority/graph_io.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "majority/errors.hpp"

namespace majority {
namespace {

bool significant(const std::string& line) {
  for (const char c : line) {
    if (c == '#') return false;
    if (!std::isspace(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

// Parses exactly `count` unsigned fields and rejects trailing junk.
std::vector<std::uint64_t> parse_fields(const std::string& line,
                                        std::size_t count,
                                        std::size_t line_no) {
  std::istringstream ss(line);
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::int64_t v = 0;
    if (!(ss >> v)) {
      throw ParseError("expected " + std::to_string(count) +
                           " integer field(s) in '" + line + "'",
                       line_no);
    }
    if (v < 0) {
      throw ParseError("negative value in '" + line + "'", line_no);
    }
    out.push_back(static_cast<std::uint64_t>(v));
  }
  std::string rest;
  if (ss >> rest) {
    throw ParseError("trailing content '" + rest + "' in '" + line + "'",
                     line_no);
  }
  return out;
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  std::size_t last_line = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!significant(line)) continue;

    if (!have_header) {
      const auto f = parse_fields(line, 2, line_no);
      n = f[0];
      m = f[1];
      if (n > std::numeric_limits<NodeId>::max()) {
        throw ParseError("node count " + std::to_string(n) + " too large",
                         line_no);
      }
      have_header = true;
      edges.reserve(m);
      continue;
    }

    if (edges.size() == m) {
      throw ParseError("more than " + std::to_string(m) + " edge lines",
                       line_no);
    }
    const auto f = parse_fields(line, 2, line_no);
    const std::uint64_t u = f[0];
    const std::uint64_t v = f[1];
    if (u >= v) {
      throw ParseError("edge endpoints must satisfy u < v in '" + line + "'",
                       line_no);
    }
    if (v >= n) {
      throw ParseError("endpoint " + std::to_string(v) + " out of range for " +
                           std::to_string(n) + " nodes",
                       line_no);
    }
    if (!seen.insert(u * n + v).second) {
      throw ParseError("duplicate edge '" + line + "'", line_no);
    }
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    last_line = line_no;
  }

  if (!have_header) {
    throw ParseError("missing 'n m' header line", line_no == 0 ? 1 : line_no);
  }
  if (edges.size() != m) {
    throw ParseError("header promised " + std::to_string(m) +
                         " edges but found " + std::to_string(edges.size()),
                     last_line == 0 ? line_no : last_line);
  }

  try {
    return Graph(static_cast<NodeId>(n), edges);
  } catch (const ParameterError& e) {
    throw ParseError(std::string(e.what()), last_line);
  }
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open graph file '" + path + "'");
  }
  return parse_graph(in);
}

void write_graph(const Graph& g, std::ostream& out) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) {
    out << u << ' ' << v << '\n';
  }
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot open '" + path + "' for writing");
  }
  write_graph(g, out);
  out.flush();
  if (!out) {
    throw ParseError("failed writing graph to '" + path + "'");
  }
}

std::string graph_to_string(const Graph& g) {
  std::ostringstream ss;
  write_graph(g, ss);
  return ss.str();
}

}  // namespace majority
