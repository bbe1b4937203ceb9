#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "majority/content_hash.hpp"
#include "majority/errors.hpp"
#include "majority/generators.hpp"
#include "majority/graph.hpp"
#include "majority/graph_io.hpp"
#include "majority/rng.hpp"
#include "majority/stats.hpp"

using namespace majority;

TEST_CASE("graph construction and basic queries") {
  const Graph g(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 6);
  CHECK(g.total_volume() == 12);
  CHECK(g.max_degree() == 3);
  CHECK(g.min_degree() == 3);
  for (NodeId v = 0; v < 4; ++v) {
    CHECK(g.degree(v) == 3);
    auto nb = g.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    CHECK(nb.size() == 3);
  }
  CHECK(g.adjacent(0, 3));
  CHECK(g.adjacent(3, 0));
  CHECK_FALSE(g.adjacent(2, 2));

  const Graph path(3, {{0, 1}, {1, 2}});
  CHECK(path.degree(0) == 1);
  CHECK(path.degree(1) == 2);
  CHECK_FALSE(path.adjacent(0, 2));
}

TEST_CASE("graph constructor rejects malformed edge lists") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {0, 1}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), ParameterError);
  CHECK_NOTHROW(Graph(3, {}));
}

TEST_CASE("generators produce the documented shapes") {
  const Graph k4 = generate(GraphFamilySpec::complete(4));
  CHECK(k4.node_count() == 4);
  CHECK(k4.edge_count() == 6);

  const Graph star = generate(GraphFamilySpec::star(5));
  CHECK(star.node_count() == 6);
  CHECK(star.edge_count() == 5);
  CHECK(star.degree(0) == 5);
  for (NodeId v = 1; v < 6; ++v) CHECK(star.degree(v) == 1);

  const Graph cyc = generate(GraphFamilySpec::cycle(7));
  CHECK(cyc.node_count() == 7);
  CHECK(cyc.edge_count() == 7);
  for (NodeId v = 0; v < 7; ++v) CHECK(cyc.degree(v) == 2);
  CHECK(cyc.adjacent(0, 6));
  CHECK(cyc.adjacent(2, 3));

  const Graph gml = generate(GraphFamilySpec::clique_with_leaves(3, 2));
  CHECK(gml.node_count() == 9);
  CHECK(gml.edge_count() == 3 + 6);
  for (NodeId u = 0; u < 3; ++u) CHECK(gml.degree(u) == 2 + 2);
  for (NodeId v = 3; v < 9; ++v) CHECK(gml.degree(v) == 1);
  CHECK(gml.adjacent(1, 3 + 1 * 2));
  CHECK(gml.adjacent(1, 3 + 1 * 2 + 1));
  CHECK_FALSE(gml.adjacent(0, 3 + 1 * 2));
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(generate(GraphFamilySpec::complete(0)), ParameterError);
  CHECK(generate(GraphFamilySpec::complete(1)).node_count() == 1);
  CHECK_THROWS_AS(generate(GraphFamilySpec::cycle(2)), ParameterError);
  CHECK_THROWS_AS(generate(GraphFamilySpec::star(0)), ParameterError);
  CHECK_THROWS_AS(generate(GraphFamilySpec::random_regular(5, 3, 1)),
                  ParameterError);
  CHECK_THROWS_AS(generate(GraphFamilySpec::random_regular(4, 4, 1)),
                  ParameterError);
  CHECK_THROWS_AS(generate(GraphFamilySpec::random_regular(4, 0, 1)),
                  ParameterError);
  CHECK_THROWS_AS(generate(GraphFamilySpec::clique_with_leaves(0, 2)),
                  ParameterError);
}

TEST_CASE("random regular graphs are simple, regular, and seed-deterministic") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = generate(GraphFamilySpec::random_regular(16, 3, seed));
    CHECK(g.node_count() == 16);
    CHECK(g.edge_count() == 24);
    for (NodeId v = 0; v < 16; ++v) CHECK(g.degree(v) == 3);
  }
  const Graph a = generate(GraphFamilySpec::random_regular(40, 4, 7));
  const Graph b = generate(GraphFamilySpec::random_regular(40, 4, 7));
  CHECK(a.edges() == b.edges());
  const Graph c = generate(GraphFamilySpec::random_regular(40, 4, 8));
  CHECK(a.edges() != c.edges());
}

TEST_CASE("family spec parsing round-trips and rejects junk") {
  const char* good[] = {"complete(50)",          "star(2000)",
                        "cycle(500)",            "random_regular(200,3)",
                        "random_regular(200,3,7)", "clique_with_leaves(4,2)"};
  for (const char* text : good) {
    const GraphFamilySpec spec = GraphFamilySpec::parse(text);
    CHECK(GraphFamilySpec::parse(spec.name()).name() == spec.name());
    CHECK_NOTHROW(generate(spec));
  }
  CHECK(GraphFamilySpec::parse(" complete( 8 ) ").name() == "complete(8)");
  CHECK(GraphFamilySpec::parse("random_regular(200,3)").seed == 0);

  CHECK_THROWS_AS(GraphFamilySpec::parse("complete"), ParseError);
  CHECK_THROWS_AS(GraphFamilySpec::parse("complete("), ParseError);
  CHECK_THROWS_AS(GraphFamilySpec::parse("complete()"), ParseError);
  CHECK_THROWS_AS(GraphFamilySpec::parse("complete(4,5)"), ParseError);
  CHECK_THROWS_AS(GraphFamilySpec::parse("complete(x)"), ParseError);
  CHECK_THROWS_AS(GraphFamilySpec::parse("complete(-3)"), ParseError);
  CHECK_THROWS_AS(GraphFamilySpec::parse("frobnicate(3)"), ParseError);
  CHECK_THROWS_AS(GraphFamilySpec::parse("random_regular(200)"), ParseError);
  CHECK_THROWS_AS(GraphFamilySpec::parse("star(1) extra"), ParseError);
}

TEST_CASE("edge list text round-trips byte for byte") {
  const Graph g = generate(GraphFamilySpec::clique_with_leaves(4, 1));
  const std::string text = graph_to_string(g);
  std::istringstream in(text);
  const Graph back = parse_graph(in);
  CHECK(back.node_count() == g.node_count());
  CHECK(back.edges() == g.edges());
  CHECK(graph_to_string(back) == text);
}

TEST_CASE("graph parser accepts comments and reports line numbers") {
  {
    std::istringstream in("# a triangle\n3 3\n\n0 1\n# middle\n0 2\n1 2\n");
    const Graph g = parse_graph(in);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 3);
  }
  {
    std::istringstream in("3 2\r\n0 1\r\n1 2\r\n");
    CHECK(parse_graph(in).edge_count() == 2);
  }
  auto parse_error = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_graph(in);
      return std::string("no error");
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
  };
  CHECK(parse_error("").find("header") != std::string::npos);
  CHECK(parse_error("oops\n") != "no error");
  CHECK(parse_error("3 1\n1 0\n").find("line 2") != std::string::npos);
  CHECK(parse_error("3 1\n0 3\n").find("line 2") != std::string::npos);
  CHECK(parse_error("3 2\n0 1\n0 1\n").find("line 3") != std::string::npos);
  CHECK(parse_error("3 2\n0 1\n") != "no error");
  CHECK(parse_error("3 1\n0 1\n1 2\n") != "no error");
  CHECK(parse_error("3 1\n0 1 9\n").find("line 2") != std::string::npos);
}

TEST_CASE("sha1 matches the published test vectors") {
  CHECK(sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
  CHECK(sha1_hex("") == "da39a3ee5e6b4b0d3255bfef95601890afd80709");
  CHECK(sha1_hex("The quick brown fox jumps over the lazy dog") ==
        "2fd4e1c67a2d28fced849ee1bb76e7391b93eb12");
}

TEST_CASE("graph hash is the git blob hash of the edge list text") {
  const Graph g = generate(GraphFamilySpec::cycle(5));
  const std::string text = graph_to_string(g);
  std::string framed = "blob " + std::to_string(text.size());
  framed.push_back('\0');
  framed += text;
  CHECK(graph_content_hash(g) == sha1_hex(framed));

  const Graph same(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK(graph_content_hash(same) == graph_content_hash(g));
  const Graph other = generate(GraphFamilySpec::cycle(6));
  CHECK(graph_content_hash(other) != graph_content_hash(g));
}

TEST_CASE("splitmix streams are deterministic and well separated") {
  SplitMix64 a(42);
  SplitMix64 b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  std::set<std::uint64_t> streams;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    streams.insert(derive_stream(9001, i));
  }
  CHECK(streams.size() == 2000);

  SplitMix64 c(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(c.bounded(6) < 6);
  }
}

TEST_CASE("bounded is close to uniform over a small range") {
  SplitMix64 rng(123);
  std::vector<std::uint64_t> counts(6, 0);
  const std::uint64_t draws = 60000;
  for (std::uint64_t i = 0; i < draws; ++i) ++counts[rng.bounded(6)];
  for (const std::uint64_t c : counts) {
    CHECK(c > 9500);
    CHECK(c < 10500);
  }
}

TEST_CASE("wilson interval matches hand-computed values") {
  struct Case {
    std::uint64_t s, t;
    double lo, hi;
  };
  const Case cases[] = {
      {0, 1, 0.0, 0.7934506856227626},
      {1, 1, 0.20654931437723745, 1.0},
      {5, 10, 0.236593090512564, 0.7634069094874361},
      {50, 100, 0.4038315303659956, 0.5961684696340044},
      {600, 1000, 0.5693094295142662, 0.6299252187886226},
  };
  for (const Case& c : cases) {
    const WilsonInterval w = wilson95(c.s, c.t);
    CHECK(w.lo == doctest::Approx(c.lo).epsilon(1e-12));
    CHECK(w.hi == doctest::Approx(c.hi).epsilon(1e-12));
  }
  CHECK(wilson95(50, 100).contains(0.5));
  CHECK_FALSE(wilson95(50, 100).contains(0.7));
  CHECK_THROWS_AS(wilson95(1, 0), ParameterError);
  CHECK_THROWS_AS(wilson95(2, 1), ParameterError);
}

TEST_CASE("normal quantile matches reference values") {
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-9));
  CHECK(normal_quantile(0.025) ==
        doctest::Approx(-1.959963984540054).epsilon(1e-9));
  CHECK(normal_quantile(0.00135) ==
        doctest::Approx(-2.999976992703393).epsilon(1e-9));
  CHECK(normal_quantile(0.9) ==
        doctest::Approx(1.2815515655446008).epsilon(1e-9));
  CHECK(normal_quantile(0.999) ==
        doctest::Approx(3.090232306167813).epsilon(1e-9));
  for (double p : {0.001, 0.1, 0.3, 0.77}) {
    CHECK(normal_quantile(p) ==
          doctest::Approx(-normal_quantile(1.0 - p)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(normal_quantile(0.0), ParameterError);
  CHECK_THROWS_AS(normal_quantile(1.0), ParameterError);
}

TEST_CASE("make_estimate carries the interval and the counts") {
  const EstimateWithCI e = make_estimate(600, 1000);
  CHECK(e.point == doctest::Approx(0.6));
  CHECK(e.lo == doctest::Approx(0.5693094295142662).epsilon(1e-12));
  CHECK(e.hi == doctest::Approx(0.6299252187886226).epsilon(1e-12));
  CHECK(e.successes == 600);
  CHECK(e.trials == 1000);
}
