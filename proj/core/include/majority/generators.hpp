#pragma once

#include <cstdint>
#include <string>

#include "majority/graph.hpp"

namespace majority {

// A named graph family instance.  Text form examples:
//   complete(50)  star(2000)  cycle(500)
//   random_regular(200,3)  random_regular(200,3,7)  clique_with_leaves(4,2)
struct GraphFamilySpec {
  enum class Family : std::uint8_t {
    Complete,
    Star,
    Cycle,
    RandomRegular,
    CliqueWithLeaves,
  };

  Family family = Family::Complete;
  std::uint32_t n = 0;       // complete / cycle / random_regular node count
  std::uint32_t leaves = 0;  // star leaf count, clique_with_leaves per-node leaves
  std::uint32_t degree = 0;  // random_regular degree
  std::uint32_t clique = 0;  // clique_with_leaves clique size
  std::uint64_t seed = 0;    // random_regular only

  static GraphFamilySpec complete(std::uint32_t n);
  static GraphFamilySpec star(std::uint32_t leaves);
  static GraphFamilySpec cycle(std::uint32_t n);
  static GraphFamilySpec random_regular(std::uint32_t n, std::uint32_t d,
                                        std::uint64_t seed);
  static GraphFamilySpec clique_with_leaves(std::uint32_t m,
                                            std::uint32_t leaves);

  // Parses the text form.  random_regular accepts an optional third
  // argument carrying the seed.  Throws ParseError on anything else.
  static GraphFamilySpec parse(const std::string& text);

  // Canonical text form (seed included for random_regular).
  std::string name() const;

  // Node count of the instance this spec describes.
  std::uint32_t node_count() const;
};

// Materializes the instance.  Validates parameters (ParameterError) and,
// for random_regular, retries the pairing construction up to a fixed
// budget (GenerationError when exhausted).
Graph generate(const GraphFamilySpec& spec);

}  // namespace majority
