#pragma once

// Bundled corpus of small algebras. The texts are kept identical to the files in
// corpus/ (a test compares them).

#include <string>
#include <vector>

#include "halg/format.hpp"

namespace halg {

struct CorpusEntry {
  std::string name;
  std::string file;
  std::string text;

  AlgebraFile parse() const { return parse_algebra_file(text); }
  RingPtr ring() const { return Ring::make(parse().presentation); }
};

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"A2", "a2.alg", R"ALG(# Path algebra of 1 -> 2.
[algebra]
field = 2
vertices = ["1", "2"]
arrows = [["a", "1", "2"]]
relations = []
nilpotency = 2

[modules.S1]
dims = [1, 0]

[modules.S2]
dims = [0, 1]

[modules.P1]
dims = [1, 1]
map.a = [[1]]
)ALG"},
      {"A3", "a3.alg", R"ALG(# Path algebra of 1 -> 2 -> 3.
[algebra]
field = 2
vertices = ["1", "2", "3"]
arrows = [["a", "1", "2"], ["b", "2", "3"]]
relations = []
nilpotency = 3

[modules.S1]
dims = [1, 0, 0]

[modules.M12]
dims = [1, 1, 0]
map.a = [[1]]

[modules.P1]
dims = [1, 1, 1]
map.a = [[1]]
map.b = [[1]]
)ALG"},
      {"A3-rad2", "a3_rad2.alg", R"ALG(# 1 -> 2 -> 3 with the composite set to zero.
[algebra]
field = 2
vertices = ["1", "2", "3"]
arrows = [["a", "1", "2"], ["b", "2", "3"]]
relations = ["b*a"]
nilpotency = 2

[modules.S1]
dims = [1, 0, 0]

[modules.S2]
dims = [0, 1, 0]

[modules.P1]
dims = [1, 1, 0]
map.a = [[1]]
)ALG"},
      {"x2", "dual_numbers.alg", R"ALG(# F_2[x]/(x^2), self-injective.
[algebra]
field = 2
vertices = ["1"]
arrows = [["x", "1", "1"]]
relations = ["x*x"]
nilpotency = 2

[modules.S]
dims = [1]
map.x = [[0]]

[modules.L]
dims = [2]
map.x = [[0, 0], [1, 0]]
)ALG"},
      {"x3", "truncated_cubic.alg", R"ALG(# F_2[x]/(x^3), self-injective.
[algebra]
field = 2
vertices = ["1"]
arrows = [["x", "1", "1"]]
relations = ["x*x*x"]
nilpotency = 3

[modules.S]
dims = [1]
map.x = [[0]]

[modules.M2]
dims = [2]
map.x = [[0, 0], [1, 0]]
)ALG"},
      {"two-loop", "two_loop.alg", R"ALG(# Local algebra with two loops and radical square zero.
[algebra]
field = 2
vertices = ["1"]
arrows = [["x", "1", "1"], ["y", "1", "1"]]
relations = ["x*x", "x*y", "y*x", "y*y"]
nilpotency = 2

[modules.S]
dims = [1]
map.x = [[0]]
map.y = [[0]]

[modules.L]
dims = [3]
map.x = [[0, 0, 0], [1, 0, 0], [0, 0, 0]]
map.y = [[0, 0, 0], [0, 0, 0], [1, 0, 0]]
)ALG"},
  };
  return entries;
}

inline const CorpusEntry* find_corpus(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace halg
