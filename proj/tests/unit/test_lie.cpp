#include <doctest.h>

#include <set>

#include "chiral/errors.hpp"
#include "chiral/lie.hpp"
#include "chiral/parse.hpp"

using namespace chiral;

TEST_CASE("classical dimensions are (n-1)!") {
  const std::size_t expected[] = {1, 1, 2, 6, 24};
  for (std::uint32_t n = 1; n <= 5; ++n) CHECK(classical_dimension(n) == expected[n - 1]);
  CHECK_THROWS_AS(classical_dimension(0), DomainError);
}

TEST_CASE("bracket words and lines correspond") {
  for (std::uint32_t n = 1; n <= 6; ++n) {
    std::set<LineForest> seen;
    const auto words = bracket_words(n);
    for (const BracketWord& w : words) {
      const LineForest line = bracket_to_line(w);
      CHECK(line.connected());
      CHECK(line_to_bracket(line) == w);
      seen.insert(line);
    }
    CHECK(seen.size() == words.size());
    CHECK(seen.size() == enumerate_line_forests(n, 1).size());
  }
}

TEST_CASE("bracket text") {
  CHECK(to_string(bracket_words(1).front()) == "x1");
  CHECK(to_string(line_to_bracket(parse_forest("1>3>2"))) == "[x1,[x3,x2]]");
  CHECK_THROWS_AS(line_to_bracket(parse_forest("1>2 | 3")), DomainError);
  CHECK_THROWS_AS(bracket_to_line(BracketWord{{2, 1}}), DomainError);
}
