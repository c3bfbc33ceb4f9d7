#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "qc/subshift.hpp"

namespace {

// Factors of length n by direct enumeration into a set.
std::size_t naive_complexity(const std::string& w, std::size_t n) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i + n <= w.size(); ++i) seen.insert(w.substr(i, n));
  return seen.size();
}

std::size_t naive_cube_starts(const std::string& w, std::size_t q) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + 3 * q <= w.size(); ++i)
    if (w.compare(i, q, w, i + q, q) == 0 && w.compare(i, q, w, i + 2 * q, q) == 0) ++count;
  return count;
}

}  // namespace

TEST_CASE("iterate") {
  CHECK(qc::iterate(fx::fibonacci(), 'a', 3) == "abaab");
  CHECK(qc::iterate(fx::fibonacci(), 'a', 0) == "a");
  CHECK(qc::iterate(fx::thue_morse(), '0', 3) == "01101001");
  CHECK(qc::iterate(fx::fibonacci(), 'a', 10).size() == 144);
  CHECK_THROWS_AS(qc::iterate(fx::fibonacci(), 'c', 2), qc::Error);
}

TEST_CASE("substitution validation") {
  CHECK_THROWS_AS(qc::Substitution({'a', 'b'}, {{'a', "ab"}}), qc::Error);
  CHECK_THROWS_AS(qc::Substitution({'a'}, {{'a', "ab"}}), qc::Error);
  CHECK_THROWS_AS(qc::Substitution({'a'}, {{'a', ""}}), qc::Error);
  CHECK_THROWS_AS(qc::Substitution({'a', 'a'}, {{'a', "a"}}), qc::Error);
  const auto inc = fx::fibonacci().incidence();
  CHECK(inc == std::vector<std::vector<std::uint64_t>>{{1, 1}, {1, 0}});
}

TEST_CASE("generate") {
  const auto w = qc::generate(fx::fibonacci(), 'a', 100);
  CHECK(w.size() == 100);
  CHECK(w == qc::iterate(fx::fibonacci(), 'a', 12).substr(0, 100));
  CHECK_THROWS_AS(qc::generate(qc::Substitution({'a'}, {{'a', "a"}}), 'a', 10), qc::Error);
}

TEST_CASE("complexity") {
  const auto w = qc::iterate(fx::fibonacci(), 'a', 12);
  CHECK(qc::complexity(w, 2) == 3);
  CHECK(qc::complexity(w, w.size()) == 1);
  const auto long_prefix = qc::generate(fx::fibonacci(), 'a', 20000);
  for (std::size_t n = 1; n <= 30; ++n) CHECK(qc::complexity(long_prefix, n) == n + 1);
  const auto tm = qc::generate(fx::thue_morse(), '0', 4096);
  for (std::size_t n = 1; n <= 12; ++n) CHECK(qc::complexity(tm, n) == naive_complexity(tm, n));
  CHECK_THROWS_AS(qc::complexity("ab", 0), qc::Error);
  CHECK_THROWS_AS(qc::complexity("ab", 3), qc::Error);
}

TEST_CASE("primitivity") {
  CHECK(qc::is_primitive(fx::fibonacci()));
  CHECK(qc::is_primitive(fx::thue_morse()));
  CHECK_FALSE(qc::is_primitive(qc::Substitution({'a', 'b'}, {{'a', "a"}, {'b', "b"}})));
  CHECK_FALSE(qc::is_primitive(qc::Substitution({'a', 'b'}, {{'a', "ab"}, {'b', "b"}})));
  // primitive, but only the fourth power is positive
  CHECK(qc::is_primitive(qc::Substitution({'a', 'b', 'c'}, {{'a', "b"}, {'b', "c"}, {'c', "ab"}})));
}

TEST_CASE("find_cubes") {
  const auto aaa = qc::find_cubes("aaa", 1);
  REQUIRE(aaa.size() == 1);
  CHECK(aaa[0] == qc::CubeOccurrence{0, 1, "a"});
  CHECK(qc::find_cubes(qc::generate(fx::thue_morse(), '0', 4096), 1365).empty());
  CHECK(qc::find_cubes("ab", 5).empty());

  const auto fib = qc::generate(fx::fibonacci(), 'a', 1000);
  const auto cubes = qc::find_cubes(fib, 50);
  CHECK(cubes.size() == 763);
  std::size_t naive = 0;
  for (std::size_t q = 1; q <= 50; ++q) naive += naive_cube_starts(fib, q);
  CHECK(cubes.size() == naive);
  for (std::size_t i = 1; i < cubes.size(); ++i)
    CHECK((cubes[i - 1].start < cubes[i].start ||
           (cubes[i - 1].start == cubes[i].start && cubes[i - 1].q < cubes[i].q)));
  for (const auto& c : cubes) CHECK(fib.substr(c.start, 3 * c.q) == c.block + c.block + c.block);
}

TEST_CASE("cube frequencies match a direct count") {
  const auto periodic = [] {
    std::string s;
    for (int i = 0; i < 500; ++i) s += "ab";
    return s;
  }();
  const auto f = qc::cube_frequency(periodic, 2);
  CHECK(f.count == f.positions);
  CHECK(f.frequency == 1.0);
  CHECK(qc::cube_frequency(qc::generate(fx::thue_morse(), '0', 4096), 4).count == 0);

  // counts frozen from a direct scan of the length-100000 Fibonacci prefix
  const std::vector<std::pair<std::size_t, std::size_t>> frozen{
      {3, 9016}, {5, 11144}, {8, 13772}, {13, 14896}, {21, 15780}, {34, 16240}};
  const auto fib = qc::generate(fx::fibonacci(), 'a', 100000);
  for (std::size_t q = 1; q <= 50; ++q) {
    std::size_t expect = 0;
    for (const auto& [fq, c] : frozen)
      if (fq == q) expect = c;
    CHECK(qc::count_cube_starts(fib, q) == expect);
  }
  const auto f3 = qc::cube_frequency(fx::fibonacci(), 'a', 3, 100000);
  CHECK(f3.positions == 99992);
  CHECK(f3.frequency == doctest::Approx(0.09016721337707016).epsilon(1e-15));
}
