#include <doctest.h>

#include "qc/model.hpp"

namespace {

nlohmann::json fib_json() {
  return nlohmann::json::parse(R"({
    "substitution": {"alphabet": ["a", "b"], "rules": {"a": "ab", "b": "a"}, "seed": "a"},
    "pieces": {"a": {"length": 1, "atoms": [[0, 1]]}, "b": {"length": 1.618033988749895}},
    "word_length": 1000
  })");
}

}  // namespace

TEST_CASE("model parsing") {
  const auto m = qc::model_from_json(fib_json());
  CHECK(m.word().size() == 1000);
  CHECK(m.rng_seed == 1);
  CHECK(m.tolerance == 1e-9);
  CHECK(m.alphabet.symbols() == std::vector<char>{'a', 'b'});
  const auto s = m.stream();
  CHECK(s.word().origin == 500);

  // resolved config round-trips and carries every default
  const auto j = m.to_json();
  for (const char* key : {"substitution", "pieces", "offset", "rng_seed", "tolerance", "word_length"})
    CHECK(j.contains(key));
  CHECK(qc::model_from_json(j).to_json() == j);
}

TEST_CASE("malformed models") {
  auto bad = [](auto edit) {
    auto j = fib_json();
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(qc::model_from_json(nlohmann::json::array()), qc::Error);
  CHECK_THROWS_AS(qc::model_from_json(bad([](auto& j) { j.erase("pieces"); })), qc::Error);
  CHECK_THROWS_AS(qc::model_from_json(bad([](auto& j) { j["pieces"].erase("b"); })), qc::Error);
  CHECK_THROWS_AS(qc::model_from_json(bad([](auto& j) { j["pieces"]["c"] = {{"length", 1}}; })), qc::Error);
  CHECK_THROWS_AS(qc::model_from_json(bad([](auto& j) { j["pieces"]["a"]["length"] = -1; })), qc::Error);
  CHECK_THROWS_AS(qc::model_from_json(bad([](auto& j) { j["substitution"]["rules"]["a"] = "ac"; })), qc::Error);
  CHECK_THROWS_AS(qc::model_from_json(bad([](auto& j) { j["substitution"]["seed"] = "z"; })), qc::Error);
  CHECK_THROWS_AS(qc::model_from_json(bad([](auto& j) { j["tolerance"] = -1.0; })), qc::Error);
  CHECK_THROWS_AS(qc::model_from_json(bad([](auto& j) { j["word_length"] = "many"; })), qc::Error);
  CHECK_THROWS_AS(qc::load_model("/nonexistent/model.json"), qc::Error);
}
