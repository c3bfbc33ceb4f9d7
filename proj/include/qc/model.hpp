#pragma once

// Model files: a substitution, one piece per symbol, an offset and run
// settings.
//
//   {
//     "substitution": {"alphabet": ["a", "b"], "rules": {"a": "ab", "b": "a"}, "seed": "a"},
//     "pieces": {"a": {"length": 1, "atoms": [[0, 1]]}, "b": {"length": 1.618033988749895}},
//     "offset": 0.0,
//     "rng_seed": 1,
//     "tolerance": 1e-9,
//     "word_length": 20000
//   }

#include <cstdint>
#include <filesystem>

#include "qc/subshift.hpp"
#include "qc/suspension.hpp"

namespace qc {

struct ModelConfig {
  SubstitutionSpec substitution;
  PieceAlphabet alphabet;  ///< in substitution alphabet order
  double offset = 0.0;
  std::uint64_t rng_seed = 1;
  double tolerance = kDefaultTolerance;
  std::size_t word_length = 20000;

  /// Fully resolved config, defaults included.
  nlohmann::json to_json() const;

  Word word() const;
  /// Generated word with the origin at its midpoint, shifted by `offset`.
  PotentialStream stream() const;
};

ModelConfig model_from_json(const nlohmann::json& j);
ModelConfig load_model(const std::filesystem::path& path);

}  // namespace qc
