#include "qc/model.hpp"

#include <fstream>

namespace qc {

nlohmann::json ModelConfig::to_json() const {
  return {{"substitution", substitution_to_json(substitution)},
          {"pieces", alphabet_to_json(alphabet)},
          {"offset", offset},
          {"rng_seed", rng_seed},
          {"tolerance", tolerance},
          {"word_length", word_length}};
}

Word ModelConfig::word() const {
  return generate(substitution.substitution, substitution.seed, word_length);
}

PotentialStream ModelConfig::stream() const {
  Word w = word();
  const std::size_t origin = w.size() / 2;
  return PotentialStream(TwoSidedWord{std::move(w), origin}, alphabet, offset);
}

ModelConfig model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("model must be a JSON object");
  try {
    ModelConfig m{substitution_from_json(j.at("substitution")), {}};
    const PieceAlphabet raw = alphabet_from_json(j.at("pieces"));
    for (Symbol a : m.substitution.substitution.alphabet()) m.alphabet.add(a, raw.at(a));
    if (raw.size() != m.alphabet.size()) throw Error("pieces given for symbols outside the alphabet");
    m.offset = j.value("offset", 0.0);
    m.rng_seed = j.value("rng_seed", std::uint64_t{1});
    m.tolerance = j.value("tolerance", kDefaultTolerance);
    m.word_length = j.value("word_length", std::size_t{20000});
    if (!(m.tolerance >= 0.0)) throw Error("tolerance must be nonnegative");
    if (m.word_length < 2) throw Error("word_length must be at least 2");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed model: ") + e.what());
  }
}

ModelConfig load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("model file " + path.string() + " is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

}  // namespace qc
