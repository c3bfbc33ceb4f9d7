#include "qc/subshift.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "qc/measures.hpp"
#include "qc/simd/kernels.hpp"

namespace qc {

namespace {

// eq[i] = (w[i] == w[i+q]); i starts a cube of block length q iff
// eq[i .. i+2q) are all set.
template <class F>
void for_each_cube_start(std::string_view w, std::size_t q, F&& visit) {
  const std::size_t n = w.size();
  if (q == 0 || 3 * q > n) return;
  std::vector<std::uint8_t> eq(n - q);
  simd::match_bytes(w.data(), w.data() + q, n - q, eq.data());
  const std::size_t span = 2 * q;
  std::size_t run = 0;
  for (std::size_t j = 0; j < span; ++j) run += eq[j];
  for (std::size_t i = 0;; ++i) {
    if (run == span) visit(i);
    if (i + 3 * q >= n) break;
    run += eq[i + span];
    run -= eq[i];
  }
}

}  // namespace

Symbol TwoSidedWord::at(std::ptrdiff_t n) const {
  const std::ptrdiff_t i = n + static_cast<std::ptrdiff_t>(origin);
  if (i < 0 || i >= static_cast<std::ptrdiff_t>(symbols.size()))
    throw Error("symbol index " + std::to_string(n) + " outside the generated word; extend word first");
  return symbols[static_cast<std::size_t>(i)];
}

Substitution::Substitution(std::vector<Symbol> alphabet, std::map<Symbol, Word> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  if (alphabet_.empty()) throw Error("alphabet must be nonempty");
  if (alphabet_.size() > 255) throw Error("alphabet too large");
  std::vector<Symbol> sorted = alphabet_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("alphabet symbols must be distinct");
  if (rules_.size() != alphabet_.size()) throw Error("every alphabet symbol needs exactly one rule");
  std::unordered_set<Symbol> used;
  for (Symbol a : alphabet_) {
    auto it = rules_.find(a);
    if (it == rules_.end()) throw Error(std::string("missing rule for symbol '") + a + "'");
    if (it->second.empty()) throw Error(std::string("image of '") + a + "' is empty");
    for (Symbol b : it->second) {
      if (!rules_.contains(b)) throw Error(std::string("image contains unknown symbol '") + b + "'");
      used.insert(b);
    }
  }
  for (Symbol a : alphabet_)
    if (!used.contains(a)) throw Error(std::string("symbol '") + a + "' appears in no image");
}

const Word& Substitution::image(Symbol a) const {
  auto it = rules_.find(a);
  if (it == rules_.end()) throw Error(std::string("unknown symbol '") + a + "'");
  return it->second;
}

std::size_t Substitution::index_of(Symbol a) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), a);
  if (it == alphabet_.end()) throw Error(std::string("unknown symbol '") + a + "'");
  return static_cast<std::size_t>(it - alphabet_.begin());
}

std::vector<std::vector<std::uint64_t>> Substitution::incidence() const {
  const std::size_t k = alphabet_.size();
  std::vector<std::vector<std::uint64_t>> m(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (Symbol b : image(alphabet_[i])) ++m[i][index_of(b)];
  return m;
}

Word Substitution::apply(std::string_view w) const {
  Word out;
  for (Symbol a : w) out += image(a);
  return out;
}

SubstitutionSpec substitution_from_json(const nlohmann::json& j) {
  try {
    std::vector<Symbol> alphabet;
    for (const auto& a : j.at("alphabet")) {
      const auto s = a.get<std::string>();
      if (s.size() != 1) throw Error("alphabet symbols must be single characters: \"" + s + "\"");
      alphabet.push_back(s[0]);
    }
    std::map<Symbol, Word> rules;
    for (const auto& [key, value] : j.at("rules").items()) {
      if (key.size() != 1) throw Error("rule keys must be single characters: \"" + key + "\"");
      rules[key[0]] = value.get<std::string>();
    }
    const auto seed = j.at("seed").get<std::string>();
    if (seed.size() != 1) throw Error("seed must be a single symbol");
    Substitution s(std::move(alphabet), std::move(rules));
    if (!s.contains(seed[0])) throw Error("seed symbol not in alphabet");
    return SubstitutionSpec{std::move(s), seed[0]};
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed substitution: ") + e.what());
  }
}

nlohmann::json substitution_to_json(const SubstitutionSpec& spec) {
  auto alphabet = nlohmann::json::array();
  auto rules = nlohmann::json::object();
  for (Symbol a : spec.substitution.alphabet()) {
    alphabet.push_back(std::string(1, a));
    rules[std::string(1, a)] = spec.substitution.image(a);
  }
  return {{"alphabet", alphabet}, {"rules", rules}, {"seed", std::string(1, spec.seed)}};
}

Word iterate(const Substitution& s, Symbol seed, unsigned n) {
  Word w(1, seed);
  s.image(seed);
  for (unsigned i = 0; i < n; ++i) w = s.apply(w);
  return w;
}

Word generate(const Substitution& s, Symbol seed, std::size_t length) {
  Word w(1, seed);
  s.image(seed);
  while (w.size() < length) {
    Word next = s.apply(w);
    if (next.size() == w.size()) throw Error("substitution does not grow from the seed");
    w = std::move(next);
  }
  w.resize(length);
  return w;
}

std::size_t complexity(std::string_view w, std::size_t n) {
  if (n == 0) throw Error("factor length must be positive");
  if (n > w.size()) throw Error("factor length exceeds word length");
  std::unordered_set<std::string_view> factors;
  for (std::size_t i = 0; i + n <= w.size(); ++i) factors.insert(w.substr(i, n));
  return factors.size();
}

bool is_primitive(const Substitution& s) {
  const auto m = s.incidence();
  const std::size_t k = m.size();
  std::vector<std::vector<bool>> base(k, std::vector<bool>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) base[i][j] = m[i][j] > 0;
  auto power = base;
  for (std::size_t step = 1; step <= k * k; ++step) {
    bool positive = true;
    for (const auto& row : power)
      positive = positive && std::all_of(row.begin(), row.end(), [](bool b) { return b; });
    if (positive) return true;
    std::vector<std::vector<bool>> next(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t l = 0; l < k; ++l)
        if (power[i][l])
          for (std::size_t j = 0; j < k; ++j) next[i][j] = next[i][j] || base[l][j];
    power = std::move(next);
  }
  return false;
}

std::vector<CubeOccurrence> find_cubes(std::string_view w, std::size_t q_max) {
  std::vector<CubeOccurrence> out;
  for (std::size_t q = 1; q <= q_max && 3 * q <= w.size(); ++q)
    for_each_cube_start(w, q, [&](std::size_t i) { out.push_back({i, q, Word(w.substr(i, q))}); });
  std::sort(out.begin(), out.end(), [](const CubeOccurrence& x, const CubeOccurrence& y) {
    return x.start != y.start ? x.start < y.start : x.q < y.q;
  });
  return out;
}

std::size_t count_cube_starts(std::string_view w, std::size_t q) {
  std::size_t count = 0;
  for_each_cube_start(w, q, [&](std::size_t) { ++count; });
  return count;
}

CubeFrequency cube_frequency(std::string_view w, std::size_t q) {
  if (q == 0) throw Error("block length must be positive");
  if (w.size() < 3 * q) throw Error("sample shorter than three blocks");
  const std::size_t positions = w.size() - 3 * q + 1;
  const std::size_t count = count_cube_starts(w, q);
  return {q, count, positions, w.size(), static_cast<double>(count) / static_cast<double>(positions)};
}

CubeFrequency cube_frequency(const Substitution& s, Symbol seed, std::size_t q,
                             std::size_t sample_length) {
  if (q == 0) throw Error("block length must be positive");
  if (sample_length < 3 * q) throw Error("sample shorter than three blocks");
  return cube_frequency(generate(s, seed, sample_length), q);
}

}  // namespace qc
