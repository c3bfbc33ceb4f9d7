#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qc {

using Symbol = char;
/// Finite word over a finite alphabet; one char per symbol.
using Word = std::string;

/// Finite window of a two-sided sequence x in A^Z. `origin` is the index of x(0).
struct TwoSidedWord {
  Word symbols;
  std::size_t origin = 0;

  Symbol at(std::ptrdiff_t n) const;
  std::ptrdiff_t first_index() const { return -static_cast<std::ptrdiff_t>(origin); }
  std::ptrdiff_t end_index() const {
    return static_cast<std::ptrdiff_t>(symbols.size()) - static_cast<std::ptrdiff_t>(origin);
  }
};

class Substitution {
 public:
  Substitution(std::vector<Symbol> alphabet, std::map<Symbol, Word> rules);

  const std::vector<Symbol>& alphabet() const { return alphabet_; }
  const Word& image(Symbol a) const;
  bool contains(Symbol a) const { return rules_.contains(a); }
  std::size_t index_of(Symbol a) const;

  /// M[i][j] = number of occurrences of alphabet[j] in the image of alphabet[i].
  std::vector<std::vector<std::uint64_t>> incidence() const;

  Word apply(std::string_view w) const;

 private:
  std::vector<Symbol> alphabet_;
  std::map<Symbol, Word> rules_;
};

/// Substitution together with the seed symbol its words are generated from.
struct SubstitutionSpec {
  Substitution substitution;
  Symbol seed;
};

SubstitutionSpec substitution_from_json(const nlohmann::json& j);
nlohmann::json substitution_to_json(const SubstitutionSpec& spec);

/// s^n(seed).
Word iterate(const Substitution& s, Symbol seed, unsigned n);

/// First `length` symbols of s^n(seed) for the smallest n reaching that length.
Word generate(const Substitution& s, Symbol seed, std::size_t length);

/// Number of distinct factors of length n in w.
std::size_t complexity(std::string_view w, std::size_t n);

/// Some power k <= |A|^2 of the incidence matrix is entrywise positive.
bool is_primitive(const Substitution& s);

struct CubeOccurrence {
  std::size_t start;
  std::size_t q;
  Word block;
  friend bool operator==(const CubeOccurrence&, const CubeOccurrence&) = default;
};

/// Every occurrence of a block repeated three times, block length <= q_max,
/// sorted by start then block length.
std::vector<CubeOccurrence> find_cubes(std::string_view w, std::size_t q_max);

/// Positions i with w[i, i+3q) a cube of block length exactly q.
std::size_t count_cube_starts(std::string_view w, std::size_t q);

struct CubeFrequency {
  std::size_t q;
  std::size_t count;      ///< positions starting a cube of block length q
  std::size_t positions;  ///< sample_length - 3q + 1
  std::size_t sample_length;
  double frequency;
};

CubeFrequency cube_frequency(std::string_view w, std::size_t q);
CubeFrequency cube_frequency(const Substitution& s, Symbol seed, std::size_t q,
                             std::size_t sample_length);

}  // namespace qc
