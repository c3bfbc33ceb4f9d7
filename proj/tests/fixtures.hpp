#pragma once

#include <numbers>
#include <random>

#include "qc/spectral.hpp"
#include "qc/subshift.hpp"
#include "qc/suspension.hpp"

namespace fx {

inline constexpr double kPhi = std::numbers::phi;

inline qc::Substitution fibonacci() { return qc::Substitution({'a', 'b'}, {{'a', "ab"}, {'b', "a"}}); }
inline qc::Substitution thue_morse() { return qc::Substitution({'0', '1'}, {{'0', "01"}, {'1', "10"}}); }
inline qc::Substitution doubling() { return qc::Substitution({'a'}, {{'a', "aa"}}); }

// a: unit atom at 0 on [0, 1]; b: zero on [0, phi]
inline qc::PieceAlphabet fib_kp() {
  qc::PieceAlphabet alph;
  alph.add('a', qc::Piece::atom(1.0, 0.0, 1.0));
  alph.add('b', qc::Piece(kPhi));
  return alph;
}

inline qc::PieceAlphabet two_zeros() {
  qc::PieceAlphabet alph;
  alph.add('a', qc::Piece(1.0));
  alph.add('b', qc::Piece(2.0));
  return alph;
}

inline qc::PieceAlphabet comb(double weight, double length = 1.0) {
  qc::PieceAlphabet alph;
  alph.add('a', qc::Piece::atom(length, 0.0, weight));
  return alph;
}

inline qc::PieceAlphabet free_line(double length = 1.0) {
  qc::PieceAlphabet alph;
  alph.add('a', qc::Piece(length));
  return alph;
}

// Prefix of the Fibonacci fixed point with x(0) placed `before` symbols in.
inline qc::TwoSidedWord fib_two_sided(std::size_t before, std::size_t after) {
  return {qc::generate(fibonacci(), 'a', before + after), before};
}

inline qc::PotentialStream fib_stream(std::size_t before = 2000, std::size_t after = 2000) {
  return qc::PotentialStream(fib_two_sided(before, after), fib_kp());
}

inline qc::PotentialStream periodic(const qc::PieceAlphabet& alph, std::size_t n) {
  return qc::PotentialStream(qc::TwoSidedWord{qc::Word(2 * n, 'a'), n}, alph);
}

// Random canonical piece: up to 3 atoms and up to 4 step cells.
inline qc::Piece random_piece(std::mt19937_64& rng, double max_length = 1.0, double max_value = 5.0) {
  std::uniform_real_distribution<double> len(0.05, max_length), val(-max_value, max_value), u(0.0, 1.0);
  std::uniform_int_distribution<int> n_atoms(0, 3), n_cells(1, 4);
  const double L = len(rng);
  std::vector<qc::Atom> atoms;
  for (int i = n_atoms(rng); i > 0; --i) atoms.push_back({L * u(rng), val(rng)});
  std::vector<double> cuts{0.0, L};
  for (int i = n_cells(rng) - 1; i > 0; --i) cuts.push_back(L * u(rng));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<qc::Step> steps;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) steps.push_back({cuts[i], cuts[i + 1], val(rng)});
  return qc::Piece(L, std::move(atoms), std::move(steps));
}

}  // namespace fx
