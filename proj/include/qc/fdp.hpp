#pragma once

// Finite decomposition property checks for suspension streams.

#include <optional>
#include <string>
#include <vector>

#include "qc/suspension.hpp"

namespace qc {

/// The stream from x0 onward as a concatenation of local pieces.
struct Decomposition {
  std::vector<Piece> pieces;          ///< local pieces, each starting at 0
  std::vector<std::uint8_t> indices;  ///< pieces[indices[k]] is the k-th piece from x0
  double anchor;                      ///< x0, stream coordinate of the first piece's left end

  /// Concatenation of the first `count` pieces.
  Piece concatenation(std::size_t count) const;
};

/// Tautological decomposition: local pieces are the alphabet pieces and x0 is
/// the left end of the origin cell.
Decomposition check_fdp(const PotentialStream& w);

/// At most one alphabet piece is a constant multiple of Lebesgue measure.
bool sufficient_sfdp(const PieceAlphabet& alph);

enum class SfdpVerdict { kVerifiedToCutoff, kCounterexample, kSufficientCriterionPassed };

std::string_view verdict_name(SfdpVerdict v);

/// Two continuations of a common past that agree on [0, ell) but start with
/// different pieces.
struct SfdpCounterexample {
  Word common;        ///< nu_{-m} ... nu_0
  Word continuation;  ///< nu_1 ... nu_{m1}
  Word other;         ///< mu_1 ... mu_{m2}
};

struct SfdpReport {
  SfdpVerdict verdict;
  double ell;
  std::size_t cutoff;
  std::size_t pasts_checked = 0;  ///< distinct common parts examined
  std::size_t pairs_checked = 0;  ///< continuation pairs compared
  std::optional<SfdpCounterexample> counterexample;
};

/// ell = 2 * max piece length.
double default_ell(const PieceAlphabet& alph);

/// Searches all factors of the stream's word of length <= cutoff of the form
/// u v where u has suspension length >= ell and v is a continuation of
/// suspension length >= ell. Only shortest such u and v need checking: longer
/// pasts admit fewer continuations, and [0, ell) only sees the shortest prefix
/// of a continuation.
SfdpReport check_sfdp(const PotentialStream& w, double ell, std::size_t cutoff,
                      double tol = kDefaultTolerance);

/// Re-derives the three defining conditions of a counterexample from stream
/// windows at actual occurrences of the two factors.
bool verify_counterexample(const PotentialStream& w, const SfdpReport& report,
                           double tol = kDefaultTolerance);

}  // namespace qc
