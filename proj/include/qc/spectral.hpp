#pragma once

// Spectral diagnostics: Floquet discriminants and bands of periodic
// approximants, finite-scale Lyapunov exponents and the integrated density of
// states by oscillation counting.

#include <span>
#include <string_view>
#include <vector>

#include "qc/suspension.hpp"
#include "qc/transfer.hpp"

namespace qc {

struct Band {
  double lo;
  double hi;
  double width() const { return hi - lo; }
};

struct BandSet {
  std::vector<Band> bands;
  double e_min = 0.0;
  double e_max = 0.0;
  std::size_t grid_n = 0;
  double refine_tol = 0.0;
  /// Bands that no scan grid point falls into; they are found anyway because
  /// every band is bracketed by consecutive Dirichlet eigenvalues.
  std::size_t grid_missed = 0;

  double total_length() const;
};

/// Transfer across one period [0, P] of the word-periodized potential.
TransferMatrix period_transfer(std::string_view word, const PieceAlphabet& alph, double E);

/// Trace of the period transfer matrix.
double discriminant(std::string_view word, const PieceAlphabet& alph, double E);

/// discriminant at every energy, evaluated lane-parallel.
std::vector<double> discriminant_scan(std::string_view word, const PieceAlphabet& alph,
                                      std::span<const double> energies);

/// Zeros on (0, P] of the solution with u(0) = 0, u'(0) = 1 over one period,
/// i.e. the number of Dirichlet eigenvalues of [0, P] that are <= E.
std::size_t dirichlet_count(std::string_view word, const PieceAlphabet& alph, double E);

/// {E in [e_min, e_max] : |discriminant(E)| <= 2}, edges refined to refine_tol.
/// Bands separated by at most refine_tol, or by a gap where |D| exceeds 2 by
/// no more than 1e-10 (a closed gap blurred by rounding), are merged.
BandSet band_spectrum(std::string_view word, const PieceAlphabet& alph, double e_min, double e_max,
                      std::size_t grid_n, double refine_tol);

/// Zeros on (0, length] of the solution with u(0) = 0, u'(0) = 1.
std::size_t dirichlet_zero_count(const Piece& p, double E);

/// (1/L) log |T(0, L)| with the spectral norm.
double lyapunov(const PotentialStream& w, double E, double L);
std::vector<double> lyapunov_scan(const PotentialStream& w, std::span<const double> energies,
                                  double L);

/// Zeros of the Dirichlet solution on (0, L], divided by L.
double ids(const PotentialStream& w, double E, double L);

/// Periodic stream repeating `word` `periods` times, origin at the first copy.
PotentialStream periodic_stream(std::string_view word, const PieceAlphabet& alph,
                                std::size_t periods);

struct SpectralScan {
  std::vector<double> energies;
  std::vector<double> trace;
  std::vector<bool> in_band;
  std::vector<double> lyapunov;
  std::vector<double> ids;
};

std::vector<double> energy_grid(double e_min, double e_max, std::size_t n);

/// Per-energy trace, band flag, Lyapunov exponent and IDS of the periodic
/// approximant, the latter two over `periods` periods.
SpectralScan approximant_scan(std::string_view word, const PieceAlphabet& alph,
                              std::span<const double> energies, std::size_t periods);

}  // namespace qc
