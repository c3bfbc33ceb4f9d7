#pragma once

// Continuum potentials over symbolic sequences: one piece laid out per symbol,
// shifted by a real offset.

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "qc/measures.hpp"
#include "qc/subshift.hpp"

namespace qc {

/// Symbol -> piece map. Insertion order fixes the symbol indices used by the
/// numerical kernels.
class PieceAlphabet {
 public:
  PieceAlphabet() { index_.fill(-1); }
  void add(Symbol a, Piece p);

  std::size_t size() const { return symbols_.size(); }
  bool contains(Symbol a) const { return index_[static_cast<unsigned char>(a)] >= 0; }
  std::size_t index_of(Symbol a) const;
  Symbol symbol(std::size_t i) const { return symbols_[i]; }
  const Piece& piece(std::size_t i) const { return pieces_[i]; }
  const Piece& at(Symbol a) const { return pieces_[index_of(a)]; }
  double length(Symbol a) const { return at(a).length(); }
  double max_length() const;
  double min_length() const;

  const std::vector<Symbol>& symbols() const { return symbols_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Throws unless every symbol of `s` has a piece.
  void check_covers(const Substitution& s) const;
  void check_covers(std::string_view w) const;

  /// Same symbols with every piece reflected.
  PieceAlphabet reflected() const;

  std::vector<std::uint8_t> encode(std::string_view w) const;

 private:
  std::vector<Symbol> symbols_;
  std::vector<Piece> pieces_;
  std::array<int, 256> index_;
};

nlohmann::json alphabet_to_json(const PieceAlphabet& alph);
PieceAlphabet alphabet_from_json(const nlohmann::json& j);

/// The potential alpha_t(omega_x): cell n carries the piece of x(n), cell 0
/// starts at 0, and stream coordinate y reads the suspension at y + t.
///
/// Cell boundaries are the partial sums of the piece lengths. Windows use the
/// half-open convention (a, b]; window endpoints within a relative 1e-12 of a
/// cell boundary are snapped onto it so boundary atoms are assigned
/// consistently.
class PotentialStream {
 public:
  PotentialStream(TwoSidedWord x, PieceAlphabet alph, double t = 0.0);

  const TwoSidedWord& word() const { return data_->word; }
  const PieceAlphabet& alphabet() const { return data_->alphabet; }

  /// Word index of the cell containing stream coordinate 0.
  std::size_t origin_cell() const { return origin_; }
  /// Position of stream coordinate 0 inside its cell, in [0, l_{x(0)}).
  double offset() const { return offset_; }
  Symbol symbol(std::ptrdiff_t n) const;

  /// Stream coordinate of the left end of cell n (relative to the origin cell).
  double cell_start(std::ptrdiff_t n) const;
  /// Resolvable stream range.
  double min_position() const;
  double max_position() const;

  /// alpha_t: the stream read at y + t.
  PotentialStream shifted(double t) const;

  /// omega(-(.)): reversed symbols with reflected pieces.
  PotentialStream reflected() const;

  /// Index (relative to origin) of the cell containing stream coordinate y,
  /// i.e. cell_start(n) <= y < cell_start(n + 1).
  std::ptrdiff_t cell_containing(double y) const;

 private:
  struct Data {
    TwoSidedWord word;
    PieceAlphabet alphabet;
    std::vector<std::uint8_t> codes;
    std::vector<double> starts;  // base coordinate of each cell's left end, size N + 1
  };
  PotentialStream(std::shared_ptr<const Data> data, std::size_t origin, double offset)
      : data_(std::move(data)), origin_(origin), offset_(offset) {}
  double base_of(double y) const { return data_->starts[origin_] + offset_ + y; }
  double snap(double base) const;
  std::size_t cell_at_base(double base) const;

  friend Piece window(const PotentialStream&, double, double);

  std::shared_ptr<const Data> data_;
  std::size_t origin_;
  double offset_;
};

PotentialStream build_stream(TwoSidedWord x, PieceAlphabet alph, double t = 0.0);

/// Restriction to (a, b], translated to start at 0.
Piece window(const PotentialStream& w, double a, double b);

/// Windows (-p, 0], (0, p] and (p, 2p] are pairwise equal within tol.
bool in_G_n(const PotentialStream& w, double p, double tol = kDefaultTolerance);

struct GnEstimate {
  std::size_t q;
  double p;  ///< suspension length of the length-q prefix block
  std::size_t hits;
  std::size_t samples;
  std::size_t word_length;
  std::uint64_t rng_seed;
  double value;
};

/// Monte Carlo estimate of P(G_n) at scale p(q) along one orbit. Points are
/// drawn uniformly in length over the interior of a generated word, so a cell
/// is hit in proportion to its piece length.
GnEstimate estimate_P_Gn(const SubstitutionSpec& s, const PieceAlphabet& alph, std::size_t q,
                         std::size_t samples, std::uint64_t rng_seed = 1,
                         std::size_t word_length = 0, double tol = kDefaultTolerance);

}  // namespace qc
