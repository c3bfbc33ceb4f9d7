#pragma once

// Finite pieces of signed measures on the line: Dirac atoms plus a
// piecewise-constant density, supported on [0, length].

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qc {

/// Default absolute tolerance for comparing real-valued piece data.
inline constexpr double kDefaultTolerance = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Atom {
  double pos;
  double weight;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// One cell [left, right) of the density with constant value.
struct Step {
  double left;
  double right;
  double value;
  friend bool operator==(const Step&, const Step&) = default;
};

/// Which endpoint of a restriction window is closed for atoms.
enum class Boundary {
  kLeftOpen,   ///< (a, b], the global window convention
  kRightOpen,  ///< [a, b), used for continuation prefixes in the s.f.d.p.
};

/// A signed measure supported on [0, length] in canonical form.
///
/// Canonical form: atoms sorted by strictly increasing position with nonzero
/// weight; steps partition [0, length] with strictly increasing breakpoints
/// and no two adjacent cells carrying the same value. Every constructor
/// canonicalizes, so structural equality is measure equality.
class Piece {
 public:
  /// Zero measure on [0, length].
  explicit Piece(double length);
  /// Atoms may be unsorted and contain duplicates (weights are summed).
  /// An empty step list means zero density.
  Piece(double length, std::vector<Atom> atoms, std::vector<Step> steps = {});

  static Piece atom(double length, double pos, double weight);
  static Piece constant(double length, double value);

  double length() const { return length_; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Step> steps() const { return steps_; }

  /// True when the measure is a constant multiple of Lebesgue measure.
  bool is_lebesgue_multiple() const { return atoms_.empty() && steps_.size() == 1; }
  bool is_zero() const { return atoms_.empty() && steps_.size() == 1 && steps_[0].value == 0.0; }

  /// Density value at x, taken from the cell [left, right) containing x.
  double density_at(double x) const;

  friend bool operator==(const Piece&, const Piece&) = default;

 private:
  double length_;
  std::vector<Atom> atoms_;
  std::vector<Step> steps_;
};

/// Piece whose atom weights and step values are all nonnegative.
class TotalVariation {
 public:
  explicit TotalVariation(Piece p);
  const Piece& piece() const { return piece_; }
  friend bool operator==(const TotalVariation&, const TotalVariation&) = default;

 private:
  Piece piece_;
};

Piece concatenate(std::span<const Piece> pieces);
Piece concatenate(std::initializer_list<Piece> pieces);

TotalVariation total_variation(const Piece& p);
TotalVariation total_variation(const TotalVariation& tv);

/// sup over a of |p|((a, a+1]), with p extended by zero outside [0, length].
double norm_lu(const Piece& p);
double norm_lu(const TotalVariation& tv);

/// Restriction to the window [a, b] translated to start at 0. Atoms are kept
/// according to `boundary`; by default those at a are dropped and those at b
/// kept.
Piece restrict(const Piece& p, double a, double b, Boundary boundary = Boundary::kLeftOpen);
/// Shifts the content right by t >= 0, padding [0, t) with zero measure.
Piece translate(const Piece& p, double t);
/// x -> length - x.
Piece reflect(const Piece& p);

bool piece_equal(const Piece& p, const Piece& q, double tol = kDefaultTolerance);

void to_json(nlohmann::json& j, const Piece& p);
Piece piece_from_json(const nlohmann::json& j);

}  // namespace qc
