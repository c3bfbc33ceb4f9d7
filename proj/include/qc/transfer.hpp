#pragma once

// Transfer matrices for -u'' + u mu = E u acting on column states (u, u').
// Products are ordered right-to-left in increasing position, so
// T(a, c) = T(b, c) * T(a, b).

#include "qc/measures.hpp"
#include "qc/suspension.hpp"

namespace qc {

struct SolutionState {
  double u;
  double du;
  double norm() const;
};

struct TransferMatrix {
  double m11 = 1.0, m12 = 0.0;
  double m21 = 0.0, m22 = 1.0;

  static TransferMatrix identity() { return {}; }

  double trace() const { return m11 + m22; }
  /// Computed with compensated products, accurate to a few ulps of the entries.
  double det() const;
  /// Inverse assuming unit determinant.
  TransferMatrix unimodular_inverse() const { return {m22, -m12, -m21, m11}; }
  /// Largest singular value.
  double spectral_norm() const;
  double max_abs() const;

  SolutionState operator*(const SolutionState& s) const {
    return {m11 * s.u + m12 * s.du, m21 * s.u + m22 * s.du};
  }
  friend TransferMatrix operator*(const TransferMatrix& x, const TransferMatrix& y) {
    return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
            x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
  }
  friend bool operator==(const TransferMatrix&, const TransferMatrix&) = default;
};

/// Solves -u'' = E u across a potential-free cell of length l. Near E = 0 the
/// entries come from their power series in E l^2, so the map is smooth in E.
TransferMatrix free_propagator(double E, double l);

/// Derivative jump u'(x+) - u'(x-) = c u(x) across an atom of weight c.
TransferMatrix delta_kick(double c);

/// Walks a piece left to right. Atoms at a step breakpoint are applied after
/// the left cell and before the right one.
TransferMatrix piece_transfer(const Piece& p, double E);

/// Transfer across the stream window (a, b].
TransferMatrix stream_transfer(const PotentialStream& w, double a, double b, double E);

struct GordonResult {
  double ratio;  ///< max(|T(0,2p) phi|, |T(0,p) phi|, |T(-p,0)^{-1} phi|) / |phi|
  bool pass;
};

inline constexpr double kGordonBound = 0.5;

/// Three-block lower bound on solution growth. Throws unless the stream
/// repeats with period p on (-p, 2p].
GordonResult gordon_check(const PotentialStream& w, double p, double E, SolutionState state,
                          double tol = kDefaultTolerance);

}  // namespace qc
