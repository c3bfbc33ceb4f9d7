#include "qc/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "qc/detail/piece_walk.hpp"

namespace qc {

namespace {

// cos(sqrt(x)) and sin(sqrt(x))/sqrt(x) as power series; valid for either sign of x.
constexpr double kSeriesCutoff = 0.25;
constexpr int kSeriesTerms = 12;

double series_cos(double x) {
  double term = 1.0, sum = 1.0;
  for (int n = 1; n < kSeriesTerms; ++n) {
    term *= -x / ((2.0 * n - 1.0) * (2.0 * n));
    sum += term;
  }
  return sum;
}

double series_sinc(double x) {
  double term = 1.0, sum = 1.0;
  for (int n = 1; n < kSeriesTerms; ++n) {
    term *= -x / ((2.0 * n) * (2.0 * n + 1.0));
    sum += term;
  }
  return sum;
}

// a*d - b*c with one rounding for each product's error term.
double diff_of_products(double a, double d, double b, double c) {
  const double w = b * c;
  const double e = std::fma(-b, c, w);
  const double f = std::fma(a, d, -w);
  return f + e;
}

}  // namespace

double SolutionState::norm() const { return std::hypot(u, du); }

double TransferMatrix::det() const { return diff_of_products(m11, m22, m12, m21); }

double TransferMatrix::max_abs() const {
  return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

double TransferMatrix::spectral_norm() const {
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  const double a = m11 / scale, b = m12 / scale, c = m21 / scale, d = m22 / scale;
  const double s = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  const double disc = std::sqrt(std::max(0.0, (s - 2.0 * det) * (s + 2.0 * det)));
  return scale * std::sqrt(0.5 * (s + disc));
}

TransferMatrix free_propagator(double E, double l) {
  if (!(l > 0.0)) throw Error("propagation length must be positive");
  const double x = E * l * l;
  if (std::abs(x) < kSeriesCutoff) {
    const double c = series_cos(x);
    const double s = series_sinc(x);
    return {c, l * s, -E * l * s, c};
  }
  if (E > 0.0) {
    const double k = std::sqrt(E);
    const double c = std::cos(k * l), s = std::sin(k * l);
    return {c, s / k, -k * s, c};
  }
  const double kappa = std::sqrt(-E);
  const double c = std::cosh(kappa * l), s = std::sinh(kappa * l);
  return {c, s / kappa, kappa * s, c};
}

TransferMatrix delta_kick(double c) { return {1.0, 0.0, c, 1.0}; }

TransferMatrix piece_transfer(const Piece& p, double E) {
  TransferMatrix m;
  detail::walk_piece(
      p, [&](double length, double value) { m = free_propagator(E - value, length) * m; },
      [&](double weight) { m = delta_kick(weight) * m; });
  return m;
}

TransferMatrix stream_transfer(const PotentialStream& w, double a, double b, double E) {
  return piece_transfer(window(w, a, b), E);
}

GordonResult gordon_check(const PotentialStream& w, double p, double E, SolutionState state,
                          double tol) {
  if (!(p > 0.0)) throw Error("scale p must be positive");
  const double phi = state.norm();
  if (!(phi > 0.0)) throw Error("initial state must be nonzero");
  if (!in_G_n(w, p, tol)) throw Error("no three-block structure at p");
  const TransferMatrix forward = stream_transfer(w, 0.0, p, E);
  const TransferMatrix twice = stream_transfer(w, 0.0, 2.0 * p, E);
  const TransferMatrix back = stream_transfer(w, -p, 0.0, E);
  const double r = std::max({(twice * state).norm(), (forward * state).norm(),
                             (back.unimodular_inverse() * state).norm()}) /
                   phi;
  return {r, r >= kGordonBound - 1e-9};
}

}  // namespace qc
