#include "qc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qc/detail/piece_walk.hpp"
#include "qc/simd/kernels.hpp"

namespace qc {

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

// Splits an evanescent stretch (e < 0) so cosh/sinh of each part stay far
// from overflow; renormalizing between parts keeps long free cells finite.
template <class F>
void in_chunks(double length, double e, F&& f) {
  constexpr double kMaxExponent = 64.0;
  const double growth = e < 0.0 ? std::sqrt(-e) * length : 0.0;
  const auto n = growth > kMaxExponent ? static_cast<std::size_t>(std::ceil(growth / kMaxExponent)) : 1;
  for (std::size_t i = 0; i < n; ++i) f(length / static_cast<double>(n));
}

// Counts zeros of a solution while propagating it. Atoms only kick u', so
// zeros come from the constant-density stretches, where they are counted in
// closed form and reconciled with the sign of u at the stretch end.
class ZeroCounter {
 public:
  explicit ZeroCounter(double E) : E_(E) {}

  void segment(double length, double value) {
    in_chunks(length, E_ - value, [&](double l) { stretch(l, value); });
  }

  void kick(double weight) { state_.du += weight * state_.u; }

  void advance(const Piece& p) {
    detail::walk_piece(
        p, [this](double l, double v) { segment(l, v); }, [this](double w) { kick(w); });
  }

  std::size_t zeros() const { return zeros_; }

 private:
  void stretch(double length, double value) {
    const double e = E_ - value;
    const SolutionState next = free_propagator(e, length) * state_;
    const int from = state_.u != 0.0 ? sign(state_.u) : sign(state_.du);
    long n = 0;
    if (e > 0.0) {
      const double k = std::sqrt(e);
      const double theta = std::atan2(state_.u, state_.du / k);
      const double t = (theta + k * length) / std::numbers::pi;
      n = static_cast<long>(std::floor(t)) - static_cast<long>(std::floor(theta / std::numbers::pi));
      if (next.u != 0.0 && sign(next.u) != (n % 2 == 0 ? from : -from)) {
        if (n == 0)
          n = 1;
        else
          n += (t - std::floor(t) < 0.5) ? -1 : 1;
      }
    } else if (state_.u != 0.0 && (next.u == 0.0 || sign(next.u) != sign(state_.u))) {
      n = 1;
    }
    zeros_ += static_cast<std::size_t>(std::max(0L, n));
    const double norm = next.norm();
    state_ = {next.u / norm, next.du / norm};
  }

  double E_;
  SolutionState state_{0.0, 1.0};
  std::size_t zeros_ = 0;
};

// Per-lane transfer matrices of each piece over an energy batch.
std::vector<simd::Mat2Batch> piece_matrices(std::span<const Piece> pieces,
                                            std::span<const double> energies) {
  std::vector<simd::Mat2Batch> out;
  out.reserve(pieces.size());
  for (const auto& p : pieces) {
    simd::Mat2Batch m(energies.size());
    for (std::size_t e = 0; e < energies.size(); ++e) {
      const TransferMatrix t = piece_transfer(p, energies[e]);
      m.a[e] = t.m11, m.b[e] = t.m12, m.c[e] = t.m21, m.d[e] = t.m22;
    }
    out.push_back(std::move(m));
  }
  return out;
}

// The window (0, L] as a short list of distinct pieces plus a code sequence.
// Interior cells (s_n, s_{n+1}] carry the piece of x(n) without its atom at 0
// and with the atom at 0 of x(n+1) at their right end, so they depend only on
// the symbol pair.
struct CellProgram {
  std::vector<Piece> factors;
  std::vector<std::uint8_t> codes;
};

constexpr std::size_t kMaxPairAlphabet = 15;
constexpr double kClosedGapExcess = 1e-10;

Piece pair_piece(const Piece& left, const Piece& right) {
  std::vector<Atom> atoms;
  for (const auto& a : left.atoms())
    if (a.pos > 0.0) atoms.push_back(a);
  for (const auto& a : right.atoms())
    if (a.pos == 0.0) atoms.push_back({left.length(), a.weight});
  return Piece(left.length(), std::move(atoms), {left.steps().begin(), left.steps().end()});
}

CellProgram cell_program(const PotentialStream& w, double L) {
  CellProgram prog;
  const double s1 = w.cell_start(1);
  if (s1 >= L) {
    prog.factors.push_back(window(w, 0.0, L));
    prog.codes.push_back(0);
    return prog;
  }
  const PieceAlphabet& alph = w.alphabet();
  const std::size_t k = alph.size();
  prog.factors.push_back(window(w, 0.0, s1));
  prog.codes.push_back(0);
  const std::size_t pair_base = 2;
  prog.factors.push_back(Piece(1.0));  // slot for the trailing partial cell
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) prog.factors.push_back(pair_piece(alph.piece(a), alph.piece(b)));

  const std::ptrdiff_t last = w.cell_containing(L);
  for (std::ptrdiff_t n = 1; n < last; ++n) {
    const std::size_t a = alph.index_of(w.symbol(n));
    const std::size_t b = alph.index_of(w.symbol(n + 1));
    prog.codes.push_back(static_cast<std::uint8_t>(pair_base + a * k + b));
  }
  const double s_last = w.cell_start(last);
  if (s_last < L) {
    prog.factors[1] = window(w, s_last, L);
    prog.codes.push_back(1);
  }
  return prog;
}

// Shortest subinterval of [a, b] on which `holds` switches from true to false.
template <class Pred>
double bisect(Pred holds, double a, double b, double tol) {
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    (holds(m) ? a : b) = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

double BandSet::total_length() const {
  double total = 0.0;
  for (const auto& b : bands) total += b.width();
  return total;
}

TransferMatrix period_transfer(std::string_view word, const PieceAlphabet& alph, double E) {
  if (word.empty()) throw Error("word must be nonempty");
  std::vector<TransferMatrix> per_symbol;
  for (const auto& p : alph.pieces()) per_symbol.push_back(piece_transfer(p, E));
  TransferMatrix m;
  for (Symbol a : word) m = per_symbol[alph.index_of(a)] * m;
  return m;
}

std::vector<double> discriminant_scan(std::string_view word, const PieceAlphabet& alph,
                                      std::span<const double> energies) {
  if (word.empty()) throw Error("word must be nonempty");
  const auto codes = alph.encode(word);
  const auto factors = piece_matrices(alph.pieces(), energies);
  const std::size_t n = energies.size();
  simd::Mat2Batch out(n);
  std::vector<double> log_scale(n, 0.0);
  simd::chain_product(factors, codes, simd::Mat2Batch::identity(n), out, log_scale);
  std::vector<double> trace(n);
  for (std::size_t e = 0; e < n; ++e) {
    const double t = out.a[e] + out.d[e];
    trace[e] = log_scale[e] == 0.0 || t == 0.0 ? t : t * std::exp(log_scale[e]);
  }
  return trace;
}

double discriminant(std::string_view word, const PieceAlphabet& alph, double E) {
  return discriminant_scan(word, alph, std::span<const double>(&E, 1)).front();
}

std::size_t dirichlet_count(std::string_view word, const PieceAlphabet& alph, double E) {
  if (word.empty()) throw Error("word must be nonempty");
  ZeroCounter counter(E);
  for (Symbol a : word) counter.advance(alph.at(a));
  return counter.zeros();
}

std::size_t dirichlet_zero_count(const Piece& p, double E) {
  ZeroCounter counter(E);
  counter.advance(p);
  return counter.zeros();
}

std::vector<double> energy_grid(double e_min, double e_max, std::size_t n) {
  if (n < 2) throw Error("energy grid needs at least two points");
  if (!(e_min < e_max)) throw Error("energy window must satisfy emin < emax");
  std::vector<double> grid(n);
  const double h = (e_max - e_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = e_min + h * static_cast<double>(i);
  grid.back() = e_max;
  return grid;
}

BandSet band_spectrum(std::string_view word, const PieceAlphabet& alph, double e_min, double e_max,
                      std::size_t grid_n, double refine_tol) {
  if (!(e_min < e_max)) throw Error("energy window must satisfy emin < emax");
  if (grid_n < 2) throw Error("grid needs at least two points");
  if (!(refine_tol > 0.0)) throw Error("refine tolerance must be positive");
  alph.check_covers(word);

  BandSet result;
  result.e_min = e_min;
  result.e_max = e_max;
  result.grid_n = grid_n;
  result.refine_tol = refine_tol;

  // Band j lies between the Dirichlet eigenvalues mu_{j-1} and mu_j, on which
  // s*D decreases through [-2, 2] with s = (-1)^(j-1) and stays outside it
  // elsewhere. That turns each edge into a one-sided bisection.
  auto count = [&](double E) { return dirichlet_count(word, alph, E); };
  auto D = [&](double E) { return discriminant(word, alph, E); };
  const std::size_t j_lo = count(e_min);
  const std::size_t j_hi = count(e_max);

  std::vector<double> mu;  // mu[j - j_lo - 1] for j in (j_lo, j_hi]
  mu.reserve(j_hi - j_lo);
  double left = e_min;
  for (std::size_t j = j_lo + 1; j <= j_hi; ++j) {
    double lo = left, hi = e_max;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (lo + hi);
      if (m <= lo || m >= hi) break;
      (count(m) >= j ? hi : lo) = m;
    }
    mu.push_back(hi);
    left = lo;
  }

  std::vector<Band> bands;
  for (std::size_t j = j_lo + 1; j <= j_hi + 1; ++j) {
    const double L = j == j_lo + 1 ? e_min : mu[j - j_lo - 2];
    const double R = j == j_hi + 1 ? e_max : mu[j - j_lo - 1];
    const double s = (j % 2 == 1) ? 1.0 : -1.0;
    auto before_lower = [&](double E) { return s * D(E) - 2.0 > 0.0; };
    auto before_upper = [&](double E) { return s * D(E) + 2.0 >= 0.0; };
    const bool at_min = j == j_lo + 1, at_max = j == j_hi + 1;
    if (at_max && before_lower(R)) continue;
    if (at_min && !before_upper(L)) continue;
    // Both predicates are monotone on the open bracket. A Dirichlet
    // eigenvalue may sit exactly on a gap edge, where |D| = 2 up to rounding,
    // so the bracket ends themselves are never evaluated.
    const double lower = at_min && !before_lower(L) ? L : bisect(before_lower, L, R, refine_tol);
    const double upper = at_max && before_upper(R) ? R : bisect(before_upper, lower, R, refine_tol);
    if (upper < lower) continue;
    bands.push_back({lower, upper});
  }

  // A closed gap is a tangency of |D| with 2, which rounding can widen to
  // about sqrt(eps); treat gaps where |D| barely leaves [-2, 2] as closed.
  auto closed_gap = [&](double lo, double hi) {
    return hi - lo <= refine_tol || std::abs(D(0.5 * (lo + hi))) - 2.0 <= kClosedGapExcess;
  };
  for (const auto& b : bands) {
    if (!result.bands.empty() && closed_gap(result.bands.back().hi, b.lo))
      result.bands.back().hi = std::max(result.bands.back().hi, b.hi);
    else
      result.bands.push_back(b);
  }

  const auto grid = energy_grid(e_min, e_max, grid_n);
  const auto trace = discriminant_scan(word, alph, grid);
  for (const auto& b : result.bands) {
    bool hit = false;
    for (std::size_t i = 0; i < grid.size() && !hit; ++i)
      hit = grid[i] >= b.lo && grid[i] <= b.hi && std::abs(trace[i]) <= 2.0;
    if (!hit) ++result.grid_missed;
  }
  return result;
}

double lyapunov(const PotentialStream& w, double E, double L) {
  if (!(L > 0.0)) throw Error("length must be positive");
  const Piece p = window(w, 0.0, L);
  TransferMatrix m;
  double log_scale = 0.0;
  auto renormalize = [&] {
    if (m.max_abs() > simd::kRenormThreshold) {
      m = {m.m11 * simd::kRenormFactor, m.m12 * simd::kRenormFactor, m.m21 * simd::kRenormFactor,
           m.m22 * simd::kRenormFactor};
      log_scale += 500.0 * std::numbers::ln2;
    }
  };
  detail::walk_piece(
      p,
      [&](double length, double value) {
        in_chunks(length, E - value, [&](double l) {
          m = free_propagator(E - value, l) * m;
          renormalize();
        });
      },
      [&](double weight) { m = delta_kick(weight) * m; });
  return (std::log(m.spectral_norm()) + log_scale) / L;
}

std::vector<double> lyapunov_scan(const PotentialStream& w, std::span<const double> energies,
                                  double L) {
  if (!(L > 0.0)) throw Error("length must be positive");
  std::vector<double> out(energies.size());
  if (w.alphabet().size() > kMaxPairAlphabet) {
    for (std::size_t e = 0; e < energies.size(); ++e) out[e] = lyapunov(w, energies[e], L);
    return out;
  }
  const CellProgram prog = cell_program(w, L);
  const auto factors = piece_matrices(prog.factors, energies);
  const std::size_t n = energies.size();
  simd::Mat2Batch prod(n);
  std::vector<double> log_scale(n, 0.0);
  simd::chain_product(factors, prog.codes, simd::Mat2Batch::identity(n), prod, log_scale);
  for (std::size_t e = 0; e < n; ++e) {
    const TransferMatrix m{prod.a[e], prod.b[e], prod.c[e], prod.d[e]};
    out[e] = (std::log(m.spectral_norm()) + log_scale[e]) / L;
    // a single cell can overflow deep below the spectrum; redo it in chunks
    if (!std::isfinite(out[e])) out[e] = lyapunov(w, energies[e], L);
  }
  return out;
}

double ids(const PotentialStream& w, double E, double L) {
  if (!(L > 0.0)) throw Error("length must be positive");
  return static_cast<double>(dirichlet_zero_count(window(w, 0.0, L), E)) / L;
}

PotentialStream periodic_stream(std::string_view word, const PieceAlphabet& alph,
                                std::size_t periods) {
  if (word.empty() || periods == 0) throw Error("periodic stream needs a word and a period count");
  Word repeated;
  repeated.reserve(word.size() * periods);
  for (std::size_t i = 0; i < periods; ++i) repeated += word;
  return PotentialStream(TwoSidedWord{std::move(repeated), 0}, alph);
}

SpectralScan approximant_scan(std::string_view word, const PieceAlphabet& alph,
                              std::span<const double> energies, std::size_t periods) {
  if (periods == 0) throw Error("need at least one period");
  SpectralScan scan;
  scan.energies.assign(energies.begin(), energies.end());
  scan.trace = discriminant_scan(word, alph, energies);
  scan.in_band.resize(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) scan.in_band[i] = std::abs(scan.trace[i]) <= 2.0;
  const PotentialStream stream = periodic_stream(word, alph, periods + 1);
  const double L = stream.cell_start(static_cast<std::ptrdiff_t>(word.size() * periods));
  scan.lyapunov = lyapunov_scan(stream, energies, L);
  scan.ids.resize(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) scan.ids[i] = ids(stream, energies[i], L);
  return scan;
}

}  // namespace qc
