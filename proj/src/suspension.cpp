#include "qc/suspension.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qc {

void PieceAlphabet::add(Symbol a, Piece p) {
  if (contains(a)) throw Error(std::string("duplicate piece for symbol '") + a + "'");
  index_[static_cast<unsigned char>(a)] = static_cast<int>(symbols_.size());
  symbols_.push_back(a);
  pieces_.push_back(std::move(p));
}

std::size_t PieceAlphabet::index_of(Symbol a) const {
  const int i = index_[static_cast<unsigned char>(a)];
  if (i < 0) throw Error(std::string("symbol '") + a + "' has no piece");
  return static_cast<std::size_t>(i);
}

double PieceAlphabet::max_length() const {
  double m = 0.0;
  for (const auto& p : pieces_) m = std::max(m, p.length());
  return m;
}

double PieceAlphabet::min_length() const {
  double m = INFINITY;
  for (const auto& p : pieces_) m = std::min(m, p.length());
  return m;
}

void PieceAlphabet::check_covers(const Substitution& s) const {
  for (Symbol a : s.alphabet()) index_of(a);
}

void PieceAlphabet::check_covers(std::string_view w) const {
  for (Symbol a : w) index_of(a);
}

PieceAlphabet PieceAlphabet::reflected() const {
  PieceAlphabet out;
  for (std::size_t i = 0; i < size(); ++i) out.add(symbols_[i], reflect(pieces_[i]));
  return out;
}

std::vector<std::uint8_t> PieceAlphabet::encode(std::string_view w) const {
  std::vector<std::uint8_t> codes(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) codes[i] = static_cast<std::uint8_t>(index_of(w[i]));
  return codes;
}

nlohmann::json alphabet_to_json(const PieceAlphabet& alph) {
  auto j = nlohmann::json::object();
  for (std::size_t i = 0; i < alph.size(); ++i) j[std::string(1, alph.symbol(i))] = alph.piece(i);
  return j;
}

PieceAlphabet alphabet_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("pieces must be an object mapping symbols to pieces");
  PieceAlphabet alph;
  for (const auto& [key, value] : j.items()) {
    if (key.size() != 1) throw Error("piece keys must be single characters: \"" + key + "\"");
    alph.add(key[0], piece_from_json(value));
  }
  return alph;
}

PotentialStream::PotentialStream(TwoSidedWord x, PieceAlphabet alph, double t) {
  if (x.symbols.empty()) throw Error("stream needs a nonempty word");
  if (x.origin >= x.symbols.size()) throw Error("origin index outside the word");
  if (!std::isfinite(t)) throw Error("offset must be finite");
  auto data = std::make_shared<Data>();
  data->codes = alph.encode(x.symbols);
  const std::size_t n = x.symbols.size();
  data->starts.assign(n + 1, 0.0);
  for (std::size_t i = x.origin + 1; i <= n; ++i)
    data->starts[i] = data->starts[i - 1] + alph.piece(data->codes[i - 1]).length();
  for (std::size_t i = x.origin; i-- > 0;)
    data->starts[i] = data->starts[i + 1] - alph.piece(data->codes[i]).length();
  data->word = std::move(x);
  data->alphabet = std::move(alph);
  data_ = std::move(data);
  origin_ = data_->word.origin;
  offset_ = 0.0;
  if (t != 0.0) *this = shifted(t);
}

PotentialStream build_stream(TwoSidedWord x, PieceAlphabet alph, double t) {
  return PotentialStream(std::move(x), std::move(alph), t);
}

Symbol PotentialStream::symbol(std::ptrdiff_t n) const {
  const std::ptrdiff_t i = static_cast<std::ptrdiff_t>(origin_) + n;
  if (i < 0 || i >= static_cast<std::ptrdiff_t>(data_->word.symbols.size()))
    throw Error("cell outside the generated word; extend word first");
  return data_->word.symbols[static_cast<std::size_t>(i)];
}

double PotentialStream::cell_start(std::ptrdiff_t n) const {
  const std::ptrdiff_t i = static_cast<std::ptrdiff_t>(origin_) + n;
  if (i < 0 || i >= static_cast<std::ptrdiff_t>(data_->starts.size()))
    throw Error("cell outside the generated word; extend word first");
  return data_->starts[static_cast<std::size_t>(i)] - base_of(0.0);
}

double PotentialStream::min_position() const { return data_->starts.front() - base_of(0.0); }
double PotentialStream::max_position() const { return data_->starts.back() - base_of(0.0); }

std::size_t PotentialStream::cell_at_base(double base) const {
  const auto& s = data_->starts;
  if (!(base >= s.front()) || !(base < s.back()))
    throw Error("position outside the generated word; extend word first");
  auto it = std::upper_bound(s.begin(), s.end(), base);
  return static_cast<std::size_t>(it - s.begin()) - 1;
}

double PotentialStream::snap(double base) const {
  const auto& s = data_->starts;
  const double eps = 1e-12 * std::max(1.0, std::abs(base));
  auto it = std::lower_bound(s.begin(), s.end(), base);
  if (it != s.end() && *it - base <= eps) return *it;
  if (it != s.begin() && base - *(it - 1) <= eps) return *(it - 1);
  return base;
}

PotentialStream PotentialStream::shifted(double t) const {
  const double base = snap(base_of(t));
  const std::size_t cell = cell_at_base(base);
  return PotentialStream(data_, cell, base - data_->starts[cell]);
}

std::ptrdiff_t PotentialStream::cell_containing(double y) const {
  return static_cast<std::ptrdiff_t>(cell_at_base(snap(base_of(y)))) -
         static_cast<std::ptrdiff_t>(origin_);
}

PotentialStream PotentialStream::reflected() const {
  const std::size_t n = data_->word.symbols.size();
  TwoSidedWord x{Word(data_->word.symbols.rbegin(), data_->word.symbols.rend()),
                 n - 1 - data_->word.origin};
  PotentialStream r(std::move(x), data_->alphabet.reflected());
  // Cell i of the original occupies [s_i, s_{i+1}]; its mirror image is cell
  // n-1-i at [-s_{i+1}, -s_i]. Use the negated boundaries verbatim.
  auto data = std::make_shared<Data>(*r.data_);
  for (std::size_t i = 0; i <= n; ++i) data->starts[i] = -data_->starts[n - i];
  const double base = -base_of(0.0);
  PotentialStream out(std::move(data), 0, 0.0);
  const double snapped = out.snap(base);
  const std::size_t cell = out.cell_at_base(snapped);
  return PotentialStream(out.data_, cell, snapped - out.data_->starts[cell]);
}

Piece window(const PotentialStream& w, double a, double b) {
  if (!(a < b)) throw Error("empty interval");
  const auto& d = *w.data_;
  const auto& starts = d.starts;
  const double lo = w.snap(w.base_of(a));
  const double hi = w.snap(w.base_of(b));
  if (!(lo < hi)) throw Error("empty interval");
  if (lo < starts.front() || !(hi < starts.back()))
    throw Error("window exceeds the generated word; extend word first");
  const std::size_t k0 = w.cell_at_base(lo);
  const std::size_t k1 = w.cell_at_base(hi);

  std::vector<Atom> atoms;
  std::vector<Step> steps;
  for (std::size_t j = k0; j <= k1; ++j) {
    const Piece& p = d.alphabet.piece(d.codes[j]);
    const double left = starts[j];
    const double right = starts[j + 1];
    for (const auto& at : p.atoms()) {
      const double g = at.pos == 0.0 ? left : at.pos == p.length() ? right : std::min(left + at.pos, right);
      if (g > lo && g <= hi) atoms.push_back({g - lo, at.weight});
    }
    const auto cells = p.steps();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const double gl = c == 0 ? left : std::min(left + cells[c].left, right);
      const double gr = c + 1 == cells.size() ? right : std::min(left + cells[c].right, right);
      const double s_lo = std::max(gl, lo);
      const double s_hi = std::min(gr, hi);
      if (s_hi <= s_lo) continue;
      steps.push_back({s_lo - lo, s_hi - lo, cells[c].value});
    }
  }
  return Piece(hi - lo, std::move(atoms), std::move(steps));
}

bool in_G_n(const PotentialStream& w, double p, double tol) {
  if (!(p > 0.0)) throw Error("scale p must be positive");
  const Piece middle = window(w, 0.0, p);
  return piece_equal(window(w, -p, 0.0), middle, tol) && piece_equal(middle, window(w, p, 2.0 * p), tol);
}

GnEstimate estimate_P_Gn(const SubstitutionSpec& s, const PieceAlphabet& alph, std::size_t q,
                         std::size_t samples, std::uint64_t rng_seed, std::size_t word_length,
                         double tol) {
  if (q == 0) throw Error("block length must be positive");
  if (samples == 0) throw Error("need at least one sample");
  alph.check_covers(s.substitution);
  if (word_length == 0) word_length = std::max<std::size_t>(10000, 64 * q);
  const PotentialStream stream(TwoSidedWord{generate(s.substitution, s.seed, word_length), 0}, alph);

  const double p = stream.cell_start(static_cast<std::ptrdiff_t>(q));
  const double l_min = alph.min_length();
  const auto left_margin = static_cast<std::ptrdiff_t>(std::ceil(p / l_min)) + 2;
  const auto right_margin = static_cast<std::ptrdiff_t>(std::ceil(2.0 * p / l_min)) + 2;
  const auto n = static_cast<std::ptrdiff_t>(word_length);
  if (n <= left_margin + right_margin) throw Error("word too short for block length q");
  const double lo = stream.cell_start(left_margin);
  const double hi = stream.cell_start(n - right_margin);

  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> position(lo, hi);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i)
    if (in_G_n(stream.shifted(position(rng)), p, tol)) ++hits;

  return {q, p, hits, samples, word_length, rng_seed,
          static_cast<double>(hits) / static_cast<double>(samples)};
}

}  // namespace qc
