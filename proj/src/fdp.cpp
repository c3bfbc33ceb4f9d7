#include "qc/fdp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qc {

Piece Decomposition::concatenation(std::size_t count) const {
  if (count == 0 || count > indices.size()) throw Error("decomposition has too few pieces");
  std::vector<Piece> seq;
  seq.reserve(count);
  for (std::size_t k = 0; k < count; ++k) seq.push_back(pieces[indices[k]]);
  return concatenate(seq);
}

Decomposition check_fdp(const PotentialStream& w) {
  Decomposition d;
  d.pieces = w.alphabet().pieces();
  const auto& x = w.word();
  const std::size_t first = w.origin_cell();
  d.indices.reserve(x.symbols.size() - first);
  for (std::size_t i = first; i < x.symbols.size(); ++i)
    d.indices.push_back(static_cast<std::uint8_t>(w.alphabet().index_of(x.symbols[i])));
  d.anchor = w.cell_start(0);
  return d;
}

bool sufficient_sfdp(const PieceAlphabet& alph) {
  return std::count_if(alph.pieces().begin(), alph.pieces().end(),
                       [](const Piece& p) { return p.is_lebesgue_multiple(); }) <= 1;
}

std::string_view verdict_name(SfdpVerdict v) {
  switch (v) {
    case SfdpVerdict::kVerifiedToCutoff: return "verified-to-cutoff";
    case SfdpVerdict::kCounterexample: return "counterexample";
    case SfdpVerdict::kSufficientCriterionPassed: return "sufficient-criterion-passed";
  }
  return "unknown";
}

double default_ell(const PieceAlphabet& alph) { return 2.0 * alph.max_length(); }

namespace {

Piece concatenate_word(std::string_view w, const PieceAlphabet& alph) {
  std::vector<Piece> seq;
  seq.reserve(w.size());
  for (Symbol a : w) seq.push_back(alph.at(a));
  return concatenate(seq);
}

Piece leading_part(std::string_view continuation, const PieceAlphabet& alph, double ell) {
  const Piece c = concatenate_word(continuation, alph);
  return restrict(c, 0.0, std::min(ell, c.length()), Boundary::kRightOpen);
}

}  // namespace

SfdpReport check_sfdp(const PotentialStream& w, double ell, std::size_t cutoff, double tol) {
  if (!(ell > 0.0)) throw Error("ell must be positive");
  if (cutoff == 0) throw Error("cutoff must be positive");
  const PieceAlphabet& alph = w.alphabet();
  const std::string_view x = w.word().symbols;
  const std::size_t n = x.size();

  std::vector<double> len(n + 1, 0.0);  // suspension length of x[0, i)
  for (std::size_t i = 0; i < n; ++i) len[i + 1] = len[i] + alph.length(x[i]);
  auto span_length = [&](std::size_t i, std::size_t j) { return len[j] - len[i]; };

  // Shortest past ending at j and shortest continuation starting at j.
  std::map<Word, std::set<Word>> continuations;
  std::size_t i = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (span_length(0, j) < ell) continue;
    while (i + 1 < j && span_length(i + 1, j) >= ell) ++i;
    std::size_t k = j + 1;
    while (k <= n && span_length(j, k) < ell) ++k;
    if (k > n) break;
    if ((j - i) + (k - j) > cutoff) continue;
    continuations[Word(x.substr(i, j - i))].insert(Word(x.substr(j, k - j)));
  }
  if (continuations.empty())
    throw Error("cutoff too small: no factor contains a past and a continuation of length ell");

  SfdpReport report{SfdpVerdict::kVerifiedToCutoff, ell, cutoff, 0, 0, std::nullopt};
  for (const auto& [past, futures] : continuations) {
    ++report.pasts_checked;
    const std::vector<Word> vs(futures.begin(), futures.end());
    std::vector<Piece> leads;
    leads.reserve(vs.size());
    for (const auto& v : vs) leads.push_back(leading_part(v, alph, ell));
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        ++report.pairs_checked;
        if (piece_equal(alph.at(vs[a][0]), alph.at(vs[b][0]), tol)) continue;
        if (piece_equal(leads[a], leads[b], tol)) {
          report.verdict = SfdpVerdict::kCounterexample;
          report.counterexample = SfdpCounterexample{past, vs[a], vs[b]};
          return report;
        }
      }
  }
  return report;
}

bool verify_counterexample(const PotentialStream& w, const SfdpReport& report, double tol) {
  if (!report.counterexample) return false;
  const auto& ce = *report.counterexample;
  const PieceAlphabet& alph = w.alphabet();
  const std::string& x = w.word().symbols;
  const auto origin = static_cast<std::ptrdiff_t>(w.origin_cell());

  // Stream window covering past + continuation at the first occurrence.
  struct Occurrence {
    Piece span;
    double past_length;
  };
  auto occurrence = [&](const Word& future) -> std::optional<Occurrence> {
    const auto at = x.find(ce.common + future);
    if (at == std::string::npos) return std::nullopt;
    const auto start = static_cast<std::ptrdiff_t>(at) - origin;
    const auto junction = start + static_cast<std::ptrdiff_t>(ce.common.size());
    const auto end = junction + static_cast<std::ptrdiff_t>(future.size());
    const double s0 = w.cell_start(start), s1 = w.cell_start(junction), s2 = w.cell_start(end);
    return Occurrence{window(w, s0, s2), s1 - s0};
  };
  const auto first = occurrence(ce.continuation);
  const auto second = occurrence(ce.other);
  if (!first || !second) return false;

  const double ell = report.ell;
  if (first->past_length < ell - tol || second->past_length < ell - tol) return false;
  if (!piece_equal(restrict(first->span, 0.0, first->past_length),
                   restrict(second->span, 0.0, second->past_length), tol))
    return false;

  auto lead = [&](const Occurrence& o) {
    const double b = std::min(o.past_length + ell, o.span.length());
    return restrict(o.span, o.past_length, b, Boundary::kRightOpen);
  };
  if (!piece_equal(lead(*first), lead(*second), tol)) return false;
  return !piece_equal(alph.at(ce.continuation[0]), alph.at(ce.other[0]), tol);
}

}  // namespace qc
