#pragma once

#include "qc/measures.hpp"

namespace qc::detail {

/// Visits the piece in increasing position: segment(length, density) for each
/// atom-free stretch of constant density and kick(weight) for each atom. An
/// atom at a breakpoint comes after the segment ending there.
template <class Segment, class Kick>
void walk_piece(const Piece& p, Segment&& segment, Kick&& kick) {
  const auto atoms = p.atoms();
  const auto steps = p.steps();
  std::size_t next_atom = 0;
  for (std::size_t c = 0; c < steps.size(); ++c) {
    const Step& s = steps[c];
    double cursor = s.left;
    while (next_atom < atoms.size() && atoms[next_atom].pos < s.right) {
      const Atom& a = atoms[next_atom++];
      if (a.pos > cursor) segment(a.pos - cursor, s.value);
      cursor = a.pos;
      kick(a.weight);
    }
    segment(s.right - cursor, s.value);
  }
  for (; next_atom < atoms.size(); ++next_atom) kick(atoms[next_atom].weight);
}

}  // namespace qc::detail
