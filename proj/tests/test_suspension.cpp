#include <doctest.h>

#include "fixtures.hpp"
#include "qc/suspension.hpp"

using qc::Atom;
using qc::Piece;

TEST_CASE("periodic comb") {
  const auto w = fx::periodic(fx::comb(1.0), 20);
  const Piece win = qc::window(w, 0.0, 3.0);
  REQUIRE(win.atoms().size() == 3);
  CHECK(win.atoms()[0] == Atom{1.0, 1.0});
  CHECK(win.atoms()[2] == Atom{3.0, 1.0});
  CHECK(qc::window(w, -2.5, -0.5).atoms().size() == 2);
  CHECK(w.cell_start(-3) == -3.0);
}

TEST_CASE("Fibonacci Kronig-Penney windows") {
  // x(0..4) = a b a a b, cells start at 0, 1, 1+phi, 2+phi, 3+phi
  const auto w = fx::fib_stream(8, 100);
  CHECK(w.symbol(0) == 'a');
  CHECK(w.symbol(1) == 'b');
  CHECK(w.cell_start(2) == doctest::Approx(1 + fx::kPhi));
  const Piece five = qc::window(w, 0.0, 5.0);
  REQUIRE(five.atoms().size() == 2);
  CHECK(five.atoms()[0].pos == doctest::Approx(1 + fx::kPhi).epsilon(1e-14));
  CHECK(five.atoms()[1].pos == doctest::Approx(2 + fx::kPhi).epsilon(1e-14));
  CHECK(five.steps().size() == 1);

  // (0, phi + 1] covers the cells a, b; under (a, b] the atom of the next a
  // at the right end is inside and the own one at 0 is not
  const Piece ab = qc::window(w, 0.0, 1.0 + fx::kPhi);
  REQUIRE(ab.atoms().size() == 1);
  CHECK(ab.atoms()[0].pos == ab.length());
  const Piece ab_closed = qc::window(w, -1e-3, 1.0 + fx::kPhi - 1e-3);
  CHECK(qc::piece_equal(qc::restrict(ab_closed, 1e-3, ab_closed.length(), qc::Boundary::kRightOpen),
                        qc::restrict(qc::concatenate({w.alphabet().at('a'), w.alphabet().at('b')}), 0.0,
                                     ab_closed.length() - 1e-3, qc::Boundary::kRightOpen),
                        1e-12));
  CHECK_THROWS_AS(qc::window(w, 0.0, 1e6), qc::Error);
  CHECK_THROWS_AS(qc::window(w, 1.0, 1.0), qc::Error);
}

TEST_CASE("window is the concatenation of cell restrictions") {
  const auto w = fx::fib_stream(50, 300);
  for (std::ptrdiff_t n = -20; n < 40; ++n) {
    const double a = w.cell_start(n), b = w.cell_start(n + 3);
    std::vector<Piece> cells;
    for (std::ptrdiff_t k = n; k < n + 3; ++k) cells.push_back(qc::window(w, w.cell_start(k), w.cell_start(k + 1)));
    CHECK(qc::piece_equal(qc::window(w, a, b), qc::concatenate(cells), 1e-12));
    // split at an interior point
    const double c = 0.5 * (a + b) + 0.1234;
    CHECK(qc::piece_equal(qc::window(w, a, b),
                          qc::concatenate({qc::window(w, a, c), qc::window(w, c, b)}), 1e-12));
  }
}

TEST_CASE("offset normalization") {
  const auto x = fx::fib_two_sided(50, 100);
  const double la = fx::fib_kp().length(x.at(0));
  const qc::PotentialStream shifted(x, fx::fib_kp(), la);
  const qc::PotentialStream moved(qc::TwoSidedWord{x.symbols, x.origin + 1}, fx::fib_kp(), 0.0);
  for (double a : {-10.0, -3.3, 0.0, 2.5, 17.0})
    CHECK(qc::piece_equal(qc::window(shifted, a, a + 4.0), qc::window(moved, a, a + 4.0), 1e-12));
  CHECK(shifted.origin_cell() == moved.origin_cell());

  // alpha_s alpha_t = alpha_{s+t}
  const auto w = fx::fib_stream(100, 100);
  const auto twice = w.shifted(1.3).shifted(2.9);
  const auto once = w.shifted(4.2);
  CHECK(qc::piece_equal(qc::window(twice, -5.0, 5.0), qc::window(once, -5.0, 5.0), 1e-12));
  CHECK(qc::piece_equal(qc::window(w.shifted(0.7), 0.0, 3.0), qc::window(w, 0.7, 3.7), 1e-12));
}

TEST_CASE("reflection") {
  const auto w = fx::fib_stream(100, 100);
  const auto r = w.reflected();
  // (a, b] of the reflection is the mirror of [-b, -a) of the original
  for (double a : {-9.0, -2.0, 0.5, 3.25}) {
    const Piece mirrored = qc::reflect(qc::restrict(qc::window(w, -a - 5.0 - 1.0, -a + 1.0), 1.0, 6.0,
                                                    qc::Boundary::kRightOpen));
    CHECK(qc::piece_equal(qc::window(r, a, a + 5.0), mirrored, 1e-12));
  }
  CHECK(qc::piece_equal(qc::window(r.reflected(), -4.0, 4.0), qc::window(w, -4.0, 4.0), 1e-12));
}

TEST_CASE("in_G_n") {
  CHECK(qc::in_G_n(fx::periodic(fx::comb(2.0), 30), 1.0));
  CHECK(qc::in_G_n(fx::periodic(fx::comb(2.0), 30), 3.0));
  CHECK_FALSE(qc::in_G_n(fx::periodic(fx::comb(2.0), 30), 1.5));

  const auto x = fx::fib_two_sided(0, 3000);
  const auto cubes = qc::find_cubes(std::string_view(x.symbols).substr(0, 2000), 40);
  REQUIRE(!cubes.empty());
  const auto alph = fx::fib_kp();
  // Origin at the middle block. Under (a, b] windows the atom at 2p belongs to
  // the symbol after the cube, so the stream repeats exactly when that symbol
  // equals the first one of the cube.
  std::size_t hits = 0, misses = 0;
  for (const auto& c : cubes) {
    if (c.start < 100) continue;
    const qc::PotentialStream at(qc::TwoSidedWord{x.symbols, c.start + c.q}, alph);
    double p = 0.0;
    for (char s : c.block) p += alph.length(s);
    const bool extends = x.symbols[c.start + 3 * c.q] == x.symbols[c.start];
    CHECK(qc::in_G_n(at, p) == extends);
    (extends ? hits : misses) += 1;
  }
  CHECK(hits > 50);
  CHECK(misses > 0);

  // A quarter unit further left, every cube gives three equal windows: each
  // holds one copy with its leading atom plus an atom-free tail.
  for (const auto& c : cubes) {
    if (c.start < 100) continue;
    const auto at = qc::PotentialStream(qc::TwoSidedWord{x.symbols, c.start + c.q}, alph).shifted(-0.25);
    double p = 0.0;
    for (char s : c.block) p += alph.length(s);
    CHECK(qc::in_G_n(at, p));
  }

  qc::PieceAlphabet tm;
  tm.add('0', Piece::atom(1.0, 0.0, 1.0));
  tm.add('1', Piece::atom(1.0, 0.5, 1.0));
  const qc::PotentialStream tms(qc::TwoSidedWord{qc::generate(fx::thue_morse(), '0', 4096), 2048}, tm);
  for (std::ptrdiff_t n = -500; n < 500; ++n)
    for (double p = 1.0; p <= 40.0; p += 1.0) CHECK_FALSE(qc::in_G_n(tms.shifted(n + 0.25), p));
}

TEST_CASE("P(G_n) estimates") {
  qc::SubstitutionSpec single{fx::doubling(), 'a'};
  CHECK(qc::estimate_P_Gn(single, fx::comb(1.0), 4, 200).value == 1.0);

  qc::SubstitutionSpec tm{fx::thue_morse(), '0'};
  qc::PieceAlphabet tm_alph;
  tm_alph.add('0', Piece::atom(1.0, 0.0, 1.0));
  tm_alph.add('1', Piece::constant(1.0, 1.0));
  for (std::size_t q : {1, 2, 3, 4, 8}) CHECK(qc::estimate_P_Gn(tm, tm_alph, q, 300).value == 0.0);

  qc::SubstitutionSpec fib{fx::fibonacci(), 'a'};
  const auto g = qc::estimate_P_Gn(fib, fx::fib_kp(), 5, 2000, 42);
  CHECK(g.value > 0.0);
  CHECK(g.hits > 0);
  CHECK(g.p == doctest::Approx(3.0 + 2.0 * fx::kPhi));
  const auto again = qc::estimate_P_Gn(fib, fx::fib_kp(), 5, 2000, 42);
  CHECK(again.hits == g.hits);
}

TEST_CASE("alphabet json") {
  const auto alph = fx::fib_kp();
  const auto back = qc::alphabet_from_json(qc::alphabet_to_json(alph));
  CHECK(back.size() == 2);
  CHECK(back.at('a') == alph.at('a'));
  CHECK(back.at('b') == alph.at('b'));
  CHECK_THROWS_AS(alph.check_covers("abc"), qc::Error);
}
