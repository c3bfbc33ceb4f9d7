#include <doctest.h>

#include "fixtures.hpp"
#include "qc/fdp.hpp"

using qc::Piece;

TEST_CASE("tautological decomposition") {
  const auto w = fx::fib_stream(50, 400);
  const auto d = qc::check_fdp(w);
  CHECK(d.pieces.size() == 2);
  CHECK(d.anchor == 0.0);
  CHECK(qc::check_fdp(fx::periodic(fx::comb(1.0), 10)).pieces.size() == 1);

  // re-concatenation against the stream on [x0, x0 + L)
  for (std::size_t count : {1, 2, 5, 13, 40, 62}) {
    const Piece glued = d.concatenation(count);
    const double L = glued.length();
    const Piece around = qc::window(w, d.anchor - 1.0, d.anchor + L + 1.0);
    CHECK(L <= 100.0 + 2.0);
    CHECK(qc::piece_equal(glued, qc::restrict(around, 1.0, 1.0 + L, qc::Boundary::kRightOpen), 1e-12));
  }
  const auto shifted = qc::check_fdp(w.shifted(0.4));
  CHECK(shifted.anchor == doctest::Approx(-0.4));
  CHECK_THROWS_AS(d.concatenation(0), qc::Error);
}

TEST_CASE("sufficient criterion") {
  CHECK(qc::sufficient_sfdp(fx::fib_kp()));
  CHECK_FALSE(qc::sufficient_sfdp(fx::two_zeros()));
  qc::PieceAlphabet atoms;
  atoms.add('a', Piece::atom(1.0, 0.0, 1.0));
  atoms.add('b', Piece::atom(1.0, 0.0, 2.0));
  CHECK(qc::sufficient_sfdp(atoms));
  qc::PieceAlphabet constants;
  constants.add('a', Piece::constant(1.0, 1.0));
  constants.add('b', Piece::constant(1.0, 2.0));
  CHECK_FALSE(qc::sufficient_sfdp(constants));
}

TEST_CASE("s.f.d.p. search") {
  const auto fib = fx::fib_stream(2000, 2000);
  SUBCASE("Fibonacci KP") {
    const auto r = qc::check_sfdp(fib, 3.0, 20);
    CHECK(r.verdict == qc::SfdpVerdict::kVerifiedToCutoff);
    CHECK(r.pasts_checked > 0);
    CHECK(r.pairs_checked > 0);
    CHECK(qc::check_sfdp(fib.reflected(), 3.0, 20).verdict == qc::SfdpVerdict::kVerifiedToCutoff);
    CHECK_FALSE(qc::verify_counterexample(fib, r));
  }
  SUBCASE("two zero pieces") {
    const qc::PotentialStream w(fx::fib_two_sided(2000, 2000), fx::two_zeros());
    const auto r = qc::check_sfdp(w, 1.0, 20);
    REQUIRE(r.verdict == qc::SfdpVerdict::kCounterexample);
    REQUIRE(r.counterexample);
    CHECK(r.counterexample->continuation[0] != r.counterexample->other[0]);
    CHECK(qc::verify_counterexample(w, r));
    const auto r2 = qc::check_sfdp(w.reflected(), qc::default_ell(w.alphabet()), 20);
    CHECK(r2.verdict == qc::SfdpVerdict::kCounterexample);
    CHECK(qc::verify_counterexample(w.reflected(), r2));
  }
  SUBCASE("single periodic piece") {
    const auto r = qc::check_sfdp(fx::periodic(fx::comb(1.0), 200), 2.0, 20);
    CHECK(r.verdict == qc::SfdpVerdict::kVerifiedToCutoff);
    CHECK(r.pairs_checked == 0);
  }
  SUBCASE("Thue-Morse with distinct atoms") {
    qc::PieceAlphabet alph;
    alph.add('0', Piece::atom(1.0, 0.0, 1.0));
    alph.add('1', Piece::atom(1.0, 0.0, -1.0));
    const qc::PotentialStream w(qc::TwoSidedWord{qc::generate(fx::thue_morse(), '0', 4096), 2048}, alph);
    CHECK(qc::check_sfdp(w, 2.0, 20).verdict == qc::SfdpVerdict::kVerifiedToCutoff);
  }
  CHECK_THROWS_AS(qc::check_sfdp(fib, 100.0, 20), qc::Error);
  CHECK_THROWS_AS(qc::check_sfdp(fib, -1.0, 20), qc::Error);
  CHECK(qc::default_ell(fx::fib_kp()) == 2 * fx::kPhi);
}

TEST_CASE("criterion implies no counterexample on the bundled alphabets") {
  // The sufficient criterion holds for these, so the search must agree.
  const std::vector<qc::PieceAlphabet> alphabets = [] {
    std::vector<qc::PieceAlphabet> v{fx::fib_kp()};
    qc::PieceAlphabet atoms;
    atoms.add('a', Piece::atom(1.0, 0.0, 1.0));
    atoms.add('b', Piece::atom(1.0, 0.5, 1.0));
    v.push_back(atoms);
    qc::PieceAlphabet steps;
    steps.add('a', Piece(1.0, {}, {{0.0, 0.5, 1.0}, {0.5, 1.0, 0.0}}));
    steps.add('b', Piece(fx::kPhi));
    v.push_back(steps);
    return v;
  }();
  for (const auto& alph : alphabets) {
    REQUIRE(qc::sufficient_sfdp(alph));
    const qc::PotentialStream w(fx::fib_two_sided(2000, 2000), alph);
    for (double ell : {qc::default_ell(alph), 2.5, 4.0})
      CHECK(qc::check_sfdp(w, ell, 20).verdict != qc::SfdpVerdict::kCounterexample);
  }
}
