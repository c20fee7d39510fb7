#include <doctest.h>

#include "isotwirl/weingarten.hpp"

using namespace isotwirl;

TEST_CASE("Weingarten matrix inverts the Gram matrix") {
  for (long d : {4L, 5L, 8L, 13L}) {
    auto w = weingarten_by_inversion(WeingartenKind::Plain, d);
    CHECK_FALSE(w.singular);
    auto p = weingarten_matrix(w) * gram(GramKind::Plain, d);
    for (int i = 0; i < p.rows(); ++i)
      for (int j = 0; j < p.cols(); ++j) CHECK(p(i, j) == Rational(i == j ? 1 : 0));
  }
}

TEST_CASE("inversion and character routes agree exactly") {
  for (long d : {4L, 8L, 16L, 64L})
    for (auto k : {WeingartenKind::PlainS2, WeingartenKind::Plain, WeingartenKind::Plus, WeingartenKind::Minus}) {
      auto a = weingarten_by_inversion(k, d), b = weingarten_by_characters(k, d);
      CHECK(a.values == b.values);
    }
}

TEST_CASE("S2 Weingarten closed form") {
  for (long d : {2L, 3L, 7L}) {
    auto w = weingarten_by_inversion(WeingartenKind::PlainS2, d);
    Rational x = d;
    REQUIRE(w.values.size() == 2);
    CHECK(w.values[0] == 1 / (x * x - 1));
    CHECK(w.values[1] == -1 / (x * (x * x - 1)));
  }
}

TEST_CASE("S4 Weingarten closed form matches inversion") {
  for (long d : {4L, 6L, 9L, 32L})
    CHECK(weingarten_plain_closed_form(d).values == weingarten_by_inversion(WeingartenKind::Plain, d).values);
  CHECK_THROWS_AS(weingarten_plain_closed_form(3), SingularGram);
}

TEST_CASE("small dimensions are flagged as singular") {
  auto w = weingarten_by_inversion(WeingartenKind::Plain, 2);
  CHECK(w.singular);
  CHECK(w.rank < 24);
}

TEST_CASE("Q and Q-perp Gram spectra split the plain one") {
  for (long d : {4L, 8L, 16L})
    for (int l = 0; l < 5; ++l) {
      CHECK(gram_fourier(GramKind::Plain, d, l) ==
            gram_fourier(GramKind::QProjected, d, l) + gram_fourier(GramKind::QPerpProjected, d, l));
      CHECK(dlambda(GramKind::Plain, d, l) == dlambda_table(GramKind::Plain, d, l));
      CHECK(dlambda(GramKind::QProjected, d, l) == dlambda_table(GramKind::QProjected, d, l));
      CHECK(dlambda(GramKind::QPerpProjected, d, l) == dlambda_table(GramKind::QPerpProjected, d, l));
    }
}
