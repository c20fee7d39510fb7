#include <doctest.h>

#include <set>

#include "isotwirl/perm_algebra.hpp"

using namespace isotwirl;

TEST_CASE("S4 enumeration is lexicographic and closed under composition") {
  const auto& perms = all_perms();
  CHECK(perms[0] == PermOp());
  for (int i = 1; i < kNumPerms; ++i) CHECK(perms[i - 1].images() < perms[i].images());
  for (int a = 0; a < kNumPerms; ++a) {
    CHECK(perms[a].index() == a);
    CHECK(compose_index(a, inverse_index(a)) == 0);
    for (int b = 0; b < kNumPerms; ++b) {
      PermOp c = compose(perms[a], perms[b]);
      for (int x = 0; x < 4; ++x) CHECK(c(x) == perms[a](perms[b](x)));
    }
  }
}

TEST_CASE("cycle notation round-trips") {
  for (const auto& p : all_perms()) CHECK(PermOp::parse(p.str()) == p);
  CHECK(PermOp::parse("(1423)")(0) == 3);
  CHECK(PermOp::parse("id") == PermOp());
  CHECK_THROWS(PermOp::parse("(15)"));
  CHECK_THROWS(PermOp::parse("(11)"));
}

TEST_CASE("class sizes and the fine refinement") {
  std::array<int, kNumClasses> sizes{};
  std::array<int, kNumFine> fine{};
  for (const auto& p : all_perms()) {
    sizes[static_cast<int>(p.conj_class())]++;
    fine[static_cast<int>(p.fine_class())]++;
    CHECK(coarse(p.fine_class()) == p.conj_class());
  }
  CHECK(sizes == std::array<int, kNumClasses>{1, 6, 3, 8, 6});
  for (int c = 0; c < kNumClasses; ++c) CHECK(sizes[c] == class_size(static_cast<ConjClass>(c)));
  CHECK(fine[static_cast<int>(FineClass::FourCrossing)] == 2);
  CHECK(PermOp::parse("(1324)").fine_class() == FineClass::FourCrossing);
  CHECK(PermOp::parse("(12)(34)").fine_class() == FineClass::DoubleSwap1234);
}

TEST_CASE("trace of permutation operators") {
  for (const auto& p : all_perms()) {
    Rational expect = 1;
    for (int i = 0; i < p.num_cycles(); ++i) expect *= 5;
    CHECK(trace_of_perm(p, 5) == expect);
  }
}

TEST_CASE("character orthogonality and projectors") {
  for (int a = 0; a < kNumIrreps; ++a)
    for (int b = 0; b < kNumIrreps; ++b) {
      int s = 0;
      for (int c = 0; c < kNumClasses; ++c)
        s += class_size(static_cast<ConjClass>(c)) * irrep_character(a, static_cast<ConjClass>(c)) *
             irrep_character(b, static_cast<ConjClass>(c));
      CHECK(s == (a == b ? 24 : 0));
    }
  for (int a = 0; a < kNumIrreps; ++a)
    for (int b = 0; b < kNumIrreps; ++b) {
      auto prod = convolve(irrep_projector(a), irrep_projector(b));
      auto want = a == b ? irrep_projector(a) : PermVector<Rational>{};
      for (int i = 0; i < kNumPerms; ++i) CHECK(prod[i] == want[i]);
    }
}

TEST_CASE("trace words follow the cycle structure") {
  auto e = trace_with_operators(PermOp::parse("(12)"), {"A", "B", "C", "D"});
  CHECK(e.factors.size() == 3);
  CHECK(trace_with_operators(PermOp(), {"A", "B", "C", "D"}).factors.size() == 4);
}
