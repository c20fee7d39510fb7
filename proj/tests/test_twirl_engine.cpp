#include <doctest.h>

#include <cmath>

#include "isotwirl/twirl_engine.hpp"

using namespace isotwirl;

namespace {

// Symbols at t = 0 (V = identity): g2 = g2(2t) = d^2, g3 = d^3, g4 = d^4, g3tilde = d^2.
std::array<Rational, kNumSyms> identity_symbols(long d) {
  Rational x = d;
  return {1, x * x, x * x, x * x * x, x * x * x, x * x * x * x, x * x};
}

void check_identity_moment(const MomentCoeffs& m, long d) {
  auto v = identity_symbols(d);
  PermVector<Rational> a;
  for (int i = 0; i < kNumPerms; ++i) {
    a[i] = m.a[i].eval_symbols(v);
    CHECK(m.b[i].eval_symbols(v) == Rational(i == 0 ? 1 : 0));
  }
  // Q annihilates the lambda2 and lambda4 blocks, so only the other components of a are meaningful
  for (int l : {0, 2, 4})
    for (const auto& x : apply_idempotent<Rational>(l, a)) CHECK(x == 0);
}

}  // namespace

TEST_CASE("twirling the identity returns the identity") {
  // at d = 4 Q Pi_lambda1 = Pi_lambda1 and the split between a and b is not unique
  for (long d : {8L, 16L, 32L}) {
    { CAPTURE(d); check_identity_moment(haar_moment4(c_vector_symbolic(d), d), d); }
    auto q = q_vector_symbolic(d), c = c_vector_symbolic(d);
    auto qp = subtract(c, q);
    check_identity_moment(clifford_moment4(q, qp, d), d);
    auto tb = tb_vectors(q, qp, d);
    auto dm = doped_moment4(tb.t, tb.b, doping_spectrum(d, M_PI / 4));
    for (long k : {0L, 1L, 3L}) { CAPTURE(d); CAPTURE(k); check_identity_moment(dm.at(k), d); }
  }
}

TEST_CASE("doped moment at k = 0 is the Clifford moment") {
  const long d = 8;
  auto q = q_vector_symbolic(d), c = c_vector_symbolic(d);
  auto qp = subtract(c, q);
  auto cl = clifford_moment4(q, qp, d);
  auto tb = tb_vectors(q, qp, d);
  auto m0 = doped_moment4(tb.t, tb.b, doping_spectrum(d, M_PI / 4)).at(0);
  for (int i = 0; i < kNumPerms; ++i) {
    CHECK(m0.a[i] == cl.a[i]);
    CHECK(m0.b[i] == cl.b[i]);
  }
}

TEST_CASE("doping eigenvalues contract") {
  for (long d : {4L, 8L, 64L, 1024L}) {
    auto xi = xi_closed_form(d, M_PI / 4);
    for (double v : {xi.xi_plus, xi.xi_minus, xi.xi_one}) {
      CHECK(v > -1.0);
      CHECK(v < 1.0);
    }
    auto spec = doping_spectrum(d, M_PI / 4);
    CHECK(spec.cos4theta == -1);
  }
  CHECK(exact_cos4theta(M_PI / 8) == 0);
}

TEST_CASE("Xi matrix carries the closed-form eigenvectors") {
  auto xm = xi_matrix(16, M_PI / 4);
  const double vals[3] = {xm.closed.xi_plus, xm.closed.xi_minus, xm.closed.xi_one};
  for (int e = 0; e < 6; ++e) {
    Eigen::VectorXd v(kNumPerms);
    for (int i = 0; i < kNumPerms; ++i) v[i] = xm.eigvecs[e][i];
    Eigen::VectorXd r = xm.entries * v - vals[std::min(e, 2)] * v;
    CHECK(r.norm() < 1e-12);
  }
}

TEST_CASE("second-moment Haar twirl") {
  auto m = haar_moment2(16.0, 4);
  // R = aI + bT with Tr R = g2 and Tr[T R] = d
  CHECK(m.a * 16 + m.b * 4 == doctest::Approx(16.0));
  CHECK(m.a * 4 + m.b * 16 == doctest::Approx(4.0));
}
