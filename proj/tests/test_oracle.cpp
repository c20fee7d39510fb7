#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "isotwirl/hamiltonians.hpp"
#include "isotwirl/oracle.hpp"
#include "isotwirl/twirl_engine.hpp"

using namespace isotwirl;

TEST_CASE("the 24 single-qubit Cliffords are distinct up to phase") {
  auto all = enumerate_clifford1();
  REQUIRE(all.size() == 24);
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].is_symplectic());
    DenseOp a = all[i].dense();
    CHECK(unitarity_defect(a) < 1e-12);
    for (std::size_t j = i + 1; j < all.size(); ++j)
      CHECK(std::abs((a.adjoint() * all[j].dense()).trace()) < 2.0 - 1e-9);
  }
}

TEST_CASE("sampled Cliffords map Paulis to Paulis") {
  Rng rng = make_rng(11, 0);
  for (int n : {1, 2, 3}) {
    for (int rep = 0; rep < 5; ++rep) {
      auto c = sample_clifford(n, rng);
      CHECK(c.is_symplectic());
      DenseOp u = c.dense();
      CHECK(unitarity_defect(u) < 1e-10);
      for (std::uint32_t p = 1; p < (1u << (2 * n)); ++p) {
        DenseOp img = u * pauli_dense(p, n) * u.adjoint();
        double best = 0;
        for (std::uint32_t q = 1; q < (1u << (2 * n)); ++q)
          best = std::max(best, std::abs((pauli_dense(q, n).adjoint() * img).trace()) / std::ldexp(1.0, n));
        CHECK(best == doctest::Approx(1.0));
      }
    }
  }
}

TEST_CASE("Haar and doped samplers are unitary") {
  Rng rng = make_rng(5, 1);
  CHECK(unitarity_defect(haar_unitary(8, rng)) < 1e-12);
  CHECK(unitarity_defect(doped_unitary(3, 4, M_PI / 4, rng)) < 1e-10);
}

TEST_CASE("dense permutation operators and the Q projector") {
  for (const auto& p : all_perms()) {
    DenseOp t = build_perm_dense(p, 2);
    CHECK(std::abs(t.trace() - std::complex<double>(to_double(trace_of_perm(p, 2)))) < 1e-12);
    for (const auto& r : all_perms()) {
      DenseOp tr = build_perm_dense(r, 2);
      CHECK((t * tr - build_perm_dense(compose(p, r), 2)).norm() < 1e-12);
    }
  }
  DenseOp q = build_q_dense(1);
  CHECK((q * q - q).norm() < 1e-12);
  CHECK((q - q.adjoint()).norm() < 1e-12);
  CHECK(q.trace().real() == doctest::Approx(4.0));
  for (const auto& p : all_perms()) {
    DenseOp t = build_perm_dense(p, 2);
    CHECK((q * t - t * q).norm() < 1e-12);
  }
}

TEST_CASE("direct trace formula matches dense contraction") {
  Rng rng = make_rng(3, 3);
  DenseOp a = haar_unitary(2, rng), b = haar_unitary(2, rng), c = haar_unitary(2, rng), e = haar_unitary(2, rng);
  // slot 0 is the least significant tensor factor
  DenseOp ce = Eigen::kroneckerProduct(c, b).eval();
  DenseOp big = Eigen::kroneckerProduct(e, Eigen::kroneckerProduct(ce, a).eval()).eval();
  for (const auto& p : all_perms()) {
    std::complex<double> dense = (build_perm_dense(p, 2) * big).trace();
    CHECK(std::abs(trace_perm_ops(p, a, b, c, e) - dense) < 1e-12);
  }
}

TEST_CASE("dense traces reproduce the symbolic c and q vectors") {
  Spectrum s = cb_spectrum({0.3, 0.8});
  for (double t : {0.5, 2.0}) {
    auto ff = sff_stabilizer(s, t);
    auto c = c_vector(ff), cd = c_vector_dense(diagonal_unitary(s, t));
    auto q = q_vector_stabilizer(ff), qd = q_vector_dense(diagonal_unitary(s, t), 2);
    for (int i = 0; i < kNumPerms; ++i) {
      CHECK(std::abs(c[i] - cd[i]) < 1e-10);
      CHECK(std::abs(q[i] - qd[i]) < 1e-10);
    }
    CHECK(pauli_sum_g3tilde(diagonal_unitary(s, t)) == doctest::Approx(ff.g3tilde));
  }
}

TEST_CASE("Monte Carlo estimates are deterministic and thread independent") {
  McRequest req{cb_spectrum({0.4, 0.9}), EnsembleSpec::clifford(), {ProbeKind::Loschmidt2, ProbeKind::Otoc4},
                {0.5, 1.5}, 2000, 77, 1};
  auto a = mc_twirl_grid(req);
  req.threads = 3;
  auto b = mc_twirl_grid(req);
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t i = 0; i < a[p].size(); ++i) {
      CHECK(a[p][i].mean == b[p][i].mean);
      CHECK(a[p][i].stderr_ == b[p][i].stderr_);
    }
  req.samples = 10;
  CHECK_THROWS(mc_twirl_grid(req));
}

TEST_CASE("single-qubit Clifford second moment equals the Haar one") {
  Spectrum s = cb_spectrum({0.6});
  DenseOp m = exact_moment2_clifford1(s, 1.3);
  Moment2 h = haar_moment2(sff_explicit(s, 1.3).g2, 2);
  DenseOp want = DenseOp::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      want(a * 2 + b, a * 2 + b) += h.a;
      want(a * 2 + b, b * 2 + a) += h.b;
    }
  CHECK((m - want).norm() < 1e-12);
}
