#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "isotwirl/formfactors.hpp"
#include "isotwirl/perm_algebra.hpp"

namespace isotwirl {

template <class T>
using FineTable = std::array<T, kNumFine>;

// x_pi = tab[fine_class(pi o rho)].
template <class T>
PermVector<T> vector_from_fine(const FineTable<T>& tab, const PermOp& rho = PermOp()) {
  PermVector<T> v;
  for (int i = 0; i < kNumPerms; ++i)
    v[i] = tab[static_cast<int>(compose(all_perms()[i], rho).fine_class())];
  return v;
}

using CoeffVector = PermVector<LinForm<Rational>>;

// c_pi = Tr[T_pi V^{x2,2}] and q_pi = Tr[T_pi Q V^{x2,2}] (stabilizer table), linear in form factors.
CoeffVector c_vector_symbolic(long d);
CoeffVector q_vector_symbolic(long d);
CoeffVector subtract(const CoeffVector& a, const CoeffVector& b);

PermVector<std::complex<double>> c_vector(const FormFactors& ff);
// Rejects form factors without a stabilizer-valid g3tilde.
PermVector<std::complex<double>> q_vector_stabilizer(const FormFactors& ff);

// Isotypic idempotent E_lambda of the group algebra in the convolution convention
// (E y)_pi = sum_sigma (d_lambda/24) chi^lambda(pi^-1 sigma) y_sigma.
const std::array<std::array<Rational, kNumPerms>, kNumPerms>& idempotent(int lambda);

template <class S, class V>
PermVector<V> apply_idempotent(int lambda, const PermVector<V>& y) {
  const auto& e = idempotent(lambda);
  PermVector<V> r;
  for (int i = 0; i < kNumPerms; ++i) {
    V acc = V();
    for (int j = 0; j < kNumPerms; ++j) {
      if (e[i][j] == 0) continue;
      acc += y[j] * convert_scalar<S>(e[i][j]);
    }
    r[i] = acc;
  }
  return r;
}

template <class S>
PermVector<LinForm<S>> convert(const CoeffVector& v) {
  PermVector<LinForm<S>> r;
  for (int i = 0; i < kNumPerms; ++i)
    for (int s = 0; s < kNumSyms; ++s) r[i].c[s] = convert_scalar<S>(v[i].c[s]);
  return r;
}

template <class S>
LinForm<S> dot(const PermVector<S>& x, const PermVector<LinForm<S>>& y) {
  LinForm<S> r;
  for (int i = 0; i < kNumPerms; ++i)
    if (x[i] != 0) r += y[i] * x[i];
  return r;
}

// Per-irrep data of the moment and doping operators. Fourier coefficients of the class functions
//   omega (Tr T), omega_plus (Tr QT), omega_minus, k2 (the doping kernel),
// Moore-Penrose inverses w_plus / w_minus, and the doping eigenvalues xi and Lambda.
struct IrrepBlock {
  Rational omega, omega_plus, omega_minus, k2;
  Rational w_plus, w_minus;
  Rational xi, lambda;
  bool continued = false;  // xi / Lambda obtained as a limit in d (removable singularity)
};

struct DopingSpectrum {
  long d = 0;
  double theta = 0.0;
  Rational cos4theta;
  std::array<IrrepBlock, kNumIrreps> blocks;
  bool any_continued = false;
};

// theta is the phase of the single-qubit gate diag(1, e^{-i theta}).
DopingSpectrum doping_spectrum(long d, double theta);
Rational exact_cos4theta(double theta);

struct XiClosedForm {
  double xi_plus, xi_minus, xi_one;
};
XiClosedForm xi_closed_form(long d, double theta);

// R = sum_pi a_pi Q T_pi + b_pi T_pi.
template <class S>
struct MomentCoeffsT {
  PermVector<LinForm<S>> a, b;
};
using MomentCoeffs = MomentCoeffsT<Rational>;

MomentCoeffs haar_moment4(const CoeffVector& c, long d);
MomentCoeffs clifford_moment4(const CoeffVector& q, const CoeffVector& q_perp, long d);

// t_pi = sum_sigma [W+ q - W- q_perp], b_pi = sum_sigma W- q_perp.
struct TBVectors {
  CoeffVector t, b;
};
TBVectors tb_vectors(const CoeffVector& q, const CoeffVector& q_perp, long d);

struct DopedMoment {
  DopingSpectrum spectrum;
  std::array<CoeffVector, kNumIrreps> t_blocks;  // E_lambda t
  CoeffVector b0;

  MomentCoeffs at(long k) const;                  // exact, intended for small k
  MomentCoeffsT<double> at_double(long k) const;  // any k
};

DopedMoment doped_moment4(const CoeffVector& t, const CoeffVector& b, const DopingSpectrum& spec);

// Second moment of V x V^dagger: R = a I + b T_(12).
struct Moment2 {
  double a, b;
};
Moment2 haar_moment2(double g2, long d);

// The 24 x 24 doping matrix Xi = (W+ + W-) K2 - W- Omega+ with the closed-form eigen data.
struct XiMatrix {
  long d = 0;
  double theta = 0.0;
  Eigen::MatrixXd entries;
  Eigen::MatrixXd lambda_entries;  // Lambda = W- (Omega+ - K2)
  XiClosedForm closed;
  bool continued = false;  // a removable-singularity block was replaced by its limit
  std::array<PermVector<double>, 6> eigvecs;  // T+, T-, T1, T2, T3, T4
};

XiMatrix xi_matrix(long d, double theta);

// Eigenvectors in the permutation basis, orthonormal in the coefficient inner product.
std::array<PermVector<double>, 6> xi_eigenvectors();

}  // namespace isotwirl
