#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "isotwirl/perm_algebra.hpp"
#include "isotwirl/probes.hpp"
#include "isotwirl/spectral.hpp"

namespace isotwirl {

using DenseOp = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

// Independent stream derived from a master seed.
Rng make_rng(std::uint64_t master, std::uint64_t stream);

double unitarity_defect(const DenseOp& u);  // max |U^dagger U - 1|

// ---- permutation operators and Q on (C^d)^{x4}

// index map of T_p on d^4 basis states: T_p |i> = |map[i]>; digit m of i is slot m (slot 0 least significant).
std::vector<std::uint32_t> perm_index_map(const PermOp& p, long d);  // d^4 <= 2^20
DenseOp build_perm_dense(const PermOp& p, long d);                      // d^4 <= 2^10

// Hermitian Pauli string with x bits in the low n bits and z bits in the high n bits of u.
DenseOp pauli_dense(std::uint32_t u, int n);
DenseOp build_q_dense(int n);  // n = 1 only (16 x 16)
// Q applied to a d^4 state vector as d^-2 sum_P P^{x4}.
Eigen::VectorXcd apply_q(int n, const Eigen::VectorXcd& v);

// Tr[T_p (A1 x A2 x A3 x A4)] by a direct sum over the d^4 basis.
std::complex<double> trace_perm_ops(const PermOp& p, const DenseOp& a1, const DenseOp& a2, const DenseOp& a3,
                                    const DenseOp& a4);

DenseOp diagonal_unitary(const Spectrum& s, double t);  // e^{-iHt}
// Tr[T_pi V x V x V^dagger x V^dagger] and Tr[T_pi Q V x V x V^dagger x V^dagger].
PermVector<std::complex<double>> c_vector_dense(const DenseOp& v);
PermVector<std::complex<double>> q_vector_dense(const DenseOp& v, int n);

// d^-2 sum_P |Tr[P V]|^4, O(d^2 log d) for dense V.
double pauli_sum_g3tilde(const DenseOp& v);

// ---- ensembles

DenseOp haar_unitary(long d, Rng& rng);

struct CliffordElement {
  int n = 1;
  // images of X_0..X_{n-1}, Z_0..Z_{n-1} as symplectic vectors, with sign bits
  std::vector<std::uint32_t> images;
  std::vector<std::uint8_t> signs;

  bool is_symplectic() const;
  DenseOp dense() const;
};

int symplectic_product(std::uint32_t u, std::uint32_t v, int n);
CliffordElement sample_clifford(int n, Rng& rng);  // n <= 3, uniform
std::vector<CliffordElement> enumerate_clifford1();  // the 24 single-qubit elements

// C_k Theta C_{k-1} ... Theta C_0 with Theta = diag(1, e^{-i theta}) on qubit 0.
DenseOp doped_unitary(int n, long k, double theta, Rng& rng);
DenseOp sample_ensemble(const EnsembleSpec& ens, int n, Rng& rng);

// ---- probes evaluated on U = G^dagger V G

struct DenseProbeSetup {
  int n;
  long d;
  int qubits_a;  // subsystem A = C = the low qubits_a qubits
};
DenseProbeSetup dense_probe_setup(int n);
double dense_probe(ProbeKind kind, const DenseOp& u, const DenseProbeSetup& setup);

struct Estimate {
  double mean = 0, stderr_ = 0;
  long samples = 0;
};

struct McRequest {
  Spectrum spectrum;  // diagonal V, bitstring indexed
  EnsembleSpec ensemble;
  std::vector<ProbeKind> probes;
  std::vector<double> times;
  long samples = 1000;
  std::uint64_t seed = 1;
  int threads = 1;
};
// result[p][i]: probe p at times[i]. Deterministic for a given seed, independent of the thread count.
std::vector<std::vector<Estimate>> mc_twirl_grid(const McRequest& req);
Estimate mc_twirl(ProbeKind probe, const Spectrum& spectrum, double t, const EnsembleSpec& ens, long samples,
                  std::uint64_t seed, int threads = 1);

// Sample mean of U x U^dagger (d^2 x d^2) over Clifford samples, with entrywise standard errors.
struct MomentEstimate {
  DenseOp mean;
  Eigen::MatrixXd stderr_re, stderr_im;
};
MomentEstimate mc_moment2_clifford(const Spectrum& spectrum, double t, long samples, std::uint64_t seed);
DenseOp exact_moment2_clifford1(const Spectrum& spectrum, double t);  // exact over the 24 elements

// ---- spectral samplers

Spectrum sample_gde_spectrum(long d, Rng& rng);  // iid N(0, 1/4)
// Off-diagonal variance 1/d; eigenvalues in random order (labels matter for g3tilde).
Spectrum sample_gue_spectrum(long d, Rng& rng);

}  // namespace isotwirl
