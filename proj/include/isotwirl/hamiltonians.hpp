#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "isotwirl/formfactors.hpp"
#include "isotwirl/spectral.hpp"

namespace isotwirl {

// H = sum_b omega_b Z_b. Entry i is the energy of basis state |i>; bit b of i set means Z_b = -1.
Spectrum cb_spectrum(const std::vector<double>& omegas);

// Dense diagonal of sum_b omega_b Z_b built from single-qubit Z matrices (reference for cb_spectrum).
Eigen::VectorXd cb_hamiltonian_diagonal(const std::vector<double>& omegas);

// H = -J sum_v A_v - J sum_f B_f on an N x N torus with 2N^2 edge qubits.
struct ToricCode {
  int N = 2;
  double J = 1.0;

  int qubits() const { return 2 * N * N; }
  double dim() const;  // 2^{2N^2}, may exceed the range of long
};

struct Stabilizer {
  bool x_type;
  std::vector<int> qubits;
};
// Vertex (X-type) then facet (Z-type) operators.
std::vector<Stabilizer> toric_stabilizers(int N);

std::complex<double> toric_trace(int N, double J, double t);  // Tr V
double toric_g3tilde(int N, double J, double t);
// Form printed with the derivation; ignores the two product constraints.
double toric_g3tilde_tabulated(int N, double J, double t);
FormFactors toric_sff(int N, double J, double t);

// Energies of the Clifford-equivalent diagonal model: N^2 - 1 independent vertex and facet
// charges on their own qubits plus two logical qubits. Bitstring indexed, length 2^{2N^2}.
Spectrum toric_spectrum(int N, double J);

// Level multiplicities from +-1 charge counting with the two parity constraints.
struct Level {
  double energy;
  double multiplicity;
};
std::vector<Level> toric_levels(int N, double J);

// V = prod_s (cos Jt + i sin Jt S_s) as a dense 2^{2N^2} matrix (N = 2 at most).
Eigen::MatrixXcd toric_dense_v(int N, double J, double t);

}  // namespace isotwirl
