#pragma once

#include <string>
#include <vector>

#include "isotwirl/formfactors.hpp"

namespace isotwirl {

using Spectrum = std::vector<double>;

// g2, g2(2t), g3, g4 from an explicit spectrum in O(d). g3tilde is left unset.
FormFactors sff_explicit(const Spectrum& s, double t);
// Same plus g3tilde for a bitstring-indexed stabilizer spectrum (d = 2^N).
FormFactors sff_stabilizer(const Spectrum& s, double t);

// g3tilde = d^-1 sum_{ijk} exp(-i(E_i + E_j - E_k - E_{i^j^k}) t), O(d log d) via Walsh-Hadamard.
double sff_clifford_cb(const Spectrum& s, double t);
double sff_clifford_cb_direct(const Spectrum& s, double t);  // O(d^3)

// Quadruple-loop reference values (small d only).
FormFactors sff_bruteforce(const Spectrum& s, double t);

bool is_power_of_two(long d);

// Ensemble averages. GDE energies are iid normal with standard deviation 1/2.
FormFactors gde_averages(long d, double t);

// GUE building blocks: r1 = J1(2t)/t, r2 = theta(2d - t)(1 - t/2d), r3 = sin(pi t/2)/(pi t/2).
double gue_r1(double t);
double gue_r2(long d, double t);
double gue_r3(double t);
FormFactors gue_averages(long d, double t);

// Characteristic scales of the envelope functions (leading order, constants dropped).
struct EnvelopeFeature {
  std::string quantity;  // g2, g3tilde, g4
  std::string feature;   // initial decay, dip, ..., plateau
  double value;
  double time;
};
struct EnvelopeTimes {
  long d = 0;
  std::vector<EnvelopeFeature> features;
  double g2_equilibration;  // from d = pi t^3
  double g2_plateau, g3tilde_plateau, g4_plateau;
};
EnvelopeTimes envelope_times(long d);

std::vector<double> time_grid(double t_min, double t_max, int points, bool log_spaced);

}  // namespace isotwirl
