#pragma once

#include <array>
#include <complex>
#include <string>
#include <type_traits>

#include "isotwirl/exact.hpp"

namespace isotwirl {

enum class SpectralSource { Explicit, GDE, GUE, Toric, Counting };
const char* to_string(SpectralSource s);

// Spectral form factors at one time point.
//   g2 = |Tr V|^2, g2_2t = g2(2t), g3 = Tr[V^2] (Tr V^dagger)^2, g4 = |Tr V|^4,
//   g3tilde = Clifford form factor of a stabilizer Hamiltonian.
struct FormFactors {
  double t = 0.0;
  long d = 0;
  double g2 = 0.0;
  double g2_2t = 0.0;
  std::complex<double> g3;
  double g4 = 0.0;
  double g3tilde = 0.0;
  SpectralSource source = SpectralSource::Explicit;
  bool stabilizer_valid = false;

  double g3_re() const { return g3.real(); }
  // t = 0 values: g2 = d^2, g3 = d^3, g4 = d^4, g3tilde = d^2.
  static FormFactors counting(long d);
};

// Symbols a coefficient can multiply. The probes are linear in these.
enum Sym : int { kOne = 0, kG2, kG22, kG3, kG3c, kG4, kG3t, kNumSyms };
const char* sym_name(int s);

template <class S>
struct LinForm {
  std::array<S, kNumSyms> c{};

  LinForm() {
    for (auto& v : c) v = S(0);
  }
  static LinForm sym(int s, const S& coef = S(1)) {
    LinForm f;
    f.c[s] = coef;
    return f;
  }
  static LinForm constant(const S& v) { return sym(kOne, v); }

  LinForm& operator+=(const LinForm& o) {
    for (int i = 0; i < kNumSyms; ++i) c[i] += o.c[i];
    return *this;
  }
  LinForm& operator-=(const LinForm& o) {
    for (int i = 0; i < kNumSyms; ++i) c[i] -= o.c[i];
    return *this;
  }
  LinForm& operator*=(const S& s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  friend LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
  friend LinForm operator-(LinForm a, const LinForm& b) { return a -= b; }
  friend LinForm operator*(LinForm a, const S& s) { return a *= s; }
  friend LinForm operator*(const S& s, LinForm a) { return a *= s; }
  bool operator==(const LinForm& o) const { return c == o.c; }

  bool is_zero() const {
    for (const auto& v : c)
      if (v != 0) return false;
    return true;
  }

  // Real part of the value; g3 and g3c enter as g3 and conj(g3).
  double eval(const FormFactors& ff) const {
    std::complex<double> g3 = ff.g3;
    std::complex<double> r = num(c[kOne]) + num(c[kG2]) * ff.g2 + num(c[kG22]) * ff.g2_2t +
                             num(c[kG3]) * g3 + num(c[kG3c]) * std::conj(g3) + num(c[kG4]) * ff.g4 +
                             num(c[kG3t]) * ff.g3tilde;
    return r.real();
  }

  // Exact evaluation with all symbols real (g3 = g3c).
  S eval_symbols(const std::array<S, kNumSyms>& v) const {
    S r = S(0);
    for (int i = 0; i < kNumSyms; ++i) r += c[i] * v[i];
    return r;
  }

  std::string str() const;

 private:
  static double num(const S& v);
};

template <>
inline double LinForm<Rational>::num(const Rational& v) {
  return v.get_d();
}
template <>
inline double LinForm<double>::num(const double& v) {
  return v;
}

template <class S>
std::string LinForm<S>::str() const {
  std::string out;
  for (int i = 0; i < kNumSyms; ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if constexpr (std::is_same_v<S, Rational>)
      out += "(" + c[i].get_str() + ")";
    else
      out += "(" + std::to_string(c[i]) + ")";
    if (i != kOne) out += std::string("*") + sym_name(i);
  }
  return out.empty() ? "0" : out;
}

LinForm<double> to_double(const LinForm<Rational>& f);

template <class S>
S convert_scalar(const Rational& q) {
  if constexpr (std::is_same_v<S, Rational>)
    return q;
  else
    return q.get_d();
}

}  // namespace isotwirl
