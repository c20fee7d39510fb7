#pragma once

#include <string>
#include <vector>

#include "isotwirl/exact.hpp"
#include "isotwirl/perm_algebra.hpp"

namespace isotwirl {

enum class GramKind { Plain, QProjected, QPerpProjected };
enum class WeingartenKind { PlainS2, Plain, Plus, Minus };

const char* to_string(GramKind k);
const char* to_string(WeingartenKind k);

// Class function f with Omega_{pi sigma} = f(pi o sigma), indexed by ConjClass.
std::array<Rational, kNumClasses> gram_class_function(GramKind kind, long d);

// Omega_{pi sigma} = Tr[T_pi T_sigma X], X = 1, Q, Q^perp (24 x 24), for d = 2^N when Q is involved.
RationalMatrix gram(GramKind kind, long d);
// S2 Gram matrix [[d^2, d], [d, d^2]].
RationalMatrix gram_s2(long d);

struct WeingartenTable {
  WeingartenKind kind;
  long d;
  std::vector<std::string> classes;  // class labels in the order of `values`
  std::vector<Rational> values;      // W as a class function
  bool singular = false;             // pseudo-inverse used
  int rank = 0;                      // rank of the Gram matrix (inversion route)

  const Rational& at(ConjClass c) const { return values.at(static_cast<int>(c)); }
};

WeingartenTable weingarten_by_inversion(WeingartenKind kind, long d);
WeingartenTable weingarten_by_characters(WeingartenKind kind, long d);

// Full 24 x 24 matrix W_{pi sigma} = w(pi o sigma) of a table.
RationalMatrix weingarten_matrix(const WeingartenTable& w);

// Fourier coefficient of the Gram class function on irrep lambda (zero means excluded from W).
Rational gram_fourier(GramKind kind, long d, int lambda);

// D_lambda = Tr[Pi_lambda X] / d_lambda computed from the Gram class function.
Rational dlambda(GramKind kind, long d, int lambda);
// Closed forms of D_lambda, D_lambda^+, D_lambda^- as tabulated.
Rational dlambda_table(GramKind kind, long d, int lambda);

// Tabulated generalized Weingarten functions W^+ / W^- (the 1/4! prefactor applied).
WeingartenTable weingarten_tabulated(WeingartenKind kind, long d);

// Standard closed form of the S4 unitary Weingarten function (independent reference).
WeingartenTable weingarten_plain_closed_form(long d);

}  // namespace isotwirl
