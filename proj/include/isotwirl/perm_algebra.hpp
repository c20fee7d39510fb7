#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace isotwirl {

using Rational = mpq_class;

constexpr int kNumPerms = 24;
constexpr int kNumClasses = 5;
constexpr int kNumIrreps = 5;
constexpr int kNumFine = 10;

template <class T>
using PermVector = std::array<T, kNumPerms>;

enum class ConjClass : std::uint8_t { Id, Two, TwoTwo, Three, Four };

// Refinement of the conjugacy classes relative to the slot split {1,2} (V) / {3,4} (V^dagger).
//   ThreeFix12: 3-cycle leaving an element of {1,2} fixed (the table label T^{(1,2)}_{(ijk)})
//   ThreeFix34: 3-cycle leaving an element of {3,4} fixed (T^{(3,4)}_{(ijk)})
//   FourCrossing: 4-cycle alternating between {1,2} and {3,4}, i.e. (1324), (1423)
enum class FineClass : std::uint8_t {
  Id,
  Swap12,
  Swap34,
  SwapOther,
  ThreeFix12,
  ThreeFix34,
  FourNonCrossing,
  FourCrossing,
  DoubleSwap1234,
  DoubleSwapOther
};

const char* to_string(ConjClass c);
const char* to_string(FineClass c);
ConjClass coarse(FineClass f);

// A permutation of {0,1,2,3}; img[i] is the image of i. Printed 1-based in cycle notation.
class PermOp {
 public:
  PermOp();
  explicit PermOp(std::array<std::uint8_t, 4> img);

  static PermOp from_index(int index);
  // Accepts "()", "id", "I", "(12)(34)", "(1423)" ... with 1-based labels.
  static PermOp parse(const std::string& cycles);

  std::uint8_t operator()(int i) const { return img_[i]; }
  const std::array<std::uint8_t, 4>& images() const { return img_; }

  int index() const;
  ConjClass conj_class() const;
  FineClass fine_class() const;
  int num_cycles() const;  // fixed points included
  std::vector<std::vector<int>> cycles() const;  // 0-based, canonical, fixed points dropped
  std::string str() const;

  bool operator==(const PermOp& o) const { return img_ == o.img_; }
  bool operator!=(const PermOp& o) const { return !(*this == o); }

 private:
  std::array<std::uint8_t, 4> img_;
};

const std::array<PermOp, kNumPerms>& all_perms();

// (a o b)(x) = a(b(x)); T_a T_b = T_{a o b}.
PermOp compose(const PermOp& a, const PermOp& b);
PermOp inverse(const PermOp& a);
int compose_index(int a, int b);
int inverse_index(int a);

int class_size(ConjClass c);

// Tr[T_p] on (C^d)^{otimes 4}.
Rational trace_of_perm(const PermOp& p, long d);

// Product of cyclic traces Tr[T_p (A_1 x A_2 x A_3 x A_4)] written as words over slot labels.
struct TraceExpr {
  std::vector<std::vector<std::string>> factors;  // each factor is one cyclic trace
  std::string str() const;
  bool operator==(const TraceExpr& o) const { return factors == o.factors; }
};

TraceExpr trace_with_operators(const PermOp& p, const std::array<std::string, 4>& ops);

// Character table of S4 (rows lambda1..lambda5, columns Id, Two, TwoTwo, Three, Four).
int irrep_character(int lambda, ConjClass c);
int irrep_dim(int lambda);

// Coefficients of Pi_lambda = (d_lambda/24) sum_pi chi^lambda(pi) T_pi.
PermVector<Rational> irrep_projector(int lambda);

// Group-algebra product: (a * b)_pi = sum_{sigma o tau = pi} a_sigma b_tau.
PermVector<Rational> convolve(const PermVector<Rational>& a, const PermVector<Rational>& b);

// Fourier coefficient of a class function: f_lambda = sum_pi f(pi) chi^lambda(pi) / d_lambda.
Rational class_fourier(const std::array<Rational, kNumClasses>& f, int lambda);

}  // namespace isotwirl
