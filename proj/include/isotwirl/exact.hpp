#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "isotwirl/perm_algebra.hpp"

namespace isotwirl {

struct SingularGram : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double to_double(const Rational& q);
Rational from_double(double x);  // exact binary value
Rational rpow(const Rational& x, long k);
std::string to_string(const Rational& q);

// Dense univariate polynomial over Q, coefficients low to high.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  static Poly x();

  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return degree() < 0; }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational operator()(const Rational& at) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  Poly operator-() const;

  // Exact quotient by (x - a); requires p(a) == 0.
  Poly deflate(const Rational& a) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

Poly pow(const Poly& p, int k);

// Value of num/den at x = a, cancelling common factors (x - a) first.
// Sets *removed to the number of cancelled factors. Throws SingularGram if den keeps a zero at a.
Rational limit_ratio(Poly num, Poly den, const Rational& a, int* removed = nullptr);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols);
  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  RationalMatrix transpose() const;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  bool operator==(const RationalMatrix& o) const;

  // Reduced row echelon form; pivot columns returned through *pivots.
  RationalMatrix rref(std::vector<int>* pivots = nullptr) const;
  int rank() const;
  RationalMatrix inverse() const;  // throws SingularGram
  // Moore-Penrose inverse via a rank factorization A = C F.
  RationalMatrix pinv() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

}  // namespace isotwirl
