#include "isotwirl/exact.hpp"

#include <algorithm>

namespace isotwirl {

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
  Rational r(x);
  r.canonicalize();
  return r;
}

Rational rpow(const Rational& x, long k) {
  if (k < 0) return rpow(Rational(1) / x, -k);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(k));
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Poly::Poly(const Rational& c) {
  c_.push_back(c);
  trim();
}

Poly Poly::x() {
  Poly p;
  p.c_ = {Rational(0), Rational(1)};
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::degree() const { return static_cast<int>(c_.size()) - 1; }

Rational Poly::operator()(const Rational& at) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * at + *it;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  trim();
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Poly Poly::deflate(const Rational& a) const {
  if ((*this)(a) != 0) throw std::invalid_argument("Poly::deflate: not a root");
  if (c_.size() <= 1) return Poly();
  Poly q;
  q.c_.assign(c_.size() - 1, Rational(0));
  Rational carry = 0;
  for (int i = static_cast<int>(c_.size()) - 1; i >= 1; --i) {
    carry = c_[i] + carry * a;
    q.c_[i - 1] = carry;
  }
  q.trim();
  return q;
}

Poly pow(const Poly& p, int k) {
  Poly r(Rational(1));
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

Rational limit_ratio(Poly num, Poly den, const Rational& a, int* removed) {
  if (den.is_zero()) throw SingularGram("limit_ratio: zero denominator polynomial");
  int n = 0;
  while (den(a) == 0) {
    if (num.is_zero()) {
      if (removed) *removed = n;
      return 0;
    }
    if (num(a) != 0) throw SingularGram("limit_ratio: pole at d = " + to_string(a));
    num = num.deflate(a);
    den = den.deflate(a);
    ++n;
  }
  if (removed) *removed = n;
  Rational r = num(a) / den(a);
  return r;
}

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Rational(0)) {}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("RationalMatrix: shape mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  Rational tmp;
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols_; ++j) {
        if (b(k, j) == 0) continue;
        tmp = aik * b(k, j);
        c(i, j) += tmp;
      }
    }
  return c;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("RationalMatrix: shape mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("RationalMatrix: shape mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

RationalMatrix RationalMatrix::rref(std::vector<int>* pivots) const {
  RationalMatrix m = *this;
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int p = -1;
    for (int i = r; i < rows_; ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < cols_; ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (int j = c; j < cols_; ++j) m(r, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (int j = c; j < cols_; ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = piv;
  return m;
}

int RationalMatrix::rank() const {
  std::vector<int> piv;
  rref(&piv);
  return static_cast<int>(piv.size());
}

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse: matrix not square");
  int n = rows_;
  RationalMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<int> piv;
  RationalMatrix red = aug.rref(&piv);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw SingularGram("inverse: singular matrix");
  RationalMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = red(i, n + j);
  return inv;
}

RationalMatrix RationalMatrix::pinv() const {
  std::vector<int> piv;
  RationalMatrix red = rref(&piv);
  int r = static_cast<int>(piv.size());
  if (r == 0) return RationalMatrix(cols_, rows_);
  RationalMatrix C(rows_, r), F(r, cols_);
  for (int k = 0; k < r; ++k) {
    for (int i = 0; i < rows_; ++i) C(i, k) = (*this)(i, piv[k]);
    for (int j = 0; j < cols_; ++j) F(k, j) = red(k, j);
  }
  RationalMatrix Ct = C.transpose(), Ft = F.transpose();
  return Ft * (F * Ft).inverse() * (Ct * C).inverse() * Ct;
}

}  // namespace isotwirl
