#include "isotwirl/twirl_engine.hpp"

#include <cmath>

#include "isotwirl/weingarten.hpp"

namespace isotwirl {

namespace {

using LF = LinForm<Rational>;

FineTable<LF> c_table(long d) {
  Rational x = d;
  FineTable<LF> t;
  t[static_cast<int>(FineClass::Id)] = LF::sym(kG4);
  t[static_cast<int>(FineClass::Swap12)] = LF::sym(kG3);
  t[static_cast<int>(FineClass::Swap34)] = LF::sym(kG3c);
  t[static_cast<int>(FineClass::SwapOther)] = LF::sym(kG2, x);
  t[static_cast<int>(FineClass::ThreeFix12)] = LF::sym(kG2);
  t[static_cast<int>(FineClass::ThreeFix34)] = LF::sym(kG2);
  t[static_cast<int>(FineClass::FourNonCrossing)] = LF::constant(x);
  t[static_cast<int>(FineClass::FourCrossing)] = LF::constant(x);
  t[static_cast<int>(FineClass::DoubleSwap1234)] = LF::sym(kG22);
  t[static_cast<int>(FineClass::DoubleSwapOther)] = LF::constant(x * x);
  return t;
}

FineTable<LF> q_table(long d) {
  Rational x = d;
  Rational inv = Rational(1) / x;
  FineTable<LF> t;
  t[static_cast<int>(FineClass::Id)] = LF::sym(kG3t);
  t[static_cast<int>(FineClass::Swap12)] = LF::sym(kG22, inv);
  t[static_cast<int>(FineClass::Swap34)] = LF::sym(kG22, inv);
  t[static_cast<int>(FineClass::SwapOther)] = LF::constant(x);
  t[static_cast<int>(FineClass::ThreeFix12)] = LF::constant(1);
  t[static_cast<int>(FineClass::ThreeFix34)] = LF::constant(1);
  t[static_cast<int>(FineClass::FourNonCrossing)] = LF::constant(x);
  t[static_cast<int>(FineClass::FourCrossing)] = LF::sym(kG22, inv);
  t[static_cast<int>(FineClass::DoubleSwap1234)] = LF::sym(kG3t);
  t[static_cast<int>(FineClass::DoubleSwapOther)] = LF::sym(kG3t);
  return t;
}

PermVector<std::complex<double>> numeric(const CoeffVector& v, const FormFactors& ff) {
  PermVector<std::complex<double>> r;
  for (int i = 0; i < kNumPerms; ++i) {
    const auto& c = v[i].c;
    r[i] = c[kOne].get_d() + c[kG2].get_d() * ff.g2 + c[kG22].get_d() * ff.g2_2t +
           c[kG3].get_d() * ff.g3 + c[kG3c].get_d() * std::conj(ff.g3) + c[kG4].get_d() * ff.g4 +
           c[kG3t].get_d() * ff.g3tilde;
  }
  return r;
}

// Class functions as polynomials in d (order Id, Two, TwoTwo, Three, Four).
std::array<Poly, kNumClasses> poly_plain() {
  Poly x = Poly::x();
  return {pow(x, 4), pow(x, 3), pow(x, 2), pow(x, 2), x};
}
std::array<Poly, kNumClasses> poly_q() {
  Poly x = Poly::x();
  return {pow(x, 2), x, pow(x, 2), Poly(Rational(1)), x};
}
std::array<Poly, kNumClasses> poly_k2(const Rational& c) {
  Poly x = Poly::x();
  auto q = poly_q();
  std::array<Poly, kNumClasses> th = {Poly(3 + c) * pow(x, 2), Poly(2 * (1 + c)) * x, Poly(3 + c) * pow(x, 2),
                                      Poly(4 * c), Poly(2 * (1 + c)) * x};
  std::array<Poly, kNumClasses> r;
  for (int k = 0; k < kNumClasses; ++k) r[k] = Poly(Rational(1, 2)) * q[k] + Poly(Rational(1, 8)) * th[k];
  return r;
}

Poly poly_fourier(const std::array<Poly, kNumClasses>& f, int lambda) {
  Poly s;
  for (int k = 0; k < kNumClasses; ++k) {
    auto cc = static_cast<ConjClass>(k);
    s += Poly(Rational(class_size(cc) * irrep_character(lambda, cc), irrep_dim(lambda))) * f[k];
  }
  return s;
}

Rational inv_or_zero(const Rational& x) { return x == 0 ? Rational(0) : Rational(1) / x; }

CoeffVector zero_vector() { return CoeffVector{}; }

CoeffVector scaled_sum(const std::array<Rational, kNumIrreps>& w, const CoeffVector& y) {
  CoeffVector r = zero_vector();
  for (int l = 0; l < kNumIrreps; ++l) {
    if (w[l] == 0) continue;
    auto e = apply_idempotent<Rational>(l, y);
    for (int i = 0; i < kNumPerms; ++i) r[i] += e[i] * w[l];
  }
  return r;
}

RationalMatrix class_matrix(const std::array<Rational, kNumClasses>& f) {
  RationalMatrix m(kNumPerms, kNumPerms);
  for (int i = 0; i < kNumPerms; ++i)
    for (int j = 0; j < kNumPerms; ++j)
      m(i, j) = f[static_cast<int>(PermOp::from_index(compose_index(i, j)).conj_class())];
  return m;
}

Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
  Eigen::MatrixXd r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}

PermVector<double> perm_combination(const std::vector<std::pair<const char*, double>>& terms, double scale) {
  PermVector<double> v{};
  for (const auto& [cyc, w] : terms) v[PermOp::parse(cyc).index()] += w * scale;
  return v;
}

}  // namespace

CoeffVector c_vector_symbolic(long d) { return vector_from_fine(c_table(d)); }
CoeffVector q_vector_symbolic(long d) { return vector_from_fine(q_table(d)); }

CoeffVector subtract(const CoeffVector& a, const CoeffVector& b) {
  CoeffVector r;
  for (int i = 0; i < kNumPerms; ++i) r[i] = a[i] - b[i];
  return r;
}

PermVector<std::complex<double>> c_vector(const FormFactors& ff) { return numeric(c_vector_symbolic(ff.d), ff); }

PermVector<std::complex<double>> q_vector_stabilizer(const FormFactors& ff) {
  if (!ff.stabilizer_valid)
    throw std::invalid_argument("q_vector_stabilizer: form factors carry no stabilizer g3tilde");
  return numeric(q_vector_symbolic(ff.d), ff);
}

const std::array<std::array<Rational, kNumPerms>, kNumPerms>& idempotent(int lambda) {
  static const auto tables = [] {
    std::array<std::array<std::array<Rational, kNumPerms>, kNumPerms>, kNumIrreps> t;
    for (int l = 0; l < kNumIrreps; ++l)
      for (int i = 0; i < kNumPerms; ++i)
        for (int j = 0; j < kNumPerms; ++j) {
          int pij = compose_index(inverse_index(i), j);
          t[l][i][j] = Rational(irrep_dim(l) * irrep_character(l, PermOp::from_index(pij).conj_class()), 24);
          t[l][i][j].canonicalize();
        }
    return t;
  }();
  return tables.at(lambda);
}

Rational exact_cos4theta(double theta) {
  double c = std::cos(4.0 * theta);
  for (int k = -2; k <= 2; ++k)
    if (std::abs(c - 0.5 * k) < 1e-14) {
      Rational r(k, 2);
      r.canonicalize();
      return r;
    }
  return from_double(c);
}

DopingSpectrum doping_spectrum(long d, double theta) {
  if (d < 2) throw std::invalid_argument("doping_spectrum: d must be >= 2");
  DopingSpectrum s;
  s.d = d;
  s.theta = theta;
  s.cos4theta = exact_cos4theta(theta);
  Rational x = d;
  auto fp = poly_plain(), fq = poly_q(), fk = poly_k2(s.cos4theta);
  for (int l = 0; l < kNumIrreps; ++l) {
    Poly om = poly_fourier(fp, l), omp = poly_fourier(fq, l), k2 = poly_fourier(fk, l);
    Poly omm = om - omp;
    IrrepBlock& b = s.blocks[l];
    b.omega = om(x);
    b.omega_plus = omp(x);
    b.omega_minus = omm(x);
    b.k2 = k2(x);
    b.w_plus = inv_or_zero(b.omega_plus);
    b.w_minus = inv_or_zero(b.omega_minus);
    int r1 = 0, r2 = 0;
    if (omp.is_zero() && omm.is_zero()) {
      b.xi = 0;
      b.lambda = 0;
    } else if (omp.is_zero()) {
      b.xi = k2.is_zero() ? Rational(0) : limit_ratio(k2, omm, x, &r1);
      b.lambda = k2.is_zero() ? Rational(0) : limit_ratio(-k2, omm, x, &r2);
    } else if (omm.is_zero()) {
      b.xi = limit_ratio(k2, omp, x, &r1);
      b.lambda = 0;
    } else {
      b.xi = limit_ratio(k2 * omm + (k2 - omp) * omp, omp * omm, x, &r1);
      b.lambda = limit_ratio(omp - k2, omm, x, &r2);
    }
    // the Moore-Penrose value differs from the limit only where a Gram coefficient vanishes at d
    b.continued = (r1 > 0 || r2 > 0) && (b.omega_plus == 0 || b.omega_minus == 0);
    s.any_continued = s.any_continued || b.continued;
  }
  return s;
}

XiClosedForm xi_closed_form(long d, double theta) {
  double c = std::cos(4.0 * theta), x = static_cast<double>(d);
  double den = 8.0 * (x * x - 1.0);
  return {((7 + c) * x * x + 3 * x * (1 - c) - 8) / den, ((7 + c) * x * x - 3 * x * (1 - c) - 8) / den,
          ((7 + c) * x * x - 8) / den};
}

MomentCoeffs haar_moment4(const CoeffVector& c, long d) {
  std::array<Rational, kNumIrreps> w;
  for (int l = 0; l < kNumIrreps; ++l) w[l] = inv_or_zero(gram_fourier(GramKind::Plain, d, l));
  MomentCoeffs m;
  m.a = zero_vector();
  m.b = scaled_sum(w, c);
  return m;
}

TBVectors tb_vectors(const CoeffVector& q, const CoeffVector& q_perp, long d) {
  std::array<Rational, kNumIrreps> wp, wm;
  for (int l = 0; l < kNumIrreps; ++l) {
    wp[l] = inv_or_zero(gram_fourier(GramKind::QProjected, d, l));
    wm[l] = inv_or_zero(gram_fourier(GramKind::QPerpProjected, d, l));
  }
  TBVectors r;
  r.b = scaled_sum(wm, q_perp);
  r.t = subtract(scaled_sum(wp, q), r.b);
  return r;
}

MomentCoeffs clifford_moment4(const CoeffVector& q, const CoeffVector& q_perp, long d) {
  TBVectors tb = tb_vectors(q, q_perp, d);
  return MomentCoeffs{tb.t, tb.b};
}

DopedMoment doped_moment4(const CoeffVector& t, const CoeffVector& b, const DopingSpectrum& spec) {
  DopedMoment m;
  m.spectrum = spec;
  m.b0 = b;
  for (int l = 0; l < kNumIrreps; ++l) m.t_blocks[l] = apply_idempotent<Rational>(l, t);
  return m;
}

MomentCoeffs DopedMoment::at(long k) const {
  if (k < 0) throw std::invalid_argument("doped moment: k must be >= 0");
  MomentCoeffs m;
  m.a = zero_vector();
  m.b = b0;
  for (int l = 0; l < kNumIrreps; ++l) {
    const auto& blk = spectrum.blocks[l];
    Rational xk = rpow(blk.xi, k);
    Rational geom = blk.xi == 1 ? Rational(k) : (1 - xk) / (1 - blk.xi);
    Rational lg = blk.lambda * geom;
    for (int i = 0; i < kNumPerms; ++i) {
      m.a[i] += t_blocks[l][i] * xk;
      m.b[i] += t_blocks[l][i] * lg;
    }
  }
  return m;
}

MomentCoeffsT<double> DopedMoment::at_double(long k) const {
  if (k < 0) throw std::invalid_argument("doped moment: k must be >= 0");
  MomentCoeffsT<double> m;
  m.a = PermVector<LinForm<double>>{};
  m.b = convert<double>(b0);
  for (int l = 0; l < kNumIrreps; ++l) {
    const auto& blk = spectrum.blocks[l];
    double xi = blk.xi.get_d();
    double xk = std::pow(xi, static_cast<double>(k));
    double geom = blk.xi == 1 ? static_cast<double>(k) : (1.0 - xk) / (1.0 - xi);
    double lg = blk.lambda.get_d() * geom;
    auto tb = convert<double>(t_blocks[l]);
    for (int i = 0; i < kNumPerms; ++i) {
      m.a[i] += tb[i] * xk;
      m.b[i] += tb[i] * lg;
    }
  }
  return m;
}

Moment2 haar_moment2(double g2, long d) {
  double x = static_cast<double>(d);
  return {(g2 - 1.0) / (x * x - 1.0), (x * x - g2) / (x * (x * x - 1.0))};
}

std::array<PermVector<double>, 6> xi_eigenvectors() {
  std::array<PermVector<double>, 6> v;
  const double s6 = 1.0 / (2.0 * std::sqrt(6.0)), s2 = 1.0 / (2.0 * std::sqrt(2.0));
  for (int i = 0; i < kNumPerms; ++i) {
    ConjClass c = all_perms()[i].conj_class();
    v[0][i] = irrep_character(0, c) * s6;
    v[1][i] = irrep_character(4, c) * s6;
  }
  v[2] = perm_combination({{"()", 1},
                           {"(124)", -1},
                           {"(132)", -1},
                           {"(143)", -1},
                           {"(234)", -1},
                           {"(12)(34)", 1},
                           {"(13)(24)", 1},
                           {"(14)(23)", 1}},
                          s2);
  v[3] = perm_combination({{"(13)", 1},
                           {"(24)", 1},
                           {"(14)", -1},
                           {"(23)", -1},
                           {"(1342)", -1},
                           {"(1243)", -1},
                           {"(1234)", 1},
                           {"(1432)", 1}},
                          s2);
  v[4] = perm_combination({{"(12)", 2},
                           {"(34)", 2},
                           {"(13)", -1},
                           {"(14)", -1},
                           {"(23)", -1},
                           {"(24)", -1},
                           {"(1423)", 2},
                           {"(1324)", 2},
                           {"(1234)", -1},
                           {"(1243)", -1},
                           {"(1342)", -1},
                           {"(1432)", -1}},
                          s6);
  v[5] = perm_combination({{"()", 1},
                           {"(124)", 1},
                           {"(132)", 1},
                           {"(143)", 1},
                           {"(234)", 1},
                           {"(123)", -2},
                           {"(134)", -2},
                           {"(142)", -2},
                           {"(243)", -2},
                           {"(12)(34)", 1},
                           {"(13)(24)", 1},
                           {"(14)(23)", 1}},
                          -s6);
  return v;
}

XiMatrix xi_matrix(long d, double theta) {
  DopingSpectrum spec = doping_spectrum(d, theta);
  auto wp = weingarten_by_characters(WeingartenKind::Plus, d);
  auto wm = weingarten_by_characters(WeingartenKind::Minus, d);
  RationalMatrix Wp = weingarten_matrix(wp), Wm = weingarten_matrix(wm);
  RationalMatrix Op = gram(GramKind::QProjected, d);
  Rational c = spec.cos4theta;
  auto q = gram_class_function(GramKind::QProjected, d);
  Rational x = d;
  std::array<Rational, kNumClasses> theta2 = {(3 + c) * x * x, 2 * (1 + c) * x, (3 + c) * x * x, 4 * c,
                                              2 * (1 + c) * x};
  std::array<Rational, kNumClasses> k2;
  for (int k = 0; k < kNumClasses; ++k) k2[k] = q[k] / 2 + theta2[k] / 8;
  RationalMatrix K2 = class_matrix(k2);
  RationalMatrix Xi = (Wp + Wm) * K2 - Wm * Op;
  RationalMatrix La = Wm * (Op - K2);
  // replace blocks whose Moore-Penrose value is a removable singularity by the limit
  for (int l = 0; l < kNumIrreps; ++l) {
    const auto& b = spec.blocks[l];
    if (!b.continued) continue;
    Rational xi_mp = b.w_plus * b.k2 + b.w_minus * (b.k2 - b.omega_plus);
    Rational la_mp = b.w_minus * (b.omega_plus - b.k2);
    const auto& e = idempotent(l);
    for (int i = 0; i < kNumPerms; ++i)
      for (int j = 0; j < kNumPerms; ++j) {
        Xi(i, j) += (b.xi - xi_mp) * e[i][j];
        La(i, j) += (b.lambda - la_mp) * e[i][j];
      }
  }
  XiMatrix m;
  m.d = d;
  m.theta = theta;
  m.entries = to_eigen(Xi);
  m.lambda_entries = to_eigen(La);
  m.closed = xi_closed_form(d, theta);
  m.continued = spec.any_continued;
  m.eigvecs = xi_eigenvectors();
  return m;
}

}  // namespace isotwirl
