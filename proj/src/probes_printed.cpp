#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "isotwirl/probes.hpp"

namespace isotwirl {

namespace {

struct Vars {
  double x, s, g2, g22, r3, g4, gt;
  double c = 0, p = 0, m = 0, one = 0;  // cos 4 theta and xi_{+,-,1}^k
};

Vars vars(const FormFactors& ff, const EnsembleSpec& ens) {
  Vars v;
  v.x = static_cast<double>(ff.d);
  v.s = std::sqrt(v.x);
  v.g2 = ff.g2;
  v.g22 = ff.g2_2t;
  v.r3 = ff.g3.real();
  v.g4 = ff.g4;
  v.gt = ff.g3tilde;
  if (ens.kind == EnsembleSpec::Kind::Doped) {
    XiClosedForm xi = xi_closed_form(ff.d, ens.theta);
    double k = static_cast<double>(ens.k);
    v.c = std::cos(4 * ens.theta);
    v.p = std::pow(xi.xi_plus, k);
    v.m = std::pow(xi.xi_minus, k);
    v.one = std::pow(xi.xi_one, k);
  }
  return v;
}

double poly(double x, std::initializer_list<double> coeffs) {
  double r = 0, xn = 1;
  for (double c : coeffs) {
    r += c * xn;
    xn *= x;
  }
  return r;
}

// ---- Loschmidt echo

double loschmidt_haar(const Vars& v) {
  double x = v.x, G = v.g22 - 4 * v.g2 + v.g4;
  return (std::pow(x, 4) + (G - 9) * x * x - 2 * v.r3 * x - 6 * G) / (x * x * (std::pow(x, 4) - 10 * x * x + 9));
}

double loschmidt_clifford(const Vars& v) { return (v.gt - 1) * v.x * v.x / (v.x * v.x * (v.x * v.x - 1)); }

double loschmidt_doped(const Vars& v) {
  double x = v.x, g2 = v.g2, g22 = v.g22, r = v.r3, g4 = v.g4, gt = v.gt;
  double c0 = 96 * g22 - 384 * g2 + 48 * r + 96 * g4;
  double c1 = -12 * g22 - 48 * g2 + 16 * r;
  double c2 = -192 + 36 * g22 - 176 * g2 + 26 * r + 40 * g4;
  double c3 = -52 + 24 * g22 + 54 * g2 - 18 * r;
  double c4 = 244 + 50 * g2 - 16 * r - 8 * g4;
  double P0 = poly(x, {c0, c1, c2, c3, c4, 56, -56, -16});
  double B = -12 * g22 + 4 * r * x + (12 + g22 - 4 * g2) * x * x - std::pow(x, 4);
  double xp = x * (3 + x) *
              (-2 * r + g4 - 2 * g22 + x * g22 + 8 * g2 - 4 * x * g2 + (3 * x - x * x) * gt - 6 * x * x + 2 * x * x * x);
  double x1 = 4 * (x * x - 9) * (g22 - 4 * g2 + g4 + (3 - gt) * x * x);
  double xm = x * (3 - x) *
              (-2 * r - g4 + 2 * g22 + x * g22 - 8 * g2 - 4 * x * g2 + x * (3 + x) * gt + 6 * x * x + 2 * x * x * x);
  double K = xp * v.p + x1 * v.one + xm * v.m;
  double num = 3.0 / 16 * P0 + 3.0 / 16 * (x * x - 9) * B * v.c - 0.5 * (4 - 5 * x * x + std::pow(x, 4)) * K;
  return num / (3 * std::pow(x * x - 1, 2) * (36 - 13 * x * x + std::pow(x, 4)));
}

// ---- OTOC (printed forms equal d times the normalized correlator)

double otoc_haar(const Vars& v) {
  double x = v.x;
  return (-6 * v.r3 + (9 + v.g22 - 4 * v.g2 + v.g4) * x - x * x * x) / ((x - 1) * (x + 1) * (x - 3) * (x + 3)) / x;
}

double otoc_clifford(const Vars& v) {
  double x = v.x;
  return x * (4 - 2 * v.g22 + (-3 + v.gt) * x * x) / ((x - 1) * (x + 1) * (x - 2) * (x + 2)) / x;
}

double otoc_doped(const Vars& v) {
  double x = v.x, g2 = v.g2, g22 = v.g22, R = 2 * v.r3, g4 = v.g4, gt = v.gt;
  double c0 = 120 * R, c1 = -28 * g22 + 400 * g2 - 64 * g4 - 576, c2 = -151 * R,
         c3 = 748 + 4 * g22 - 498 * g2 + 80 * g4, c4 = 39 * R, c5 = -148 - 8 * g22 + 82 * g2 - 16 * g4;
  double P0 = poly(x, {c0, c1, c2, c3, c4, c5, 0, 8});
  double B = x * (x * x - 9) * (4 * g22 - x * (R + 4 * x - 2 * g2 * x));
  double xp = (3 + x) * x * (2 + x) * R - x * (3 + x) * (x * x - 4) * g22 -
              x * (3 + x) * (2 + x) * (g4 - 4 * g2 * (x - 2) - (gt - 2 * x) * (x - 3) * x);
  double x1 = (3 + x) * (x - 3) * (5 * R - 9 * x * g22 + x * (6 * g2 - 4 * g4 + (-7 + 4 * gt) * x * x));
  double xm = -(x - 3) * (x - 2) * x * R +
              x * (x - 3) * (x - 2) * (g22 * (2 + x) - g4 - 4 * g2 * (2 + x) + x * (3 + x) * (gt + 2 * x));
  double num = -3.0 / 16 * P0 + 3.0 / 16 * B * v.c + 0.5 * (x * x - 1) * (xp * v.p + x1 * v.one + xm * v.m);
  return num / (3 * std::pow(1 - x * x, 2) * (36 - 13 * x * x + std::pow(x, 4))) / x;
}

// ---- purity with a sqrt(d) x sqrt(d) split

double purity_haar(const Vars& v) {
  double x = v.x, s = v.s, R = 2 * v.r3;
  double num = v.g22 - 4 * v.g2 + R + v.g4 - v.g22 * s - s * (-4 * v.g2 + R + v.g4 + 2 * (1 + s) * x * x * (3 + x));
  return -num / ((1 + s) * x * x * (1 + x) * (3 + x));
}

double purity_clifford(const Vars& v) {
  double x = v.x, s = v.s;
  return (v.g22 * (s - 1) + v.gt * (s - 1) * x + 2 * x * (1 + x) * (1 + s + x)) / ((1 + s) * x * (1 + x) * (2 + x));
}

double purity_doped(const Vars& v) {
  double x = v.x, s = v.s, g2 = v.g2, g22 = v.g22, R = 2 * v.r3, g4 = v.g4, gt = v.gt;
  double F0 = -4 * g22 + 16 * g2 - R - 4 * g4;
  double A = poly(s, {F0,
                      -F0,
                      -4.5 * g22 - 6 * g2 - 2 * R,
                      1.5 * g22 + 6 * g2 - R,
                      5 * g22 - 16 * g2 + 11.0 / 8 * R + 5 * g4,
                      24 - 4.5 * g22 + 22 * g2 - 13.0 / 8 * R - 5 * g4,
                      3.5 * g22 + 7.25 * g2 + 2.5 * R + 28.5,
                      6.5 - 3 * g22 - 6.75 * g2 + 9.0 / 8 * R,
                      8 - 3 * g22 - g2 + 1.0 / 8 * R - g4,
                      -30.5 - 6.25 * g2 + R + g4,
                      -33.5 - g22 - 2.25 * g2,
                      -7, -8, 7, 7, 2, 2});
  double B = 0.5 * g22 - 1.0 / 8 * x * R - 0.5 * x * x + 0.25 * g2 * x * x;
  double C = poly(s, {R + 4 * g4,
                      -R - 4 * g4,
                      4.0 / 3 * R - 2.0 / 3 * g4,
                      5.0 / 3 * R + 2.0 / 3 * g4,
                      12 + 1.0 / 3 * R - 2.0 / 3 * g4 - 4 * gt,
                      -12 + 2.0 / 3 * R + 2.0 / 3 * g4 + 4 * gt,
                      -1 + 2.0 / 3 * gt,
                      1 - 2.0 / 3 * gt,
                      -2.0 / 3 + 2.0 / 3 * gt,
                      11.0 / 3 - 2.0 / 3 * gt,
                      1.0 / 3,
                      2.0 / 3});
  double num = A + x * (3 + x) * (1 + s + x) * v.c * B - (1 - x * x) * C * v.one;
  return num / ((1 - s) * (1 + s) * (1 + s) * (x - 2) * x * x * (1 + x) * (1 + x) * (2 + x) * (3 + x));
}

// ---- tripartite correlators with a sqrt(d) x sqrt(d) split

double c2_haar(const Vars& v) {
  double x = v.x, G = v.g22 - 4 * v.g2 + v.g4;
  return (6 * v.r3 + G * (x * x - x) - 6 * x * v.r3 - 18 * x * x * x + 2 * std::pow(x, 5)) /
         ((x - 3) * x * (x + 1) * (x + 3));
}

double cd_haar(const Vars& v) {
  double x = v.x, G = v.g22 - 4 * v.g2 + v.g4;
  return (3 * G - (3 * v.g22 - 12 * v.g2 + 2 * v.r3 + 3 * v.g4) * x + 2 * v.r3 * x * x - 18 * x * x * x +
          2 * std::pow(x, 5)) /
         ((x - 3) * x * (x + 1) * (x + 3));
}

double c2_clifford(const Vars& v) {
  double x = v.x;
  return (-2 * v.g22 * (x - 1) + x * x * (-6 + v.gt * (x - 1) + 2 * (x - 1) * x)) / ((1 + x) * (x * x - 4));
}

double cd_clifford(const Vars& v) {
  double x = v.x;
  return x * (v.g22 * (x - 1) + 2 * (-2 + v.gt - (2 + v.gt) * x + x * x * x)) / ((1 + x) * (x * x - 4));
}

double c2_doped(const Vars& v) {
  double x = v.x, g2 = v.g2, g22 = v.g22, R = 2 * v.r3, g4 = v.g4, gt = v.gt;
  double x1 = 2 * (x - 3) * (x + 3) * (R + x * (-3 * g22 + 6 * g2 - 2 * g4 + (-5 + 2 * gt) * x * x));
  double xp = (x + 3) * (x * (x + 2) * R - x * (x * x - 4) * g22 -
                         x * (x + 2) * (g4 - 4 * g2 * (x - 2) - (gt - 2 * x) * (x - 3) * x));
  double xm = (x - 3) * (x - 2) * x * (-R + (x + 2) * g22 - g4 - 4 * (x + 2) * g2 + x * (x + 3) * (gt + 2 * x));
  double P = poly(x, {-48 * R, 96 * R - 152 * g22 - 544 * g2 + 64 * g4, 2 * R + 160 * g22 + 1088 * g2 - 128 * g4,
                      -64 * R - 72 * g22 - 484 * g2 + 48 * g4 + 1368, 30 * R - 192 * g2 + 32 * g4 - 1440,
                      100 * g2 - 16 * g4 - 296, 448, 16, -32});
  double B = poly(x, {0, -72 * g22, 18 * R, 8 * g22 - 36 * g2 + 72, -2 * R, -8 + 4 * g2});
  double num = -3.0 / 16 * P + 3.0 / 16 * B * v.c + 0.5 * (x - 1) * (x - 1) * (xp * v.p + x1 * v.one + xm * v.m);
  return num / (3 * x * (x * x - 1) * (x * x - 4) * (x * x - 9));
}

double cd_doped(const Vars& v) {
  double x = v.x, g2 = v.g2, g22 = v.g22, R = 2 * v.r3, g4 = v.g4, gt = v.gt;
  double x1 = poly(x, {72 * g4, 18 * R - 72 * g4, 216 + 36 * R - 8 * g4 - 72 * gt, -216 - 2 * R + 8 * g4 + 72 * gt,
                       -6 - 4 * R + 8 * gt, 60 - 8 * gt, -2, -4}) +
              (3 + x) * (-4 * g2 * (x - 3) * (8 + x * (-8 + x + 2 * x * x)) +
                         2 * g22 * (x - 3) * (-4 + x * (4 + x + 2 * x * x)));
  double xp = poly(x, {0, 6 * R - 6 * g4, -R + g4 - 18 * gt, 36 - 4 * R + 4 * g4 + 9 * gt, -18 - R + g4 + 11 * gt,
                       -22 - gt, 2 - gt, 2}) +
              (3 + x) * (x - 2) * (x - 1) * x * (2 + x) * (g22 - 4 * g2);
  double xm = (x - 3) * (x - 2) * (x - 1) * x * (2 + x) * (g22 - 4 * g2 - R - g4 + x * (3 + x) * (gt + 2 * x));
  double G = g22 - 4 * g2 + g4;
  double P = 2 * poly(x, {-96 * G, 8 * (12 * g22 - 48 * g2 - 5 * R + 12 * g4), 4 * (39 * g22 - 84 * g2 - 8 * R + 30 * g4),
                          576 - 120 * g22 + 480 * g2 + 49 * R - 120 * g4,
                          -2 * (18 + 50 * g22 + 41 * g2 - 20 * R + 12 * g4), -784 + 24 * g22 - 96 * g2 - R + 24 * g4,
                          2 * (38 + 4 * g22 + 9 * g2 - 4 * R), 224, -8, -16});
  double B = 2 * x * x * (x * x - 9) * (4 * g22 - x * (R + 4 * x - 2 * g2 * x));
  double num = -3.0 / 16 * P + 3.0 / 16 * B * v.c + 0.5 * (x - 1) * (x + 1) * (xp * v.p + x1 * v.one + xm * v.m);
  return num / (3 * (x - 3) * (x - 2) * (x - 1) * x * (1 + x) * (1 + x) * (2 + x) * (3 + x));
}

// ---- coherence and WYD (returned as 1 - term)

double coherence_haar_term(const Vars& v) {
  double x = v.x;
  return (v.g22 - 4 * v.g2 + 2 * v.r3 + v.g4 + 2 * x * x * (3 + x)) / (x * x * (1 + x) * (3 + x));
}

double coherence_clifford_term(const Vars& v) {
  double x = v.x;
  return (v.g22 + x * (2 + v.gt + 2 * x)) / (x * (1 + x) * (2 + x));
}

double coherence_doped_term(const Vars& v) {
  double x = v.x, g2 = v.g2, g22 = v.g22, R = 2 * v.r3, g4 = v.g4, gt = v.gt;
  double P0 = 24 * (4 * g22 - 16 * g2 + R + 4 * g4) - 12 * g22 * x + 8 * (-6 * g2 + R) * x +
              (-192 + 36 * g22 - 176 * g2 + 13 * R + 40 * g4) * x * x +
              (-52 + 24 * g22 + 54 * g2 - 9 * R) * x * x * x + 2 * (122 + 25 * g2 - 4 * R - 4 * g4) * std::pow(x, 4) +
              56 * std::pow(x, 5) - 56 * std::pow(x, 6) - 16 * std::pow(x, 7);
  double P1 = 3 * x * (3 + x) * (4 * g22 - x * (R + 4 * x - 2 * g2 * x));
  double x1 = 8 * (1 - x * x) *
              ((3 + x) * (4 * g22 - 16 * g2 + R + g4) - 3 * g22 * x - 2 * (-3 * g2 + R + g4) * x +
               2 * (6 + g22 + 2 * g2 - 2 * gt) * x * x + (-5 + 2 * gt) * x * x * x - 2 * std::pow(x, 4));
  double xm = (x - 2) * x * (-R - g4 + g22 * (2 + x) - 4 * g2 * (2 + x) + x * (3 + x) * (gt + 2 * x));
  double num = P0 + P1 * v.c + x1 * v.one + xm * v.m;
  return num / (24 * (x - 2) * (x - 1) * x * x * (1 + x) * (1 + x) * (2 + x) * (3 + x));
}

double wydp_haar_term(const Vars& v) {
  double x = v.x;
  return (v.g22 - 4 * v.g2 + 2 * v.r3 + v.g4 + (x - 1) * x * (x + 3)) / ((x - 1) * x * (x + 1) * (x + 3));
}

double wydp_clifford_term(const Vars& v) {
  double x = v.x;
  return (-2 + v.g22 + x * (-1 + v.gt + x)) / ((x - 1) * (x + 1) * (x + 2));
}

double wyd_xi_minus(const Vars& v, double R) {
  double x = v.x;
  return -(R + v.g4) + (2 + x) * (v.g22 - 4 * v.g2) + x * (3 + x) * (v.gt + 2 * x);
}

double wyd_xi_one(const Vars& v, double R) {
  double x = v.x, g2 = v.g2, g22 = v.g22, g4 = v.g4, gt = v.gt;
  return (4 * g22 - 16 * g2 + R + 4 * g4) - x * (3 * g22 + 2 * (-3 * g2 + R + g4)) +
         2 * x * x * (6 + g22 + 2 * g2 - 2 * gt) + (-5 + 2 * gt) * x * x * x - 2 * std::pow(x, 4);
}

double wydp_doped_term(const Vars& v) {
  double x = v.x, g2 = v.g2, g22 = v.g22, R = 2 * v.r3, g4 = v.g4;
  double x1 = 8 * wyd_xi_one(v, R), xm = wyd_xi_minus(v, R);
  double P = poly(x, {76 * g22 - 256 * g2 + 64 * g4 + 40 * R, -192 + 16 * g22 + 48 * g2 - 14 * R,
                      116 - 73 * g22 + 348 * g2 - 80 * g4 - 55 * R, 288 - 23 * g22 - 50 * g2 + 9 * R,
                      -167 + 8 * g22 - 82 * g2 + 16 * g4 + 16 * R, -105, 40, 16});
  double C = g22 * (x - 2) + x * (R - x * (-2 + 2 * g2 + x));
  double num = 3.0 / 16 * P - 3.0 / 16 * (x * x + x - 6) * C * v.c +
               0.5 * (x - 1) * (x + 1) * ((3 + x) * x1 * v.one + 2 * (x - 2) * x * xm * v.m);
  return num / (3 * (x - 2) * x * (x + 2) * (x + 3) * std::pow(x * x - 1, 2));
}

double wydcb_doped_term(const Vars& v) {
  double x = v.x, g2 = v.g2, g22 = v.g22, R = 2 * v.r3, g4 = v.g4;
  double x1 = wyd_xi_one(v, R), xm = wyd_xi_minus(v, R);
  double P0 = -8 * (4 * g22 - 16 * g2 + R + 4 * g4) + (x - 1) * (12 * g22 + 48 * g2 - 8 * R) +
              x * x * (36 * g22 - 176 * g2 + 13 * R + 40 * g4 - 192) + x * x * x * (24 * g22 + 54 * g2 - 9 * R - 52) +
              std::pow(x, 4) * (244 + 50 * g2 - 8 * R - 8 * g4) + 56 * std::pow(x, 5) - 56 * std::pow(x, 6) -
              16 * std::pow(x, 7);
  double B = 4 * g22 - x * (R + 4 * x - 2 * g2 * x);
  double num = -3.0 / 8 * P0 + 3.0 / 8 * x * (3 + x) * B * v.c +
               (x - 1) * (x + 1) * ((3 + x) * x1 * v.one + (x - 2) * x * xm * v.m);
  return num / (3 * (x - 2) * (x - 1) * x * x * (1 + x) * (1 + x) * (x + 2) * (x + 3));
}

}  // namespace

bool printed_has_form(ProbeKind, EnsembleSpec::Kind) { return true; }

double printed_probe(ProbeKind kind, const EnsembleSpec& ens, const FormFactors& ff) {
  Vars v = vars(ff, ens);
  using K = EnsembleSpec::Kind;
  auto pick = [&](double (*h)(const Vars&), double (*c)(const Vars&), double (*dp)(const Vars&)) {
    switch (ens.kind) {
      case K::Haar: return h(v);
      case K::Clifford: return c(v);
      case K::Doped: return dp(v);
    }
    return 0.0;
  };
  switch (kind) {
    case ProbeKind::Loschmidt2: return pick(loschmidt_haar, loschmidt_clifford, loschmidt_doped);
    case ProbeKind::Otoc4: return pick(otoc_haar, otoc_clifford, otoc_doped);
    case ProbeKind::Purity2Renyi: return pick(purity_haar, purity_clifford, purity_doped);
    case ProbeKind::TripartiteC2: return pick(c2_haar, c2_clifford, c2_doped);
    case ProbeKind::TripartiteCD: return pick(cd_haar, cd_clifford, cd_doped);
    case ProbeKind::CoherenceL2:
      return 1 - pick(coherence_haar_term, coherence_clifford_term, coherence_doped_term);
    case ProbeKind::WydPauli: return 1 - pick(wydp_haar_term, wydp_clifford_term, wydp_doped_term);
    case ProbeKind::WydCB: return 1 - pick(coherence_haar_term, coherence_clifford_term, wydcb_doped_term);
  }
  throw std::invalid_argument("printed_probe: unknown probe");
}

std::string MismatchReport::str() const {
  std::ostringstream os;
  os.precision(6);
  os << to_string(probe) << " " << ensemble.str() << " d=" << d << ": " << failures << "/" << points
     << " points off, max rel err " << max_rel_error;
  for (const auto& [sym, pr] : coefficient_diffs) {
    double scale = std::max({std::abs(pr.first), std::abs(pr.second), 1e-300});
    if (std::abs(pr.first - pr.second) > 1e-9 * scale)
      os << "\n    coeff " << sym << ": table " << pr.first << " printed " << pr.second;
  }
  return os.str();
}

MismatchReport compare_with_printed(ProbeKind kind, const EnsembleSpec& ens, long d,
                                  const std::vector<FormFactors>& grid, double rel_tol) {
  ProbeForm<double> form = build_probe_form<double>(kind, ens, d, sqrt_dims(d));
  MismatchReport rep{kind, ens, d, 0.0, 0, 0, {}};
  auto rel = [](double a, double b) {
    double scale = std::max(std::abs(a), std::abs(b));
    return scale < 1e-300 ? 0.0 : std::abs(a - b) / scale;
  };
  for (FormFactors ff : grid) {
    ff.d = d;
    double a = form.value(ff, ens.k), b = printed_probe(kind, ens, ff);
    double e = std::isfinite(a) && std::isfinite(b) ? rel(a, b) : INFINITY;
    rep.max_rel_error = std::max(rep.max_rel_error, e);
    ++rep.points;
    if (!(e <= rel_tol)) ++rep.failures;
  }
  // coefficient of each form factor: value at a unit vector minus the value at zero
  FormFactors zero;
  zero.d = d;
  zero.g3 = 0;
  double a0 = form.value(zero, ens.k), b0 = printed_probe(kind, ens, zero);
  rep.coefficient_diffs["1"] = {a0, b0};
  const char* names[] = {"g2", "g2(2t)", "Re g3", "g4", "g3tilde"};
  for (int i = 0; i < 5; ++i) {
    FormFactors u = zero;
    switch (i) {
      case 0: u.g2 = 1; break;
      case 1: u.g2_2t = 1; break;
      case 2: u.g3 = 1; break;
      case 3: u.g4 = 1; break;
      case 4: u.g3tilde = 1; break;
    }
    rep.coefficient_diffs[names[i]] = {form.value(u, ens.k) - a0, printed_probe(kind, ens, u) - b0};
  }
  return rep;
}

}  // namespace isotwirl
