#include "isotwirl/spectral.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <boost/math/special_functions/bessel.hpp>

namespace isotwirl {

namespace {

using cd = std::complex<double>;

std::vector<cd> phases(const Spectrum& s, double t) {
  std::vector<cd> f(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) f[i] = std::polar(1.0, -s[i] * t);
  return f;
}

void walsh_hadamard(std::vector<cd>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        cd x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
}

void require_cb(const Spectrum& s) {
  if (!is_power_of_two(static_cast<long>(s.size())))
    throw std::invalid_argument("Clifford form factor needs a bitstring-indexed spectrum of size 2^N");
}

}  // namespace

bool is_power_of_two(long d) { return d >= 1 && (d & (d - 1)) == 0; }

FormFactors sff_explicit(const Spectrum& s, double t) {
  if (s.empty()) throw std::invalid_argument("empty spectrum");
  cd tr1 = 0, tr2 = 0;
  for (double e : s) {
    tr1 += std::polar(1.0, -e * t);
    tr2 += std::polar(1.0, -2.0 * e * t);
  }
  FormFactors f;
  f.t = t;
  f.d = static_cast<long>(s.size());
  f.g2 = std::norm(tr1);
  f.g2_2t = std::norm(tr2);
  f.g3 = tr2 * std::conj(tr1) * std::conj(tr1);
  f.g4 = f.g2 * f.g2;
  f.source = SpectralSource::Explicit;
  return f;
}

FormFactors sff_stabilizer(const Spectrum& s, double t) {
  FormFactors f = sff_explicit(s, t);
  f.g3tilde = sff_clifford_cb(s, t);
  f.stabilizer_valid = true;
  return f;
}

double sff_clifford_cb(const Spectrum& s, double t) {
  require_cb(s);
  auto a = phases(s, t);
  walsh_hadamard(a);
  for (auto& v : a) v *= v;
  walsh_hadamard(a);
  double d = static_cast<double>(s.size());
  double acc = 0.0;
  // a_s = sum_i f_i f_{i^s} = (H (H f)^2)_s / d
  for (const auto& v : a) acc += std::norm(v);
  return acc / (d * d * d);
}

double sff_clifford_cb_direct(const Spectrum& s, double t) {
  require_cb(s);
  auto f = phases(s, t);
  std::size_t d = s.size();
  cd acc = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) acc += f[i] * f[j] * std::conj(f[k] * f[i ^ j ^ k]);
  return acc.real() / static_cast<double>(d);
}

FormFactors sff_bruteforce(const Spectrum& s, double t) {
  std::size_t d = s.size();
  if (d > 32) throw std::invalid_argument("sff_bruteforce: d too large");
  cd g2 = 0, g22 = 0, g3 = 0, g4 = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      g2 += std::polar(1.0, -(s[i] - s[j]) * t);
      g22 += std::polar(1.0, -2.0 * (s[i] - s[j]) * t);
      for (std::size_t k = 0; k < d; ++k) {
        g3 += std::polar(1.0, -(2.0 * s[i] - s[j] - s[k]) * t);
        for (std::size_t l = 0; l < d; ++l) g4 += std::polar(1.0, -(s[i] + s[j] - s[k] - s[l]) * t);
      }
    }
  FormFactors f;
  f.t = t;
  f.d = static_cast<long>(d);
  f.g2 = g2.real();
  f.g2_2t = g22.real();
  f.g3 = g3;
  f.g4 = g4.real();
  if (is_power_of_two(static_cast<long>(d))) {
    f.g3tilde = sff_clifford_cb_direct(s, t);
    f.stabilizer_valid = true;
  }
  return f;
}

FormFactors gde_averages(long d, double t) {
  if (d < 2) throw std::invalid_argument("gde_averages: d must be >= 2");
  double x = static_cast<double>(d);
  double e1 = std::exp(-t * t / 4.0), e2 = std::exp(-t * t / 2.0), e3 = std::exp(-3.0 * t * t / 4.0),
         e4 = std::exp(-t * t);
  FormFactors f;
  f.t = t;
  f.d = d;
  f.g2 = x + x * (x - 1) * e1;
  f.g2_2t = x + x * (x - 1) * e4;
  f.g3 = x + x * (x - 1) * e4 + 2 * x * (x - 1) * e1 + x * (x - 1) * (x - 2) * e3;
  f.g4 = x * (2 * x - 1) + 4 * x * (x - 1) * (x - 1) * e1 + x * (x - 1) * e4 + 2 * x * (x - 1) * (x - 2) * e3 +
         x * (x - 1) * (x - 2) * (x - 3) * e2;
  f.g3tilde = 2 * x - 1 + (x - 1) * e4 + (x - 1) * (x - 2) * e2;
  f.source = SpectralSource::GDE;
  f.stabilizer_valid = true;
  return f;
}

double gue_r1(double t) {
  if (std::abs(t) < 1e-8) return 1.0 - t * t / 2.0;
  return boost::math::cyl_bessel_j(1, 2.0 * t) / t;
}

double gue_r2(long d, double t) {
  double x = static_cast<double>(d);
  return t < 2.0 * x ? 1.0 - t / (2.0 * x) : 0.0;
}

double gue_r3(double t) {
  double u = M_PI * t / 2.0;
  if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

FormFactors gue_averages(long d, double t) {
  if (d < 4) throw std::invalid_argument("gue_averages: d must be >= 4");
  double x = static_cast<double>(d);
  double r1 = gue_r1(t), r1b = gue_r1(2 * t);
  double r2 = gue_r2(d, t), r2b = gue_r2(d, 2 * t), r2c = gue_r2(d, 3 * t);
  double r3 = gue_r3(t), r3b = gue_r3(2 * t);
  double r1s = r1 * r1;
  double two_point = x * x * r1s - x * r2;
  double two_point_2t = x * x * r1b * r1b - x * r2b;
  // distinct-index three-point part of g3
  double three = x * x * x * r1s * r1b - x * x * r1b * r2 * r3b - 2 * x * x * r1 * r2b * r3 + 2 * x * r2c;
  double four = x * x * x * x * r1s * r1s - 6 * x * r2b - 2 * x * x * x * r1s * r2 * r3b -
                4 * x * x * x * r1s * r2 + 2 * x * x * r2 * r2 + x * x * r2 * r2 * r3b * r3b +
                8 * x * x * r1 * r2 * r3;
  FormFactors f;
  f.t = t;
  f.d = d;
  f.g2 = x + two_point;
  f.g2_2t = x + two_point_2t;
  f.g3 = three + two_point_2t + 2 * two_point + x;
  f.g4 = four + 2 * three + 4 * (x - 1) * two_point + two_point_2t + 2 * x * (x - 1) + x;
  f.g3tilde = 2 * x - 1 - r2b + x * r1b * r1b + four / (x * (x - 3));
  f.source = SpectralSource::GUE;
  f.stabilizer_valid = true;
  return f;
}

EnvelopeTimes envelope_times(long d) {
  double x = static_cast<double>(d);
  EnvelopeTimes e;
  e.d = d;
  const char* rows[5] = {"t~1", "t~d^1/6", "t~d^1/3", "t~d^1/2", "t~d"};
  double times[5] = {1.0, std::pow(x, 1.0 / 6), std::pow(x, 1.0 / 3), std::sqrt(x), x};
  double g2v[5] = {x, std::pow(x, 1.5), x, std::sqrt(x), x};
  double g3v[5] = {2 * x, 3 * x, 2 * x, 2 * x, 2 * x};
  double g4v[5] = {x * x, x * x * x, x * x, x, x * x};
  for (int i = 0; i < 5; ++i) {
    e.features.push_back({"g2", rows[i], g2v[i], times[i]});
    e.features.push_back({"g3tilde", rows[i], g3v[i], times[i]});
    e.features.push_back({"g4", rows[i], g4v[i], times[i]});
  }
  e.g2_equilibration = std::cbrt(x / M_PI);
  e.g2_plateau = x;
  e.g3tilde_plateau = 2 * x;
  e.g4_plateau = 2 * x * x;
  return e;
}

std::vector<double> time_grid(double t_min, double t_max, int points, bool log_spaced) {
  if (points < 1) throw std::invalid_argument("time_grid: points must be >= 1");
  if (t_max < t_min) throw std::invalid_argument("time_grid: t_max < t_min");
  if (log_spaced && t_min <= 0) throw std::invalid_argument("time_grid: log grid needs t_min > 0");
  std::vector<double> g(points);
  if (points == 1) {
    g[0] = t_min;
    return g;
  }
  for (int i = 0; i < points; ++i) {
    double u = static_cast<double>(i) / (points - 1);
    g[i] = log_spaced ? t_min * std::pow(t_max / t_min, u) : t_min + (t_max - t_min) * u;
  }
  return g;
}

}  // namespace isotwirl
