#include "isotwirl/hamiltonians.hpp"

#include <cmath>
#include <stdexcept>

namespace isotwirl {

namespace {

void check_toric(int N) {
  if (N < 1) throw std::invalid_argument("toric code: N must be >= 1");
}

double binom(int n, int k) { return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0))); }

}  // namespace

Spectrum cb_spectrum(const std::vector<double>& omegas) {
  if (omegas.empty()) throw std::invalid_argument("cb_spectrum: need at least one frequency");
  if (omegas.size() > 24) throw std::invalid_argument("cb_spectrum: N > 24 exceeds the memory guard");
  std::size_t d = std::size_t{1} << omegas.size();
  Spectrum s(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t b = 0; b < omegas.size(); ++b) s[i] += ((i >> b) & 1) ? -omegas[b] : omegas[b];
  return s;
}

Eigen::VectorXd cb_hamiltonian_diagonal(const std::vector<double>& omegas) {
  if (omegas.size() > 12) throw std::invalid_argument("cb_hamiltonian_diagonal: N > 12");
  int n = static_cast<int>(omegas.size());
  Eigen::VectorXd z(2);
  z << 1.0, -1.0;
  Eigen::VectorXd total = Eigen::VectorXd::Zero(1 << n);
  for (int b = 0; b < n; ++b) {
    // Kronecker product with qubit 0 as the least significant index
    Eigen::VectorXd term = Eigen::VectorXd::Ones(1);
    for (int q = n - 1; q >= 0; --q) {
      Eigen::VectorXd f = q == b ? z : Eigen::VectorXd::Ones(2);
      Eigen::VectorXd next(term.size() * 2);
      for (Eigen::Index i = 0; i < term.size(); ++i)
        for (int k = 0; k < 2; ++k) next(i * 2 + k) = term(i) * f(k);
      term = next;
    }
    total += omegas[b] * term;
  }
  return total;
}

double ToricCode::dim() const { return std::ldexp(1.0, qubits()); }

std::vector<Stabilizer> toric_stabilizers(int N) {
  check_toric(N);
  auto h = [N](int r, int c) { return ((r % N + N) % N) * N + (c % N + N) % N; };
  auto v = [N](int r, int c) { return N * N + ((r % N + N) % N) * N + (c % N + N) % N; };
  std::vector<Stabilizer> s;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) s.push_back({true, {h(r, c), h(r, c - 1), v(r, c), v(r - 1, c)}});
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) s.push_back({false, {h(r, c), h(r + 1, c), v(r, c), v(r, c + 1)}});
  return s;
}

std::complex<double> toric_trace(int N, double J, double t) {
  check_toric(N);
  int n = N * N;
  double d = std::ldexp(1.0, 2 * n);
  std::complex<double> s = std::pow(std::cos(J * t), n) + std::pow(std::complex<double>(0, std::sin(J * t)), n);
  return d * s * s;
}

double toric_g3tilde(int N, double J, double t) {
  check_toric(N);
  int n = N * N;
  double d = std::ldexp(1.0, 2 * n);
  double y = std::pow(std::sin(2 * J * t), 2) / 2;
  double s = std::pow(1 - y, n);
  if (n % 2 == 0)
    s += 3 * std::pow(y, n) + 4 * ((n / 2) % 2 ? -1.0 : 1.0) * std::pow(std::sin(4 * J * t) / 4, n);
  else
    s += std::pow(y, n);
  return d * d * s * s;
}

double toric_g3tilde_tabulated(int N, double J, double t) {
  check_toric(N);
  int n = N * N;
  double d = std::ldexp(1.0, 2 * n);
  double c = std::cos(J * t), s = std::sin(J * t);
  return d * d * std::pow(std::pow(c, 4) + std::pow(s, 4), 2 * n) + 3 * d * std::pow(std::sin(2 * J * t), 2 * n) +
         4 * (n % 2 ? -1.0 : 1.0) * std::pow(std::sin(4 * J * t), 2 * n);
}

FormFactors toric_sff(int N, double J, double t) {
  if (N < 2) throw std::invalid_argument("toric_sff: N must be >= 2");
  if (N > 5) throw std::invalid_argument("toric_sff: N > 5 overflows the dimension");
  auto tr = toric_trace(N, J, t), tr2 = toric_trace(N, J, 2 * t);
  FormFactors f;
  f.t = t;
  f.d = 1L << (2 * N * N);
  f.g2 = std::norm(tr);
  f.g2_2t = std::norm(tr2);
  f.g3 = tr2 * std::conj(tr) * std::conj(tr);
  f.g4 = f.g2 * f.g2;
  f.g3tilde = toric_g3tilde(N, J, t);
  f.source = SpectralSource::Toric;
  f.stabilizer_valid = true;
  return f;
}

Spectrum toric_spectrum(int N, double J) {
  check_toric(N);
  if (N > 3) throw std::invalid_argument("toric_spectrum: N > 3 is not materialized");
  int n = N * N, q = 2 * N * N;
  std::size_t d = std::size_t{1} << q;
  Spectrum s(d);
  for (std::size_t i = 0; i < d; ++i) {
    double e = 0;
    for (int block = 0; block < 2; ++block) {
      int prod = 1;
      for (int k = 0; k < n - 1; ++k) {
        int z = ((i >> (block * (n - 1) + k)) & 1) ? -1 : 1;
        e += z;
        prod *= z;
      }
      e += prod;  // the last charge is fixed by the product constraint
    }
    s[i] = -J * e;
  }
  return s;
}

std::vector<Level> toric_levels(int N, double J) {
  check_toric(N);
  int n = N * N;
  // a charge sector with m flipped (-1) charges among n and m even
  std::vector<double> even(n + 1, 0.0);
  for (int m = 0; m <= n; m += 2) even[m] = binom(n, m);
  std::vector<Level> levels;
  for (int total = 0; total <= 2 * n; total += 2) {
    double mult = 0;
    for (int a = 0; a <= std::min(total, n); a += 2)
      if (total - a <= n) mult += even[a] * even[total - a];
    if (mult == 0) continue;
    levels.push_back({-J * (2.0 * n - 2.0 * total), 4.0 * mult});
  }
  return levels;
}

Eigen::MatrixXcd toric_dense_v(int N, double J, double t) {
  check_toric(N);
  int q = 2 * N * N;
  if (q > 10) throw std::invalid_argument("toric_dense_v: more than 10 qubits");
  Eigen::Index d = Eigen::Index{1} << q;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(d, d);
  const double c = std::cos(J * t), s = std::sin(J * t);
  const std::complex<double> is(0.0, s);
  for (const auto& st : toric_stabilizers(N)) {
    Eigen::Index mask = 0;
    for (int k : st.qubits) mask ^= Eigen::Index{1} << k;
    Eigen::MatrixXcd sv(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      if (st.x_type) {
        sv.row(r) = v.row(r ^ mask);
      } else {
        int parity = __builtin_popcountll(static_cast<unsigned long long>(r & mask)) & 1;
        sv.row(r) = parity ? (-v.row(r)).eval() : v.row(r);
      }
    }
    v = c * v + is * sv;
  }
  return v;
}

}  // namespace isotwirl
