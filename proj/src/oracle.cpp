#include "isotwirl/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <unsupported/Eigen/KroneckerProduct>

#include "isotwirl/twirl_engine.hpp"

namespace isotwirl {

using cd = std::complex<double>;

Rng make_rng(std::uint64_t master, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
  return Rng(seq);
}

double unitarity_defect(const DenseOp& u) {
  return (u.adjoint() * u - DenseOp::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

namespace {

int qubits_of(long d) {
  if (!is_power_of_two(d) || d < 2) throw std::invalid_argument("oracle: d must be 2^N");
  int n = 0;
  while ((1L << n) < d) ++n;
  return n;
}

int parity(std::uint64_t x) { return __builtin_popcountll(x) & 1; }

// P(u) v with P(u) = i^{|x&z|} X^x Z^z.
Eigen::VectorXcd apply_pauli(std::uint32_t u, int n, const Eigen::VectorXcd& v) {
  std::uint32_t mask = (1u << n) - 1, x = u & mask, z = (u >> n) & mask;
  static const cd ipow[4] = {1.0, cd(0, 1), -1.0, cd(0, -1)};
  cd ph = ipow[__builtin_popcount(x & z) & 3];
  Eigen::VectorXcd r(v.size());
  for (Eigen::Index a = 0; a < v.size(); ++a) {
    std::uint32_t b = static_cast<std::uint32_t>(a) ^ x;
    r[a] = ph * (parity(z & b) ? -v[b] : v[b]);
  }
  return r;
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

}  // namespace

std::vector<std::uint32_t> perm_index_map(const PermOp& p, long d) {
  double total = std::pow(static_cast<double>(d), 4);
  if (total > (1 << 20)) throw std::invalid_argument("perm_index_map: d^4 exceeds 2^20");
  std::size_t n = static_cast<std::size_t>(total);
  std::vector<std::uint32_t> map(n);
  PermOp pinv = inverse(p);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t digits[4], rest = i;
    for (auto& dg : digits) {
      dg = rest % d;
      rest /= d;
    }
    std::size_t out = 0, scale = 1;
    for (int m = 0; m < 4; ++m) {
      out += digits[pinv(m)] * scale;
      scale *= d;
    }
    map[i] = static_cast<std::uint32_t>(out);
  }
  return map;
}

DenseOp build_perm_dense(const PermOp& p, long d) {
  if (std::pow(static_cast<double>(d), 4) > (1 << 10)) throw std::invalid_argument("build_perm_dense: d^4 exceeds 2^10");
  auto map = perm_index_map(p, d);
  DenseOp m = DenseOp::Zero(map.size(), map.size());
  for (std::size_t i = 0; i < map.size(); ++i) m(map[i], i) = 1.0;
  return m;
}

DenseOp pauli_dense(std::uint32_t u, int n) {
  long d = 1L << n;
  DenseOp m(d, d);
  for (long b = 0; b < d; ++b) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
    e[b] = 1.0;
    m.col(b) = apply_pauli(u, n, e);
  }
  return m;
}

DenseOp build_q_dense(int n) {
  if (n != 1) throw std::invalid_argument("build_q_dense: only N = 1 is materialized");
  DenseOp q = DenseOp::Zero(16, 16);
  for (std::uint32_t u = 0; u < 4; ++u) {
    DenseOp p = pauli_dense(u, 1);
    DenseOp p2 = Eigen::kroneckerProduct(p, p);
    q += Eigen::kroneckerProduct(p2, p2);
  }
  return q / 4.0;
}

Eigen::VectorXcd apply_q(int n, const Eigen::VectorXcd& v) {
  long d = 1L << n;
  if (v.size() != d * d * d * d) throw std::invalid_argument("apply_q: vector size must be d^4");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  std::uint32_t mask = (1u << n) - 1;
  for (std::uint32_t u = 0; u < (1u << (2 * n)); ++u) {
    std::uint32_t x = u & mask, z = (u >> n) & mask;
    // P^{x4}: the i^{|x&z|} phases multiply to 1 over four factors
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      long rest = i, src = 0, scale = 1;
      int sgn = 0;
      for (int m = 0; m < 4; ++m) {
        long a = rest % d;
        rest /= d;
        long b = a ^ x;
        sgn ^= parity(z & b);
        src += b * scale;
        scale *= d;
      }
      out[i] += sgn ? -v[src] : v[src];
    }
  }
  return out / static_cast<double>(d * d);
}

std::complex<double> trace_perm_ops(const PermOp& p, const DenseOp& a1, const DenseOp& a2, const DenseOp& a3,
                                    const DenseOp& a4) {
  const DenseOp* a[4] = {&a1, &a2, &a3, &a4};
  long d = a1.rows();
  cd acc = 0;
  long total = d * d * d * d;
  for (long idx = 0; idx < total; ++idx) {
    long i[4], rest = idx;
    for (auto& v : i) {
      v = rest % d;
      rest /= d;
    }
    cd term = 1;
    for (int m = 0; m < 4; ++m) term *= (*a[m])(i[p(m)], i[m]);
    acc += term;
  }
  return acc;
}

DenseOp diagonal_unitary(const Spectrum& s, double t) {
  Eigen::VectorXcd v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v[i] = std::polar(1.0, -s[i] * t);
  return v.asDiagonal();
}

PermVector<cd> c_vector_dense(const DenseOp& v) {
  DenseOp vd = v.adjoint();
  PermVector<cd> r;
  for (int i = 0; i < kNumPerms; ++i) r[i] = trace_perm_ops(all_perms()[i], v, v, vd, vd);
  return r;
}

PermVector<cd> q_vector_dense(const DenseOp& v, int n) {
  if (v.rows() != (1L << n)) throw std::invalid_argument("q_vector_dense: size mismatch");
  DenseOp vd = v.adjoint();
  PermVector<cd> r;
  r.fill(0);
  // Tr[T_pi Q V^{x2,2}] = d^-2 sum_P Tr[T_pi (PV) x (PV) x (PV^dagger) x (PV^dagger)]
  for (std::uint32_t u = 0; u < (1u << (2 * n)); ++u) {
    DenseOp p = pauli_dense(u, n);
    DenseOp pv = p * v, pvd = p * vd;
    for (int i = 0; i < kNumPerms; ++i) r[i] += trace_perm_ops(all_perms()[i], pv, pv, pvd, pvd);
  }
  double d = static_cast<double>(v.rows());
  for (auto& x : r) x /= d * d;
  return r;
}

double pauli_sum_g3tilde(const DenseOp& v) {
  long d = v.rows();
  qubits_of(d);
  double acc = 0;
  std::vector<cd> w(d);
  for (long x = 0; x < d; ++x) {
    for (long b = 0; b < d; ++b) w[b] = v(b, b ^ x);
    walsh_hadamard(w);
    for (const auto& f : w) acc += std::norm(f) * std::norm(f);
  }
  return acc / (static_cast<double>(d) * d);
}

DenseOp haar_unitary(long d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  DenseOp z(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) z(i, j) = cd(g(rng), g(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<DenseOp> qr(z);
  DenseOp q = qr.householderQ();
  const DenseOp& r = qr.matrixQR();
  for (long j = 0; j < d; ++j) {
    cd rj = r(j, j);
    double a = std::abs(rj);
    q.col(j) *= a > 0 ? rj / a : cd(1.0);
  }
  return q;
}

int symplectic_product(std::uint32_t u, std::uint32_t v, int n) {
  std::uint32_t mask = (1u << n) - 1;
  return parity(((u & mask) & (v >> n)) ^ ((u >> n) & (v & mask)));
}

bool CliffordElement::is_symplectic() const {
  if (static_cast<int>(images.size()) != 2 * n) return false;
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) {
      int want = (i % n == j % n && i != j) ? 1 : 0;
      if (symplectic_product(images[i], images[j], n) != want) return false;
    }
  return true;
}

DenseOp CliffordElement::dense() const {
  long d = 1L << n;
  auto signed_apply = [&](int g, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd r = apply_pauli(images[g], n, v);
    return signs[g] ? Eigen::VectorXcd(-r) : r;
  };
  // |psi0> is stabilized by the images of Z_j
  Eigen::VectorXcd psi;
  for (long m = 0; m < d; ++m) {
    psi = Eigen::VectorXcd::Zero(d);
    psi[m] = 1.0;
    for (int j = 0; j < n; ++j) psi = (psi + signed_apply(n + j, psi)) / 2.0;
    if (psi.norm() > 1e-6) break;
  }
  psi.normalize();
  DenseOp u(d, d);
  for (long b = 0; b < d; ++b) {
    Eigen::VectorXcd col = psi;
    for (int j = 0; j < n; ++j)
      if ((b >> j) & 1) col = signed_apply(j, col);
    u.col(b) = col;
  }
  return u;
}

CliffordElement sample_clifford(int n, Rng& rng) {
  if (n < 1 || n > 3) throw std::invalid_argument("sample_clifford: N must be 1..3");
  std::uniform_int_distribution<std::uint32_t> vec(0, (1u << (2 * n)) - 1);
  std::vector<std::uint32_t> vs, ws;
  auto project = [&](std::uint32_t u) {
    std::uint32_t r = u;
    for (std::size_t p = 0; p < vs.size(); ++p) {
      if (symplectic_product(u, ws[p], n)) r ^= vs[p];
      if (symplectic_product(u, vs[p], n)) r ^= ws[p];
    }
    return r;
  };
  for (int j = 0; j < n; ++j) {
    std::uint32_t v = 0, w = 0;
    while (v == 0) v = project(vec(rng));
    do {
      w = project(vec(rng));
    } while (!symplectic_product(v, w, n));
    vs.push_back(v);
    ws.push_back(w);
  }
  CliffordElement c;
  c.n = n;
  c.images = vs;
  c.images.insert(c.images.end(), ws.begin(), ws.end());
  std::uniform_int_distribution<int> bit(0, 1);
  for (int i = 0; i < 2 * n; ++i) c.signs.push_back(static_cast<std::uint8_t>(bit(rng)));
  return c;
}

std::vector<CliffordElement> enumerate_clifford1() {
  std::vector<CliffordElement> out;
  for (std::uint32_t v = 1; v < 4; ++v)
    for (std::uint32_t w = 1; w < 4; ++w) {
      if (!symplectic_product(v, w, 1)) continue;
      for (int s = 0; s < 4; ++s)
        out.push_back({1, {v, w}, {static_cast<std::uint8_t>(s & 1), static_cast<std::uint8_t>(s >> 1)}});
    }
  return out;
}

DenseOp doped_unitary(int n, long k, double theta, Rng& rng) {
  long d = 1L << n;
  Eigen::VectorXcd th(d);
  for (long i = 0; i < d; ++i) th[i] = (i & 1) ? std::polar(1.0, -theta) : cd(1.0);
  DenseOp g = sample_clifford(n, rng).dense();
  for (long i = 0; i < k; ++i) g = sample_clifford(n, rng).dense() * (th.asDiagonal() * g);
  return g;
}

DenseOp sample_ensemble(const EnsembleSpec& ens, int n, Rng& rng) {
  switch (ens.kind) {
    case EnsembleSpec::Kind::Haar: return haar_unitary(1L << n, rng);
    case EnsembleSpec::Kind::Clifford: return sample_clifford(n, rng).dense();
    case EnsembleSpec::Kind::Doped: return doped_unitary(n, ens.k, ens.theta, rng);
  }
  throw std::invalid_argument("unknown ensemble");
}

DenseProbeSetup dense_probe_setup(int n) { return {n, 1L << n, n / 2}; }

namespace {

// Tr[(U x U) S_C (U x U)^dagger S_X] with S_X the swap of the qubit set `x_mask` between the two copies.
double swap_correlator(const DenseOp& u, long c_mask, long x_mask) {
  long d = u.rows();
  cd acc = 0;
  for (long x1 = 0; x1 < d; ++x1)
    for (long x2 = 0; x2 < d; ++x2) {
      long sx1 = (x1 & ~x_mask) | (x2 & x_mask), sx2 = (x2 & ~x_mask) | (x1 & x_mask);
      for (long y1 = 0; y1 < d; ++y1)
        for (long y2 = 0; y2 < d; ++y2) {
          long sy1 = (y1 & ~c_mask) | (y2 & c_mask), sy2 = (y2 & ~c_mask) | (y1 & c_mask);
          acc += u(x1, y1) * u(x2, y2) * std::conj(u(sx1, sy1) * u(sx2, sy2));
        }
    }
  return acc.real();
}

}  // namespace

double dense_probe(ProbeKind kind, const DenseOp& u, const DenseProbeSetup& s) {
  const long d = s.d;
  auto z0 = [](long i) { return (i & 1) ? -1.0 : 1.0; };
  switch (kind) {
    case ProbeKind::Loschmidt2: {
      cd tr = 0;
      for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) tr += std::norm(u(j, i)) * z0(i) * z0(j);
      return std::norm(tr) / (static_cast<double>(d) * d);
    }
    case ProbeKind::Otoc4: {
      // M = U^dagger X_0 U Z_{n-1}
      DenseOp xu(d, d);
      for (long i = 0; i < d; ++i) xu.row(i) = u.row(i ^ 1);
      DenseOp m = u.adjoint() * xu;
      long zb = 1L << (s.n - 1);
      for (long j = 0; j < d; ++j)
        if (j & zb) m.col(j) *= -1.0;
      cd tr = 0;
      for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) tr += m(i, j) * m(j, i);
      return tr.real() / static_cast<double>(d);
    }
    case ProbeKind::TripartiteC2:
    case ProbeKind::TripartiteCD: {
      long c_mask = (1L << s.qubits_a) - 1;
      long x_mask = kind == ProbeKind::TripartiteC2 ? c_mask : (d - 1) & ~c_mask;
      return swap_correlator(u, c_mask, x_mask);
    }
    case ProbeKind::Purity2Renyi: {
      long da = 1L << s.qubits_a, db = d / da;
      Eigen::MatrixXcd psi(da, db);
      for (long i = 0; i < d; ++i) psi(i % da, i / da) = u(i, 0);
      Eigen::MatrixXcd rho = psi * psi.adjoint();
      return rho.cwiseAbs2().sum();
    }
    case ProbeKind::CoherenceL2: {
      double sum = 0;
      for (long i = 0; i < d; ++i) sum += std::pow(std::norm(u(i, 0)), 2);
      return 1.0 - sum;
    }
    case ProbeKind::WydPauli: {
      double z = 0;
      for (long i = 0; i < d; ++i) z += std::norm(u(i, 0)) * z0(i);
      return 1.0 - z * z;
    }
    case ProbeKind::WydCB: {
      // sum over basis projectors of <Pi^2> - <Pi>^2
      double sum = 0;
      for (long i = 0; i < d; ++i) {
        double p = std::norm(u(i, 0));
        sum += p - p * p;
      }
      return sum;
    }
  }
  throw std::invalid_argument("dense_probe: unknown probe");
}

namespace {

struct Moments {
  long n = 0;
  double mean = 0, m2 = 0;

  void add(double x) {
    ++n;
    double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    long total = n + o.n;
    double delta = o.mean - mean;
    mean += delta * o.n / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * o.n / total;
    n = total;
  }
  Estimate estimate() const {
    Estimate e;
    e.samples = n;
    e.mean = mean;
    e.stderr_ = n > 1 ? std::sqrt(m2 / (n - 1) / n) : 0.0;
    return e;
  }
};

constexpr long kBlock = 500;

template <class Fn>
void run_blocks(long samples, int threads, Fn&& fn) {
  long blocks = (samples + kBlock - 1) / kBlock;
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long b = next++; b < blocks; b = next++) fn(b, std::min(kBlock, samples - b * kBlock));
  };
  int nt = std::max(1, std::min<int>(threads, static_cast<int>(blocks)));
  std::vector<std::thread> pool;
  for (int i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<std::vector<Estimate>> mc_twirl_grid(const McRequest& req) {
  long d = static_cast<long>(req.spectrum.size());
  int n = qubits_of(d);
  if (n > 3) throw std::invalid_argument("mc_twirl: N <= 3 (d <= 8)");
  if (req.samples < 1000) throw std::invalid_argument("mc_twirl: at least 1000 samples");
  for (ProbeKind p : req.probes) check_probe_dimension(p, d);
  DenseProbeSetup setup = dense_probe_setup(n);
  std::vector<Eigen::VectorXcd> vdiag;
  for (double t : req.times) vdiag.push_back(diagonal_unitary(req.spectrum, t).diagonal());
  std::size_t np = req.probes.size(), nt = req.times.size();
  long blocks = (req.samples + kBlock - 1) / kBlock;
  std::vector<std::vector<Moments>> per_block(blocks, std::vector<Moments>(np * nt));
  run_blocks(req.samples, req.threads, [&](long b, long count) {
    Rng rng = make_rng(req.seed, static_cast<std::uint64_t>(b));
    auto& acc = per_block[b];
    for (long s = 0; s < count; ++s) {
      DenseOp g = sample_ensemble(req.ensemble, n, rng);
      DenseOp gd = g.adjoint();
      for (std::size_t ti = 0; ti < nt; ++ti) {
        DenseOp u = gd * (vdiag[ti].asDiagonal() * g);
        for (std::size_t p = 0; p < np; ++p) acc[p * nt + ti].add(dense_probe(req.probes[p], u, setup));
      }
    }
  });
  std::vector<std::vector<Estimate>> out(np, std::vector<Estimate>(nt));
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t ti = 0; ti < nt; ++ti) {
      Moments m;
      for (long b = 0; b < blocks; ++b) m.merge(per_block[b][p * nt + ti]);
      out[p][ti] = m.estimate();
    }
  return out;
}

Estimate mc_twirl(ProbeKind probe, const Spectrum& spectrum, double t, const EnsembleSpec& ens, long samples,
                  std::uint64_t seed, int threads) {
  McRequest req{spectrum, ens, {probe}, {t}, samples, seed, threads};
  return mc_twirl_grid(req)[0][0];
}

namespace {

DenseOp moment2_sample(const DenseOp& u) {
  long d = u.rows();
  DenseOp r(d * d, d * d);
  DenseOp ud = u.adjoint();
  for (long a1 = 0; a1 < d; ++a1)
    for (long a2 = 0; a2 < d; ++a2)
      for (long b1 = 0; b1 < d; ++b1)
        for (long b2 = 0; b2 < d; ++b2) r(a1 * d + a2, b1 * d + b2) = u(a1, b1) * ud(a2, b2);
  return r;
}

}  // namespace

MomentEstimate mc_moment2_clifford(const Spectrum& spectrum, double t, long samples, std::uint64_t seed) {
  long d = static_cast<long>(spectrum.size());
  int n = qubits_of(d);
  if (n > 3) throw std::invalid_argument("mc_moment2_clifford: N <= 3");
  Eigen::VectorXcd v = diagonal_unitary(spectrum, t).diagonal();
  long blocks = (samples + kBlock - 1) / kBlock;
  long dim = d * d;
  DenseOp sum = DenseOp::Zero(dim, dim);
  Eigen::MatrixXd sq_re = Eigen::MatrixXd::Zero(dim, dim), sq_im = Eigen::MatrixXd::Zero(dim, dim);
  for (long b = 0; b < blocks; ++b) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(b));
    long count = std::min(kBlock, samples - b * kBlock);
    for (long s = 0; s < count; ++s) {
      DenseOp g = sample_clifford(n, rng).dense();
      DenseOp m = moment2_sample(g.adjoint() * (v.asDiagonal() * g));
      sum += m;
      sq_re += m.real().cwiseAbs2();
      sq_im += m.imag().cwiseAbs2();
    }
  }
  MomentEstimate e;
  double ns = static_cast<double>(samples);
  e.mean = sum / ns;
  auto se = [&](const Eigen::MatrixXd& sq, const Eigen::MatrixXd& mean) {
    Eigen::MatrixXd var = (sq / ns - mean.cwiseAbs2()) * (ns / (ns - 1));
    return Eigen::MatrixXd((var.cwiseMax(0.0) / ns).cwiseSqrt());
  };
  e.stderr_re = se(sq_re, e.mean.real());
  e.stderr_im = se(sq_im, e.mean.imag());
  return e;
}

DenseOp exact_moment2_clifford1(const Spectrum& spectrum, double t) {
  if (spectrum.size() != 2) throw std::invalid_argument("exact_moment2_clifford1: d must be 2");
  Eigen::VectorXcd v = diagonal_unitary(spectrum, t).diagonal();
  DenseOp sum = DenseOp::Zero(4, 4);
  auto all = enumerate_clifford1();
  for (const auto& c : all) {
    DenseOp g = c.dense();
    sum += moment2_sample(g.adjoint() * (v.asDiagonal() * g));
  }
  return sum / static_cast<double>(all.size());
}

Spectrum sample_gde_spectrum(long d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 0.5);
  Spectrum s(d);
  for (auto& e : s) e = g(rng);
  return s;
}

Spectrum sample_gue_spectrum(long d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  DenseOp a(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) a(i, j) = cd(g(rng), g(rng)) / std::sqrt(2.0);
  DenseOp h = (a + a.adjoint()) / std::sqrt(2.0 * d);
  Eigen::SelfAdjointEigenSolver<DenseOp> es(h, Eigen::EigenvaluesOnly);
  Spectrum s(d);
  for (long i = 0; i < d; ++i) s[i] = es.eigenvalues()[i];
  std::shuffle(s.begin(), s.end(), rng);
  return s;
}

}  // namespace isotwirl
