#include "isotwirl/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "isotwirl/hamiltonians.hpp"
#include "isotwirl/oracle.hpp"
#include "isotwirl/probes.hpp"
#include "isotwirl/spectral.hpp"
#include "isotwirl/twirl_engine.hpp"
#include "isotwirl/weingarten.hpp"

namespace isotwirl {

namespace {

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double rel_diff(double a, double b) {
  double s = std::max(std::abs(a), std::abs(b));
  return s == 0 ? 0.0 : std::abs(a - b) / s;
}

std::vector<double> random_omegas(int n, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0);
  std::uniform_real_distribution<double> u(0.1, 1.5);
  std::vector<double> om(n);
  for (auto& w : om) w = u(rng);
  return om;
}

// ---- 1: Weingarten cross-validation

void criterion1(CriterionResult& r) {
  bool exact_ok = true, table_ok = true;
  for (long d : {8L, 16L, 32L}) {
    for (WeingartenKind k : {WeingartenKind::Plain, WeingartenKind::Plus, WeingartenKind::Minus}) {
      auto inv = weingarten_by_inversion(k, d), chr = weingarten_by_characters(k, d);
      bool eq = inv.values == chr.values;
      exact_ok &= eq;
      WeingartenTable tab = k == WeingartenKind::Plain ? weingarten_plain_closed_form(d) : weingarten_tabulated(k, d);
      int bad = 0;
      std::string first;
      for (std::size_t i = 0; i < inv.values.size(); ++i)
        if (i >= tab.values.size() || tab.values[i] != inv.values[i]) {
          if (!bad++)
            first = inv.classes[i] + ": tabulated " + (i < tab.values.size() ? tab.values[i].get_str() : "-") +
                    ", inversion " + inv.values[i].get_str();
        }
      table_ok &= bad == 0;
      r.details.push_back(fmt("d=%ld %-5s inversion==characters: %s; closed-form table: %d/%zu classes differ%s%s", d,
                              to_string(k), eq ? "yes" : "NO", bad, inv.values.size(), bad ? " e.g. " : "",
                              first.c_str()));
    }
  }
  r.pass = exact_ok && table_ok;
}

// ---- 2: Clifford 3-design check on the second moment

void criterion2(CriterionResult& r) {
  bool ok = true;
  {
    Spectrum s = cb_spectrum({0.83});
    double max_err = 0;
    for (double t : {0.3, 1.1, 2.0, 4.7}) {
      DenseOp m = exact_moment2_clifford1(s, t);
      Moment2 h = haar_moment2(sff_explicit(s, t).g2, 2);
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2) {
              double want = h.a * (a1 == b1 && a2 == b2) + h.b * (a1 == b2 && a2 == b1);
              max_err = std::max(max_err, std::abs(m(a1 * 2 + a2, b1 * 2 + b2) - want));
            }
    }
    ok &= max_err < 1e-12;
    r.details.push_back(fmt("N=1 exact 24-element average: max |diff| = %.3g (tol 1e-12)", max_err));
  }
  {
    Spectrum s = cb_spectrum({0.83, 0.37});
    const long d = 4;
    int cells = 0, within3 = 0, beyond5 = 0;
    double worst = 0;
    for (double t : {0.7, 2.0}) {
      MomentEstimate e = mc_moment2_clifford(s, t, 100000, 2024);
      Moment2 h = haar_moment2(sff_explicit(s, t).g2, d);
      for (long a1 = 0; a1 < d; ++a1)
        for (long a2 = 0; a2 < d; ++a2)
          for (long b1 = 0; b1 < d; ++b1)
            for (long b2 = 0; b2 < d; ++b2) {
              long i = a1 * d + a2, j = b1 * d + b2;
              double want = h.a * (a1 == b1 && a2 == b2) + h.b * (a1 == b2 && a2 == b1);
              for (int part = 0; part < 2; ++part) {
                double got = part ? e.mean(i, j).imag() : e.mean(i, j).real();
                double se = part ? e.stderr_im(i, j) : e.stderr_re(i, j);
                double w = part ? 0.0 : want;
                double z = se > 0 ? std::abs(got - w) / se : (std::abs(got - w) < 1e-10 ? 0.0 : INFINITY);
                ++cells;
                within3 += z <= 3;
                beyond5 += z > 5;
                worst = std::max(worst, z);
              }
            }
    }
    double frac = static_cast<double>(within3) / cells;
    // entrywise 3 sigma over many components: at least 99% inside 3 sigma and none beyond 5 sigma
    ok &= frac >= 0.99 && beyond5 == 0;
    r.details.push_back(fmt("N=2, 1e5 samples, %d entry components: %.2f%% within 3 sigma, max |z| = %.2f", cells,
                            100 * frac, worst));
  }
  r.pass = ok;
}

// ---- 3: Xi eigenstructure

void criterion3(CriterionResult& r) {
  bool ok = true;
  for (long d : {4L, 16L, 256L}) {
    XiMatrix xm = xi_matrix(d, M_PI / 4);
    Eigen::EigenSolver<Eigen::MatrixXd> es(xm.entries);
    std::vector<double> got;
    double max_imag = 0;
    for (int i = 0; i < 24; ++i) {
      got.push_back(es.eigenvalues()[i].real());
      max_imag = std::max(max_imag, std::abs(es.eigenvalues()[i].imag()));
    }
    std::vector<double> want(18, 0.0);
    want.push_back(xm.closed.xi_plus);
    want.push_back(xm.closed.xi_minus);
    for (int i = 0; i < 4; ++i) want.push_back(xm.closed.xi_one);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    double max_err = max_imag;
    for (int i = 0; i < 24; ++i) max_err = std::max(max_err, std::abs(got[i] - want[i]));

    auto align = [&](double xi, int lambda) {
      int best = 0;
      for (int i = 1; i < 24; ++i)
        if (std::abs(es.eigenvalues()[i] - xi) < std::abs(es.eigenvalues()[best] - xi)) best = i;
      Eigen::VectorXd v = es.eigenvectors().col(best).real();
      if (v.norm() < 1e-300) v = es.eigenvectors().col(best).imag();
      Eigen::VectorXd p(24);
      auto proj = irrep_projector(lambda);
      for (int i = 0; i < 24; ++i) p[i] = proj[i].get_d();
      return 1.0 - std::abs(v.normalized().dot(p.normalized()));
    };
    double a_plus = align(xm.closed.xi_plus, 0), a_minus = align(xm.closed.xi_minus, 4);
    bool pass = max_err < 1e-12 && a_plus < 1e-12 && a_minus < 1e-12;
    ok &= pass;
    r.details.push_back(fmt("d=%ld: max eigenvalue error %.3g; 1-|cos| T+ vs Pi_lambda1 %.3g, T- vs Pi_sym %.3g%s", d,
                            max_err, a_plus, a_minus, xm.continued ? " (continued block)" : ""));
  }
  r.pass = ok;
}

// ---- 4: doped interpolation

void criterion4(CriterionResult& r) {
  Spectrum s = cb_spectrum(random_omegas(4, 4));
  auto grid = time_grid(0.05, 20.0, 50, false);
  bool ok = true;
  for (ProbeKind p : all_probes()) {
    double e0 = 0, einf = 0;
    for (double t : grid) {
      FormFactors ff = sff_stabilizer(s, t);
      e0 = std::max(e0, rel_diff(probe_value(p, ff, EnsembleSpec::doped(0)), probe_value(p, ff, EnsembleSpec::clifford())));
      einf = std::max(einf,
                      rel_diff(probe_value(p, ff, EnsembleSpec::doped(1000000)), probe_value(p, ff, EnsembleSpec::haar())));
    }
    ok &= e0 <= 1e-9 && einf <= 1e-9;
    r.details.push_back(fmt("%-10s k=0 vs Clifford %.3g, k=1e6 vs Haar %.3g", to_string(p), e0, einf));
  }
  r.pass = ok;
}

// ---- 5: oracle agreement

void criterion5(CriterionResult& r, int threads) {
  int cells = 0, good = 0;
  std::vector<ProbeKind> probes(all_probes().begin(), all_probes().end());
  std::vector<double> times = {0.3, 0.8, 1.5, 2.5, 4.0, 6.0, 9.0, 14.0};
  struct Case {
    EnsembleSpec ens;
    long samples;
  };
  std::vector<Case> cases = {{EnsembleSpec::clifford(), 100000}, {EnsembleSpec::haar(), 20000},
                             {EnsembleSpec::doped(2), 20000}};
  for (int n : {2, 3}) {
    Spectrum s = cb_spectrum(random_omegas(n, 50 + n));
    for (const auto& c : cases) {
      McRequest req{s, c.ens, probes, times, c.samples, 5000 + static_cast<std::uint64_t>(n), threads};
      auto est = mc_twirl_grid(req);
      int cg = 0, cc = 0;
      double worst = 0;
      for (std::size_t p = 0; p < probes.size(); ++p)
        for (std::size_t i = 0; i < times.size(); ++i) {
          double cf = probe_value(probes[p], sff_stabilizer(s, times[i]), c.ens);
          const Estimate& e = est[p][i];
          double z = e.stderr_ > 0 ? std::abs(e.mean - cf) / e.stderr_ : (std::abs(e.mean - cf) < 1e-9 ? 0 : INFINITY);
          worst = std::max(worst, z);
          ++cc;
          cg += z <= 3;
        }
      cells += cc;
      good += cg;
      r.details.push_back(fmt("N=%d %-9s %6ld samples: %d/%d cells within 3 stderr, max |z| = %.2f", n,
                              c.ens.str().substr(0, 9).c_str(), c.samples, cg, cc, worst));
    }
  }
  double frac = static_cast<double>(good) / cells;
  r.details.push_back(fmt("overall %.2f%% within 3 stderr (need >= 95%%)", 100 * frac));
  r.pass = frac >= 0.95;
}

// ---- 6: stabilizer q table vs dense traces

void criterion6(CriterionResult& r) {
  bool ok = true;
  for (int n : {2, 3}) {
    Spectrum s = cb_spectrum(random_omegas(n, 60 + n));
    double max_err = 0;
    for (double t : {0.4, 1.7, 3.3}) {
      auto table = q_vector_stabilizer(sff_stabilizer(s, t));
      auto dense = q_vector_dense(diagonal_unitary(s, t), n);
      for (int i = 0; i < kNumPerms; ++i) max_err = std::max(max_err, std::abs(table[i] - dense[i]));
    }
    ok &= max_err < 1e-8;
    r.details.push_back(fmt("N=%d: max |table - dense| over 24 entries x 3 times = %.3g (tol 1e-8)", n, max_err));
  }
  r.pass = ok;
}

// ---- 7: toric closed forms

void criterion7(CriterionResult& r) {
  const int N = 2;
  const double J = 0.9;
  Spectrum s = toric_spectrum(N, J);
  auto grid = time_grid(0.01, 10.0, 100, false);
  double e_spec = 0, e_dense = 0;
  int dense_points = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double t = grid[i];
    FormFactors cf = toric_sff(N, J, t), ex = sff_stabilizer(s, t);
    double scale2 = std::pow(256.0, 2), scale3 = std::pow(256.0, 3), scale4 = std::pow(256.0, 4);
    e_spec = std::max({e_spec, std::abs(cf.g2 - ex.g2) / scale2, std::abs(cf.g2_2t - ex.g2_2t) / scale2,
                       std::abs(cf.g3 - ex.g3) / scale3, std::abs(cf.g4 - ex.g4) / scale4,
                       std::abs(cf.g3tilde - ex.g3tilde) / scale2});
    if (i % 10 == 0) {
      // dense stabilizer product V and the Pauli-sum Clifford form factor
      DenseOp v = toric_dense_v(N, J, t), v2 = toric_dense_v(N, J, 2 * t);
      auto tr = v.trace(), tr2 = v2.trace();
      double g3t = pauli_sum_g3tilde(v);
      e_dense = std::max({e_dense, std::abs(std::norm(tr) - cf.g2) / scale2, std::abs(std::norm(tr2) - cf.g2_2t) / scale2,
                          std::abs(tr2 * std::conj(tr) * std::conj(tr) - cf.g3) / scale3,
                          std::abs(g3t - cf.g3tilde) / scale2});
      ++dense_points;
    }
  }
  r.details.push_back(fmt("explicit spectrum + XOR sum, 100 points: max scaled error %.3g", e_spec));
  r.details.push_back(fmt("dense V + Pauli sum, %d points: max scaled error %.3g", dense_points, e_dense));
  double tab = 0;
  for (double t : grid) tab = std::max(tab, std::abs(toric_g3tilde_tabulated(N, J, t) - toric_g3tilde(N, J, t)) / 65536.0);
  r.details.push_back(fmt("printed g3tilde form deviates by up to %.3g (scaled); see notes", tab));
  r.pass = e_spec < 1e-8 && e_dense < 1e-8;
}

// ---- 8: GDE sampling

void criterion8(CriterionResult& r, int threads) {
  const long samples = 100000;
  const std::vector<double> times = {0.5, 1.3, 2.5};
  bool ok = true;
  for (long d : {4L, 8L}) {
    // five quantities x times, accumulated per sample
    const int nq = 5;
    std::size_t cells = nq * times.size();
    std::vector<double> sum(cells, 0), sq(cells, 0);
    Rng rng = make_rng(8000 + d, 0);
    (void)threads;
    for (long i = 0; i < samples; ++i) {
      Spectrum s = sample_gde_spectrum(d, rng);
      for (std::size_t ti = 0; ti < times.size(); ++ti) {
        FormFactors f = sff_stabilizer(s, times[ti]);
        double v[nq] = {f.g2, f.g2_2t, f.g3.real(), f.g4, f.g3tilde};
        for (int q = 0; q < nq; ++q) {
          sum[ti * nq + q] += v[q];
          sq[ti * nq + q] += v[q] * v[q];
        }
      }
    }
    const char* names[nq] = {"g2", "g2(2t)", "Re g3", "g4", "g3tilde"};
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      FormFactors cf = gde_averages(d, times[ti]);
      double want[nq] = {cf.g2, cf.g2_2t, cf.g3.real(), cf.g4, cf.g3tilde};
      std::string line = fmt("d=%ld t=%.1f:", d, times[ti]);
      for (int q = 0; q < nq; ++q) {
        double n = static_cast<double>(samples), m = sum[ti * nq + q] / n;
        double se = std::sqrt(std::max(0.0, (sq[ti * nq + q] / n - m * m) / (n - 1)));
        double z = se > 0 ? (m - want[q]) / se : 0;
        ok &= std::abs(z) <= 3;
        line += fmt(" %s z=%+.2f", names[q], z);
      }
      r.details.push_back(line);
    }
  }
  r.pass = ok;
}

// ---- 9: GUE qualitative reproduction

void criterion9(CriterionResult& r, int threads) {
  (void)threads;
  const long d = 32;
  const double x = d;
  bool ok = true;
  FormFactors f0 = gue_averages(d, 0.0);
  bool exact0 = f0.g2 == x * x;
  ok &= exact0;
  r.details.push_back(fmt("g2(0) = %.17g (d^2 = %.0f) %s", f0.g2, x * x, exact0 ? "exact" : "NOT exact"));

  double plateau = 0;
  for (double t : {3.2 * x, 4 * x, 6 * x, 10 * x}) plateau = std::max(plateau, std::abs(gue_averages(d, t).g2 / x - 1));
  ok &= plateau < 0.02;
  r.details.push_back(fmt("g2 plateau: max |g2/d - 1| for t > 3d = %.4f (need < 0.02)", plateau));

  double g3 = 0;
  for (double t : {3.2 * x, 4 * x, 6 * x, 10 * x}) g3 = std::max(g3, std::abs(gue_averages(d, t).g3tilde / (2 * x) - 1));
  ok &= g3 < 0.05;
  r.details.push_back(fmt("g3tilde plateau: max |g3tilde/2d - 1| for t > 3d = %.4f (need < 0.05)", g3));

  auto grid = time_grid(0.1, 4 * x, 60, true);
  std::vector<double> mc(grid.size(), 0.0);
  const int samples = 2000;
  Rng rng = make_rng(9000, 0);
  for (int sidx = 0; sidx < samples; ++sidx) {
    Spectrum s = sample_gue_spectrum(d, rng);
    for (std::size_t i = 0; i < grid.size(); ++i) mc[i] += sff_explicit(s, grid[i]).g2 / samples;
  }
  double acc = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double cf = gue_averages(d, grid[i]).g2;
    acc += std::pow((mc[i] - cf) / cf, 2);
  }
  double rms = std::sqrt(acc / grid.size());
  ok &= rms < 0.10;
  r.details.push_back(fmt("g2 vs 2000-sample GUE Monte Carlo on t in [0.1, 4d]: RMS relative deviation %.4f (need < 0.10)", rms));
  r.pass = ok;
}

// ---- 10: long-time scaling

void criterion10(CriterionResult& r) {
  const double t = 1e4;
  std::vector<long> dims = {1L << 8, 1L << 10, 1L << 12};
  bool ok = true;
  for (ProbeKind p : {ProbeKind::Loschmidt2, ProbeKind::Otoc4})
    for (auto ens : {EnsembleSpec::clifford(), EnsembleSpec::haar()}) {
      std::vector<double> lx, ly;
      for (long d : dims) {
        double v = probe_value(p, gde_averages(d, t), ens);
        lx.push_back(std::log(static_cast<double>(d)));
        ly.push_back(std::log(std::abs(v)));
      }
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i] / lx.size();
        my += ly[i] / ly.size();
      }
      double num = 0, den = 0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
      }
      double slope = num / den, want = ens.kind == EnsembleSpec::Kind::Clifford ? -1.0 : -2.0;
      bool pass = std::abs(slope - want) <= 0.1;
      ok &= pass;
      r.details.push_back(fmt("%-10s %-8s slope %.4f (want %.0f +- 0.1)", to_string(p), ens.str().c_str(), slope, want));
    }
  r.pass = ok;
}

// ---- 11: table-driven vs printed closed forms

void criterion11(CriterionResult& r) {
  auto grid_t = time_grid(0.05, 12.0, 50, false);
  int unexplained = 0, explained = 0, total = 0;
  std::vector<EnsembleSpec> ensembles = {EnsembleSpec::haar(), EnsembleSpec::clifford(), EnsembleSpec::doped(0),
                                         EnsembleSpec::doped(1), EnsembleSpec::doped(5)};
  for (long d : {8L, 16L}) {
    std::vector<FormFactors> grid;
    for (double t : grid_t) grid.push_back(gde_averages(d, t));
    for (ProbeKind p : all_probes())
      for (const auto& e : ensembles) {
        ++total;
        MismatchReport rep = compare_with_printed(p, e, d, grid, 1e-10);
        if (rep.failures == 0) continue;
        // a printed doped form that misses its own k = 0 (Clifford) or k -> infinity (Haar) limit
        // while the table route meets both
        bool self_inconsistent = false;
        if (e.kind == EnsembleSpec::Kind::Doped) {
          ProbeForm<double> f = build_probe_form<double>(p, e, d, sqrt_dims(d));
          for (const auto& ff : grid) {
            double pc = printed_probe(p, EnsembleSpec::clifford(), ff), ph = printed_probe(p, EnsembleSpec::haar(), ff);
            double p0 = printed_probe(p, EnsembleSpec::doped(0, e.theta), ff);
            double pinf = printed_probe(p, EnsembleSpec::doped(1000000, e.theta), ff);
            bool table_ok = rel_diff(f.value(ff, 0), pc) < 1e-10 && rel_diff(f.value(ff, 1000000), ph) < 1e-10;
            if (table_ok && (rel_diff(p0, pc) > 1e-6 || rel_diff(pinf, ph) > 1e-6)) self_inconsistent = true;
          }
        }
        (self_inconsistent ? explained : unexplained)++;
        std::string head = rep.str();
        r.details.push_back(std::string(self_inconsistent ? "[explained: printed doped form fails its k=0 / k->inf limits] "
                                                          : "[UNEXPLAINED] ") +
                            head);
      }
  }
  r.details.insert(r.details.begin(), fmt("%d probe/ensemble/d combinations, %d match, %d explained mismatches, %d unexplained",
                                          total, total - explained - unexplained, explained, unexplained));
  r.pass = unexplained == 0;
}

const char* kNames[kNumCriteria + 1] = {"",
                                         "Weingarten cross-validation",
                                         "Clifford 3-design (second moment)",
                                         "Xi eigenstructure",
                                         "doped interpolation",
                                         "oracle agreement",
                                         "stabilizer q table",
                                         "toric closed forms",
                                         "GDE sampling",
                                         "GUE qualitative reproduction",
                                         "long-time scaling",
                                         "table-driven vs printed closed forms"};

}  // namespace

std::string CriterionResult::line() const {
  return fmt("CRITERION %d %s %s (%.2f s)", id, pass ? "PASS" : "FAIL", name.c_str(), seconds);
}

CriterionResult run_criterion(int id, int threads) {
  if (id < 1 || id > kNumCriteria) throw std::invalid_argument("criterion id must be 1..11");
  CriterionResult r;
  r.id = id;
  r.name = kNames[id];
  auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: criterion1(r); break;
      case 2: criterion2(r); break;
      case 3: criterion3(r); break;
      case 4: criterion4(r); break;
      case 5: criterion5(r, threads); break;
      case 6: criterion6(r); break;
      case 7: criterion7(r); break;
      case 8: criterion8(r, threads); break;
      case 9: criterion9(r, threads); break;
      case 10: criterion10(r); break;
      case 11: criterion11(r); break;
    }
  } catch (const std::exception& e) {
    r.pass = false;
    r.details.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace isotwirl
