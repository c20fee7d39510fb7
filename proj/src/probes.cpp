#include "isotwirl/probes.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

#include "isotwirl/spectral.hpp"
#include "isotwirl/weingarten.hpp"

namespace isotwirl {

const char* to_string(ProbeKind k) {
  switch (k) {
    case ProbeKind::Loschmidt2: return "loschmidt2";
    case ProbeKind::Otoc4: return "otoc4";
    case ProbeKind::TripartiteC2: return "tmi_c2";
    case ProbeKind::TripartiteCD: return "tmi_cd";
    case ProbeKind::Purity2Renyi: return "purity";
    case ProbeKind::CoherenceL2: return "coherence";
    case ProbeKind::WydPauli: return "wyd_pauli";
    case ProbeKind::WydCB: return "wyd_cb";
  }
  return "?";
}

const std::array<ProbeKind, kNumProbeKinds>& all_probes() {
  static const std::array<ProbeKind, kNumProbeKinds> a = {
      ProbeKind::Loschmidt2,   ProbeKind::Otoc4,       ProbeKind::TripartiteC2, ProbeKind::TripartiteCD,
      ProbeKind::Purity2Renyi, ProbeKind::CoherenceL2, ProbeKind::WydPauli,     ProbeKind::WydCB};
  return a;
}

ProbeKind parse_probe(const std::string& s) {
  for (ProbeKind k : all_probes())
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown probe '" + s + "'");
}

const char* to_string(EnsembleSpec::Kind k) {
  switch (k) {
    case EnsembleSpec::Kind::Haar: return "haar";
    case EnsembleSpec::Kind::Clifford: return "clifford";
    case EnsembleSpec::Kind::Doped: return "doped";
  }
  return "?";
}

std::string EnsembleSpec::str() const {
  if (kind != Kind::Doped) return to_string(kind);
  std::ostringstream os;
  os.precision(17);
  os << "doped:" << k << ":" << theta;
  return os.str();
}

EnsembleSpec parse_ensemble(const std::string& s) {
  if (s == "haar") return EnsembleSpec::haar();
  if (s == "clifford") return EnsembleSpec::clifford();
  if (s.rfind("doped", 0) == 0) {
    EnsembleSpec e = EnsembleSpec::doped(0);
    std::istringstream is(s.substr(5));
    char colon;
    if (is >> colon && colon == ':') {
      if (!(is >> e.k)) throw std::invalid_argument("bad doped layer count in '" + s + "'");
      if (is >> colon && colon == ':' && !(is >> e.theta)) throw std::invalid_argument("bad theta in '" + s + "'");
    }
    if (e.k < 0) throw std::invalid_argument("doped ensembles need k >= 0");
    double r = std::remainder(e.theta, M_PI / 2);
    if (std::abs(r) < 1e-12) throw std::invalid_argument("doping angle must not be a multiple of pi/2");
    return e;
  }
  throw std::invalid_argument("unknown ensemble '" + s + "'");
}

ProbeDims<Rational> balanced_dims(long d) {
  if (!is_power_of_two(d) || d < 2) throw std::invalid_argument("subsystem split needs d = 2^N");
  int n = 0;
  while ((1L << n) < d) ++n;
  Rational a = Rational(1L << (n / 2)), b = Rational(d) / a;
  return {a, b, a, b};
}

ProbeDims<double> sqrt_dims(long d) {
  double s = std::sqrt(static_cast<double>(d));
  return {s, s, s, s};
}

namespace {

template <class S>
using FT = FineTable<S>;

template <class S>
FT<S> fine(std::initializer_list<std::pair<FineClass, S>> entries) {
  FT<S> t;
  for (auto& v : t) v = S(0);
  for (const auto& [f, v] : entries) t[static_cast<int>(f)] = v;
  return t;
}

using F = FineClass;

double scalar_double(const Rational& q) { return q.get_d(); }
double scalar_double(double v) { return v; }

}  // namespace

template <class S>
ProbeTables<S> probe_tables(ProbeKind kind, long d, const ProbeDims<S>& dims) {
  S x = S(d), one = S(1), inv = one / x;
  const S &dA = dims.dA, &dB = dims.dB, &dC = dims.dC, &dD = dims.dD;
  FT<S> h, q;
  PermOp rho = PermOp::parse("(13)(24)");
  S norm = one, offset = S(0), sign = one;
  // tables shared by coherence and the basis-projector WYD variant
  auto coh_h = fine<S>({{F::Id, x}, {F::Swap12, x}, {F::Swap34, x}, {F::SwapOther, one}, {F::ThreeFix12, one},
                        {F::ThreeFix34, one}, {F::FourNonCrossing, one}, {F::FourCrossing, one},
                        {F::DoubleSwapOther, one}, {F::DoubleSwap1234, x}});
  auto coh_q = fine<S>({{F::Id, one}, {F::Swap12, one}, {F::Swap34, one}, {F::SwapOther, inv}, {F::ThreeFix12, inv},
                        {F::ThreeFix34, inv}, {F::FourNonCrossing, inv}, {F::FourCrossing, one},
                        {F::DoubleSwapOther, one}, {F::DoubleSwap1234, one}});
  auto loschmidt_q = fine<S>({{F::Id, x * x}, {F::SwapOther, x}, {F::Swap12, x}, {F::Swap34, x}, {F::ThreeFix12, one},
                              {F::ThreeFix34, one}, {F::FourNonCrossing, x}, {F::FourCrossing, x},
                              {F::DoubleSwapOther, x * x}, {F::DoubleSwap1234, x * x}});
  switch (kind) {
    case ProbeKind::Loschmidt2:
      h = fine<S>({{F::FourNonCrossing, x}, {F::FourCrossing, x}, {F::DoubleSwapOther, x * x},
                   {F::DoubleSwap1234, x * x}});
      q = loschmidt_q;
      norm = inv * inv;
      break;
    case ProbeKind::Otoc4:
      h = fine<S>({{F::FourNonCrossing, x}, {F::FourCrossing, x}, {F::DoubleSwap1234, x * x}});
      q = fine<S>({{F::Swap12, x}, {F::Swap34, x}, {F::ThreeFix12, one}, {F::ThreeFix34, one}, {F::FourCrossing, x}});
      rho = PermOp::parse("(1324)");
      norm = inv;
      break;
    case ProbeKind::TripartiteC2:
      h = fine<S>({{F::Id, x * x * dD * dD}, {F::SwapOther, x * dD * dD}, {F::Swap12, x * x * x},
                   {F::Swap34, x * x * x}, {F::ThreeFix12, x * x}, {F::ThreeFix34, x * x},
                   {F::FourNonCrossing, x * dC * dC}, {F::FourCrossing, x}, {F::DoubleSwapOther, x * x},
                   {F::DoubleSwap1234, x * x * dC * dC}});
      q = loschmidt_q;
      break;
    case ProbeKind::TripartiteCD:
      h = fine<S>({{F::Id, x * x * x}, {F::SwapOther, x * x}, {F::Swap12, x * x * dC * dC},
                   {F::Swap34, x * x * dD * dD}, {F::ThreeFix12, x * dD * dD}, {F::ThreeFix34, x * dC * dC},
                   {F::FourNonCrossing, x * x}, {F::FourCrossing, x * x}, {F::DoubleSwapOther, x},
                   {F::DoubleSwap1234, x * x * x}});
      q = fine<S>({{F::Id, x}, {F::SwapOther, one}, {F::Swap12, x * x}, {F::Swap34, x * x}, {F::ThreeFix12, x},
                   {F::ThreeFix34, x}, {F::FourNonCrossing, one}, {F::FourCrossing, x * x},
                   {F::DoubleSwapOther, x}, {F::DoubleSwap1234, x}});
      break;
    case ProbeKind::Purity2Renyi:
      h = fine<S>({{F::Id, x * dB}, {F::SwapOther, dB}, {F::Swap12, x * dA}, {F::Swap34, x * dB},
                   {F::ThreeFix34, dA}, {F::ThreeFix12, dB}, {F::FourNonCrossing, dA}, {F::FourCrossing, one},
                   {F::DoubleSwapOther, one}, {F::DoubleSwap1234, x * dA}});
      q = coh_q;
      rho = PermOp::parse("(14)(23)");
      break;
    case ProbeKind::CoherenceL2:
    case ProbeKind::WydCB:
      h = coh_h;
      q = coh_q;
      offset = one;
      sign = -one;
      break;
    case ProbeKind::WydPauli:
      h = fine<S>({{F::Swap12, x}, {F::ThreeFix34, one}, {F::FourNonCrossing, one}, {F::FourCrossing, one},
                   {F::DoubleSwapOther, one}, {F::DoubleSwap1234, x}});
      q = coh_q;
      offset = one;
      sign = -one;
      break;
  }
  ProbeTables<S> t{vector_from_fine(h, rho), vector_from_fine(q, rho), offset, sign};
  for (int i = 0; i < kNumPerms; ++i) {
    t.xH[i] *= norm;
    t.xQ[i] *= norm;
  }
  return t;
}

template <class S>
double ProbeForm<S>::value(const FormFactors& ff, long k) const {
  if (k < 0) throw std::invalid_argument("probe value: k must be >= 0");
  double v = constant.eval(ff);
  if (ensemble.kind == EnsembleSpec::Kind::Doped) {
    double kk = static_cast<double>(k);
    for (int l = 0; l < kNumIrreps; ++l) {
      if (decay[l].is_zero()) continue;
      v += std::pow(scalar_double(xi[l]), kk) * decay[l].eval(ff);
    }
    v += kk * linear.eval(ff);
  }
  return scalar_double(offset) + scalar_double(sign) * v;
}

template <class S>
ProbeForm<S> build_probe_form(ProbeKind kind, const EnsembleSpec& ens, long d, const ProbeDims<S>& dims) {
  check_probe_dimension(kind, d);
  ProbeTables<S> tab = probe_tables<S>(kind, d, dims);
  ProbeForm<S> f;
  f.kind = kind;
  f.ensemble = ens;
  f.d = d;
  f.offset = tab.offset;
  f.sign = tab.sign;
  for (auto& x : f.xi) x = S(0);
  CoeffVector c_sym = c_vector_symbolic(d), q_sym = q_vector_symbolic(d), qp_sym = subtract(c_sym, q_sym);
  PermVector<S> x_perp;
  for (int i = 0; i < kNumPerms; ++i) x_perp[i] = tab.xH[i] - tab.xQ[i];

  switch (ens.kind) {
    case EnsembleSpec::Kind::Haar: {
      auto c = convert<S>(c_sym);
      for (int l = 0; l < kNumIrreps; ++l) {
        Rational om = gram_fourier(GramKind::Plain, d, l);
        if (om == 0) continue;
        f.constant += dot(tab.xH, apply_idempotent<S>(l, c)) * convert_scalar<S>(1 / om);
      }
      break;
    }
    case EnsembleSpec::Kind::Clifford: {
      auto q = convert<S>(q_sym), qp = convert<S>(qp_sym);
      for (int l = 0; l < kNumIrreps; ++l) {
        Rational wp = gram_fourier(GramKind::QProjected, d, l), wm = gram_fourier(GramKind::QPerpProjected, d, l);
        if (wp != 0) f.constant += dot(tab.xQ, apply_idempotent<S>(l, q)) * convert_scalar<S>(1 / wp);
        if (wm != 0) f.constant += dot(x_perp, apply_idempotent<S>(l, qp)) * convert_scalar<S>(1 / wm);
      }
      break;
    }
    case EnsembleSpec::Kind::Doped: {
      DopingSpectrum spec = doping_spectrum(d, ens.theta);
      TBVectors tb = tb_vectors(q_sym, qp_sym, d);
      auto t = convert<S>(tb.t);
      f.constant += dot(tab.xH, convert<S>(tb.b));
      for (int l = 0; l < kNumIrreps; ++l) {
        const IrrepBlock& blk = spec.blocks[l];
        auto tl = apply_idempotent<S>(l, t);
        LinForm<S> a = dot(tab.xQ, tl), bh = dot(tab.xH, tl);
        f.xi[l] = convert_scalar<S>(blk.xi);
        if (blk.xi == 1) {
          f.decay[l] = a;
          f.linear += bh * convert_scalar<S>(blk.lambda);
        } else {
          S r = convert_scalar<S>(blk.lambda / (1 - blk.xi));
          f.decay[l] = a - bh * r;
          f.constant += bh * r;
        }
      }
      break;
    }
  }
  return f;
}

template ProbeTables<Rational> probe_tables(ProbeKind, long, const ProbeDims<Rational>&);
template ProbeTables<double> probe_tables(ProbeKind, long, const ProbeDims<double>&);
template struct ProbeForm<Rational>;
template struct ProbeForm<double>;
template ProbeForm<Rational> build_probe_form(ProbeKind, const EnsembleSpec&, long, const ProbeDims<Rational>&);
template ProbeForm<double> build_probe_form(ProbeKind, const EnsembleSpec&, long, const ProbeDims<double>&);

void check_probe_dimension(ProbeKind kind, long d) {
  if (d < 2 || !is_power_of_two(d)) throw std::invalid_argument("probes need d = 2^N with N >= 1");
  if ((kind == ProbeKind::Loschmidt2 || kind == ProbeKind::Otoc4) && d <= 3)
    throw std::invalid_argument(std::string(to_string(kind)) + ": d <= 3 is rejected");
}

std::shared_ptr<const ProbeForm<Rational>> probe_form(ProbeKind kind, const EnsembleSpec& ens, long d) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const ProbeForm<Rational>>> cache;
  EnsembleSpec key_ens = ens;
  key_ens.k = 0;
  std::string key = std::string(to_string(kind)) + "|" + key_ens.str() + "|" + std::to_string(d);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto f = std::make_shared<const ProbeForm<Rational>>(build_probe_form<Rational>(kind, key_ens, d, balanced_dims(d)));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, f).first->second;
}

double probe_value(ProbeKind kind, const FormFactors& ff, const EnsembleSpec& ens) {
  if (ens.kind != EnsembleSpec::Kind::Haar && !ff.stabilizer_valid)
    throw std::invalid_argument("Clifford averages need stabilizer-valid form factors");
  return probe_form(kind, ens, ff.d)->value(ff, ens.k);
}

double loschmidt2(const FormFactors& ff, const EnsembleSpec& ens) { return probe_value(ProbeKind::Loschmidt2, ff, ens); }
double otoc4(const FormFactors& ff, const EnsembleSpec& ens) { return probe_value(ProbeKind::Otoc4, ff, ens); }

static void require_square(long d) {
  long r = std::lround(std::sqrt(static_cast<double>(d)));
  if (r * r != d) throw std::invalid_argument("bound assembly needs a square dimension (even number of qubits)");
}

TripartiteResult tripartite_bound(const FormFactors& ff, const EnsembleSpec& ens) {
  require_square(ff.d);
  TripartiteResult r;
  r.c2 = probe_value(ProbeKind::TripartiteC2, ff, ens);
  r.cd = probe_value(ProbeKind::TripartiteCD, ff, ens);
  r.bound = std::log(static_cast<double>(ff.d)) + std::log(r.c2) + std::log(r.cd);
  return r;
}

PurityResult purity_bound(const FormFactors& ff, const EnsembleSpec& ens) {
  require_square(ff.d);
  double p = probe_value(ProbeKind::Purity2Renyi, ff, ens);
  return {p, -std::log(p)};
}

double coherence_l2(const FormFactors& ff, const EnsembleSpec& ens) {
  return probe_value(ProbeKind::CoherenceL2, ff, ens);
}

double wyd_skew(const FormFactors& ff, const EnsembleSpec& ens, WydVariant variant) {
  return probe_value(variant == WydVariant::Pauli ? ProbeKind::WydPauli : ProbeKind::WydCB, ff, ens);
}

}  // namespace isotwirl
