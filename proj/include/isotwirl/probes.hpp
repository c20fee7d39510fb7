#pragma once

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "isotwirl/formfactors.hpp"
#include "isotwirl/twirl_engine.hpp"

namespace isotwirl {

enum class ProbeKind { Loschmidt2, Otoc4, TripartiteC2, TripartiteCD, Purity2Renyi, CoherenceL2, WydPauli, WydCB };
constexpr int kNumProbeKinds = 8;
const char* to_string(ProbeKind k);
ProbeKind parse_probe(const std::string& s);
const std::array<ProbeKind, kNumProbeKinds>& all_probes();

struct EnsembleSpec {
  enum class Kind { Haar, Clifford, Doped };
  Kind kind = Kind::Haar;
  long k = 0;                  // doping layers
  double theta = M_PI / 4.0;  // doping gate diag(1, e^{-i theta})

  static EnsembleSpec haar() { return {Kind::Haar, 0, M_PI / 4.0}; }
  static EnsembleSpec clifford() { return {Kind::Clifford, 0, M_PI / 4.0}; }
  static EnsembleSpec doped(long k, double theta = M_PI / 4.0) { return {Kind::Doped, k, theta}; }
  std::string str() const;
};
const char* to_string(EnsembleSpec::Kind k);
EnsembleSpec parse_ensemble(const std::string& s);  // "haar", "clifford", "doped:k[:theta]"

// Subsystem dimensions: A|B for the purity, C|D for the tripartite information.
template <class S>
struct ProbeDims {
  S dA, dB, dC, dD;
};
// Balanced split: dA = 2^{floor(N/2)}, dB = d / dA (the same for C|D).
ProbeDims<Rational> balanced_dims(long d);
// dA = dB = dC = dD = sqrt(d).
ProbeDims<double> sqrt_dims(long d);

// x^H_pi = Tr[T_pi X], x^Q_pi = Tr[Q T_pi X] for the probe operator X; value = offset + sign * Tr[R X].
template <class S>
struct ProbeTables {
  PermVector<S> xH, xQ;
  S offset, sign;
};
template <class S>
ProbeTables<S> probe_tables(ProbeKind kind, long d, const ProbeDims<S>& dims);

// value(k) = offset + sign * (constant + sum_lambda xi_lambda^k decay_lambda + k linear).
template <class S>
struct ProbeForm {
  ProbeKind kind;
  EnsembleSpec ensemble;
  long d = 0;
  LinForm<S> constant;
  std::array<LinForm<S>, kNumIrreps> decay;
  std::array<S, kNumIrreps> xi;
  LinForm<S> linear;
  S offset, sign;

  double value(const FormFactors& ff, long k) const;
  double value(const FormFactors& ff) const { return value(ff, ensemble.k); }
};

template <class S>
ProbeForm<S> build_probe_form(ProbeKind kind, const EnsembleSpec& ens, long d, const ProbeDims<S>& dims);

// Cached exact forms with the balanced split. The cached form stores k = 0; pass k to value().
std::shared_ptr<const ProbeForm<Rational>> probe_form(ProbeKind kind, const EnsembleSpec& ens, long d);

void check_probe_dimension(ProbeKind kind, long d);

double probe_value(ProbeKind kind, const FormFactors& ff, const EnsembleSpec& ens);

double loschmidt2(const FormFactors& ff, const EnsembleSpec& ens);
double otoc4(const FormFactors& ff, const EnsembleSpec& ens);

struct TripartiteResult {
  double c2, cd, bound;  // bound = log d + log c2 + log cd
};
TripartiteResult tripartite_bound(const FormFactors& ff, const EnsembleSpec& ens);

struct PurityResult {
  double purity, entropy_bound;  // entropy_bound = -log purity
};
PurityResult purity_bound(const FormFactors& ff, const EnsembleSpec& ens);

double coherence_l2(const FormFactors& ff, const EnsembleSpec& ens);

enum class WydVariant { Pauli, CB };
double wyd_skew(const FormFactors& ff, const EnsembleSpec& ens, WydVariant variant);

// Closed forms as printed (second moment equal to one for WYD; coherence-like values returned as 1 - term;
// the OTOC printed forms are multiplied by 1/d). Purity and tripartite forms assume sqrt(d) splits.
double printed_probe(ProbeKind kind, const EnsembleSpec& ens, const FormFactors& ff);
bool printed_has_form(ProbeKind kind, EnsembleSpec::Kind ens);

// Structured comparison of the table-driven and printed forms.
struct MismatchReport {
  ProbeKind probe;
  EnsembleSpec ensemble;
  long d;
  double max_rel_error;
  int points;
  int failures;
  // coefficient of each form factor at the ensemble's k: symbol -> (table, printed)
  std::map<std::string, std::pair<double, double>> coefficient_diffs;
  std::string str() const;
};
MismatchReport compare_with_printed(ProbeKind kind, const EnsembleSpec& ens, long d,
                                  const std::vector<FormFactors>& grid, double rel_tol);

}  // namespace isotwirl
