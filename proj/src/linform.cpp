#include "isotwirl/formfactors.hpp"

namespace isotwirl {

const char* to_string(SpectralSource s) {
  switch (s) {
    case SpectralSource::Explicit: return "explicit";
    case SpectralSource::GDE: return "GDE";
    case SpectralSource::GUE: return "GUE";
    case SpectralSource::Toric: return "toric";
    case SpectralSource::Counting: return "counting";
  }
  return "?";
}

const char* sym_name(int s) {
  static const char* names[kNumSyms] = {"1", "g2", "g2(2t)", "g3", "g3*", "g4", "g3~"};
  return names[s];
}

FormFactors FormFactors::counting(long d) {
  FormFactors f;
  double x = static_cast<double>(d);
  f.d = d;
  f.t = 0.0;
  f.g2 = x * x;
  f.g2_2t = x * x;
  f.g3 = x * x * x;
  f.g4 = x * x * x * x;
  f.g3tilde = x * x;
  f.source = SpectralSource::Counting;
  f.stabilizer_valid = true;
  return f;
}

LinForm<double> to_double(const LinForm<Rational>& f) {
  LinForm<double> r;
  for (int i = 0; i < kNumSyms; ++i) r.c[i] = f.c[i].get_d();
  return r;
}

}  // namespace isotwirl
