#include "isotwirl/weingarten.hpp"

namespace isotwirl {

namespace {

const std::vector<std::string> kClassLabels = {"Id", "(ij)", "(ij)(kl)", "(ijk)", "(ijkl)"};

Rational ipow(long d, int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
  return Rational(r);
}

void check_d(long d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
}

}  // namespace

const char* to_string(GramKind k) {
  switch (k) {
    case GramKind::Plain: return "Plain";
    case GramKind::QProjected: return "QProjected";
    case GramKind::QPerpProjected: return "QPerpProjected";
  }
  return "?";
}

const char* to_string(WeingartenKind k) {
  switch (k) {
    case WeingartenKind::PlainS2: return "PlainS2";
    case WeingartenKind::Plain: return "Plain";
    case WeingartenKind::Plus: return "Plus";
    case WeingartenKind::Minus: return "Minus";
  }
  return "?";
}

std::array<Rational, kNumClasses> gram_class_function(GramKind kind, long d) {
  check_d(d);
  // cycle counts of Id, Two, TwoTwo, Three, Four on four slots
  std::array<Rational, kNumClasses> plain = {ipow(d, 4), ipow(d, 3), ipow(d, 2), ipow(d, 2), ipow(d, 1)};
  std::array<Rational, kNumClasses> q = {ipow(d, 2), ipow(d, 1), ipow(d, 2), Rational(1), ipow(d, 1)};
  switch (kind) {
    case GramKind::Plain: return plain;
    case GramKind::QProjected: return q;
    case GramKind::QPerpProjected: {
      std::array<Rational, kNumClasses> r;
      for (int c = 0; c < kNumClasses; ++c) r[c] = plain[c] - q[c];
      return r;
    }
  }
  return plain;
}

RationalMatrix gram(GramKind kind, long d) {
  auto f = gram_class_function(kind, d);
  RationalMatrix m(kNumPerms, kNumPerms);
  for (int i = 0; i < kNumPerms; ++i)
    for (int j = 0; j < kNumPerms; ++j)
      m(i, j) = f[static_cast<int>(PermOp::from_index(compose_index(i, j)).conj_class())];
  return m;
}

RationalMatrix gram_s2(long d) {
  check_d(d);
  RationalMatrix m(2, 2);
  m(0, 0) = ipow(d, 2);
  m(1, 1) = ipow(d, 2);
  m(0, 1) = d;
  m(1, 0) = d;
  return m;
}

static GramKind gram_kind_of(WeingartenKind k) {
  switch (k) {
    case WeingartenKind::Plus: return GramKind::QProjected;
    case WeingartenKind::Minus: return GramKind::QPerpProjected;
    default: return GramKind::Plain;
  }
}

WeingartenTable weingarten_by_inversion(WeingartenKind kind, long d) {
  WeingartenTable t{kind, d, {}, {}, false, 0};
  if (kind == WeingartenKind::PlainS2) {
    RationalMatrix g = gram_s2(d);
    t.rank = g.rank();
    RationalMatrix w;
    try {
      w = g.inverse();
    } catch (const SingularGram&) {
      t.singular = true;
      w = g.pinv();
    }
    t.classes = {"Id", "(12)"};
    t.values = {w(0, 0), w(0, 1)};
    return t;
  }
  RationalMatrix g = gram(gram_kind_of(kind), d);
  t.rank = g.rank();
  RationalMatrix w;
  if (t.rank == kNumPerms) {
    w = g.inverse();
  } else {
    t.singular = true;
    w = g.pinv();
  }
  t.classes = kClassLabels;
  t.values.assign(kNumClasses, Rational(0));
  std::array<bool, kNumClasses> seen{};
  // W_{pi sigma} = w(pi o sigma); verify the class-function structure on every entry
  for (int i = 0; i < kNumPerms; ++i)
    for (int j = 0; j < kNumPerms; ++j) {
      int c = static_cast<int>(PermOp::from_index(compose_index(i, j)).conj_class());
      if (!seen[c]) {
        t.values[c] = w(i, j);
        seen[c] = true;
      } else if (t.values[c] != w(i, j)) {
        throw std::logic_error("weingarten_by_inversion: inverse is not a class function");
      }
    }
  return t;
}

Rational gram_fourier(GramKind kind, long d, int lambda) {
  return class_fourier(gram_class_function(kind, d), lambda);
}

WeingartenTable weingarten_by_characters(WeingartenKind kind, long d) {
  WeingartenTable t{kind, d, {}, {}, false, 0};
  if (kind == WeingartenKind::PlainS2) {
    check_d(d);
    Rational fe = ipow(d, 2), fs = d;
    Rational hat_triv = fe + fs, hat_sign = fe - fs;
    t.classes = {"Id", "(12)"};
    t.rank = (hat_triv != 0) + (hat_sign != 0);
    t.singular = t.rank < 2;
    Rational a = hat_triv != 0 ? Rational(1) / hat_triv : Rational(0);
    Rational b = hat_sign != 0 ? Rational(1) / hat_sign : Rational(0);
    t.values = {(a + b) / 2, (a - b) / 2};
    return t;
  }
  GramKind gk = gram_kind_of(kind);
  auto f = gram_class_function(gk, d);
  t.classes = kClassLabels;
  t.values.assign(kNumClasses, Rational(0));
  for (int l = 0; l < kNumIrreps; ++l) {
    Rational hat = class_fourier(f, l);
    if (hat == 0) {
      t.singular = true;
      continue;
    }
    t.rank += irrep_dim(l) * irrep_dim(l);
    for (int c = 0; c < kNumClasses; ++c)
      t.values[c] += Rational(irrep_dim(l) * irrep_character(l, static_cast<ConjClass>(c))) / (24 * hat);
  }
  return t;
}

RationalMatrix weingarten_matrix(const WeingartenTable& w) {
  if (w.kind == WeingartenKind::PlainS2) {
    RationalMatrix m(2, 2);
    m(0, 0) = m(1, 1) = w.values[0];
    m(0, 1) = m(1, 0) = w.values[1];
    return m;
  }
  RationalMatrix m(kNumPerms, kNumPerms);
  for (int i = 0; i < kNumPerms; ++i)
    for (int j = 0; j < kNumPerms; ++j)
      m(i, j) = w.values[static_cast<int>(PermOp::from_index(compose_index(i, j)).conj_class())];
  return m;
}

Rational dlambda(GramKind kind, long d, int lambda) {
  return gram_fourier(kind, d, lambda) * irrep_dim(lambda) / 24;
}

Rational dlambda_table(GramKind kind, long d, int lambda) {
  check_d(d);
  Rational x = d;
  switch (kind) {
    case GramKind::QProjected:
      switch (lambda) {
        case 0: return (x - 2) * (x - 1) / 6;
        case 1: return 0;
        case 2: return (x + 1) * (x - 1) / 3;
        case 3: return 0;
        case 4: return (x + 2) * (x + 1) / 6;
      }
      break;
    case GramKind::QPerpProjected:
      switch (lambda) {
        case 0: return (x - 4) * (x - 2) * (x - 1) * (x + 1) / 24;
        case 1: return (x - 2) * (x - 1) * x * (x + 1) / 8;
        case 2: return (x - 2) * (x - 1) * (x + 1) * (x + 2) / 12;
        case 3: return (x - 1) * x * (x + 1) * (x + 2) / 8;
        case 4: return (x - 1) * (x + 1) * (x + 2) * (x + 4) / 24;
      }
      break;
    case GramKind::Plain:
      switch (lambda) {
        case 0: return x * (x - 1) * (x - 2) * (x - 3) / 24;
        case 1: return x * (x + 1) * (x - 2) * (x - 1) / 8;
        case 2: return x * x * (x - 1) * (x + 1) / 12;
        case 3: return x * (x + 1) * (x + 2) * (x - 1) / 8;
        case 4: return x * (x + 1) * (x + 2) * (x + 3) / 24;
      }
      break;
  }
  throw std::out_of_range("irrep index");
}

WeingartenTable weingarten_tabulated(WeingartenKind kind, long d) {
  check_d(d);
  Rational x = d;
  WeingartenTable t{kind, d, kClassLabels, {}, false, 0};
  if (d == 2 || (kind == WeingartenKind::Minus && d == 4))
    throw SingularGram("tabulated Weingarten function has a pole at d = " + std::to_string(d));
  if (kind == WeingartenKind::Plus) {
    Rational den = (x + 1) * (x - 1) * (x + 2) * (x - 2);
    t.values = {
        1 / ((x + 2) * (x - 2)),
        Rational(-3) / (2 * den),
        1 / ((x + 2) * (x - 2)),
        (x * x + 8) / den,
        -3 * x / (2 * x * den),
    };
  } else if (kind == WeingartenKind::Minus) {
    t.values = {
        3 * (3 * x + 10) / ((x - 1) * (x + 1) * (x - 2) * (x + 2) * (x - 4)),
        (x - 8) / (x * (x - 1) * (x + 1) * (x - 2) * (x + 4)),
        1 / ((x - 1) * (x + 1) * (x + 2) * (x + 4)),
        Rational(-6) / ((x - 1) * (x + 1) * (x + 2) * (x - 2) * (x + 4)),
        (x * x + 2 * x + 16) / (x * (x - 1) * (x + 1) * (x - 2) * (x + 2) * (x + 4)),
    };
  } else {
    throw std::invalid_argument("weingarten_tabulated: only Plus and Minus are tabulated");
  }
  for (auto& v : t.values) v /= 24;
  return t;
}

WeingartenTable weingarten_plain_closed_form(long d) {
  if (d < 4) throw SingularGram("S4 Weingarten closed form has a pole at d = " + std::to_string(d));
  Rational x = d;
  Rational base = (x * x - 1) * (x * x - 4) * (x * x - 9);
  WeingartenTable t{WeingartenKind::Plain, d, kClassLabels, {}, false, 0};
  t.values = {
      (x * x * x * x - 8 * x * x + 6) / (x * x * base),
      Rational(-1) / (x * (x * x - 1) * (x * x - 9)),
      (x * x + 6) / (x * x * base),
      (2 * x * x - 3) / (x * x * base),
      Rational(-5) / (x * base),
  };
  return t;
}

}  // namespace isotwirl
