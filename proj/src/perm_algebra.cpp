#include "isotwirl/perm_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace isotwirl {

namespace {

struct Tables {
  std::array<PermOp, kNumPerms> perms;
  std::array<std::array<int, kNumPerms>, kNumPerms> mult{};
  std::array<int, kNumPerms> inv{};

  Tables() {
    std::array<std::uint8_t, 4> img{0, 1, 2, 3};
    int n = 0;
    do {
      perms[n++] = PermOp(img);
    } while (std::next_permutation(img.begin(), img.end()));
    for (int a = 0; a < kNumPerms; ++a) {
      for (int b = 0; b < kNumPerms; ++b) {
        std::array<std::uint8_t, 4> c{};
        for (int x = 0; x < 4; ++x) c[x] = perms[a](perms[b](x));
        mult[a][b] = PermOp(c).index();
      }
      std::array<std::uint8_t, 4> c{};
      for (int x = 0; x < 4; ++x) c[perms[a](x)] = static_cast<std::uint8_t>(x);
      inv[a] = PermOp(c).index();
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

constexpr int kChar[kNumIrreps][kNumClasses] = {
    {1, -1, 1, 1, -1},
    {3, -1, -1, 0, 1},
    {2, 0, 2, -1, 0},
    {3, 1, -1, 0, -1},
    {1, 1, 1, 1, 1},
};
constexpr int kDim[kNumIrreps] = {1, 3, 2, 3, 1};

}  // namespace

const char* to_string(ConjClass c) {
  switch (c) {
    case ConjClass::Id: return "Id";
    case ConjClass::Two: return "Two";
    case ConjClass::TwoTwo: return "TwoTwo";
    case ConjClass::Three: return "Three";
    case ConjClass::Four: return "Four";
  }
  return "?";
}

const char* to_string(FineClass c) {
  switch (c) {
    case FineClass::Id: return "Id";
    case FineClass::Swap12: return "(12)";
    case FineClass::Swap34: return "(34)";
    case FineClass::SwapOther: return "(ij)";
    case FineClass::ThreeFix12: return "(ijk)^(1,2)";
    case FineClass::ThreeFix34: return "(ijk)^(3,4)";
    case FineClass::FourNonCrossing: return "(ijkl)";
    case FineClass::FourCrossing: return "(1324),(1423)";
    case FineClass::DoubleSwap1234: return "(12)(34)";
    case FineClass::DoubleSwapOther: return "(ij)(kl)";
  }
  return "?";
}

ConjClass coarse(FineClass f) {
  switch (f) {
    case FineClass::Id: return ConjClass::Id;
    case FineClass::Swap12:
    case FineClass::Swap34:
    case FineClass::SwapOther: return ConjClass::Two;
    case FineClass::ThreeFix12:
    case FineClass::ThreeFix34: return ConjClass::Three;
    case FineClass::FourNonCrossing:
    case FineClass::FourCrossing: return ConjClass::Four;
    case FineClass::DoubleSwap1234:
    case FineClass::DoubleSwapOther: return ConjClass::TwoTwo;
  }
  return ConjClass::Id;
}

PermOp::PermOp() : img_{0, 1, 2, 3} {}

PermOp::PermOp(std::array<std::uint8_t, 4> img) : img_(img) {
  std::array<bool, 4> seen{};
  for (auto v : img_) {
    if (v > 3 || seen[v]) throw std::invalid_argument("PermOp: not a permutation of {0,1,2,3}");
    seen[v] = true;
  }
}

PermOp PermOp::from_index(int index) {
  if (index < 0 || index >= kNumPerms) throw std::out_of_range("PermOp index");
  return tables().perms[index];
}

PermOp PermOp::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty() || s == "()" || s == "id" || s == "Id" || s == "I") return PermOp();
  std::array<std::uint8_t, 4> img{0, 1, 2, 3};
  std::array<bool, 4> used{};
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '(') throw std::invalid_argument("bad cycle string: " + text);
    std::size_t j = s.find(')', i);
    if (j == std::string::npos) throw std::invalid_argument("unterminated cycle: " + text);
    std::vector<int> cyc;
    for (std::size_t k = i + 1; k < j; ++k) {
      if (s[k] == ',') continue;
      int v = s[k] - '1';
      if (v < 0 || v > 3 || used[v]) throw std::invalid_argument("bad cycle entry: " + text);
      used[v] = true;
      cyc.push_back(v);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k)
      img[cyc[k]] = static_cast<std::uint8_t>(cyc[(k + 1) % cyc.size()]);
    i = j + 1;
  }
  return PermOp(img);
}

int PermOp::index() const {
  // Lehmer code gives the lexicographic rank of the one-line notation.
  int rank = 0;
  constexpr int fact[4] = {6, 2, 1, 1};
  for (int i = 0; i < 4; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < 4; ++j)
      if (img_[j] < img_[i]) ++smaller;
    rank += smaller * fact[i];
  }
  return rank;
}

std::vector<std::vector<int>> PermOp::cycles() const {
  std::vector<std::vector<int>> out;
  std::array<bool, 4> seen{};
  for (int s = 0; s < 4; ++s) {
    if (seen[s]) continue;
    std::vector<int> c;
    for (int x = s; !seen[x]; x = img_[x]) {
      seen[x] = true;
      c.push_back(x);
    }
    if (c.size() > 1) out.push_back(c);
  }
  return out;
}

int PermOp::num_cycles() const {
  int n = 0;
  std::array<bool, 4> seen{};
  for (int s = 0; s < 4; ++s) {
    if (seen[s]) continue;
    ++n;
    for (int x = s; !seen[x]; x = img_[x]) seen[x] = true;
  }
  return n;
}

ConjClass PermOp::conj_class() const {
  auto cs = cycles();
  if (cs.empty()) return ConjClass::Id;
  if (cs.size() == 2) return ConjClass::TwoTwo;
  switch (cs[0].size()) {
    case 2: return ConjClass::Two;
    case 3: return ConjClass::Three;
    default: return ConjClass::Four;
  }
}

FineClass PermOp::fine_class() const {
  auto side = [](int x) { return x < 2 ? 0 : 1; };
  switch (conj_class()) {
    case ConjClass::Id: return FineClass::Id;
    case ConjClass::Two: {
      auto c = cycles()[0];
      if (c[0] == 0 && c[1] == 1) return FineClass::Swap12;
      if (c[0] == 2 && c[1] == 3) return FineClass::Swap34;
      return FineClass::SwapOther;
    }
    case ConjClass::Three: {
      int fixed = 0;
      for (int x = 0; x < 4; ++x)
        if (img_[x] == x) fixed = x;
      return fixed < 2 ? FineClass::ThreeFix12 : FineClass::ThreeFix34;
    }
    case ConjClass::Four: {
      bool alternating = true;
      for (int x = 0; x < 4; ++x)
        if (side(x) == side(img_[x])) alternating = false;
      return alternating ? FineClass::FourCrossing : FineClass::FourNonCrossing;
    }
    case ConjClass::TwoTwo:
      return img_[0] == 1 ? FineClass::DoubleSwap1234 : FineClass::DoubleSwapOther;
  }
  return FineClass::Id;
}

std::string PermOp::str() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& c : cs) {
    out += '(';
    for (int x : c) out += static_cast<char>('1' + x);
    out += ')';
  }
  return out;
}

const std::array<PermOp, kNumPerms>& all_perms() { return tables().perms; }

PermOp compose(const PermOp& a, const PermOp& b) {
  return tables().perms[tables().mult[a.index()][b.index()]];
}

PermOp inverse(const PermOp& a) { return tables().perms[tables().inv[a.index()]]; }

int compose_index(int a, int b) { return tables().mult[a][b]; }
int inverse_index(int a) { return tables().inv[a]; }

int class_size(ConjClass c) {
  switch (c) {
    case ConjClass::Id: return 1;
    case ConjClass::Two: return 6;
    case ConjClass::TwoTwo: return 3;
    case ConjClass::Three: return 8;
    case ConjClass::Four: return 6;
  }
  return 0;
}

Rational trace_of_perm(const PermOp& p, long d) {
  if (d < 2) throw std::invalid_argument("trace_of_perm: d must be >= 2");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(p.num_cycles()));
  return Rational(r);
}

std::string TraceExpr::str() const {
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += " ";
    out += "Tr[";
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) out += " ";
      out += f[i];
    }
    out += "]";
  }
  return out;
}

TraceExpr trace_with_operators(const PermOp& p, const std::array<std::string, 4>& ops) {
  // Tr[T_p (A_1 x ... x A_4)] = prod over cycles of Tr[A_m A_{p^-1(m)} A_{p^-2(m)} ...].
  PermOp pinv = inverse(p);
  TraceExpr e;
  std::array<bool, 4> seen{};
  for (int s = 0; s < 4; ++s) {
    if (seen[s]) continue;
    std::vector<std::string> word;
    for (int m = s; !seen[m]; m = pinv(m)) {
      seen[m] = true;
      word.push_back(ops[m]);
    }
    // canonical rotation: lexicographically smallest
    auto best = word;
    for (std::size_t r = 1; r < word.size(); ++r) {
      std::vector<std::string> rot(word.begin() + r, word.end());
      rot.insert(rot.end(), word.begin(), word.begin() + r);
      if (rot < best) best = rot;
    }
    e.factors.push_back(best);
  }
  std::sort(e.factors.begin(), e.factors.end());
  return e;
}

int irrep_character(int lambda, ConjClass c) {
  if (lambda < 0 || lambda >= kNumIrreps) throw std::out_of_range("irrep index");
  return kChar[lambda][static_cast<int>(c)];
}

int irrep_dim(int lambda) {
  if (lambda < 0 || lambda >= kNumIrreps) throw std::out_of_range("irrep index");
  return kDim[lambda];
}

PermVector<Rational> irrep_projector(int lambda) {
  PermVector<Rational> v;
  for (int i = 0; i < kNumPerms; ++i)
    v[i] = Rational(irrep_dim(lambda) * irrep_character(lambda, all_perms()[i].conj_class()), 24);
  for (auto& x : v) x.canonicalize();
  return v;
}

PermVector<Rational> convolve(const PermVector<Rational>& a, const PermVector<Rational>& b) {
  PermVector<Rational> c;
  for (auto& x : c) x = 0;
  for (int i = 0; i < kNumPerms; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < kNumPerms; ++j) c[compose_index(i, j)] += a[i] * b[j];
  }
  return c;
}

Rational class_fourier(const std::array<Rational, kNumClasses>& f, int lambda) {
  Rational s = 0;
  for (int c = 0; c < kNumClasses; ++c)
    s += f[c] * class_size(static_cast<ConjClass>(c)) * irrep_character(lambda, static_cast<ConjClass>(c));
  s /= irrep_dim(lambda);
  return s;
}

}  // namespace isotwirl
