#include "dgcat/fields.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace dgcat {

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::NonMonic: return "NonMonic";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::TowerMismatch: return "TowerMismatch";
    case ErrorCode::DegreeBoundExceeded: return "DegreeBoundExceeded";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotAComplex: return "NotAComplex";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::WrongDegree: return "WrongDegree";
    case ErrorCode::ActionMismatch: return "ActionMismatch";
    case ErrorCode::WindowNotGuaranteed: return "WindowNotGuaranteed";
    case ErrorCode::SizeBoundExceeded: return "SizeBoundExceeded";
    case ErrorCode::NotAPrefixTower: return "NotAPrefixTower";
    case ErrorCode::MalformedStep: return "MalformedStep";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::TamperedReport: return "TamperedReport";
  }
  return "UnknownError";
}

// ---------------------------------------------------------------------------
// FieldTower

FieldTower::FieldTower(long p, std::vector<TowerStep> steps)
    : p_(p), steps_(std::move(steps)) {
  degree_ = 1;
  for (const auto& s : steps_) degree_ *= s.degree();
}

TowerPtr FieldTower::rationals() {
  return TowerPtr(new FieldTower(0, {}));
}

TowerPtr FieldTower::prime_field(long p) {
  if (p < 2) throw Error(ErrorCode::ValidationError, "characteristic must be a prime");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0)
      throw Error(ErrorCode::ValidationError,
                  std::to_string(p) + " is not prime");
  return TowerPtr(new FieldTower(p, {}));
}

int FieldTower::degree_up_to(int level) const {
  int d = 1;
  for (int i = 0; i < level; ++i) d *= steps_[i].degree();
  return d;
}

bool FieldTower::same_as(const FieldTower& other) const {
  if (this == &other) return true;
  if (p_ != other.p_ || steps_.size() != other.steps_.size()) return false;
  for (size_t i = 0; i < steps_.size(); ++i)
    if (steps_[i].gen != other.steps_[i].gen ||
        steps_[i].minpoly != other.steps_[i].minpoly)
      return false;
  return true;
}

bool FieldTower::prefix_of(const FieldTower& other) const {
  if (p_ != other.p_ || steps_.size() > other.steps_.size()) return false;
  for (size_t i = 0; i < steps_.size(); ++i) {
    // A prefix-level minpoly coefficient vector is the truncation of the
    // same data at the lower total degree.
    if (steps_[i].gen != other.steps_[i].gen) return false;
    if (steps_[i].minpoly.size() != other.steps_[i].minpoly.size()) return false;
    for (size_t j = 0; j < steps_[i].minpoly.size(); ++j)
      if (steps_[i].minpoly[j] != other.steps_[i].minpoly[j]) return false;
  }
  return true;
}

std::string FieldTower::describe() const {
  std::string s = p_ == 0 ? "Q" : "F" + std::to_string(p_);
  for (const auto& st : steps_) s += "(" + st.gen + ")";
  return s;
}

// ---------------------------------------------------------------------------
// Level arithmetic on flat coefficient slices.

namespace {

Rat reduce_base(const Rat& r, long p) {
  if (p == 0) return r;
  Int num = numerator(r) % p;
  if (num < 0) num += p;
  // denominators over F_p have been cleared by callers; assert via inverse
  if (denominator(r) != 1) {
    // clear the denominator with a modular inverse
    Int den = denominator(r) % p;
    if (den < 0) den += p;
    // Fermat inverse
    Int inv = 1, base = den, e = p - 2;
    while (e > 0) {
      if (e % 2 == 1) inv = inv * base % p;
      base = base * base % p;
      e /= 2;
    }
    num = num * inv % p;
  }
  return Rat(num);
}

struct LevelOps {
  const FieldTower* tow;

  int dim(int level) const { return tow->degree_up_to(level); }

  void add(int /*level*/, int n, const Rat* a, const Rat* b, Rat* out) const {
    for (int i = 0; i < n; ++i) out[i] = reduce_base(a[i] + b[i], tow->characteristic());
  }

  void mul(int level, const Rat* a, const Rat* b, Rat* out) const {
    if (level == 0) {
      out[0] = reduce_base(a[0] * b[0], tow->characteristic());
      return;
    }
    int m = dim(level - 1);
    const TowerStep& step = tow->steps()[level - 1];
    int d = step.degree();
    std::vector<Rat> prod((2 * d - 1) * m, Rat(0));
    std::vector<Rat> tmp(m);
    for (int i = 0; i < d; ++i) {
      if (all_zero(a + i * m, m)) continue;
      for (int j = 0; j < d; ++j) {
        if (all_zero(b + j * m, m)) continue;
        mul(level - 1, a + i * m, b + j * m, tmp.data());
        for (int t = 0; t < m; ++t) prod[(i + j) * m + t] += tmp[t];
      }
    }
    // reduce modulo the monic minimal polynomial
    for (int k = 2 * d - 2; k >= d; --k) {
      if (all_zero(prod.data() + k * m, m)) continue;
      std::vector<Rat> lead(prod.begin() + k * m, prod.begin() + (k + 1) * m);
      for (int t = 0; t < m; ++t) prod[k * m + t] = 0;
      for (int c = 0; c < d; ++c) {
        const std::vector<Rat>& mc = step.minpoly[c];
        if (all_zero(mc.data(), m)) continue;
        mul(level - 1, lead.data(), mc.data(), tmp.data());
        for (int t = 0; t < m; ++t) prod[(k - d + c) * m + t] -= tmp[t];
      }
    }
    for (int i = 0; i < d * m; ++i)
      out[i] = reduce_base(prod[i], tow->characteristic());
  }

  void inv(int level, const Rat* a, Rat* out) const {
    if (level == 0) {
      if (a[0] == 0) throw Error(ErrorCode::DivisionByZero, "invert(0)");
      out[0] = reduce_base(Rat(1) / a[0], tow->characteristic());
      return;
    }
    int m = dim(level - 1);
    const TowerStep& step = tow->steps()[level - 1];
    int d = step.degree();
    using Poly = std::vector<std::vector<Rat>>;
    auto elem = [&](const Rat* src) {
      return std::vector<Rat>(src, src + m);
    };
    Poly r0(d + 1), r1(d), s0, s1;
    for (int c = 0; c <= d; ++c) r0[c] = step.minpoly[c];
    for (int c = 0; c < d; ++c) r1[c] = elem(a + c * m);
    trim(r1, m);
    if (r1.empty()) throw Error(ErrorCode::DivisionByZero, "invert(0)");
    s0 = {};                                   // coefficient of a in r0
    s1 = {std::vector<Rat>(m, Rat(0))};
    s1[0][0] = 1;
    canonical_base(s1[0]);
    while (!r1.empty()) {
      Poly q, rem;
      poly_divmod(level - 1, r0, r1, q, rem);
      Poly s2 = poly_sub(level - 1, s0, poly_mul(level - 1, q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      trim(r1, m);
      s0 = std::move(s1);
      s1 = std::move(s2);
      trim(s1, m);
    }
    // r0 is a nonzero constant: minpoly irreducible
    std::vector<Rat> c_inv(m);
    inv(level - 1, r0[0].data(), c_inv.data());
    std::vector<Rat> tmp(m);
    std::vector<Rat> res(d * m, Rat(0));
    for (size_t c = 0; c < s0.size(); ++c) {
      mul(level - 1, s0[c].data(), c_inv.data(), tmp.data());
      for (int t = 0; t < m; ++t) res[c * m + t] = tmp[t];
    }
    for (int i = 0; i < d * m; ++i) out[i] = res[i];
  }

 private:
  static bool all_zero(const Rat* a, int n) {
    for (int i = 0; i < n; ++i)
      if (a[i] != 0) return false;
    return true;
  }

  void canonical_base(std::vector<Rat>& v) const {
    for (auto& x : v) x = reduce_base(x, tow->characteristic());
  }

  static void trim(std::vector<std::vector<Rat>>& p, int m) {
    while (!p.empty()) {
      bool z = true;
      for (int i = 0; i < m; ++i)
        if (p.back()[i] != 0) { z = false; break; }
      if (!z) break;
      p.pop_back();
    }
  }

  std::vector<std::vector<Rat>> poly_mul(int level,
                                         const std::vector<std::vector<Rat>>& a,
                                         const std::vector<std::vector<Rat>>& b) const {
    int m = dim(level);
    if (a.empty() || b.empty()) return {};
    std::vector<std::vector<Rat>> out(a.size() + b.size() - 1,
                                      std::vector<Rat>(m, Rat(0)));
    std::vector<Rat> tmp(m);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) {
        mul(level, a[i].data(), b[j].data(), tmp.data());
        for (int t = 0; t < m; ++t) out[i + j][t] += tmp[t];
      }
    for (auto& c : out) canonical_base(c);
    return out;
  }

  std::vector<std::vector<Rat>> poly_sub(int level,
                                         const std::vector<std::vector<Rat>>& a,
                                         const std::vector<std::vector<Rat>>& b) const {
    int m = dim(level);
    std::vector<std::vector<Rat>> out(std::max(a.size(), b.size()),
                                      std::vector<Rat>(m, Rat(0)));
    for (size_t i = 0; i < a.size(); ++i)
      for (int t = 0; t < m; ++t) out[i][t] += a[i][t];
    for (size_t i = 0; i < b.size(); ++i)
      for (int t = 0; t < m; ++t) out[i][t] -= b[i][t];
    for (auto& c : out) canonical_base(c);
    trim(out, m);
    return out;
  }

  void poly_divmod(int level, const std::vector<std::vector<Rat>>& num,
                   const std::vector<std::vector<Rat>>& den,
                   std::vector<std::vector<Rat>>& q,
                   std::vector<std::vector<Rat>>& rem) const {
    int m = dim(level);
    rem = num;
    trim(rem, m);
    q.assign(rem.size() >= den.size() ? rem.size() - den.size() + 1 : 0,
             std::vector<Rat>(m, Rat(0)));
    std::vector<Rat> lead_inv(m);
    inv(level, den.back().data(), lead_inv.data());
    std::vector<Rat> f(m), tmp(m);
    while (rem.size() >= den.size() && !rem.empty()) {
      size_t shift = rem.size() - den.size();
      mul(level, rem.back().data(), lead_inv.data(), f.data());
      q[shift] = f;
      for (size_t c = 0; c < den.size(); ++c) {
        mul(level, f.data(), den[c].data(), tmp.data());
        for (int t = 0; t < m; ++t) rem[shift + c][t] -= tmp[t];
      }
      for (auto& c : rem) canonical_base(c);
      trim(rem, m);
    }
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(TowerPtr tower, std::vector<Rat> coeffs)
    : tower_(std::move(tower)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != tower_->degree())
    throw Error(ErrorCode::ShapeMismatch, "scalar coefficient vector length");
  for (auto& c : coeffs_) c = reduce_base(c, tower_->characteristic());
}

Scalar Scalar::zero(const TowerPtr& tower) {
  return Scalar(tower, std::vector<Rat>(tower->degree(), Rat(0)));
}

Scalar Scalar::one(const TowerPtr& tower) {
  std::vector<Rat> c(tower->degree(), Rat(0));
  c[0] = 1;
  return Scalar(tower, std::move(c));
}

Scalar Scalar::from_rational(const TowerPtr& tower, const Rat& r) {
  std::vector<Rat> c(tower->degree(), Rat(0));
  c[0] = r;
  return Scalar(tower, std::move(c));
}

Scalar Scalar::from_int(const TowerPtr& tower, long n) {
  return from_rational(tower, Rat(n));
}

Scalar Scalar::generator(const TowerPtr& tower, int step) {
  if (step < 0 || step >= static_cast<int>(tower->steps().size()))
    throw Error(ErrorCode::UnknownReference, "tower step index");
  std::vector<Rat> c(tower->degree(), Rat(0));
  c[tower->degree_up_to(step)] = 1;  // exponent 1 on that generator
  return Scalar(tower, std::move(c));
}

bool Scalar::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Scalar::is_one() const {
  if (coeffs_.empty() || coeffs_[0] != 1) return false;
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

void Scalar::check_same_tower(const Scalar& o) const {
  if (!tower_->same_as(*o.tower_))
    throw Error(ErrorCode::TowerMismatch, "scalars from different towers");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_tower(o);
  std::vector<Rat> c(coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] + o.coeffs_[i];
  return Scalar(tower_, std::move(c));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same_tower(o);
  std::vector<Rat> c(coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] - o.coeffs_[i];
  return Scalar(tower_, std::move(c));
}

Scalar Scalar::operator-() const {
  std::vector<Rat> c(coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
  return Scalar(tower_, std::move(c));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_tower(o);
  LevelOps ops{tower_.get()};
  std::vector<Rat> c(coeffs_.size());
  ops.mul(static_cast<int>(tower_->steps().size()), coeffs_.data(),
          o.coeffs_.data(), c.data());
  return Scalar(tower_, std::move(c));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "invert(0)");
  LevelOps ops{tower_.get()};
  std::vector<Rat> c(coeffs_.size(), Rat(0));
  ops.inv(static_cast<int>(tower_->steps().size()), coeffs_.data(), c.data());
  return Scalar(tower_, std::move(c));
}

bool Scalar::operator==(const Scalar& o) const {
  return tower_->same_as(*o.tower_) && coeffs_ == o.coeffs_;
}

Scalar Scalar::embed(const TowerPtr& bigger) const {
  if (!tower_->prefix_of(*bigger))
    throw Error(ErrorCode::NotAPrefixTower,
                tower_->describe() + " is not a prefix of " + bigger->describe());
  std::vector<Rat> c(bigger->degree(), Rat(0));
  std::copy(coeffs_.begin(), coeffs_.end(), c.begin());
  return Scalar(bigger, std::move(c));
}

Scalar Scalar::canonicalized() const { return Scalar(tower_, coeffs_); }

std::string Scalar::str() const {
  std::ostringstream out;
  bool first = true;
  int n = static_cast<int>(coeffs_.size());
  for (int idx = 0; idx < n; ++idx) {
    if (coeffs_[idx] == 0) continue;
    Rat c = coeffs_[idx];
    std::string mono;
    int rest = idx;
    for (size_t s = 0; s < tower_->steps().size(); ++s) {
      int d = tower_->steps()[s].degree();
      int e = rest % d;
      rest /= d;
      if (e > 0) {
        if (!mono.empty()) mono += "*";
        mono += tower_->steps()[s].gen;
        if (e > 1) mono += "^" + std::to_string(e);
      }
    }
    std::ostringstream cs;
    cs << c;
    std::string cstr = cs.str();
    if (!first) {
      if (!cstr.empty() && cstr[0] == '-') {
        out << "-";
        cstr = cstr.substr(1);
      } else {
        out << "+";
      }
    }
    if (mono.empty()) {
      out << cstr;
    } else if (cstr == "1") {
      out << mono;
    } else if (cstr == "-1" && first) {
      out << "-" << mono;
    } else {
      out << cstr << "*" << mono;
    }
    first = false;
  }
  if (first) return "0";
  return out.str();
}

// ---------------------------------------------------------------------------
// Polynomials over Scalars (used by irreducibility and extension building).

namespace {

using SPoly = std::vector<Scalar>;

void strim(SPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

SPoly smul(const SPoly& a, const SPoly& b, const TowerPtr& t) {
  if (a.empty() || b.empty()) return {};
  SPoly out(a.size() + b.size() - 1, Scalar::zero(t));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  strim(out);
  return out;
}

void sdivmod(const SPoly& num, const SPoly& den, SPoly& q, SPoly& rem,
             const TowerPtr& t) {
  rem = num;
  strim(rem);
  q.assign(rem.size() >= den.size() ? rem.size() - den.size() + 1 : 0,
           Scalar::zero(t));
  Scalar lead_inv = den.back().inverse();
  while (rem.size() >= den.size() && !rem.empty()) {
    size_t shift = rem.size() - den.size();
    Scalar f = rem.back() * lead_inv;
    q[shift] = f;
    for (size_t c = 0; c < den.size(); ++c) rem[shift + c] -= f * den[c];
    strim(rem);
  }
}

SPoly sgcd(SPoly a, SPoly b, const TowerPtr& t) {
  strim(a);
  strim(b);
  while (!b.empty()) {
    SPoly q, r;
    sdivmod(a, b, q, r, t);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Scalar inv = a.back().inverse();
    for (auto& c : a) c *= inv;
  }
  return a;
}

SPoly smulmod(const SPoly& a, const SPoly& b, const SPoly& mod,
              const TowerPtr& t) {
  SPoly p = smul(a, b, t);
  SPoly q, r;
  if (p.size() >= mod.size())
    sdivmod(p, mod, q, r, t);
  else
    r = p;
  return r;
}

SPoly spowmod(SPoly base, Int e, const SPoly& mod, const TowerPtr& t) {
  SPoly result{Scalar::one(t)};
  while (e > 0) {
    if (e % 2 == 1) result = smulmod(result, base, mod, t);
    base = smulmod(base, base, mod, t);
    e /= 2;
  }
  return result;
}

Scalar seval(const SPoly& p, const Scalar& x) {
  Scalar acc = Scalar::zero(x.tower());
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// Enumerates all elements of a finite tower level; calls fn until it
// returns true (found).
bool enumerate_field(const TowerPtr& t, const std::function<bool(const Scalar&)>& fn) {
  long p = t->characteristic();
  int n = t->degree();
  std::vector<long> digits(n, 0);
  while (true) {
    std::vector<Rat> c(n);
    for (int i = 0; i < n; ++i) c[i] = digits[i];
    if (fn(Scalar(t, std::move(c)))) return true;
    int i = 0;
    while (i < n && ++digits[i] == p) digits[i++] = 0;
    if (i == n) return false;
  }
}

IrreducibilityResult reducible_with(SPoly factor) {
  return IrreducibilityResult{false, std::move(factor)};
}

IrreducibilityResult check_finite_field(const TowerPtr& t, const SPoly& f) {
  int deg = static_cast<int>(f.size()) - 1;
  Int q = 1;
  for (int i = 0; i < t->degree(); ++i) q *= t->characteristic();

  if (deg <= 3 && q <= 100000) {
    Scalar root = Scalar::zero(t);
    bool found = enumerate_field(t, [&](const Scalar& x) {
      if (seval(f, x).is_zero()) {
        root = x;
        return true;
      }
      return false;
    });
    if (found) return reducible_with({-root, Scalar::one(t)});
    if (deg <= 3) return {true, {}};
  }

  // squarefree part: gcd(f, f')
  SPoly fp;
  for (size_t i = 1; i < f.size(); ++i)
    fp.push_back(f[i] * Scalar::from_int(t, static_cast<long>(i)));
  strim(fp);
  if (!fp.empty()) {
    SPoly g = sgcd(f, fp, t);
    if (g.size() > 1 && g.size() < f.size()) return reducible_with(g);
  }

  // gcd with x^(q^i) - x detects factors of degree dividing i
  SPoly x{Scalar::zero(t), Scalar::one(t)};
  for (int i = 1; i <= deg / 2; ++i) {
    Int e = 1;
    for (int j = 0; j < i; ++j) e *= q;
    SPoly xq = spowmod(x, e, f, t);
    // xq - x
    SPoly diff = xq;
    if (diff.size() < 2) diff.resize(2, Scalar::zero(t));
    diff[1] -= Scalar::one(t);
    strim(diff);
    if (diff.empty()) {
      // every factor has degree dividing i < deg: reducible; hunt a factor
      // by brute force over monic candidates of degree i
      // (desk scale: q^i is small whenever we get here)
      SPoly found;
      std::vector<Scalar> coeffs(i, Scalar::zero(t));
      std::function<bool(int)> rec = [&](int pos) -> bool {
        if (pos == i) {
          SPoly cand(coeffs.begin(), coeffs.end());
          cand.push_back(Scalar::one(t));
          SPoly q2, r;
          sdivmod(f, cand, q2, r, t);
          if (r.empty()) {
            found = cand;
            return true;
          }
          return false;
        }
        return enumerate_field(t, [&](const Scalar& v) {
          coeffs[pos] = v;
          return rec(pos + 1);
        });
      };
      if (rec(0)) return reducible_with(found);
      throw Error(ErrorCode::DegreeBoundExceeded,
                  "could not extract an explicit factor");
    }
    SPoly g = sgcd(f, diff, t);
    if (g.size() > 1 && g.size() < f.size()) return reducible_with(g);
    if (g.size() == f.size())
      throw Error(ErrorCode::DegreeBoundExceeded,
                  "could not extract an explicit factor");
  }
  return {true, {}};
}

IrreducibilityResult check_rationals(const TowerPtr& t, const SPoly& f) {
  int deg = static_cast<int>(f.size()) - 1;
  if (deg > 3)
    throw Error(ErrorCode::DegreeBoundExceeded,
                "irreducibility over Q supported up to degree 3");
  // clear denominators -> integer polynomial
  Int lcm = 1;
  for (const auto& c : f) {
    Int d = denominator(c.coeffs()[0]);
    lcm = lcm / gcd(lcm, d) * d;
  }
  std::vector<Int> zi(f.size());
  for (size_t i = 0; i < f.size(); ++i)
    zi[i] = numerator(f[i].coeffs()[0] * Rat(lcm));
  if (zi[0] == 0)
    return reducible_with({Scalar::zero(t), Scalar::one(t)});  // factor x
  auto divisors = [](Int v) {
    if (v < 0) v = -v;
    std::vector<Int> out;
    for (Int d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        out.push_back(d);
        out.push_back(v / d);
      }
    return out;
  };
  for (const Int& pnum : divisors(zi[0]))
    for (const Int& pden : divisors(zi.back()))
      for (int sign : {1, -1}) {
        Rat r(pnum * sign, pden);
        Scalar root = Scalar::from_rational(t, r);
        if (seval(f, root).is_zero())
          return reducible_with({-root, Scalar::one(t)});
      }
  return {true, {}};  // degree 2 or 3 with no rational root
}

}  // namespace

IrreducibilityResult irreducibility_check(const TowerPtr& tower,
                                          const std::vector<Scalar>& poly,
                                          int degree_bound) {
  SPoly f = poly;
  strim(f);
  if (f.size() < 2)
    throw Error(ErrorCode::ValidationError, "polynomial must have degree >= 1");
  int deg = static_cast<int>(f.size()) - 1;
  if (deg > degree_bound)
    throw Error(ErrorCode::DegreeBoundExceeded,
                "degree " + std::to_string(deg) + " exceeds bound " +
                    std::to_string(degree_bound));
  for (const auto& c : f)
    if (!c.tower()->same_as(*tower))
      throw Error(ErrorCode::TowerMismatch, "coefficient from a different tower");
  if (deg == 1) return {true, {}};
  if (tower->characteristic() > 0) return check_finite_field(tower, f);
  if (!tower->steps().empty())
    throw Error(ErrorCode::DegreeBoundExceeded,
                "irreducibility over proper extensions of Q is not supported");
  return check_rationals(tower, f);
}

TowerPtr make_extension(const TowerPtr& tower,
                        const std::vector<Scalar>& minpoly,
                        const std::string& gen_name,
                        int degree_bound) {
  SPoly f = minpoly;
  strim(f);
  if (f.size() < 3)
    throw Error(ErrorCode::ValidationError, "extension degree must be >= 2");
  if (!f.back().is_one())
    throw Error(ErrorCode::NonMonic, "minimal polynomial must be monic");
  for (const auto& st : tower->steps())
    if (st.gen == gen_name)
      throw Error(ErrorCode::ValidationError,
                  "generator name '" + gen_name + "' already in use");
  IrreducibilityResult irr = irreducibility_check(tower, f, degree_bound);
  if (!irr.irreducible) {
    std::string fs = "(";
    for (size_t i = 0; i < irr.factor.size(); ++i) {
      if (i) fs += ", ";
      fs += irr.factor[i].str();
    }
    fs += ")";
    throw Error(ErrorCode::ReduciblePolynomial,
                "minimal polynomial has factor with coefficients " + fs);
  }
  TowerStep step;
  step.gen = gen_name;
  step.minpoly.reserve(f.size());
  for (const auto& c : f) step.minpoly.push_back(c.coeffs());
  std::vector<TowerStep> steps = tower->steps();
  steps.push_back(std::move(step));
  return TowerPtr(new FieldTower(tower->characteristic(), std::move(steps)));
}

// ---------------------------------------------------------------------------
// Scalar literal parser

namespace {

struct ScalarParser {
  const TowerPtr& tower;
  const std::string& text;
  size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos < text.size() ? text[pos] : '\0';
  }

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos != text.size())
      throw Error(ErrorCode::SyntaxError,
                  "unexpected character at position " + std::to_string(pos) +
                      " in scalar literal '" + text + "'");
    return v;
  }

  Scalar expr() {
    Scalar acc = Scalar::zero(tower);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Scalar t = term();
    acc = neg ? acc - t : acc + t;
    while (true) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else break;
    }
    return acc;
  }

  Scalar term() {
    Scalar acc = factor();
    while (true) {
      skip();
      if (eat('*')) {
        acc *= factor();
      } else if (pos < text.size() &&
                 (std::isalpha(static_cast<unsigned char>(text[pos])) ||
                  text[pos] == '_')) {
        acc *= factor();  // implicit multiplication like "2g"
      } else {
        break;
      }
    }
    return acc;
  }

  Scalar factor() {
    Scalar base = atom();
    if (eat('^')) {
      long e = integer();
      if (e < 0) throw Error(ErrorCode::SyntaxError, "negative exponent");
      Scalar acc = Scalar::one(tower);
      for (long i = 0; i < e; ++i) acc *= base;
      return acc;
    }
    return base;
  }

  Scalar atom() {
    skip();
    if (eat('(')) {
      Scalar v = expr();
      if (!eat(')')) throw Error(ErrorCode::SyntaxError, "expected ')'");
      return v;
    }
    if (peek() == '-') {
      eat('-');
      return -atom();
    }
    if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])))) {
      long num = integer();
      if (eat('/')) {
        long den = integer();
        if (den == 0) throw Error(ErrorCode::DivisionByZero, "literal a/0");
        return Scalar::from_rational(tower, Rat(num, den));
      }
      return Scalar::from_int(tower, num);
    }
    // generator name
    std::string name;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      name += text[pos++];
    if (name.empty())
      throw Error(ErrorCode::SyntaxError, "expected scalar atom in '" + text + "'");
    for (size_t s = 0; s < tower->steps().size(); ++s)
      if (tower->steps()[s].gen == name)
        return Scalar::generator(tower, static_cast<int>(s));
    throw Error(ErrorCode::UnknownReference, "unknown generator '" + name + "'");
  }

  long integer() {
    skip();
    std::string digits;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      digits += text[pos++];
    if (digits.empty()) throw Error(ErrorCode::SyntaxError, "expected integer");
    return std::stol(digits);
  }
};

}  // namespace

Scalar parse_scalar(const TowerPtr& tower, const std::string& text) {
  ScalarParser p{tower, text};
  return p.parse();
}

}  // namespace dgcat
