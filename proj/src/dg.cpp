#include "dgcat/dg.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace dgcat {

namespace {

Combo normalize_combo(const TowerPtr& field, int dim, Combo c,
                      const char* what) {
  for (auto& [idx, s] : c) {
    if (idx < 0 || idx >= dim)
      throw Error(ErrorCode::UnknownReference,
                  std::string(what) + ": basis index out of range");
    if (!s.tower()->same_as(*field))
      throw Error(ErrorCode::FieldMismatch,
                  std::string(what) + ": scalar from a different field");
    s = s.canonicalized();
  }
  std::sort(c.begin(), c.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Combo out;
  for (auto& [idx, s] : c) {
    if (!out.empty() && out.back().first == idx)
      out.back().second += s;
    else
      out.emplace_back(idx, s);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& t) { return t.second.is_zero(); }),
            out.end());
  return out;
}

void add_combo(Elem& target, const Combo& c, const Scalar& coeff) {
  for (const auto& [idx, s] : c) target[idx] += coeff * s;
}

Combo to_combo(const Elem& e) {
  Combo c;
  for (int i = 0; i < static_cast<int>(e.size()); ++i)
    if (!e[i].is_zero()) c.emplace_back(i, e[i]);
  return c;
}

bool is_zero_elem(const Elem& e) {
  return std::all_of(e.begin(), e.end(),
                     [](const Scalar& s) { return s.is_zero(); });
}

Scalar sign_scalar(const TowerPtr& t, int exponent) {
  return ((exponent % 2 + 2) % 2 == 0) ? Scalar::one(t)
                                       : -Scalar::one(t);
}

std::string tuple_str(std::initializer_list<std::string> names) {
  std::string out = "(";
  bool first = true;
  for (const auto& n : names) {
    if (!first) out += ", ";
    out += n;
    first = false;
  }
  return out + ")";
}

}  // namespace

DGAlgebra::DGAlgebra(std::string name, TowerPtr field,
                     std::vector<BasisElem> basis, Combo unit,
                     std::map<std::pair<int, int>, Combo> mul,
                     std::map<int, Combo> diff)
    : name_(std::move(name)), field_(std::move(field)),
      basis_(std::move(basis)) {
  int n = dim();
  unit_ = normalize_combo(field_, n, std::move(unit), "unit");
  mul_.assign(n, std::vector<Combo>(n));
  for (auto& [key, c] : mul) {
    auto [i, j] = key;
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw Error(ErrorCode::UnknownReference, "mul: basis index out of range");
    mul_[i][j] = normalize_combo(field_, n, std::move(c), "mul");
  }
  diff_.assign(n, Combo{});
  for (auto& [i, c] : diff) {
    if (i < 0 || i >= n)
      throw Error(ErrorCode::UnknownReference, "diff: basis index out of range");
    diff_[i] = normalize_combo(field_, n, std::move(c), "diff");
  }
}

int DGAlgebra::basis_index(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].name == name) return i;
  return -1;
}

Elem DGAlgebra::unit_elem() const {
  Elem e = zero_elem();
  add_combo(e, unit_, Scalar::one(field_));
  return e;
}

Elem DGAlgebra::basis_elem(int i) const {
  Elem e = zero_elem();
  e[i] = Scalar::one(field_);
  return e;
}

Elem DGAlgebra::mul(const Elem& a, const Elem& b) const {
  Elem out = zero_elem();
  for (int i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (b[j].is_zero()) continue;
      add_combo(out, mul_[i][j], a[i] * b[j]);
    }
  }
  return out;
}

Elem DGAlgebra::diff(const Elem& a) const {
  Elem out = zero_elem();
  for (int i = 0; i < dim(); ++i)
    if (!a[i].is_zero()) add_combo(out, diff_[i], a[i]);
  return out;
}

bool DGAlgebra::has_zero_diff() const {
  return std::all_of(diff_.begin(), diff_.end(),
                     [](const Combo& c) { return c.empty(); });
}

std::optional<int> DGAlgebra::homogeneous_degree(const Elem& a) const {
  std::optional<int> deg;
  for (int i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    if (deg && *deg != basis_[i].deg) return std::nullopt;
    deg = basis_[i].deg;
  }
  return deg;
}

bool DGAlgebra::same_as(const DGAlgebra& o) const {
  if (!field_->same_as(*o.field_)) return false;
  if (dim() != o.dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].name != o.basis_[i].name || basis_[i].deg != o.basis_[i].deg)
      return false;
  if (unit_ != o.unit_ || diff_ != o.diff_) return false;
  return mul_ == o.mul_;
}

ValidationReport validate_algebra(const DGAlgebra& a, unsigned seed,
                                  int sample_count) {
  ValidationReport rep;
  int n = a.dim();
  const auto& basis = a.basis();
  auto fail = [&](std::string msg) {
    rep.pass = false;
    rep.message = std::move(msg);
    return rep;
  };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [k, s] : a.mul_combo(i, j))
        if (basis[k].deg != basis[i].deg + basis[j].deg)
          return fail("grading of product violated at " +
                      tuple_str({basis[i].name, basis[j].name}));
  for (int i = 0; i < n; ++i)
    for (const auto& [k, s] : a.diff_combo(i))
      if (basis[k].deg != basis[i].deg + 1)
        return fail("differential degree violated at " +
                    tuple_str({basis[i].name}));

  Elem one = a.unit_elem();
  for (int i = 0; i < n; ++i) {
    Elem b = a.basis_elem(i);
    if (a.mul(one, b) != b || a.mul(b, one) != b)
      return fail("unit law violated at " + tuple_str({basis[i].name}));
  }
  if (!is_zero_elem(a.diff(one))) return fail("d(unit) is nonzero");

  for (int i = 0; i < n; ++i) {
    Elem b = a.basis_elem(i);
    if (!is_zero_elem(a.diff(a.diff(b))))
      return fail("d o d nonzero at " + tuple_str({basis[i].name}));
    for (int j = 0; j < n; ++j) {
      Elem c = a.basis_elem(j);
      Elem lhs = a.diff(a.mul(b, c));
      Elem rhs = a.mul(a.diff(b), c);
      Elem term = a.mul(b, a.diff(c));
      for (int t = 0; t < n; ++t)
        rhs[t] += sign_scalar(a.field(), basis[i].deg) * term[t];
      if (lhs != rhs)
        return fail("Leibniz violated at " +
                    tuple_str({basis[i].name, basis[j].name}));
    }
  }

  bool exhaustive = n <= 32;
  rep.mode = exhaustive ? "exhaustive" : "sampled";
  auto check_assoc = [&](int i, int j, int k) {
    Elem bi = a.basis_elem(i), bj = a.basis_elem(j), bk = a.basis_elem(k);
    return a.mul(a.mul(bi, bj), bk) == a.mul(bi, a.mul(bj, bk));
  };
  if (exhaustive) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (!check_assoc(i, j, k))
            return fail("associativity violated at " +
                        tuple_str({basis[i].name, basis[j].name,
                                   basis[k].name}));
  } else {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> d(0, n - 1);
    for (int t = 0; t < sample_count; ++t) {
      int i = d(rng), j = d(rng), k = d(rng);
      if (!check_assoc(i, j, k))
        return fail("associativity violated at " +
                    tuple_str({basis[i].name, basis[j].name, basis[k].name}));
    }
  }
  return rep;
}

DGModule::DGModule(std::string name, AlgebraPtr algebra,
                   std::vector<BasisElem> basis,
                   std::map<std::pair<int, int>, Combo> action,
                   std::map<int, Combo> diff)
    : name_(std::move(name)), algebra_(std::move(algebra)),
      basis_(std::move(basis)) {
  int n = dim();
  int na = algebra_->dim();
  const TowerPtr& f = algebra_->field();
  action_.assign(n, std::vector<Combo>(na));
  for (auto& [key, c] : action) {
    auto [m, a] = key;
    if (m < 0 || m >= n || a < 0 || a >= na)
      throw Error(ErrorCode::UnknownReference,
                  "action: basis index out of range");
    action_[m][a] = normalize_combo(f, n, std::move(c), "action");
  }
  diff_.assign(n, Combo{});
  for (auto& [m, c] : diff) {
    if (m < 0 || m >= n)
      throw Error(ErrorCode::UnknownReference, "diff: basis index out of range");
    diff_[m] = normalize_combo(f, n, std::move(c), "diff");
  }
}

Elem DGModule::act(const Elem& m, const Elem& a) const {
  Elem out = zero_elem();
  for (int i = 0; i < dim(); ++i) {
    if (m[i].is_zero()) continue;
    for (int j = 0; j < algebra_->dim(); ++j) {
      if (a[j].is_zero()) continue;
      add_combo(out, action_[i][j], m[i] * a[j]);
    }
  }
  return out;
}

Elem DGModule::diff(const Elem& m) const {
  Elem out = zero_elem();
  for (int i = 0; i < dim(); ++i)
    if (!m[i].is_zero()) add_combo(out, diff_[i], m[i]);
  return out;
}

Matrix DGModule::action_matrix(int a) const {
  Matrix m(algebra_->field(), dim(), dim());
  for (int j = 0; j < dim(); ++j)
    for (const auto& [i, s] : action_[j][a]) m.at(i, j) = s;
  return m;
}

Matrix DGModule::diff_matrix() const {
  Matrix m(algebra_->field(), dim(), dim());
  for (int j = 0; j < dim(); ++j)
    for (const auto& [i, s] : diff_[j]) m.at(i, j) = s;
  return m;
}

std::map<int, int> DGModule::graded_dims() const {
  std::map<int, int> d;
  for (const auto& b : basis_) ++d[b.deg];
  return d;
}

ValidationReport validate_module(const DGModule& m, unsigned seed,
                                 int sample_count) {
  ValidationReport rep;
  const DGAlgebra& alg = *m.algebra();
  int n = m.dim(), na = alg.dim();
  auto fail = [&](std::string msg) {
    rep.pass = false;
    rep.message = std::move(msg);
    return rep;
  };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < na; ++j)
      for (const auto& [k, s] : m.action_combo(i, j))
        if (m.degree_of(k) != m.degree_of(i) + alg.degree_of(j))
          return fail("grading of action violated at " +
                      tuple_str({m.basis()[i].name, alg.basis()[j].name}));
    for (const auto& [k, s] : m.diff_combo(i))
      if (m.degree_of(k) != m.degree_of(i) + 1)
        return fail("differential degree violated at " +
                    tuple_str({m.basis()[i].name}));
  }

  Elem one = alg.unit_elem();
  for (int i = 0; i < n; ++i) {
    Elem v = m.zero_elem();
    v[i] = Scalar::one(alg.field());
    if (m.act(v, one) != v)
      return fail("unit acts nontrivially at " + tuple_str({m.basis()[i].name}));
    if (!is_zero_elem(m.diff(m.diff(v))))
      return fail("d o d nonzero at " + tuple_str({m.basis()[i].name}));
    for (int j = 0; j < na; ++j) {
      Elem a = alg.basis_elem(j);
      Elem lhs = m.diff(m.act(v, a));
      Elem rhs = m.act(m.diff(v), a);
      Elem term = m.act(v, alg.diff(a));
      for (int t = 0; t < n; ++t)
        rhs[t] += sign_scalar(alg.field(), m.degree_of(i)) * term[t];
      if (lhs != rhs)
        return fail("Leibniz violated at " +
                    tuple_str({m.basis()[i].name, alg.basis()[j].name}));
    }
  }

  bool exhaustive = n <= 32 && na <= 32;
  rep.mode = exhaustive ? "exhaustive" : "sampled";
  auto check_assoc = [&](int i, int j, int k) {
    Elem v = m.zero_elem();
    v[i] = Scalar::one(alg.field());
    Elem a = alg.basis_elem(j), b = alg.basis_elem(k);
    return m.act(m.act(v, a), b) == m.act(v, alg.mul(a, b));
  };
  if (exhaustive) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < na; ++j)
        for (int k = 0; k < na; ++k)
          if (!check_assoc(i, j, k))
            return fail("action associativity violated at " +
                        tuple_str({m.basis()[i].name, alg.basis()[j].name,
                                   alg.basis()[k].name}));
  } else {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dm(0, n - 1), da(0, na - 1);
    for (int t = 0; t < sample_count; ++t)
      if (int i = dm(rng), j = da(rng), k = da(rng); !check_assoc(i, j, k))
        return fail("action associativity violated at " +
                    tuple_str({m.basis()[i].name, alg.basis()[j].name,
                               alg.basis()[k].name}));
  }
  return rep;
}

DGBimodule::DGBimodule(std::string name, AlgebraPtr left, AlgebraPtr right,
                       std::vector<BasisElem> basis,
                       std::map<std::pair<int, int>, Combo> left_action,
                       std::map<std::pair<int, int>, Combo> right_action,
                       std::map<int, Combo> diff)
    : name_(std::move(name)), left_(std::move(left)), right_(std::move(right)),
      basis_(std::move(basis)) {
  if (!left_->field()->same_as(*right_->field()))
    throw Error(ErrorCode::FieldMismatch,
                "bimodule algebras live over different fields");
  int n = dim();
  const TowerPtr& f = left_->field();
  lact_.assign(left_->dim(), std::vector<Combo>(n));
  for (auto& [key, c] : left_action) {
    auto [a, t] = key;
    if (a < 0 || a >= left_->dim() || t < 0 || t >= n)
      throw Error(ErrorCode::UnknownReference,
                  "left action: basis index out of range");
    lact_[a][t] = normalize_combo(f, n, std::move(c), "left action");
  }
  ract_.assign(n, std::vector<Combo>(right_->dim()));
  for (auto& [key, c] : right_action) {
    auto [t, b] = key;
    if (t < 0 || t >= n || b < 0 || b >= right_->dim())
      throw Error(ErrorCode::UnknownReference,
                  "right action: basis index out of range");
    ract_[t][b] = normalize_combo(f, n, std::move(c), "right action");
  }
  diff_.assign(n, Combo{});
  for (auto& [t, c] : diff) {
    if (t < 0 || t >= n)
      throw Error(ErrorCode::UnknownReference, "diff: basis index out of range");
    diff_[t] = normalize_combo(f, n, std::move(c), "diff");
  }
}

Elem DGBimodule::left_act(const Elem& a, const Elem& t) const {
  Elem out = zero_elem();
  for (int i = 0; i < left_->dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (t[j].is_zero()) continue;
      add_combo(out, lact_[i][j], a[i] * t[j]);
    }
  }
  return out;
}

Elem DGBimodule::right_act(const Elem& t, const Elem& b) const {
  Elem out = zero_elem();
  for (int i = 0; i < dim(); ++i) {
    if (t[i].is_zero()) continue;
    for (int j = 0; j < right_->dim(); ++j) {
      if (b[j].is_zero()) continue;
      add_combo(out, ract_[i][j], t[i] * b[j]);
    }
  }
  return out;
}

Elem DGBimodule::diff(const Elem& t) const {
  Elem out = zero_elem();
  for (int i = 0; i < dim(); ++i)
    if (!t[i].is_zero()) add_combo(out, diff_[i], t[i]);
  return out;
}

ValidationReport validate_bimodule(const DGBimodule& t, unsigned seed,
                                   int sample_count) {
  ValidationReport rep;
  const DGAlgebra& A = *t.left_algebra();
  const DGAlgebra& B = *t.right_algebra();
  int n = t.dim();
  auto fail = [&](std::string msg) {
    rep.pass = false;
    rep.message = std::move(msg);
    return rep;
  };
  const TowerPtr& f = A.field();

  for (int a = 0; a < A.dim(); ++a)
    for (int i = 0; i < n; ++i)
      for (const auto& [k, s] : t.left_combo(a, i))
        if (t.degree_of(k) != A.degree_of(a) + t.degree_of(i))
          return fail("grading of left action violated at " +
                      tuple_str({A.basis()[a].name, t.basis()[i].name}));
  for (int i = 0; i < n; ++i) {
    for (int b = 0; b < B.dim(); ++b)
      for (const auto& [k, s] : t.right_combo(i, b))
        if (t.degree_of(k) != t.degree_of(i) + B.degree_of(b))
          return fail("grading of right action violated at " +
                      tuple_str({t.basis()[i].name, B.basis()[b].name}));
    for (const auto& [k, s] : t.diff_combo(i))
      if (t.degree_of(k) != t.degree_of(i) + 1)
        return fail("differential degree violated at " +
                    tuple_str({t.basis()[i].name}));
  }

  Elem oneA = A.unit_elem(), oneB = B.unit_elem();
  for (int i = 0; i < n; ++i) {
    Elem v = t.zero_elem();
    v[i] = Scalar::one(f);
    if (t.left_act(oneA, v) != v || t.right_act(v, oneB) != v)
      return fail("unit acts nontrivially at " + tuple_str({t.basis()[i].name}));
    if (!is_zero_elem(t.diff(t.diff(v))))
      return fail("d o d nonzero at " + tuple_str({t.basis()[i].name}));
  }

  for (int i = 0; i < n; ++i) {
    Elem v = t.zero_elem();
    v[i] = Scalar::one(f);
    for (int a = 0; a < A.dim(); ++a) {
      Elem ae = A.basis_elem(a);
      Elem lhs = t.diff(t.left_act(ae, v));
      Elem rhs = t.left_act(A.diff(ae), v);
      Elem term = t.left_act(ae, t.diff(v));
      for (int k = 0; k < n; ++k)
        rhs[k] += sign_scalar(f, A.degree_of(a)) * term[k];
      if (lhs != rhs)
        return fail("left Leibniz violated at " +
                    tuple_str({A.basis()[a].name, t.basis()[i].name}));
    }
    for (int b = 0; b < B.dim(); ++b) {
      Elem be = B.basis_elem(b);
      Elem lhs = t.diff(t.right_act(v, be));
      Elem rhs = t.right_act(t.diff(v), be);
      Elem term = t.right_act(v, B.diff(be));
      for (int k = 0; k < n; ++k)
        rhs[k] += sign_scalar(f, t.degree_of(i)) * term[k];
      if (lhs != rhs)
        return fail("right Leibniz violated at " +
                    tuple_str({t.basis()[i].name, B.basis()[b].name}));
    }
  }

  bool exhaustive = n <= 32 && A.dim() <= 32 && B.dim() <= 32;
  rep.mode = exhaustive ? "exhaustive" : "sampled";
  auto triple = [&](int a, int i, int b) {
    Elem v = t.zero_elem();
    v[i] = Scalar::one(f);
    Elem ae = A.basis_elem(a), be = B.basis_elem(b);
    if (t.right_act(t.left_act(ae, v), be) !=
        t.left_act(ae, t.right_act(v, be)))
      return std::string("actions do not commute at ");
    return std::string();
  };
  auto full_left = [&](int a1, int a2, int i) {
    Elem v = t.zero_elem();
    v[i] = Scalar::one(f);
    Elem e1 = A.basis_elem(a1), e2 = A.basis_elem(a2);
    return t.left_act(A.mul(e1, e2), v) == t.left_act(e1, t.left_act(e2, v));
  };
  auto full_right = [&](int i, int b1, int b2) {
    Elem v = t.zero_elem();
    v[i] = Scalar::one(f);
    Elem e1 = B.basis_elem(b1), e2 = B.basis_elem(b2);
    return t.right_act(t.right_act(v, e1), e2) ==
           t.right_act(v, B.mul(e1, e2));
  };
  if (exhaustive) {
    for (int a = 0; a < A.dim(); ++a)
      for (int i = 0; i < n; ++i)
        for (int b = 0; b < B.dim(); ++b) {
          std::string msg = triple(a, i, b);
          if (!msg.empty())
            return fail(msg + tuple_str({A.basis()[a].name, t.basis()[i].name,
                                         B.basis()[b].name}));
        }
    for (int a1 = 0; a1 < A.dim(); ++a1)
      for (int a2 = 0; a2 < A.dim(); ++a2)
        for (int i = 0; i < n; ++i)
          if (!full_left(a1, a2, i))
            return fail("left associativity violated at " +
                        tuple_str({A.basis()[a1].name, A.basis()[a2].name,
                                   t.basis()[i].name}));
    for (int i = 0; i < n; ++i)
      for (int b1 = 0; b1 < B.dim(); ++b1)
        for (int b2 = 0; b2 < B.dim(); ++b2)
          if (!full_right(i, b1, b2))
            return fail("right associativity violated at " +
                        tuple_str({t.basis()[i].name, B.basis()[b1].name,
                                   B.basis()[b2].name}));
  } else {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> da(0, A.dim() - 1), di(0, n - 1),
        db(0, B.dim() - 1);
    for (int s = 0; s < sample_count; ++s) {
      int a = da(rng), i = di(rng), b = db(rng);
      std::string msg = triple(a, i, b);
      if (!msg.empty())
        return fail(msg + tuple_str({A.basis()[a].name, t.basis()[i].name,
                                     B.basis()[b].name}));
      if (!full_left(a, da(rng), i) || !full_right(i, b, db(rng)))
        return fail("action associativity violated near " +
                    tuple_str({A.basis()[a].name, t.basis()[i].name,
                               B.basis()[b].name}));
    }
  }
  return rep;
}

FiniteComplex module_underlying_complex(const DGModule& m) {
  // Basis per degree ordered by module basis index.
  std::map<int, std::vector<int>> by_deg;
  for (int i = 0; i < m.dim(); ++i) by_deg[m.degree_of(i)].push_back(i);
  FiniteComplex c;
  c.tower = m.algebra()->field();
  std::map<int, std::map<int, int>> col_of;
  for (auto& [deg, idxs] : by_deg) {
    c.dims[deg] = static_cast<int>(idxs.size());
    for (int k = 0; k < static_cast<int>(idxs.size()); ++k)
      col_of[deg][idxs[k]] = k;
  }
  for (auto& [deg, idxs] : by_deg) {
    if (!by_deg.count(deg + 1)) continue;
    Matrix d(c.tower, c.dims[deg + 1], c.dims[deg]);
    for (int k = 0; k < static_cast<int>(idxs.size()); ++k)
      for (const auto& [to, s] : m.diff_combo(idxs[k]))
        d.at(col_of[deg + 1][to], k) = s;
    if (!d.is_zero()) c.differentials.emplace(deg, d);
  }
  return c;
}

CohomologyResult module_cohomology(const DGModule& m) {
  return cohomology(module_underlying_complex(m));
}

GradedAlgebraResult algebra_cohomology(const DGAlgebra& a) {
  const TowerPtr& f = a.field();
  std::map<int, std::vector<int>> by_deg;
  for (int i = 0; i < a.dim(); ++i) by_deg[a.degree_of(i)].push_back(i);
  FiniteComplex c;
  c.tower = f;
  std::map<int, std::map<int, int>> col_of;
  for (auto& [deg, idxs] : by_deg) {
    c.dims[deg] = static_cast<int>(idxs.size());
    for (int k = 0; k < static_cast<int>(idxs.size()); ++k)
      col_of[deg][idxs[k]] = k;
  }
  for (auto& [deg, idxs] : by_deg) {
    if (!by_deg.count(deg + 1)) continue;
    Matrix d(f, c.dims[deg + 1], c.dims[deg]);
    for (int k = 0; k < static_cast<int>(idxs.size()); ++k)
      for (const auto& [to, s] : a.diff_combo(idxs[k]))
        d.at(col_of[deg + 1][to], k) = s;
    if (!d.is_zero()) c.differentials.emplace(deg, d);
  }
  auto h = cohomology(c);

  GradedAlgebraResult res;
  res.dims = h.dims;

  auto lift = [&](int deg, const std::vector<Scalar>& v) {
    Elem e = a.zero_elem();
    const auto& idxs = by_deg[deg];
    for (int k = 0; k < static_cast<int>(idxs.size()); ++k) e[idxs[k]] = v[k];
    return e;
  };
  auto project = [&](int deg, const Elem& e) {
    const auto& idxs = by_deg.count(deg) ? by_deg[deg] : std::vector<int>{};
    std::vector<Scalar> v(idxs.size(), Scalar::zero(f));
    for (int k = 0; k < static_cast<int>(idxs.size()); ++k) v[k] = e[idxs[k]];
    return v;
  };

  std::vector<BasisElem> hbasis;
  std::map<int, int> first_index_of_deg;
  for (auto& [deg, reps] : h.representatives) {
    first_index_of_deg[deg] = static_cast<int>(res.representatives.size());
    int k = 0;
    for (const auto& r : reps) {
      res.representatives.push_back(lift(deg, r));
      res.representative_degrees.push_back(deg);
      std::ostringstream nm;
      nm << "h" << deg << "_" << k++;
      hbasis.push_back({nm.str(), deg});
    }
  }

  // Class coordinates of a cocycle as a combo over the cohomology basis.
  auto classify = [&](const Elem& e) {
    Combo out;
    if (is_zero_elem(e)) return out;
    auto deg = a.homogeneous_degree(e);
    if (!deg)
      throw Error(ErrorCode::WrongDegree,
                  "product of homogeneous classes is not homogeneous");
    auto coords = cohomology_class_coordinates(c, h, *deg, project(*deg, e));
    if (!coords)
      throw Error(ErrorCode::NotClosed,
                  "product of cocycle representatives is not a cocycle");
    int base = first_index_of_deg[*deg];
    for (int k = 0; k < static_cast<int>(coords->size()); ++k)
      if (!(*coords)[k].is_zero()) out.emplace_back(base + k, (*coords)[k]);
    return out;
  };

  std::map<std::pair<int, int>, Combo> hmul;
  int hn = static_cast<int>(res.representatives.size());
  for (int i = 0; i < hn; ++i)
    for (int j = 0; j < hn; ++j) {
      Combo p = classify(a.mul(res.representatives[i], res.representatives[j]));
      if (!p.empty()) hmul[{i, j}] = std::move(p);
    }
  Combo hunit = classify(a.unit_elem());

  res.induced = std::make_shared<DGAlgebra>(
      "H(" + a.name() + ")", f, std::move(hbasis), std::move(hunit),
      std::move(hmul), std::map<int, Combo>{});
  return res;
}

AlgebraPtr opposite(const AlgebraPtr& a) {
  int n = a->dim();
  std::map<std::pair<int, int>, Combo> mul;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Combo c = a->mul_combo(j, i);
      Scalar s = sign_scalar(a->field(), a->degree_of(i) * a->degree_of(j));
      for (auto& [k, v] : c) v *= s;
      if (!c.empty()) mul[{i, j}] = std::move(c);
    }
  std::map<int, Combo> diff;
  for (int i = 0; i < n; ++i)
    if (!a->diff_combo(i).empty()) diff[i] = a->diff_combo(i);
  return std::make_shared<DGAlgebra>("op(" + a->name() + ")", a->field(),
                                     a->basis(), a->unit_combo(),
                                     std::move(mul), std::move(diff));
}

AlgebraPtr env(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!a->field()->same_as(*b->field()))
    throw Error(ErrorCode::FieldMismatch,
                "tensor of algebras over different fields");
  const TowerPtr& f = a->field();
  int na = a->dim(), nb = b->dim();
  auto idx = [&](int i, int j) { return i * nb + j; };

  std::vector<BasisElem> basis;
  basis.reserve(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      basis.push_back({a->basis()[i].name + "(x)" + b->basis()[j].name,
                       a->degree_of(i) + b->degree_of(j)});

  std::map<std::pair<int, int>, Combo> mul;
  for (int i1 = 0; i1 < na; ++i1)
    for (int j1 = 0; j1 < nb; ++j1)
      for (int i2 = 0; i2 < na; ++i2)
        for (int j2 = 0; j2 < nb; ++j2) {
          // (a1 (x) b1)(a2 (x) b2)
          //   = (-1)^{(|a1|+|b1|) |a2|} (a2 a1) (x) (b1 b2)
          Scalar s = sign_scalar(
              f, (a->degree_of(i1) + b->degree_of(j1)) * a->degree_of(i2));
          Combo out;
          for (const auto& [ka, va] : a->mul_combo(i2, i1))
            for (const auto& [kb, vb] : b->mul_combo(j1, j2))
              out.emplace_back(idx(ka, kb), s * va * vb);
          if (!out.empty()) mul[{idx(i1, j1), idx(i2, j2)}] = std::move(out);
        }

  std::map<int, Combo> diff;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      Combo out;
      for (const auto& [ka, va] : a->diff_combo(i))
        out.emplace_back(idx(ka, j), va);
      Scalar s = sign_scalar(f, a->degree_of(i));
      for (const auto& [kb, vb] : b->diff_combo(j))
        out.emplace_back(idx(i, kb), s * vb);
      if (!out.empty()) diff[idx(i, j)] = std::move(out);
    }

  Combo unit;
  for (const auto& [i, va] : a->unit_combo())
    for (const auto& [j, vb] : b->unit_combo())
      unit.emplace_back(idx(i, j), va * vb);

  return std::make_shared<DGAlgebra>(
      "env(" + a->name() + "," + b->name() + ")", f, std::move(basis),
      std::move(unit), std::move(mul), std::move(diff));
}

ModulePtr bimodule_to_right_module(const BimodulePtr& t, const AlgebraPtr& e) {
  const DGAlgebra& A = *t->left_algebra();
  const DGAlgebra& B = *t->right_algebra();
  if (e->dim() != A.dim() * B.dim() || !e->field()->same_as(*A.field()))
    throw Error(ErrorCode::AlgebraMismatch,
                "expected the tensor algebra of the bimodule's two algebras");
  int nb = B.dim();
  std::map<std::pair<int, int>, Combo> action;
  for (int m = 0; m < t->dim(); ++m) {
    Elem v = t->zero_elem();
    v[m] = Scalar::one(A.field());
    for (int i = 0; i < A.dim(); ++i)
      for (int j = 0; j < nb; ++j) {
        Elem r = t->right_act(t->left_act(A.basis_elem(i), v),
                              B.basis_elem(j));
        Scalar s = sign_scalar(A.field(), A.degree_of(i) * t->degree_of(m));
        for (auto& x : r) x *= s;
        Combo c = to_combo(r);
        if (!c.empty()) action[{m, i * nb + j}] = std::move(c);
      }
  }
  std::map<int, Combo> diff;
  for (int m = 0; m < t->dim(); ++m)
    if (!t->diff_combo(m).empty()) diff[m] = t->diff_combo(m);
  return std::make_shared<DGModule>(t->name(), e, t->basis(),
                                    std::move(action), std::move(diff));
}

BimodulePtr right_module_to_bimodule(const ModulePtr& m, const AlgebraPtr& a,
                                     const AlgebraPtr& b) {
  const DGAlgebra& E = *m->algebra();
  if (E.dim() != a->dim() * b->dim() || !E.field()->same_as(*a->field()))
    throw Error(ErrorCode::AlgebraMismatch,
                "module is not over the tensor algebra of the given pair");
  const TowerPtr& f = a->field();
  int nb = b->dim();
  auto env_elem = [&](const Combo& ac, const Combo& bc) {
    Elem e = E.zero_elem();
    for (const auto& [i, va] : ac)
      for (const auto& [j, vb] : bc) e[i * nb + j] += va * vb;
    return e;
  };
  std::map<std::pair<int, int>, Combo> lact, ract;
  for (int t = 0; t < m->dim(); ++t) {
    Elem v = m->zero_elem();
    v[t] = Scalar::one(f);
    for (int i = 0; i < a->dim(); ++i) {
      Combo ai{{i, Scalar::one(f)}};
      Elem r = m->act(v, env_elem(ai, b->unit_combo()));
      Scalar s = sign_scalar(f, a->degree_of(i) * m->degree_of(t));
      for (auto& x : r) x *= s;
      Combo c = to_combo(r);
      if (!c.empty()) lact[{i, t}] = std::move(c);
    }
    for (int j = 0; j < nb; ++j) {
      Combo bj{{j, Scalar::one(f)}};
      Combo c = to_combo(m->act(v, env_elem(a->unit_combo(), bj)));
      if (!c.empty()) ract[{t, j}] = std::move(c);
    }
  }
  std::map<int, Combo> diff;
  for (int t = 0; t < m->dim(); ++t)
    if (!m->diff_combo(t).empty()) diff[t] = m->diff_combo(t);
  return std::make_shared<DGBimodule>(m->name(), a, b, m->basis(),
                                      std::move(lact), std::move(ract),
                                      std::move(diff));
}

BimodulePtr diagonal_bimodule(const AlgebraPtr& a) {
  std::map<std::pair<int, int>, Combo> lact, ract;
  for (int i = 0; i < a->dim(); ++i)
    for (int j = 0; j < a->dim(); ++j) {
      const Combo& c = a->mul_combo(i, j);
      if (c.empty()) continue;
      lact[{i, j}] = c;
      ract[{i, j}] = c;
    }
  std::map<int, Combo> diff;
  for (int i = 0; i < a->dim(); ++i)
    if (!a->diff_combo(i).empty()) diff[i] = a->diff_combo(i);
  return std::make_shared<DGBimodule>("diag(" + a->name() + ")", a, a,
                                      a->basis(), std::move(lact),
                                      std::move(ract), std::move(diff));
}

ModulePtr bimodule_right_part(const BimodulePtr& t) {
  std::map<std::pair<int, int>, Combo> action;
  for (int i = 0; i < t->dim(); ++i)
    for (int b = 0; b < t->right_algebra()->dim(); ++b)
      if (!t->right_combo(i, b).empty()) action[{i, b}] = t->right_combo(i, b);
  std::map<int, Combo> diff;
  for (int i = 0; i < t->dim(); ++i)
    if (!t->diff_combo(i).empty()) diff[i] = t->diff_combo(i);
  return std::make_shared<DGModule>(t->name(), t->right_algebra(), t->basis(),
                                    std::move(action), std::move(diff));
}

ModulePtr algebra_as_module(const AlgebraPtr& b) {
  std::map<std::pair<int, int>, Combo> action;
  for (int i = 0; i < b->dim(); ++i)
    for (int j = 0; j < b->dim(); ++j)
      if (!b->mul_combo(i, j).empty()) action[{i, j}] = b->mul_combo(i, j);
  std::map<int, Combo> diff;
  for (int i = 0; i < b->dim(); ++i)
    if (!b->diff_combo(i).empty()) diff[i] = b->diff_combo(i);
  return std::make_shared<DGModule>(b->name(), b, b->basis(),
                                    std::move(action), std::move(diff));
}

}  // namespace dgcat
