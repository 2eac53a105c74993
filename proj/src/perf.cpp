#include "dgcat/perf.hpp"

#include <algorithm>
#include <sstream>

namespace dgcat {

namespace {

bool elem_zero(const Elem& e) {
  return std::all_of(e.begin(), e.end(),
                     [](const Scalar& s) { return s.is_zero(); });
}

void elem_add(Elem& a, const Elem& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

Elem elem_scaled(const Elem& a, const Scalar& s) {
  Elem out = a;
  for (auto& x : out) x *= s;
  return out;
}

Scalar sign(const TowerPtr& t, int exponent) {
  return ((exponent % 2 + 2) % 2 == 0) ? Scalar::one(t) : -Scalar::one(t);
}

// Entry must be zero or homogeneous of the stated degree.
bool degree_ok(const DGAlgebra& a, const Elem& e, int want) {
  for (int k = 0; k < a.dim(); ++k)
    if (!e[k].is_zero() && a.degree_of(k) != want) return false;
  return true;
}

ElemMatrix zero_matrix(const DGAlgebra& a, int rows, int cols) {
  return ElemMatrix(rows, std::vector<Elem>(cols, a.zero_elem()));
}

ElemMatrix identity_matrix(const PerfObject& x) {
  const DGAlgebra& a = *x.algebra();
  ElemMatrix m = zero_matrix(a, x.size(), x.size());
  for (int i = 0; i < x.size(); ++i) m[i][i] = a.unit_elem();
  return m;
}

ElemMatrix effective_idem(const PerfObject& x) {
  return x.idem ? *x.idem : identity_matrix(x);
}

ElemMatrix mat_compose(const DGAlgebra& a, const ElemMatrix& g,
                       const ElemMatrix& f) {
  int rows = static_cast<int>(g.size());
  int mid = static_cast<int>(f.size());
  int cols = mid ? static_cast<int>(f[0].size()) : 0;
  ElemMatrix out = zero_matrix(a, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int l = 0; l < mid; ++l) {
      if (elem_zero(g[i][l])) continue;
      for (int j = 0; j < cols; ++j) {
        if (elem_zero(f[l][j])) continue;
        elem_add(out[i][j], a.mul(g[i][l], f[l][j]));
      }
    }
  return out;
}

bool mat_equal(const ElemMatrix& a, const ElemMatrix& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != b[i][j]) return false;
  }
  return true;
}

void check_same_algebra(const PerfObject& x, const PerfObject& y) {
  if (!x.algebra()->same_as(*y.algebra()))
    throw Error(ErrorCode::AlgebraMismatch,
                "objects live over different algebras");
}

void check_morphism_shape(const PerfObject& x, const PerfObject& y,
                          const Morphism& f) {
  const DGAlgebra& a = *x.algebra();
  if (static_cast<int>(f.entries.size()) != y.size())
    throw Error(ErrorCode::ShapeMismatch, "morphism has wrong row count");
  for (int i = 0; i < y.size(); ++i) {
    if (static_cast<int>(f.entries[i].size()) != x.size())
      throw Error(ErrorCode::ShapeMismatch, "morphism has wrong column count");
    for (int j = 0; j < x.size(); ++j)
      if (!degree_ok(a, f.entries[i][j],
                     f.deg + y.tc.cells[i] - x.tc.cells[j]))
        throw Error(ErrorCode::WrongDegree,
                    "morphism entry has the wrong degree");
  }
}

}  // namespace

PerfObject free_object(const AlgebraPtr& a, std::vector<int> cells) {
  PerfObject x;
  x.tc.algebra = a;
  x.tc.cells = std::move(cells);
  x.tc.twist = zero_matrix(*a, x.size(), x.size());
  return x;
}

void validate_perf(const PerfObject& x) {
  const DGAlgebra& a = *x.algebra();
  int r = x.size();
  const auto& d = x.tc.twist;
  if (static_cast<int>(d.size()) != r)
    throw Error(ErrorCode::ShapeMismatch, "twist has wrong row count");
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(d[i].size()) != r)
      throw Error(ErrorCode::ShapeMismatch, "twist has wrong column count");
    for (int j = 0; j < r; ++j) {
      if (static_cast<int>(d[i][j].size()) != a.dim())
        throw Error(ErrorCode::ShapeMismatch,
                    "twist entry has wrong coordinate count");
      if (i <= j && !elem_zero(d[i][j]))
        throw Error(ErrorCode::NotAComplex,
                    "twist is not strictly lower triangular");
      if (!degree_ok(a, d[i][j], 1 + x.tc.cells[i] - x.tc.cells[j]))
        throw Error(ErrorCode::WrongDegree,
                    "twist entry has the wrong degree");
    }
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Elem mc = elem_scaled(a.diff(d[i][j]), sign(a.field(), x.tc.cells[i]));
      for (int l = 0; l < r; ++l) elem_add(mc, a.mul(d[i][l], d[l][j]));
      if (!elem_zero(mc)) {
        std::ostringstream msg;
        msg << "Maurer-Cartan fails at twist entry (" << i << ", " << j << ")";
        throw Error(ErrorCode::NotAComplex, msg.str());
      }
    }
  if (x.idem) {
    Morphism e{0, *x.idem};
    PerfObject bare{x.tc, std::nullopt};
    check_morphism_shape(bare, bare, e);
    if (!morphism_closed(bare, bare, e))
      throw Error(ErrorCode::NotClosed, "idempotent is not closed");
    if (!mat_equal(mat_compose(a, *x.idem, *x.idem), *x.idem))
      throw Error(ErrorCode::ValidationError,
                  "idempotent is not exactly idempotent");
  }
}

Morphism zero_morphism(const PerfObject& x, const PerfObject& y, int deg) {
  return Morphism{deg, zero_matrix(*x.algebra(), y.size(), x.size())};
}

Morphism identity_morphism(const PerfObject& x) {
  return Morphism{0, effective_idem(x)};
}

Morphism hom_diff(const PerfObject& x, const PerfObject& y,
                  const Morphism& f) {
  const DGAlgebra& a = *x.algebra();
  Morphism out = zero_morphism(x, y, f.deg + 1);
  Scalar s = sign(a.field(), f.deg);
  for (int i = 0; i < y.size(); ++i)
    for (int j = 0; j < x.size(); ++j) {
      Elem v = elem_scaled(a.diff(f.entries[i][j]),
                           sign(a.field(), y.tc.cells[i]));
      for (int l = 0; l < y.size(); ++l)
        elem_add(v, a.mul(y.tc.twist[i][l], f.entries[l][j]));
      for (int l = 0; l < x.size(); ++l)
        elem_add(v, elem_scaled(a.mul(f.entries[i][l], x.tc.twist[l][j]), -s));
      out.entries[i][j] = std::move(v);
    }
  return out;
}

Morphism compose(const PerfObject& x, const PerfObject& y,
                 const PerfObject& z, const Morphism& g, const Morphism& f) {
  (void)y;
  (void)z;
  return Morphism{g.deg + f.deg,
                  mat_compose(*x.algebra(), g.entries, f.entries)};
}

bool morphism_is_zero(const Morphism& f) {
  for (const auto& row : f.entries)
    for (const auto& e : row)
      if (!elem_zero(e)) return false;
  return true;
}

bool morphism_closed(const PerfObject& x, const PerfObject& y,
                     const Morphism& f) {
  return morphism_is_zero(hom_diff(x, y, f));
}

PerfObject shift(const PerfObject& x, int n) {
  PerfObject out = x;
  for (auto& c : out.tc.cells) c += n;
  if (n % 2 != 0)
    for (auto& row : out.tc.twist)
      for (auto& e : row)
        for (auto& s : e) s = -s;
  return out;
}

PerfObject direct_sum(const PerfObject& x, const PerfObject& y) {
  check_same_algebra(x, y);
  const DGAlgebra& a = *x.algebra();
  int rx = x.size(), ry = y.size();
  PerfObject out;
  out.tc.algebra = x.algebra();
  out.tc.cells = x.tc.cells;
  out.tc.cells.insert(out.tc.cells.end(), y.tc.cells.begin(),
                      y.tc.cells.end());
  out.tc.twist = zero_matrix(a, rx + ry, rx + ry);
  for (int i = 0; i < rx; ++i)
    for (int j = 0; j < rx; ++j) out.tc.twist[i][j] = x.tc.twist[i][j];
  for (int i = 0; i < ry; ++i)
    for (int j = 0; j < ry; ++j)
      out.tc.twist[rx + i][rx + j] = y.tc.twist[i][j];
  if (x.idem || y.idem) {
    ElemMatrix ex = effective_idem(x), ey = effective_idem(y);
    ElemMatrix e = zero_matrix(a, rx + ry, rx + ry);
    for (int i = 0; i < rx; ++i)
      for (int j = 0; j < rx; ++j) e[i][j] = ex[i][j];
    for (int i = 0; i < ry; ++i)
      for (int j = 0; j < ry; ++j) e[rx + i][rx + j] = ey[i][j];
    out.idem = std::move(e);
  }
  return out;
}

PerfObject cone(const PerfObject& x, const PerfObject& y, const Morphism& f) {
  check_same_algebra(x, y);
  if (f.deg != 0)
    throw Error(ErrorCode::WrongDegree, "cone input must have degree 0");
  check_morphism_shape(x, y, f);
  if (!morphism_closed(x, y, f))
    throw Error(ErrorCode::NotClosed, "cone input is not closed");
  const DGAlgebra& a = *x.algebra();
  int rx = x.size(), ry = y.size();
  PerfObject out;
  out.tc.algebra = x.algebra();
  for (int c : x.tc.cells) out.tc.cells.push_back(c + 1);
  for (int c : y.tc.cells) out.tc.cells.push_back(c);
  out.tc.twist = zero_matrix(a, rx + ry, rx + ry);
  for (int i = 0; i < rx; ++i)
    for (int j = 0; j < rx; ++j)
      out.tc.twist[i][j] = elem_scaled(x.tc.twist[i][j], -Scalar::one(a.field()));
  for (int i = 0; i < ry; ++i) {
    for (int j = 0; j < rx; ++j) out.tc.twist[rx + i][j] = f.entries[i][j];
    for (int j = 0; j < ry; ++j)
      out.tc.twist[rx + i][rx + j] = y.tc.twist[i][j];
  }
  if (x.idem || y.idem) {
    ElemMatrix ex = effective_idem(x), ey = effective_idem(y);
    ElemMatrix e = zero_matrix(a, rx + ry, rx + ry);
    for (int i = 0; i < rx; ++i)
      for (int j = 0; j < rx; ++j) e[i][j] = ex[i][j];
    for (int i = 0; i < ry; ++i)
      for (int j = 0; j < ry; ++j) e[rx + i][rx + j] = ey[i][j];
    out.idem = std::move(e);
  }
  validate_perf(out);
  return out;
}

PerfObject summand(const PerfObject& x, const ElemMatrix& e) {
  const DGAlgebra& a = *x.algebra();
  if (x.idem) {
    // the new idempotent must live inside the existing summand
    if (!mat_equal(mat_compose(a, *x.idem, e), e) ||
        !mat_equal(mat_compose(a, e, *x.idem), e))
      throw Error(ErrorCode::ValidationError,
                  "idempotent does not factor through the existing summand");
  }
  PerfObject out;
  out.tc = x.tc;
  out.idem = e;
  validate_perf(out);
  return out;
}

FiniteComplex hom_complex(const PerfObject& x, const PerfObject& y) {
  check_same_algebra(x, y);
  const DGAlgebra& a = *x.algebra();
  const TowerPtr& f = a.field();
  int rx = x.size(), ry = y.size(), na = a.dim();

  // basis of component m: triples (i, j, k), lexicographic
  struct Key {
    int i, j, k;
  };
  std::map<int, std::vector<Key>> basis;
  std::map<std::tuple<int, int, int>, std::pair<int, int>> pos;
  for (int i = 0; i < ry; ++i)
    for (int j = 0; j < rx; ++j)
      for (int k = 0; k < na; ++k) {
        int m = a.degree_of(k) - y.tc.cells[i] + x.tc.cells[j];
        pos[{i, j, k}] = {m, static_cast<int>(basis[m].size())};
        basis[m].push_back({i, j, k});
      }

  FiniteComplex c;
  c.tower = f;
  for (auto& [m, b] : basis) c.dims[m] = static_cast<int>(b.size());

  auto place = [&](Matrix& mat, int col, int i, int j, const Elem& v,
                   int target_m) {
    for (int k = 0; k < na; ++k) {
      if (v[k].is_zero()) continue;
      auto [m, p] = pos.at({i, j, k});
      if (m != target_m)
        throw Error(ErrorCode::NotAComplex,
                    "hom-complex differential is not degree 1");
      mat.at(p, col) += v[k];
    }
  };

  for (auto& [m, b] : basis) {
    if (!basis.count(m + 1)) {
      // verify the differential out of m is actually zero
      for (const auto& key : b) {
        Elem t1 = elem_scaled(a.diff(a.basis_elem(key.k)),
                              sign(f, y.tc.cells[key.i]));
        if (!elem_zero(t1))
          throw Error(ErrorCode::NotAComplex, "dangling hom differential");
      }
      continue;
    }
    Matrix d(f, c.dims[m + 1], c.dims[m]);
    Scalar s = sign(f, m);
    int col = 0;
    for (const auto& key : b) {
      Elem bk = a.basis_elem(key.k);
      place(d, col, key.i, key.j,
            elem_scaled(a.diff(bk), sign(f, y.tc.cells[key.i])), m + 1);
      for (int i2 = 0; i2 < ry; ++i2)
        if (!elem_zero(y.tc.twist[i2][key.i]))
          place(d, col, i2, key.j, a.mul(y.tc.twist[i2][key.i], bk), m + 1);
      for (int j2 = 0; j2 < rx; ++j2)
        if (!elem_zero(x.tc.twist[key.j][j2]))
          place(d, col, key.i, j2,
                elem_scaled(a.mul(bk, x.tc.twist[key.j][j2]), -s), m + 1);
      ++col;
    }
    if (!d.is_zero()) c.differentials.emplace(m, d);
  }

  if (!x.idem && !y.idem) return c;

  ElemMatrix ex = effective_idem(x), ey = effective_idem(y);
  std::map<int, Matrix> proj;
  for (auto& [m, b] : basis) {
    Matrix p(f, c.dims[m], c.dims[m]);
    int col = 0;
    for (const auto& key : b) {
      Elem bk = a.basis_elem(key.k);
      for (int i2 = 0; i2 < ry; ++i2) {
        if (elem_zero(ey[i2][key.i])) continue;
        Elem left = a.mul(ey[i2][key.i], bk);
        for (int j2 = 0; j2 < rx; ++j2) {
          if (elem_zero(ex[key.j][j2])) continue;
          Elem v = a.mul(left, ex[key.j][j2]);
          for (int k2 = 0; k2 < na; ++k2) {
            if (v[k2].is_zero()) continue;
            auto [m2, p2] = pos.at({i2, j2, k2});
            if (m2 != m)
              throw Error(ErrorCode::WrongDegree,
                          "idempotent compression is not degree 0");
            p.at(p2, col) += v[k2];
          }
        }
      }
      ++col;
    }
    proj.emplace(m, std::move(p));
  }
  return compress_complex(c, proj);
}

FiniteComplex hom_complex_to_module(const PerfObject& x, const DGModule& fm) {
  if (!x.algebra()->same_as(*fm.algebra()))
    throw Error(ErrorCode::AlgebraMismatch,
                "module lives over a different algebra");
  const DGAlgebra& a = *x.algebra();
  const TowerPtr& f = a.field();
  int rx = x.size(), nf = fm.dim();

  std::map<int, std::vector<std::pair<int, int>>> basis;  // (cell j, F index)
  std::map<std::pair<int, int>, std::pair<int, int>> pos;
  for (int j = 0; j < rx; ++j)
    for (int t = 0; t < nf; ++t) {
      int m = fm.degree_of(t) + x.tc.cells[j];
      pos[{j, t}] = {m, static_cast<int>(basis[m].size())};
      basis[m].push_back({j, t});
    }

  FiniteComplex c;
  c.tower = f;
  for (auto& [m, b] : basis) c.dims[m] = static_cast<int>(b.size());

  auto place = [&](Matrix& mat, int col, int j, const Elem& v, int target_m) {
    for (int t = 0; t < nf; ++t) {
      if (v[t].is_zero()) continue;
      auto [m, p] = pos.at({j, t});
      if (m != target_m)
        throw Error(ErrorCode::NotAComplex,
                    "hom-complex differential is not degree 1");
      mat.at(p, col) += v[t];
    }
  };
  auto f_elem = [&](int t) {
    Elem e(nf, Scalar::zero(f));
    e[t] = Scalar::one(f);
    return e;
  };

  for (auto& [m, b] : basis) {
    if (!basis.count(m + 1)) continue;
    Matrix d(f, c.dims[m + 1], c.dims[m]);
    Scalar s = sign(f, m);
    int col = 0;
    for (auto [i, t] : b) {
      place(d, col, i, fm.diff(f_elem(t)), m + 1);
      // component j of -(-1)^m sum_i phi_i . twist_{ij}
      for (int j = 0; j < rx; ++j)
        if (!elem_zero(x.tc.twist[i][j]))
          place(d, col, j,
                elem_scaled(fm.act(f_elem(t), x.tc.twist[i][j]), -s), m + 1);
      ++col;
    }
    if (!d.is_zero()) c.differentials.emplace(m, d);
  }

  if (!x.idem) return c;
  std::map<int, Matrix> proj;
  for (auto& [m, b] : basis) {
    Matrix p(f, c.dims[m], c.dims[m]);
    int col = 0;
    for (auto [i, t] : b) {
      for (int j = 0; j < rx; ++j) {
        if (elem_zero((*x.idem)[i][j])) continue;
        Elem v = fm.act(f_elem(t), (*x.idem)[i][j]);
        for (int t2 = 0; t2 < nf; ++t2) {
          if (v[t2].is_zero()) continue;
          auto [m2, p2] = pos.at({j, t2});
          if (m2 != m)
            throw Error(ErrorCode::WrongDegree,
                        "idempotent compression is not degree 0");
          p.at(p2, col) += v[t2];
        }
      }
      ++col;
    }
    proj.emplace(m, std::move(p));
  }
  return compress_complex(c, proj);
}

namespace {

std::map<int, int> window_dims(const FiniteComplex& c, int lo, int hi) {
  auto h = cohomology(c);
  std::map<int, int> out;
  for (int i = lo; i <= hi; ++i) out[i] = h.dim(i);
  return out;
}

}  // namespace

std::map<int, int> ext_dims(const PerfObject& x, const PerfObject& y, int lo,
                            int hi) {
  return window_dims(hom_complex(x, y), lo, hi);
}

std::map<int, int> ext_dims_to_module(const PerfObject& x, const DGModule& f,
                                      int lo, int hi) {
  return window_dims(hom_complex_to_module(x, f), lo, hi);
}

HomotopyIsoResult is_homotopy_iso(const PerfObject& x, const PerfObject& y,
                                  const Morphism& f) {
  PerfObject c = cone(x, y, f);
  auto h = module_cohomology(*realize(c));
  HomotopyIsoResult res;
  res.iso = true;
  for (auto& [deg, d] : h.dims) {
    if (d != 0) res.iso = false;
    res.cone_cohomology[deg] = d;
  }
  return res;
}

ModulePtr realize(const PerfObject& x) { return realize_full(x).module; }

Realization realize_full(const PerfObject& x) {
  const DGAlgebra& alg = *x.algebra();
  const TowerPtr& f = alg.field();
  int r = x.size(), na = alg.dim();
  int dim = r * na;
  auto flat = [&](int cell, int k) { return cell * na + k; };

  std::vector<BasisElem> basis;
  basis.reserve(dim);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < na; ++k) {
      std::ostringstream nm;
      nm << "c" << i << ":" << alg.basis()[k].name;
      basis.push_back({nm.str(), alg.degree_of(k) - x.tc.cells[i]});
    }

  std::map<std::pair<int, int>, Combo> action;
  std::map<int, Combo> diff;
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < na; ++k) {
      Elem bk = alg.basis_elem(k);
      for (int l = 0; l < na; ++l) {
        Elem p = alg.mul(bk, alg.basis_elem(l));
        Combo c;
        for (int k2 = 0; k2 < na; ++k2)
          if (!p[k2].is_zero()) c.emplace_back(flat(i, k2), p[k2]);
        if (!c.empty()) action[{flat(i, k), l}] = std::move(c);
      }
      Combo dc;
      Elem dk = elem_scaled(alg.diff(bk), sign(f, x.tc.cells[i]));
      for (int k2 = 0; k2 < na; ++k2)
        if (!dk[k2].is_zero()) dc.emplace_back(flat(i, k2), dk[k2]);
      for (int i2 = 0; i2 < r; ++i2) {
        if (elem_zero(x.tc.twist[i2][i])) continue;
        Elem p = alg.mul(x.tc.twist[i2][i], bk);
        for (int k2 = 0; k2 < na; ++k2)
          if (!p[k2].is_zero()) dc.emplace_back(flat(i2, k2), p[k2]);
      }
      if (!dc.empty()) diff[flat(i, k)] = std::move(dc);
    }

  auto full = std::make_shared<DGModule>("realized", x.algebra(), basis,
                                         std::move(action), std::move(diff));
  if (!x.idem) return {full, Matrix::identity(f, dim)};

  // projector on the realized basis, then cut out its image submodule
  Matrix proj(f, dim, dim);
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < na; ++k)
      for (int i = 0; i < r; ++i) {
        if (elem_zero((*x.idem)[i][j])) continue;
        Elem v = alg.mul((*x.idem)[i][j], alg.basis_elem(k));
        for (int k2 = 0; k2 < na; ++k2)
          if (!v[k2].is_zero()) proj.at(flat(i, k2), flat(j, k)) += v[k2];
      }

  // image basis, grouped by degree for determinism
  std::map<int, std::vector<int>> by_deg;
  for (int t = 0; t < dim; ++t) by_deg[basis[t].deg].push_back(t);
  std::vector<std::vector<Scalar>> image_basis;
  std::vector<int> image_degs;
  for (auto& [deg, idxs] : by_deg) {
    Matrix block(f, dim, static_cast<int>(idxs.size()));
    for (int cidx = 0; cidx < static_cast<int>(idxs.size()); ++cidx)
      for (int ridx = 0; ridx < dim; ++ridx)
        block.at(ridx, cidx) = proj.at(ridx, idxs[cidx]);
    auto rk = rank_kernel_image(block);
    for (auto& v : rk.image) {
      image_basis.push_back(v);
      image_degs.push_back(deg);
    }
  }
  int s = static_cast<int>(image_basis.size());
  Matrix bmat(f, dim, s);
  for (int c = 0; c < s; ++c)
    for (int rr = 0; rr < dim; ++rr) bmat.at(rr, c) = image_basis[c][rr];

  auto in_coords = [&](const Elem& v) {
    auto sol = solve(bmat, v);
    if (!sol)
      throw Error(ErrorCode::ValidationError,
                  "summand image is not closed under the structure maps");
    Combo c;
    for (int t = 0; t < s; ++t)
      if (!(*sol)[t].is_zero()) c.emplace_back(t, (*sol)[t]);
    return c;
  };

  std::vector<BasisElem> sbasis;
  for (int t = 0; t < s; ++t) {
    std::ostringstream nm;
    nm << "s" << t;
    sbasis.push_back({nm.str(), image_degs[t]});
  }
  std::map<std::pair<int, int>, Combo> saction;
  std::map<int, Combo> sdiff;
  for (int t = 0; t < s; ++t) {
    Elem v(image_basis[t].begin(), image_basis[t].end());
    for (int l = 0; l < na; ++l) {
      Combo c = in_coords(full->act(v, alg.basis_elem(l)));
      if (!c.empty()) saction[{t, l}] = std::move(c);
    }
    Combo dc = in_coords(full->diff(v));
    if (!dc.empty()) sdiff[t] = std::move(dc);
  }
  return {std::make_shared<DGModule>("realized-summand", x.algebra(),
                                     std::move(sbasis), std::move(saction),
                                     std::move(sdiff)),
          bmat};
}

FiniteComplex compress_complex(const FiniteComplex& c,
                               const std::map<int, Matrix>& projector) {
  std::map<int, std::vector<std::vector<Scalar>>> image;
  for (auto& [m, n] : c.dims) {
    if (n == 0) continue;
    auto it = projector.find(m);
    if (it == projector.end()) {
      std::vector<std::vector<Scalar>> id;
      for (int i = 0; i < n; ++i) {
        std::vector<Scalar> v(n, Scalar::zero(c.tower));
        v[i] = Scalar::one(c.tower);
        id.push_back(std::move(v));
      }
      image[m] = std::move(id);
    } else {
      image[m] = rank_kernel_image(it->second).image;
    }
  }
  FiniteComplex out;
  out.tower = c.tower;
  for (auto& [m, b] : image)
    out.dims[m] = static_cast<int>(b.size());
  for (auto& [m, b] : image) {
    if (b.empty() || !image.count(m + 1)) continue;
    const auto& tb = image[m + 1];
    if (tb.empty()) continue;
    Matrix d = c.differential(m);
    Matrix lifted(c.tower, c.dim(m + 1), static_cast<int>(b.size()));
    for (int col = 0; col < static_cast<int>(b.size()); ++col) {
      auto v = d.apply(b[col]);
      for (int rr = 0; rr < c.dim(m + 1); ++rr) lifted.at(rr, col) = v[rr];
    }
    Matrix tmat(c.tower, c.dim(m + 1), static_cast<int>(tb.size()));
    for (int col = 0; col < static_cast<int>(tb.size()); ++col)
      for (int rr = 0; rr < c.dim(m + 1); ++rr)
        tmat.at(rr, col) = tb[col][rr];
    auto sol = solve_matrix(tmat, lifted);
    if (!sol)
      throw Error(ErrorCode::NotAComplex,
                  "projector image is not a subcomplex");
    if (!sol->is_zero()) out.differentials.emplace(m, *sol);
  }
  return out;
}

}  // namespace dgcat
