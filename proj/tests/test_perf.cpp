#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dgcat/perf.hpp"

using namespace dgcat;

namespace {

Scalar one(const TowerPtr& t) { return Scalar::one(t); }

AlgebraPtr make_dual(const TowerPtr& f) {
  std::map<std::pair<int, int>, Combo> mul;
  mul[{0, 0}] = {{0, one(f)}};
  mul[{0, 1}] = {{1, one(f)}};
  mul[{1, 0}] = {{1, one(f)}};
  return std::make_shared<DGAlgebra>(
      "dual", f, std::vector<BasisElem>{{"1", 0}, {"eps", 0}},
      Combo{{0, one(f)}}, std::move(mul), std::map<int, Combo>{});
}

AlgebraPtr make_kronecker(const TowerPtr& f) {
  std::vector<BasisElem> basis{{"e1", 0}, {"e2", 0}, {"al", 0}, {"be", 0}};
  std::map<std::pair<int, int>, Combo> mul;
  mul[{0, 0}] = {{0, one(f)}};
  mul[{1, 1}] = {{1, one(f)}};
  mul[{1, 2}] = {{2, one(f)}};
  mul[{1, 3}] = {{3, one(f)}};
  mul[{2, 0}] = {{2, one(f)}};
  mul[{3, 0}] = {{3, one(f)}};
  return std::make_shared<DGAlgebra>(
      "kronecker", f, std::move(basis), Combo{{0, one(f)}, {1, one(f)}},
      std::move(mul), std::map<int, Combo>{});
}

AlgebraPtr make_tu(const TowerPtr& f) {
  std::map<std::pair<int, int>, Combo> mul;
  mul[{0, 0}] = {{0, one(f)}};
  mul[{0, 1}] = {{1, one(f)}};
  mul[{1, 0}] = {{1, one(f)}};
  mul[{0, 2}] = {{2, one(f)}};
  mul[{2, 0}] = {{2, one(f)}};
  std::map<int, Combo> diff;
  diff[2] = {{1, one(f)}};
  return std::make_shared<DGAlgebra>(
      "tu", f, std::vector<BasisElem>{{"1", 0}, {"t", 0}, {"u", -1}},
      Combo{{0, one(f)}}, std::move(mul), std::move(diff));
}

bool perf_equal(const PerfObject& x, const PerfObject& y) {
  if (x.tc.cells != y.tc.cells) return false;
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < x.size(); ++j)
      if (x.tc.twist[i][j] != y.tc.twist[i][j]) return false;
  if (x.idem.has_value() != y.idem.has_value()) return false;
  if (x.idem)
    for (int i = 0; i < x.size(); ++i)
      for (int j = 0; j < x.size(); ++j)
        if ((*x.idem)[i][j] != (*y.idem)[i][j]) return false;
  return true;
}

// A random closed degree-0 morphism A[n] -> y, found by raw linear algebra
// on the closedness equations.
Morphism random_closed_from_free(const PerfObject& fr, const PerfObject& y,
                                 std::mt19937& rng) {
  const DGAlgebra& a = *y.algebra();
  const TowerPtr& f = a.field();
  int n = fr.tc.cells[0];
  // unknowns: coefficient of basis k in phi_i, with deg k = n_y_i - n
  std::vector<std::pair<int, int>> vars;
  for (int i = 0; i < y.size(); ++i)
    for (int k = 0; k < a.dim(); ++k)
      if (a.degree_of(k) == y.tc.cells[i] - n) vars.emplace_back(i, k);
  // constraints: components of (-1)^{n_y_i} d(phi_i) + sum_l twist_{il} phi_l
  std::map<std::pair<int, int>, int> row_of;
  int rows = 0;
  auto row = [&](int i, int k) {
    auto it = row_of.find({i, k});
    if (it != row_of.end()) return it->second;
    row_of[{i, k}] = rows;
    return rows++;
  };
  std::vector<std::map<int, Scalar>> rowdata;
  auto add = [&](int r, int c, const Scalar& s) {
    if (r >= static_cast<int>(rowdata.size())) rowdata.resize(r + 1);
    auto [it, fresh] = rowdata[r].emplace(c, s);
    if (!fresh) it->second += s;
  };
  for (int v = 0; v < static_cast<int>(vars.size()); ++v) {
    auto [i, k] = vars[v];
    Elem d = a.diff(a.basis_elem(k));
    Scalar sg = (y.tc.cells[i] % 2 == 0) ? one(f) : -one(f);
    for (int k2 = 0; k2 < a.dim(); ++k2)
      if (!d[k2].is_zero()) add(row(i, k2), v, sg * d[k2]);
    for (int i2 = 0; i2 < y.size(); ++i2) {
      Elem p = a.mul(y.tc.twist[i2][i], a.basis_elem(k));
      for (int k2 = 0; k2 < a.dim(); ++k2)
        if (!p[k2].is_zero()) add(row(i2, k2), v, p[k2]);
    }
  }
  Matrix m(f, std::max(rows, 1), static_cast<int>(vars.size()));
  for (int r = 0; r < static_cast<int>(rowdata.size()); ++r)
    for (auto& [c, s] : rowdata[r]) m.at(r, c) = s;
  auto kr = rank_kernel_image(m);

  Morphism out = zero_morphism(fr, y);
  if (kr.kernel.empty()) return out;
  std::uniform_int_distribution<int> coeff(-1, 1);
  std::vector<Scalar> combo(vars.size(), Scalar::zero(f));
  for (const auto& kv : kr.kernel) {
    Scalar c = Scalar::from_int(f, coeff(rng));
    for (size_t t = 0; t < vars.size(); ++t) combo[t] += c * kv[t];
  }
  for (int v = 0; v < static_cast<int>(vars.size()); ++v) {
    auto [i, k] = vars[v];
    out.entries[i][0][k] += combo[v];
  }
  return out;
}

PerfObject random_perf(const AlgebraPtr& a, std::mt19937& rng, int steps) {
  std::uniform_int_distribution<int> sh(-1, 1);
  PerfObject x = free_object(a, {sh(rng)});
  for (int s = 0; s < steps; ++s) {
    PerfObject fr = free_object(a, {sh(rng)});
    x = cone(fr, x, random_closed_from_free(fr, x, rng));
  }
  return x;
}

// Brute-force oracle: morphism spaces of the realized modules up to
// homotopy, via raw linear algebra on arbitrary A-linear maps. No twisted
// complex block structure involved.
std::map<int, int> oracle_hom_dims(const DGModule& M, const DGModule& N) {
  const DGAlgebra& A = *M.algebra();
  const TowerPtr& f = A.field();
  std::map<int, int> out;
  if (M.dim() == 0 || N.dim() == 0) return out;

  int lo = 1 << 20, hi = -(1 << 20);
  for (int t = 0; t < N.dim(); ++t)
    for (int s = 0; s < M.dim(); ++s) {
      int m = N.degree_of(t) - M.degree_of(s);
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }

  // per degree: flat variable list (t, s) and the kernel basis of the
  // A-linearity constraints
  std::map<int, std::vector<std::pair<int, int>>> vars;
  std::map<int, std::vector<std::vector<Scalar>>> lin;  // basis of A-linear maps
  for (int m = lo; m <= hi + 1; ++m) {
    std::vector<std::pair<int, int>> vs;
    for (int t = 0; t < N.dim(); ++t)
      for (int s = 0; s < M.dim(); ++s)
        if (N.degree_of(t) - M.degree_of(s) == m) vs.emplace_back(t, s);
    vars[m] = vs;
    if (vs.empty()) {
      lin[m] = {};
      continue;
    }
    std::map<std::pair<int, int>, int> vpos;
    for (int v = 0; v < static_cast<int>(vs.size()); ++v) vpos[vs[v]] = v;
    // constraints indexed by (source s, algebra l, target t')
    std::vector<std::vector<Scalar>> rows;
    for (int s = 0; s < M.dim(); ++s)
      for (int l = 0; l < A.dim(); ++l) {
        Elem ms = M.zero_elem();
        ms[s] = one(f);
        Elem moved = M.act(ms, A.basis_elem(l));
        for (int tp = 0; tp < N.dim(); ++tp) {
          std::vector<Scalar> r(vs.size(), Scalar::zero(f));
          bool nz = false;
          // f(e_s . b_l) component t'
          for (int u = 0; u < M.dim(); ++u) {
            if (moved[u].is_zero()) continue;
            auto it = vpos.find({tp, u});
            if (it != vpos.end()) {
              r[it->second] += moved[u];
              nz = true;
            }
          }
          // minus (f(e_s) . b_l) component t'
          for (int t = 0; t < N.dim(); ++t) {
            auto it = vpos.find({t, s});
            if (it == vpos.end()) continue;
            Elem nt = N.zero_elem();
            nt[t] = one(f);
            Elem acted = N.act(nt, A.basis_elem(l));
            if (!acted[tp].is_zero()) {
              r[it->second] -= acted[tp];
              nz = true;
            }
          }
          if (nz) rows.push_back(std::move(r));
        }
      }
    Matrix cm(f, std::max<int>(1, static_cast<int>(rows.size())),
              static_cast<int>(vs.size()));
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      for (int c = 0; c < static_cast<int>(vs.size()); ++c)
        cm.at(r, c) = rows[r][c];
    lin[m] = rank_kernel_image(cm).kernel;
  }

  // assemble the complex of A-linear maps with D(f) = dN f - (-1)^m f dM
  FiniteComplex c;
  c.tower = f;
  for (int m = lo; m <= hi + 1; ++m)
    c.dims[m] = static_cast<int>(lin[m].size());
  for (int m = lo; m <= hi; ++m) {
    if (lin[m].empty() || lin[m + 1].empty()) continue;
    const auto& vs = vars[m];
    const auto& vt = vars[m + 1];
    std::map<std::pair<int, int>, int> tpos;
    for (int v = 0; v < static_cast<int>(vt.size()); ++v) tpos[vt[v]] = v;
    Matrix img(f, static_cast<int>(vt.size()),
               static_cast<int>(lin[m].size()));
    for (int col = 0; col < static_cast<int>(lin[m].size()); ++col) {
      const auto& kv = lin[m][col];
      for (int v = 0; v < static_cast<int>(vs.size()); ++v) {
        if (kv[v].is_zero()) continue;
        auto [t, s] = vs[v];
        // dN component
        Elem nt = N.zero_elem();
        nt[t] = one(f);
        Elem dn = N.diff(nt);
        for (int tp = 0; tp < N.dim(); ++tp)
          if (!dn[tp].is_zero()) img.at(tpos.at({tp, s}), col) += dn[tp] * kv[v];
        // -(-1)^m f dM: entry (t, s') gets -(-1)^m (dM)_{s, s'} kv
        for (int sp = 0; sp < M.dim(); ++sp) {
          Elem msp = M.zero_elem();
          msp[sp] = one(f);
          Elem dm = M.diff(msp);
          if (dm[s].is_zero()) continue;
          Scalar sg = (m % 2 == 0) ? -one(f) : one(f);
          img.at(tpos.at({t, sp}), col) += sg * dm[s] * kv[v];
        }
      }
    }
    Matrix tmat(f, static_cast<int>(vt.size()),
                static_cast<int>(lin[m + 1].size()));
    for (int col = 0; col < static_cast<int>(lin[m + 1].size()); ++col)
      for (int r = 0; r < static_cast<int>(vt.size()); ++r)
        tmat.at(r, col) = lin[m + 1][col][r];
    auto sol = solve_matrix(tmat, img);
    REQUIRE(sol);
    if (!sol->is_zero()) c.differentials.emplace(m, *sol);
  }
  auto h = cohomology(c);
  return h.dims;
}

int dim_at(const std::map<int, int>& m, int i) {
  auto it = m.find(i);
  return it == m.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("validation of twisted complexes") {
  auto q = FieldTower::rationals();
  auto dual = make_dual(q);

  SUBCASE("free object passes") { validate_perf(free_object(dual)); }

  SUBCASE("upper triangular entry rejected") {
    PerfObject x = free_object(dual, {1, 0});
    x.tc.twist[0][1] = dual->basis_elem(0);
    CHECK_THROWS_AS(validate_perf(x), Error);
  }

  SUBCASE("wrong degree entry rejected") {
    PerfObject x = free_object(dual, {0, 0});
    x.tc.twist[1][0] = dual->basis_elem(1);  // needs degree 1, eps is 0
    try {
      validate_perf(x);
      FAIL("expected WrongDegree");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::WrongDegree);
    }
  }

  SUBCASE("Maurer-Cartan violation rejected") {
    PerfObject x = free_object(dual, {2, 1, 0});
    x.tc.twist[1][0] = dual->basis_elem(1);
    x.tc.twist[2][1] = dual->basis_elem(1);
    validate_perf(x);  // eps * eps = 0, fine
    x.tc.twist[1][0] = dual->unit_elem();
    try {
      validate_perf(x);
      FAIL("expected NotAComplex");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAComplex);
    }
  }

  SUBCASE("random cone outputs always validate; perturbations rejected") {
    std::mt19937 rng(551);
    for (const auto& a : {make_dual(q), make_kronecker(q), make_tu(q)}) {
      for (int trial = 0; trial < 10; ++trial) {
        PerfObject x = random_perf(a, rng, 3);
        validate_perf(x);
        if (x.size() < 2) continue;
        PerfObject bad = x;
        bad.tc.twist[0][x.size() - 1] = a->unit_elem();
        CHECK_THROWS_AS(validate_perf(bad), Error);
      }
    }
  }
}

TEST_CASE("shift") {
  auto q = FieldTower::rationals();
  auto tu = make_tu(q);
  std::mt19937 rng(77);

  PerfObject a = free_object(tu);
  CHECK(perf_equal(shift(a, 0), a));

  for (int trial = 0; trial < 8; ++trial) {
    PerfObject x = random_perf(tu, rng, 2);
    CHECK(perf_equal(shift(shift(x, 1), -1), x));
    validate_perf(shift(x, 1));
    validate_perf(shift(x, -3));

    PerfObject y = random_perf(tu, rng, 2);
    auto base = ext_dims(x, y, -4, 4);
    auto s1 = ext_dims(shift(x, 1), y, -4, 4);
    auto s2 = ext_dims(x, shift(y, 1), -4, 4);
    for (int i = -3; i <= 3; ++i) {
      CHECK(dim_at(s1, i) == dim_at(base, i - 1));
      CHECK(dim_at(s2, i) == dim_at(base, i + 1));
    }
  }
}

TEST_CASE("cone goldens") {
  auto q = FieldTower::rationals();
  auto dual = make_dual(q);

  SUBCASE("cone of the identity is acyclic") {
    PerfObject a = free_object(dual);
    PerfObject c = cone(a, a, identity_morphism(a));
    for (int i = -3; i <= 3; ++i) {
      auto d = ext_dims(c, free_object(dual, {-i}), -5, 5);
      for (auto& [deg, v] : d) CHECK(v == 0);
    }
  }

  SUBCASE("cone of zero is the shifted sum") {
    std::mt19937 rng(9);
    auto kron = make_kronecker(q);
    PerfObject x = random_perf(kron, rng, 2);
    PerfObject y = random_perf(kron, rng, 2);
    PerfObject c = cone(x, y, zero_morphism(x, y));
    PerfObject s = direct_sum(shift(x, 1), y);
    auto hc = hom_complex(c, c);
    auto hs = hom_complex(s, s);
    CHECK(hc.dims == hs.dims);
    auto d1 = ext_dims(c, free_object(kron), -4, 4);
    auto d2 = ext_dims(s, free_object(kron), -4, 4);
    CHECK(d1 == d2);
  }

  SUBCASE("cone of eps over the dual numbers") {
    PerfObject a = free_object(dual);
    Morphism eps = zero_morphism(a, a);
    eps.entries[0][0] = dual->basis_elem(1);
    CHECK(morphism_closed(a, a, eps));
    PerfObject c = cone(a, a, eps);
    auto d = ext_dims(c, c, 0, 0);
    CHECK(d[0] == 2);
    auto oracle = oracle_hom_dims(*realize(c), *realize(c));
    CHECK(dim_at(oracle, 0) == 2);
  }

  SUBCASE("non-closed input rejected") {
    auto tu = make_tu(q);
    PerfObject a = free_object(tu);
    PerfObject b = free_object(tu, {1});
    Morphism f = zero_morphism(b, a);
    f.entries[0][0] = tu->basis_elem(2);  // u, not closed
    try {
      cone(b, a, f);
      FAIL("expected NotClosed");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotClosed);
    }
  }
}

TEST_CASE("hom complexes") {
  auto q = FieldTower::rationals();

  SUBCASE("End(A) recovers H(A)") {
    for (const auto& a : {make_dual(q), make_tu(q), make_kronecker(q)}) {
      PerfObject fr = free_object(a);
      auto h = cohomology(hom_complex(fr, fr));
      auto ha = algebra_cohomology(*a);
      for (auto& [deg, d] : ha.dims) CHECK(h.dim(deg) == d);
      int total = 0;
      for (auto& [deg, d] : h.dims) total += d;
      int total2 = 0;
      for (auto& [deg, d] : ha.dims) total2 += d;
      CHECK(total == total2);
    }
  }

  SUBCASE("Kronecker projective summands") {
    auto kron = make_kronecker(q);
    PerfObject fr = free_object(kron);
    ElemMatrix e1{{kron->basis_elem(0)}};
    ElemMatrix e2{{kron->basis_elem(1)}};
    PerfObject p1 = summand(fr, e1);
    PerfObject p2 = summand(fr, e2);
    auto d12 = ext_dims(p1, p2, -2, 2);
    CHECK(d12[0] == 2);
    CHECK(d12[1] == 0);
    CHECK(d12[-1] == 0);
    auto d21 = ext_dims(p2, p1, -2, 2);
    for (auto& [deg, v] : d21) CHECK(v == 0);
    CHECK(ext_dims(p1, p1, 0, 0)[0] == 1);
    CHECK(ext_dims(p2, p2, 0, 0)[0] == 1);
    // oracle agreement through realized modules
    CHECK(realize(p1)->dim() == 1);
    CHECK(realize(p2)->dim() == 3);
    auto oracle = oracle_hom_dims(*realize(p1), *realize(p2));
    CHECK(dim_at(oracle, 0) == 2);
  }

  SUBCASE("maps into a contractible target vanish") {
    std::mt19937 rng(31);
    auto tu = make_tu(q);
    for (int trial = 0; trial < 5; ++trial) {
      PerfObject x = random_perf(tu, rng, 2);
      PerfObject y = random_perf(tu, rng, 1);
      PerfObject c = cone(y, y, identity_morphism(y));
      auto h = cohomology(hom_complex(x, c));
      for (auto& [deg, d] : h.dims) CHECK(d == 0);
    }
  }
}

TEST_CASE("hom complex against the brute-force oracle") {
  auto q = FieldTower::rationals();
  auto f3 = FieldTower::prime_field(3);
  std::mt19937 rng(20240);
  std::vector<AlgebraPtr> algebras{make_dual(q), make_kronecker(q),
                                   make_tu(q), make_dual(f3)};
  for (const auto& a : algebras) {
    for (int trial = 0; trial < 6; ++trial) {
      PerfObject x = random_perf(a, rng, 2);
      PerfObject y = random_perf(a, rng, 2);
      auto mine = cohomology(hom_complex(x, y));
      auto oracle = oracle_hom_dims(*realize(x), *realize(y));
      for (int i = -3; i <= 3; ++i) CHECK(mine.dim(i) == dim_at(oracle, i));
    }
  }
}

TEST_CASE("direct sums and additivity") {
  auto q = FieldTower::rationals();
  auto kron = make_kronecker(q);
  std::mt19937 rng(15);

  SUBCASE("sum with the empty object") {
    PerfObject x = random_perf(kron, rng, 2);
    PerfObject zero = free_object(kron, {});
    CHECK(perf_equal(direct_sum(x, zero), x));
  }

  SUBCASE("ext dims add up") {
    for (int trial = 0; trial < 4; ++trial) {
      PerfObject x1 = random_perf(kron, rng, 1);
      PerfObject x2 = random_perf(kron, rng, 2);
      PerfObject y = random_perf(kron, rng, 2);
      auto dsum = ext_dims(direct_sum(x1, x2), y, -3, 3);
      auto d1 = ext_dims(x1, y, -3, 3);
      auto d2 = ext_dims(x2, y, -3, 3);
      for (int i = -3; i <= 3; ++i)
        CHECK(dim_at(dsum, i) == dim_at(d1, i) + dim_at(d2, i));
    }
  }
}

TEST_CASE("homotopy isomorphism detection") {
  auto q = FieldTower::rationals();
  auto dual = make_dual(q);
  PerfObject a = free_object(dual);

  CHECK(is_homotopy_iso(a, a, identity_morphism(a)).iso);
  auto res = is_homotopy_iso(a, a, zero_morphism(a, a));
  CHECK_FALSE(res.iso);
  bool some_nonzero = false;
  for (auto& [deg, d] : res.cone_cohomology) some_nonzero |= (d != 0);
  CHECK(some_nonzero);
}

TEST_CASE("triangle Euler bookkeeping") {
  auto q = FieldTower::rationals();
  auto tu = make_tu(q);
  std::mt19937 rng(444);
  for (int trial = 0; trial < 6; ++trial) {
    PerfObject x = random_perf(tu, rng, 1);
    PerfObject y = random_perf(tu, rng, 2);
    PerfObject fr = free_object(tu, {0});
    // cone over a random closed map from a free cell into y, probed by z
    Morphism f = random_closed_from_free(fr, y, rng);
    PerfObject c = cone(fr, y, f);
    PerfObject z = random_perf(tu, rng, 1);
    auto hx = cohomology(hom_complex(fr, z));
    auto hy = cohomology(hom_complex(y, z));
    auto hc = cohomology(hom_complex(c, z));
    long chi_x = 0, chi_y = 0, chi_c = 0;
    for (auto& [deg, d] : hx.dims) chi_x += (deg % 2 == 0 ? d : -d);
    for (auto& [deg, d] : hy.dims) chi_y += (deg % 2 == 0 ? d : -d);
    for (auto& [deg, d] : hc.dims) chi_c += (deg % 2 == 0 ? d : -d);
    CHECK(chi_c == chi_y - chi_x);
    // subadditivity from the long exact sequence
    for (int i = -4; i <= 4; ++i)
      CHECK(hc.dim(i) <= hy.dim(i) + hx.dim(i - 1));
  }
}

TEST_CASE("hom into modules") {
  auto q = FieldTower::rationals();
  std::mt19937 rng(88);

  SUBCASE("free source recovers module cohomology") {
    for (const auto& a : {make_dual(q), make_tu(q)}) {
      auto m = algebra_as_module(a);
      auto d = ext_dims_to_module(free_object(a), *m, -3, 3);
      auto h = module_cohomology(*m);
      for (int i = -3; i <= 3; ++i) CHECK(dim_at(d, i) == h.dim(i));
    }
  }

  SUBCASE("agrees with perf-to-perf on realized targets") {
    for (const auto& a : {make_dual(q), make_kronecker(q), make_tu(q)}) {
      for (int trial = 0; trial < 4; ++trial) {
        PerfObject x = random_perf(a, rng, 2);
        PerfObject y = random_perf(a, rng, 2);
        auto d1 = ext_dims(x, y, -3, 3);
        auto d2 = ext_dims_to_module(x, *realize(y), -3, 3);
        CHECK(d1 == d2);
      }
    }
  }

  SUBCASE("idempotent source compresses") {
    auto kron = make_kronecker(q);
    PerfObject fr = free_object(kron);
    PerfObject p1 = summand(fr, ElemMatrix{{kron->basis_elem(0)}});
    auto m2 = realize(summand(fr, ElemMatrix{{kron->basis_elem(1)}}));
    auto d = ext_dims_to_module(p1, *m2, -2, 2);
    CHECK(d[0] == 2);
    CHECK(d[1] == 0);
  }
}

TEST_CASE("realization validates") {
  auto q = FieldTower::rationals();
  std::mt19937 rng(5150);
  for (const auto& a : {make_dual(q), make_kronecker(q), make_tu(q)}) {
    for (int trial = 0; trial < 3; ++trial) {
      PerfObject x = random_perf(a, rng, 2);
      CHECK(validate_module(*realize(x)).pass);
    }
  }
  auto kron = make_kronecker(q);
  auto p2 = realize(summand(free_object(kron), ElemMatrix{{kron->basis_elem(1)}}));
  CHECK(validate_module(*p2).pass);
}
