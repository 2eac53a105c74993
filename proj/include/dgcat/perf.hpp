#pragma once

#include "dgcat/dg.hpp"

namespace dgcat {

// Direct sum of shifted free modules A[n_i] glued by a strictly
// lower-triangular twist; twist[i][j] is an element of A, homogeneous of
// degree 1 + n_i - n_j, zero unless i > j. Maurer-Cartan:
//   (-1)^{n_i} d_A(twist_{ij}) + (twist . twist)_{ij} = 0.
struct TwistedComplex {
  AlgebraPtr algebra;
  std::vector<int> cells;
  std::vector<std::vector<Elem>> twist;

  int size() const { return static_cast<int>(cells.size()); }
};

// Endomorphism matrix over the algebra; used for idempotents and
// morphisms between twisted complexes.
using ElemMatrix = std::vector<std::vector<Elem>>;

// A twisted complex with an optional strict idempotent: degree 0, closed
// in the endomorphism complex, e*e = e exactly.
struct PerfObject {
  TwistedComplex tc;
  std::optional<ElemMatrix> idem;

  const AlgebraPtr& algebra() const { return tc.algebra; }
  int size() const { return tc.size(); }
};

// A single free cell A[0] (or the given shifts), zero twist.
PerfObject free_object(const AlgebraPtr& a, std::vector<int> cells = {0});

// Throws ShapeMismatch / WrongDegree / NotAComplex / NotClosed when the
// twist or idempotent violates an invariant.
void validate_perf(const PerfObject& x);

// Degree-m morphism x -> y: entries[i][j] in A of degree m + n^y_i - n^x_j,
// acting by phi(a)_i = sum_j entries[i][j] . a_j.
struct Morphism {
  int deg = 0;
  ElemMatrix entries;
};

Morphism zero_morphism(const PerfObject& x, const PerfObject& y, int deg = 0);
Morphism identity_morphism(const PerfObject& x);

// D(phi)_{ij} = (-1)^{n^y_i} d(phi_{ij}) + (delta_y phi)_{ij}
//              - (-1)^{|phi|} (phi delta_x)_{ij}
Morphism hom_diff(const PerfObject& x, const PerfObject& y,
                  const Morphism& f);
Morphism compose(const PerfObject& x, const PerfObject& y,
                 const PerfObject& z, const Morphism& g, const Morphism& f);
bool morphism_is_zero(const Morphism& f);
bool morphism_closed(const PerfObject& x, const PerfObject& y,
                     const Morphism& f);

PerfObject shift(const PerfObject& x, int n);
PerfObject direct_sum(const PerfObject& x, const PerfObject& y);

// Mapping cone of a closed degree-0 morphism; cells of x shifted by 1
// followed by the cells of y. Throws NotClosed / WrongDegree.
PerfObject cone(const PerfObject& x, const PerfObject& y, const Morphism& f);

// Cuts out the summand given by a strict idempotent in the endomorphism
// complex of x (composed over any existing idempotent).
PerfObject summand(const PerfObject& x, const ElemMatrix& e);

// The total hom-complex Hom(x, y), compressed through idempotents when
// present. Its cohomology computes Hom up to homotopy.
FiniteComplex hom_complex(const PerfObject& x, const PerfObject& y);

// Hom from a perfect object into a finite-dimensional module: component m
// holds tuples (phi_j in F of degree m - n_j), differential
// D(phi)_j = d_F(phi_j) - (-1)^m sum_i phi_i . twist_{ij}.
FiniteComplex hom_complex_to_module(const PerfObject& x, const DGModule& f);

// Cohomology dims of hom_complex inside [lo, hi]; entries outside the
// complex's support are exactly zero.
std::map<int, int> ext_dims(const PerfObject& x, const PerfObject& y, int lo,
                            int hi);
std::map<int, int> ext_dims_to_module(const PerfObject& x, const DGModule& f,
                                      int lo, int hi);

struct HomotopyIsoResult {
  bool iso = false;
  // Cohomology dims of the cone; all zero iff iso.
  std::map<int, int> cone_cohomology;
};

HomotopyIsoResult is_homotopy_iso(const PerfObject& x, const PerfObject& y,
                                  const Morphism& f);

// The underlying finite-dimensional DG module (idempotent summand cut out
// explicitly when present).
ModulePtr realize(const PerfObject& x);

// Same, plus the embedding of the module's basis into the ambient free
// coordinates (cell-major, algebra basis fastest); identity for objects
// without an idempotent.
struct Realization {
  ModulePtr module;
  Matrix embedding;  // (cells * dim A) x module->dim()
};
Realization realize_full(const PerfObject& x);

// Cohomology of the image subcomplex of a degree-preserving projector on a
// complex; projector keys match the complex's degrees, missing = identity.
FiniteComplex compress_complex(const FiniteComplex& c,
                               const std::map<int, Matrix>& projector);

}  // namespace dgcat
