#pragma once

#include "dgcat/perf.hpp"

namespace dgcat {

enum class ResStatus { Finite, Periodic, Truncated };

// A stepwise semifree model of a finite-dimensional DG module. Cells are
// added top degree first; each cell may carry a projective-summand
// idempotent taken from the unit decomposition of the algebra.
struct ResolutionResult {
  ResStatus status = ResStatus::Truncated;
  ModulePtr target;
  PerfObject model;
  // augmentation value (target coordinates) per ambient cell generator
  std::vector<Elem> augmentation;
  int steps = 0;
  int length = 0;            // Finite: span of cell shifts
  int period = 0;            // Periodic: cohomological degree shift per cycle
  int first_repeat_step = 0;
  int second_repeat_step = 0;
  int top_remaining = 0;     // top cone cohomology degree when stopped
  int first_top = 0;         // top degree at the first repeated syzygy
  std::vector<std::string> fingerprints;
  std::string minimality_mode;  // "radical" or "all-classes"
};

ResolutionResult minimal_resolution(const ModulePtr& m, int depth_bound = 24,
                                    int size_bound = 2000);

// The augmentation as a closed degree-0 map realize(model) -> target;
// used to validate Finite results (its cone must be exactly acyclic).
ModulePtr augmentation_cone(const ResolutionResult& r);

struct ExtDimsResult {
  std::map<int, int> dims;    // exactly the requested window
  int guaranteed_hi = 0;      // dims are exact for i <= guaranteed_hi
  bool everything_guaranteed = false;  // Finite resolution
  bool periodic_extended = false;
  ResolutionResult resolution;
};

// Ext^i(m, n) for i in [lo, hi] via a semifree model of m. Throws
// WindowNotGuaranteed when the resolution stopped too early for the window.
ExtDimsResult ext_dims_modules(const ModulePtr& m, const ModulePtr& n, int lo,
                               int hi, int depth_bound = 24,
                               int size_bound = 2000);

// x (strict perfect over A) tensored over A with an (A,B)-bimodule: each
// cell A[n] becomes T[n], twist acting through the left action.
ModulePtr derived_tensor(const PerfObject& x, const BimodulePtr& t);

struct ActionCheckResult {
  bool ok = false;
  std::map<int, int> algebra_dims;  // H^i(A) in the window
  std::map<int, int> hom_dims;      // H^i Hom_B(P, T)
  std::map<int, int> map_ranks;     // rank of the induced map per degree
};

// Builds the chain map A -> Hom_B(P, T), a |-> (p |-> a . rho(p)), and
// checks it is a quasi-isomorphism inside the window.
ActionCheckResult action_quasi_iso_check(const AlgebraPtr& a,
                                         const BimodulePtr& t, int lo, int hi,
                                         int depth_bound = 24,
                                         int size_bound = 2000);

enum class Smoothness { Smooth, NotSmooth, Undetermined };

struct SmoothnessVerdict {
  Smoothness verdict = Smoothness::Undetermined;
  ResolutionResult diagonal_resolution;
};

SmoothnessVerdict smoothness_probe(const AlgebraPtr& a, int depth_bound = 24,
                                   int size_bound = 2000);

// Basis of the Jacobson radical of a finite-dimensional associative
// algebra (ignores the differential). Trace-form criterion over the base
// field after restriction of scalars; Frobenius-twisted trace forms in
// positive characteristic.
std::vector<Elem> algebra_radical(const DGAlgebra& b);

// Basis of the space of right-A-linear maps s -> f of the given degree
// (ignoring differentials); each matrix is f.dim() x s.dim().
std::vector<Matrix> linear_module_maps(const DGModule& s, const DGModule& f,
                                       int deg);

}  // namespace dgcat
