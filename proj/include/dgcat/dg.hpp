#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dgcat/linalg.hpp"

namespace dgcat {

struct BasisElem {
  std::string name;
  int deg = 0;
};

// Sparse combination of basis elements, keyed by basis index.
using Combo = std::vector<std::pair<int, Scalar>>;

// Dense element in a fixed basis.
using Elem = std::vector<Scalar>;

struct ValidationReport {
  bool pass = true;
  std::string message;        // first violated axiom with witness tuple
  std::string mode;           // "exhaustive" or "sampled"
};

class DGAlgebra;
using AlgebraPtr = std::shared_ptr<const DGAlgebra>;

// Finite-dimensional DG algebra given by basis, structure constants,
// grading, unit and differential. Cohomological convention: d has degree
// +1. Immutable after construction.
class DGAlgebra {
 public:
  DGAlgebra(std::string name, TowerPtr field, std::vector<BasisElem> basis,
            Combo unit, std::map<std::pair<int, int>, Combo> mul,
            std::map<int, Combo> diff);

  const std::string& name() const { return name_; }
  const TowerPtr& field() const { return field_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElem>& basis() const { return basis_; }
  int degree_of(int i) const { return basis_[i].deg; }
  int basis_index(const std::string& name) const;  // -1 if absent

  const Combo& unit_combo() const { return unit_; }
  const Combo& mul_combo(int i, int j) const { return mul_[i][j]; }
  const Combo& diff_combo(int i) const { return diff_[i]; }

  Elem zero_elem() const { return Elem(dim(), Scalar::zero(field_)); }
  Elem unit_elem() const;
  Elem basis_elem(int i) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem diff(const Elem& a) const;
  bool has_zero_diff() const;

  // Homogeneous degree of a nonzero element, or nullopt if mixed/zero.
  std::optional<int> homogeneous_degree(const Elem& a) const;

  bool same_as(const DGAlgebra& o) const;

 private:
  std::string name_;
  TowerPtr field_;
  std::vector<BasisElem> basis_;
  Combo unit_;
  std::vector<std::vector<Combo>> mul_;
  std::vector<Combo> diff_;
};

ValidationReport validate_algebra(const DGAlgebra& a, unsigned seed = 1,
                                  int sample_count = 10000);

class DGModule;
using ModulePtr = std::shared_ptr<const DGModule>;

// Finite-dimensional right DG module.
class DGModule {
 public:
  DGModule(std::string name, AlgebraPtr algebra, std::vector<BasisElem> basis,
           std::map<std::pair<int, int>, Combo> action,  // (module, algebra)
           std::map<int, Combo> diff);

  const std::string& name() const { return name_; }
  const AlgebraPtr& algebra() const { return algebra_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElem>& basis() const { return basis_; }
  int degree_of(int i) const { return basis_[i].deg; }

  Elem zero_elem() const { return Elem(dim(), Scalar::zero(algebra_->field())); }
  Elem act(const Elem& m, const Elem& a) const;
  Elem diff(const Elem& m) const;
  const Combo& action_combo(int m, int a) const { return action_[m][a]; }
  const Combo& diff_combo(int m) const { return diff_[m]; }

  // Matrix of right multiplication by algebra basis element a.
  Matrix action_matrix(int a) const;
  Matrix diff_matrix() const;

  std::map<int, int> graded_dims() const;

 private:
  std::string name_;
  AlgebraPtr algebra_;
  std::vector<BasisElem> basis_;
  std::vector<std::vector<Combo>> action_;
  std::vector<Combo> diff_;
};

ValidationReport validate_module(const DGModule& m, unsigned seed = 1,
                                 int sample_count = 10000);

class DGBimodule;
using BimodulePtr = std::shared_ptr<const DGBimodule>;

// Finite-dimensional DG bimodule: commuting left A- and right B-actions.
class DGBimodule {
 public:
  DGBimodule(std::string name, AlgebraPtr left, AlgebraPtr right,
             std::vector<BasisElem> basis,
             std::map<std::pair<int, int>, Combo> left_action,   // (alg, bim)
             std::map<std::pair<int, int>, Combo> right_action,  // (bim, alg)
             std::map<int, Combo> diff);

  const std::string& name() const { return name_; }
  const AlgebraPtr& left_algebra() const { return left_; }
  const AlgebraPtr& right_algebra() const { return right_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElem>& basis() const { return basis_; }
  int degree_of(int i) const { return basis_[i].deg; }

  Elem zero_elem() const { return Elem(dim(), Scalar::zero(left_->field())); }
  Elem left_act(const Elem& a, const Elem& t) const;
  Elem right_act(const Elem& t, const Elem& b) const;
  Elem diff(const Elem& t) const;
  const Combo& left_combo(int a, int t) const { return lact_[a][t]; }
  const Combo& right_combo(int t, int b) const { return ract_[t][b]; }
  const Combo& diff_combo(int t) const { return diff_[t]; }

 private:
  std::string name_;
  AlgebraPtr left_, right_;
  std::vector<BasisElem> basis_;
  std::vector<std::vector<Combo>> lact_;   // [alg][bim]
  std::vector<std::vector<Combo>> ract_;   // [bim][alg]
  std::vector<Combo> diff_;
};

ValidationReport validate_bimodule(const DGBimodule& t, unsigned seed = 1,
                                   int sample_count = 10000);

struct GradedAlgebraResult {
  std::map<int, int> dims;
  // Representative elements of the cohomology classes, ordered by
  // (degree, index); the induced product on them as a DGAlgebra with zero
  // differential.
  std::vector<Elem> representatives;
  std::vector<int> representative_degrees;
  AlgebraPtr induced;
};

GradedAlgebraResult algebra_cohomology(const DGAlgebra& a);

// Cohomology of the underlying complex of a DG module.
CohomologyResult module_cohomology(const DGModule& m);
FiniteComplex module_underlying_complex(const DGModule& m);

AlgebraPtr opposite(const AlgebraPtr& a);

// Tensor algebra a^op (x) b with Koszul signs:
//   (a1 (x) b1)(a2 (x) b2) = (-1)^{|a1||a2| + |b1||a2|} (a2 a1) (x) (b1 b2)
AlgebraPtr env(const AlgebraPtr& a, const AlgebraPtr& b);

// A bimodule T over (A, B) as a right env(A,B)-module:
//   t . (a (x) b) = (-1)^{|a||t|} a . t . b
ModulePtr bimodule_to_right_module(const BimodulePtr& t, const AlgebraPtr& e);
BimodulePtr right_module_to_bimodule(const ModulePtr& m, const AlgebraPtr& a,
                                     const AlgebraPtr& b);

// The diagonal bimodule A over (A, A).
BimodulePtr diagonal_bimodule(const AlgebraPtr& a);

// Forgets the left action: the underlying right B-module of a bimodule.
ModulePtr bimodule_right_part(const BimodulePtr& t);

// B itself as a right B-module.
ModulePtr algebra_as_module(const AlgebraPtr& b);

}  // namespace dgcat
