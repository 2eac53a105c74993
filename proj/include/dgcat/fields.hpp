#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgcat/error.hpp"

namespace dgcat {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

// One simple algebraic extension step k_{i-1}(g) = k_{i-1}[x]/(f).
// minpoly holds the coefficients c_0 .. c_d of the monic f; each c_j is an
// element of the previous level given as its flat coefficient vector.
struct TowerStep {
  std::string gen;
  std::vector<std::vector<Rat>> minpoly;

  int degree() const { return static_cast<int>(minpoly.size()) - 1; }
};

// A linear chain of fields k0 c k1 c ... c kn, k0 = Q or F_p. Immutable
// after construction; scalars reference the tower they live in.
class FieldTower {
 public:
  static TowerPtr rationals();
  static TowerPtr prime_field(long p);

  // 0 for Q, p for F_p.
  long characteristic() const { return p_; }
  const std::vector<TowerStep>& steps() const { return steps_; }
  // [kn : k0], product of step degrees.
  int degree() const { return degree_; }
  int degree_up_to(int level) const;  // [k_level : k0]

  bool same_as(const FieldTower& other) const;
  // true iff this tower is an initial segment of `other`.
  bool prefix_of(const FieldTower& other) const;

  std::string describe() const;

 private:
  friend TowerPtr make_extension(const TowerPtr&,
                                 const std::vector<class Scalar>&,
                                 const std::string&, int);
  FieldTower(long p, std::vector<TowerStep> steps);

  long p_;  // 0 = rationals
  std::vector<TowerStep> steps_;
  int degree_;
};

// An element of the top level of a tower: dense coefficient vector of
// length tower->degree() over the base, in the monomial basis with the
// first step's generator varying fastest.
class Scalar {
 public:
  Scalar() = default;
  Scalar(TowerPtr tower, std::vector<Rat> coeffs);

  static Scalar zero(const TowerPtr& tower);
  static Scalar one(const TowerPtr& tower);
  static Scalar from_rational(const TowerPtr& tower, const Rat& r);
  static Scalar from_int(const TowerPtr& tower, long n);
  // The generator of the given step (0-based), as a top-level element.
  static Scalar generator(const TowerPtr& tower, int step);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar inverse() const;
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Lift into a tower that has this scalar's tower as a prefix.
  Scalar embed(const TowerPtr& bigger) const;

  Scalar canonicalized() const;

  std::string str() const;

 private:
  void check_same_tower(const Scalar& o) const;

  TowerPtr tower_;
  std::vector<Rat> coeffs_;
};

// Extends the tower by one step after verifying the minimal polynomial.
// minpoly entries live in the current top level of `tower`.
TowerPtr make_extension(const TowerPtr& tower,
                        const std::vector<Scalar>& minpoly,
                        const std::string& gen_name,
                        int degree_bound = 6);

struct IrreducibilityResult {
  bool irreducible;
  // A nontrivial monic factor when reducible.
  std::vector<Scalar> factor;
};

// Decides irreducibility of a monic polynomial over the top level of the
// tower. Finite fields: root exhaustion for degree <= 3, Frobenius gcds
// for 4..6. Rationals (base level): rational root test, complete for
// degree <= 3. Throws DegreeBoundExceeded outside the supported range.
IrreducibilityResult irreducibility_check(const TowerPtr& tower,
                                          const std::vector<Scalar>& poly,
                                          int degree_bound = 6);

// Scalar literal grammar: sums of terms, term = rational coefficient and/or
// products of powers of declared generator names, e.g. "1+2*g", "g2^2-1/3".
Scalar parse_scalar(const TowerPtr& tower, const std::string& text);

}  // namespace dgcat
