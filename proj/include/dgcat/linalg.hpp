#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dgcat/fields.hpp"

namespace dgcat {

// Dense exact matrix over the top level of a FieldTower.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(TowerPtr tower, int rows, int cols);
  Matrix(TowerPtr tower, int rows, int cols, std::vector<Scalar> entries);

  static Matrix identity(const TowerPtr& tower, int n);

  const TowerPtr& tower() const { return tower_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int r, int c) { return entries_[r * cols_ + c]; }
  const Scalar& at(int r, int c) const { return entries_[r * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Matrix transposed() const;
  bool operator==(const Matrix& o) const;
  bool is_zero() const;

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

 private:
  TowerPtr tower_;
  int rows_, cols_;
  std::vector<Scalar> entries_;
};

struct RankResult {
  int rank;
  // Columns of the kernel basis (each a vector of length cols).
  std::vector<std::vector<Scalar>> kernel;
  // Basis of the column space (each a vector of length rows).
  std::vector<std::vector<Scalar>> image;
};

// Gaussian elimination with the first-nonzero pivot rule; deterministic.
RankResult rank_kernel_image(const Matrix& m);

int rank(const Matrix& m);

// One exact solution of m x = rhs, or nullopt when inconsistent.
std::optional<std::vector<Scalar>> solve(const Matrix& m,
                                         const std::vector<Scalar>& rhs);

// Solves m X = rhs columnwise; nullopt if any column is inconsistent.
std::optional<Matrix> solve_matrix(const Matrix& m, const Matrix& rhs);

// A finite cochain complex of finite-dimensional spaces; differential
// raises degree by 1: d_n : C^n -> C^{n+1} is a dim(n+1) x dim(n) matrix.
struct FiniteComplex {
  TowerPtr tower;
  std::map<int, int> dims;
  std::map<int, Matrix> differentials;  // keyed by source degree n

  int dim(int n) const {
    auto it = dims.find(n);
    return it == dims.end() ? 0 : it->second;
  }
  Matrix differential(int n) const;  // zero-filled when absent
  // Throws NotAComplex when d*d != 0, naming the offending degree.
  void validate() const;
};

struct CohomologyResult {
  std::map<int, int> dims;
  // Cocycle representatives per degree: each column is a representative.
  std::map<int, std::vector<std::vector<Scalar>>> representatives;

  int dim(int n) const {
    auto it = dims.find(n);
    return it == dims.end() ? 0 : it->second;
  }
};

CohomologyResult cohomology(const FiniteComplex& c);

// Expresses v in the cohomology basis of degree n: returns coordinates of
// the class of cocycle v, or nullopt if v is not a cocycle.
std::optional<std::vector<Scalar>> cohomology_class_coordinates(
    const FiniteComplex& c, const CohomologyResult& h, int n,
    const std::vector<Scalar>& v);

}  // namespace dgcat
