#include "dgcat/linalg.hpp"

#include <algorithm>

namespace dgcat {

Matrix::Matrix(TowerPtr tower, int rows, int cols)
    : tower_(std::move(tower)), rows_(rows), cols_(cols) {
  entries_.assign(static_cast<size_t>(rows) * cols, Scalar::zero(tower_));
}

Matrix::Matrix(TowerPtr tower, int rows, int cols, std::vector<Scalar> entries)
    : tower_(std::move(tower)), rows_(rows), cols_(cols),
      entries_(std::move(entries)) {
  if (entries_.size() != static_cast<size_t>(rows) * cols)
    throw Error(ErrorCode::ShapeMismatch, "matrix entry count");
}

Matrix Matrix::identity(const TowerPtr& tower, int n) {
  Matrix m(tower, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(tower);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_)
    throw Error(ErrorCode::ShapeMismatch, "matrix product shapes");
  Matrix out(tower_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) out.at(i, j) += a * b;
      }
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(ErrorCode::ShapeMismatch, "matrix sum shapes");
  Matrix out = *this;
  for (size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += o.entries_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(ErrorCode::ShapeMismatch, "matrix difference shapes");
  Matrix out = *this;
  for (size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= o.entries_[i];
  return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix out = *this;
  for (auto& e : out.entries_) e *= s;
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(tower_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

bool Matrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw Error(ErrorCode::ShapeMismatch, "matrix-vector shapes");
  std::vector<Scalar> out(rows_, Scalar::zero(tower_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int pr = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(r, j));
    Scalar inv = m.at(r, c).inverse();
    for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RankResult rank_kernel_image(const Matrix& m) {
  Matrix red = m;
  std::vector<int> pivots = rref(red);
  RankResult res;
  res.rank = static_cast<int>(pivots.size());

  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  const TowerPtr& t = m.tower();

  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<Scalar> v(m.cols(), Scalar::zero(t));
    v[c] = Scalar::one(t);
    for (size_t pi = 0; pi < pivots.size(); ++pi)
      v[pivots[pi]] = -red.at(static_cast<int>(pi), c);
    res.kernel.push_back(std::move(v));
  }
  for (int c : pivots) {
    std::vector<Scalar> col(m.rows(), Scalar::zero(t));
    for (int i = 0; i < m.rows(); ++i) col[i] = m.at(i, c);
    res.image.push_back(std::move(col));
  }
  return res;
}

int rank(const Matrix& m) {
  Matrix red = m;
  return static_cast<int>(rref(red).size());
}

std::optional<std::vector<Scalar>> solve(const Matrix& m,
                                         const std::vector<Scalar>& rhs) {
  if (static_cast<int>(rhs.size()) != m.rows())
    throw Error(ErrorCode::ShapeMismatch, "solve rhs length");
  Matrix aug(m.tower(), m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = rhs[i];
  }
  std::vector<int> pivots = rref(aug);
  for (int c : pivots)
    if (c == m.cols()) return std::nullopt;  // inconsistent
  std::vector<Scalar> x(m.cols(), Scalar::zero(m.tower()));
  for (size_t pi = 0; pi < pivots.size(); ++pi)
    x[pivots[pi]] = aug.at(static_cast<int>(pi), m.cols());
  return x;
}

std::optional<Matrix> solve_matrix(const Matrix& m, const Matrix& rhs) {
  if (rhs.rows() != m.rows())
    throw Error(ErrorCode::ShapeMismatch, "solve rhs rows");
  Matrix x(m.tower(), m.cols(), rhs.cols());
  for (int c = 0; c < rhs.cols(); ++c) {
    std::vector<Scalar> col(rhs.rows(), Scalar::zero(m.tower()));
    for (int i = 0; i < rhs.rows(); ++i) col[i] = rhs.at(i, c);
    auto sol = solve(m, col);
    if (!sol) return std::nullopt;
    for (int i = 0; i < m.cols(); ++i) x.at(i, c) = (*sol)[i];
  }
  return x;
}

Matrix FiniteComplex::differential(int n) const {
  auto it = differentials.find(n);
  if (it != differentials.end()) return it->second;
  return Matrix(tower, dim(n + 1), dim(n));
}

void FiniteComplex::validate() const {
  for (const auto& [n, d] : differentials) {
    if (d.rows() != dim(n + 1) || d.cols() != dim(n))
      throw Error(ErrorCode::ShapeMismatch,
                  "differential shape at degree " + std::to_string(n));
    if (dim(n + 1) == 0 || dim(n) == 0) continue;
    Matrix next = differential(n + 1);
    if (next.rows() > 0 && !(next * d).is_zero())
      throw Error(ErrorCode::NotAComplex,
                  "d*d != 0 at degree " + std::to_string(n));
  }
}

CohomologyResult cohomology(const FiniteComplex& c) {
  c.validate();
  CohomologyResult out;
  const TowerPtr& t = c.tower;
  for (const auto& [n, dn] : c.dims) {
    if (dn == 0) continue;
    Matrix d_n = c.differential(n);
    Matrix d_prev = c.differential(n - 1);
    RankResult kr = rank_kernel_image(d_n.rows() == 0
                                          ? Matrix(t, 1, dn)  // zero map
                                          : d_n);
    // image of previous differential as columns
    RankResult ir = rank_kernel_image(d_prev.cols() == 0 ? Matrix(t, dn, 1)
                                                         : d_prev);
    const auto& kernel = kr.kernel;
    const auto& image = ir.image;
    int hdim = static_cast<int>(kernel.size() - image.size());
    // choose representatives: kernel vectors extending the image to a basis
    Matrix probe(t, dn, static_cast<int>(image.size() + kernel.size()));
    for (size_t j = 0; j < image.size(); ++j)
      for (int i = 0; i < dn; ++i) probe.at(i, static_cast<int>(j)) = image[j][i];
    std::vector<std::vector<Scalar>> reps;
    int base_rank = dgcat::rank(probe);
    Matrix acc = probe;
    int used = static_cast<int>(image.size());
    for (const auto& kv : kernel) {
      for (int i = 0; i < dn; ++i) acc.at(i, used) = kv[i];
      int r2 = 0;
      {
        Matrix sub(t, dn, used + 1);
        for (int i = 0; i < dn; ++i)
          for (int j = 0; j <= used; ++j) sub.at(i, j) = acc.at(i, j);
        r2 = dgcat::rank(sub);
      }
      if (r2 > base_rank) {
        reps.push_back(kv);
        base_rank = r2;
        ++used;
      }
    }
    hdim = static_cast<int>(reps.size());
    if (hdim > 0) {
      out.dims[n] = hdim;
      out.representatives[n] = std::move(reps);
    }
  }
  return out;
}

std::optional<std::vector<Scalar>> cohomology_class_coordinates(
    const FiniteComplex& c, const CohomologyResult& h, int n,
    const std::vector<Scalar>& v) {
  const TowerPtr& t = c.tower;
  int dn = c.dim(n);
  if (static_cast<int>(v.size()) != dn)
    throw Error(ErrorCode::ShapeMismatch, "cocycle length");
  Matrix d_n = c.differential(n);
  if (d_n.rows() > 0) {
    auto img = d_n.apply(v);
    for (const auto& x : img)
      if (!x.is_zero()) return std::nullopt;  // not a cocycle
  }
  Matrix d_prev = c.differential(n - 1);
  auto reps_it = h.representatives.find(n);
  int nreps = reps_it == h.representatives.end()
                  ? 0
                  : static_cast<int>(reps_it->second.size());
  Matrix sys(t, dn, d_prev.cols() + nreps);
  for (int i = 0; i < dn; ++i)
    for (int j = 0; j < d_prev.cols(); ++j) sys.at(i, j) = d_prev.at(i, j);
  for (int j = 0; j < nreps; ++j)
    for (int i = 0; i < dn; ++i)
      sys.at(i, d_prev.cols() + j) = reps_it->second[j][i];
  auto sol = solve(sys, v);
  if (!sol) return std::nullopt;
  std::vector<Scalar> coords(nreps, Scalar::zero(t));
  for (int j = 0; j < nreps; ++j) coords[j] = (*sol)[d_prev.cols() + j];
  return coords;
}

}  // namespace dgcat
