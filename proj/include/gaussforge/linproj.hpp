#pragma once

// Exact projective linear algebra over GF(p^k): matrices, points of P^N and
// linear subvarieties kept in reduced row-echelon form.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gaussforge/error.hpp"
#include "gaussforge/gf.hpp"

namespace gaussforge {

using Vector = std::vector<Scalar>;

class Matrix {
 public:
  Matrix(const FieldCtx& field, std::size_t rows, std::size_t cols)
      : field_(&field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix from_rows(const FieldCtx& field, std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw DimensionError("row length mismatch");
      for (std::size_t c = 0; c < cols; ++c) {
        if (&rows[r][c].field() != &field) throw FieldError("field context mismatch");
        m(r, c) = rows[r][c];
      }
    }
    return m;
  }

  static Matrix identity(const FieldCtx& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  const FieldCtx& field() const noexcept { return *field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const { return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }
  Vector col(std::size_t c) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
  }
  std::vector<Vector> row_vectors() const {
    std::vector<Vector> out;
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
  }

  Matrix transpose() const {
    Matrix t(*field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("matrix product dimension mismatch");
    Matrix r(*field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  Vector apply(std::span<const Scalar> v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector dimension mismatch");
    Vector out(rows_, field_->zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// In-place reduced row-echelon form; returns pivot columns.  Zero rows are dropped.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
      std::size_t pr = lead;
      while (pr < rows_ && (*this)(pr, c).is_zero()) ++pr;
      if (pr == rows_) continue;
      swap_rows(pr, lead);
      const Scalar inv = (*this)(lead, c).inv();
      for (std::size_t j = c; j < cols_; ++j) (*this)(lead, j) *= inv;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == lead) continue;
        const Scalar factor = (*this)(r, c);
        if (factor.is_zero()) continue;
        for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) -= factor * (*this)(lead, j);
      }
      pivots.push_back(c);
      ++lead;
    }
    rows_ = lead;
    data_.resize(rows_ * cols_);
    return pivots;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  /// Basis of the right null space {v : M v = 0}, one vector per row.
  Matrix kernel() const {
    Matrix m = *this;
    const auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      Vector v(cols_, field_->zero());
      v[free] = field_->one();
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
      basis.push_back(std::move(v));
    }
    return from_rows(*field_, cols_, basis);
  }

  /// Determinant of a square matrix by elimination.
  Scalar determinant() const {
    if (rows_ != cols_) throw DimensionError("determinant of a non-square matrix");
    Matrix m = *this;
    Scalar det = field_->one();
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t pr = c;
      while (pr < rows_ && m(pr, c).is_zero()) ++pr;
      if (pr == rows_) return field_->zero();
      if (pr != c) {
        m.swap_rows(pr, c);
        det = -det;
      }
      det *= m(c, c);
      const Scalar inv = m(c, c).inv();
      for (std::size_t r = c + 1; r < rows_; ++r) {
        const Scalar factor = m(r, c) * inv;
        if (factor.is_zero()) continue;
        for (std::size_t j = c; j < cols_; ++j) m(r, j) -= factor * m(c, j);
      }
    }
    return det;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  const FieldCtx* field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

/// Point of P^N, normalized so that the first nonzero coordinate is 1.
class ProjPoint {
 public:
  explicit ProjPoint(Vector coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DimensionError("projective point needs at least one coordinate");
    const FieldCtx& F = coords_.front().field();
    for (const auto& c : coords_)
      if (&c.field() != &F) throw FieldError("field context mismatch");
    auto it = std::find_if(coords_.begin(), coords_.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (it == coords_.end()) throw DimensionError("the zero vector is not a projective point");
    const Scalar inv = it->inv();
    for (auto& c : coords_) c *= inv;
  }

  const FieldCtx& field() const { return coords_.front().field(); }
  /// Ambient projective dimension N.
  std::size_t ambient_dim() const noexcept { return coords_.size() - 1; }
  std::size_t size() const noexcept { return coords_.size(); }
  const Vector& coords() const noexcept { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ':';
      s += gaussforge::to_string(coords_[i]);
    }
    return s + ")";
  }

 private:
  Vector coords_;
};

/// Linear subvariety of P^N stored as the reduced row-echelon basis of its
/// affine cone in F^(N+1).  Equal subspaces have equal bases.
class LinearSubspace {
 public:
  /// The empty subvariety of P^N.
  LinearSubspace(const FieldCtx& field, std::size_t ambient_dim) : basis_(field, 0, ambient_dim + 1) {}

  static LinearSubspace span(const FieldCtx& field, std::size_t ambient_dim, const std::vector<Vector>& vectors) {
    Matrix m = Matrix::from_rows(field, ambient_dim + 1, vectors);
    m.rref();
    return LinearSubspace(std::move(m));
  }
  static LinearSubspace span(const std::vector<ProjPoint>& points) {
    if (points.empty()) throw DimensionError("span of no points needs an explicit ambient space");
    std::vector<Vector> v;
    for (const auto& p : points) {
      if (p.ambient_dim() != points.front().ambient_dim()) throw DimensionError("ambient dimension mismatch");
      v.push_back(p.coords());
    }
    return span(points.front().field(), points.front().ambient_dim(), v);
  }
  static LinearSubspace point(const ProjPoint& x) { return span({x}); }
  static LinearSubspace whole(const FieldCtx& field, std::size_t ambient_dim) {
    return LinearSubspace(Matrix::identity(field, ambient_dim + 1));
  }
  /// Common zero locus of linear forms (each a row of coefficients).
  static LinearSubspace from_equations(const FieldCtx& field, std::size_t ambient_dim, const std::vector<Vector>& forms) {
    if (forms.empty()) return whole(field, ambient_dim);
    Matrix k = Matrix::from_rows(field, ambient_dim + 1, forms).kernel();
    k.rref();
    return LinearSubspace(std::move(k));
  }
  static LinearSubspace hyperplane(const Vector& form) {
    if (form.empty()) throw DimensionError("empty linear form");
    return from_equations(form.front().field(), form.size() - 1, {form});
  }

  const FieldCtx& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols() - 1; }
  /// Projective dimension; -1 for the empty subvariety.
  int dim() const noexcept { return static_cast<int>(basis_.rows()) - 1; }
  std::size_t affine_dim() const noexcept { return basis_.rows(); }
  bool empty() const noexcept { return basis_.rows() == 0; }
  const Matrix& basis() const noexcept { return basis_; }
  std::vector<Vector> basis_vectors() const { return basis_.row_vectors(); }

  bool contains(std::span<const Scalar> v) const {
    check_ambient(v.size());
    std::vector<Vector> rows = basis_.row_vectors();
    rows.emplace_back(v.begin(), v.end());
    return Matrix::from_rows(field(), basis_.cols(), rows).rank() == basis_.rows();
  }
  bool contains(const ProjPoint& x) const { return contains(std::span<const Scalar>(x.coords())); }
  bool contains(const LinearSubspace& t) const {
    check_ambient(t.basis_.cols());
    if (&t.field() != &field()) throw FieldError("field context mismatch");
    return join(t) == *this;
  }

  LinearSubspace join(const LinearSubspace& t) const {
    check_ambient(t.basis_.cols());
    std::vector<Vector> rows = basis_.row_vectors();
    for (auto& r : t.basis_.row_vectors()) rows.push_back(std::move(r));
    return span(field(), ambient_dim(), rows);
  }

  /// Linear forms cutting out the subspace (basis of the annihilator).
  std::vector<Vector> equations() const {
    if (empty()) return Matrix::identity(field(), basis_.cols()).row_vectors();
    return basis_.kernel().row_vectors();
  }

  LinearSubspace meet(const LinearSubspace& t) const {
    check_ambient(t.basis_.cols());
    auto forms = equations();
    for (auto& r : t.equations()) forms.push_back(std::move(r));
    return from_equations(field(), ambient_dim(), forms);
  }

  /// Maximal minors in lexicographic order of column subsets, first nonzero
  /// coordinate normalized to 1.
  Vector plucker() const {
    if (empty()) throw DimensionError("Plucker coordinates of the empty subvariety");
    const std::size_t r = basis_.rows(), n = basis_.cols();
    Vector out;
    std::vector<std::size_t> cols(r);
    for (std::size_t i = 0; i < r; ++i) cols[i] = i;
    while (true) {
      Matrix minor(field(), r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) minor(i, j) = basis_(i, cols[j]);
      out.push_back(minor.determinant());
      // next combination
      std::size_t i = r;
      while (i > 0 && cols[i - 1] == n - r + i - 1) --i;
      if (i == 0) break;
      ++cols[i - 1];
      for (std::size_t j = i; j < r; ++j) cols[j] = cols[j - 1] + 1;
    }
    auto it = std::find_if(out.begin(), out.end(), [](const Scalar& s) { return !s.is_zero(); });
    const Scalar inv = it->inv();
    for (auto& c : out) c *= inv;
    return out;
  }

  /// Every rational point, in canonical order.  Size (q^r - 1)/(q - 1).
  std::vector<ProjPoint> points() const {
    std::vector<ProjPoint> out;
    const std::size_t r = basis_.rows();
    if (r == 0) return out;
    const auto elems = field().elements();
    const std::uint32_t q = field().order();
    // coefficient vectors with first nonzero entry equal to 1
    for (std::size_t lead = 0; lead < r; ++lead) {
      const std::size_t free = r - lead - 1;
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < free; ++i) count *= q;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        Vector coef(r, field().zero());
        coef[lead] = field().one();
        std::uint64_t t = idx;
        for (std::size_t i = r; i-- > lead + 1;) {
          coef[i] = elems[t % q];
          t /= q;
        }
        Vector v(basis_.cols(), field().zero());
        for (std::size_t i = 0; i < r; ++i)
          if (!coef[i].is_zero())
            for (std::size_t j = 0; j < basis_.cols(); ++j) v[j] += coef[i] * basis_(i, j);
        out.emplace_back(std::move(v));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) { return a.basis_ == b.basis_; }
  friend bool operator!=(const LinearSubspace& a, const LinearSubspace& b) { return !(a == b); }
  friend bool operator<(const LinearSubspace& a, const LinearSubspace& b) {
    if (a.basis_.rows() != b.basis_.rows()) return a.basis_.rows() < b.basis_.rows();
    for (std::size_t i = 0; i < a.basis_.rows(); ++i)
      for (std::size_t j = 0; j < a.basis_.cols(); ++j)
        if (a.basis_(i, j) != b.basis_(i, j)) return a.basis_(i, j) < b.basis_(i, j);
    return false;
  }

 private:
  explicit LinearSubspace(Matrix rref_basis) : basis_(std::move(rref_basis)) {}

  void check_ambient(std::size_t cols) const {
    if (cols != basis_.cols()) throw DimensionError("ambient dimension mismatch");
  }

  Matrix basis_;
};

inline LinearSubspace span(const std::vector<ProjPoint>& points) { return LinearSubspace::span(points); }
inline LinearSubspace meet(const LinearSubspace& s, const LinearSubspace& t) { return s.meet(t); }
inline LinearSubspace join(const LinearSubspace& s, const LinearSubspace& t) { return s.join(t); }
inline bool contains(const LinearSubspace& s, const ProjPoint& x) { return s.contains(x); }
inline bool contains_subspace(const LinearSubspace& s, const LinearSubspace& t) { return s.contains(t); }

}  // namespace gaussforge
