#include "u21/linalg.hpp"

#include <algorithm>

namespace u21 {

Matrix::Matrix(const FiniteField& F, int rows, int cols)
    : F_(&F), rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, F.zero()) {}

Matrix Matrix::identity(const FiniteField& F, int n) {
  Matrix m(F, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = F.one();
  return m;
}

Matrix Matrix::from_columns(const FiniteField& F, int rows, const std::vector<Vec>& cols) {
  Matrix m(F, rows, static_cast<int>(cols.size()));
  for (int c = 0; c < m.cols_; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

Matrix Matrix::from_rows(const FiniteField& F, int cols, const std::vector<Vec>& rows) {
  Matrix m(F, static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows_; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  return m;
}

Vec Matrix::column(int c) const {
  Vec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec Matrix::row(int r) const { return Vec(a_.begin() + std::size_t(r) * cols_, a_.begin() + std::size_t(r + 1) * cols_); }

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw AlgebraError("matrix shape mismatch");
  Matrix out(*F_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      FE a = (*this)(i, k);
      if (a.v == 0) continue;
      for (int j = 0; j < o.cols_; ++j) out(i, j) = F_->add(out(i, j), F_->mul(a, o(k, j)));
    }
  return out;
}

Vec Matrix::operator*(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw AlgebraError("matrix-vector shape mismatch");
  Vec out(rows_, F_->zero());
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) out[i] = F_->add(out[i], F_->mul((*this)(i, k), v[k]));
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->add(a_[i], o.a_[i]);
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->sub(a_[i], o.a_[i]);
  return out;
}

Matrix Matrix::scaled(FE s) const {
  Matrix out = *this;
  for (auto& x : out.a_) x = F_->mul(s, x);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(*F_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](FE x) { return x.v == 0; });
}

FE Matrix::trace() const {
  FE t = F_->zero();
  for (int i = 0; i < std::min(rows_, cols_); ++i) t = F_->add(t, (*this)(i, i));
  return t;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(Matrix& m) {
  const auto& F = m.field();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c).v != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    FE inv = F.inv(m(r, c));
    for (int j = 0; j < m.cols(); ++j) m(r, j) = F.mul(inv, m(r, j));
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).v == 0) continue;
      FE f = m(i, c);
      for (int j = 0; j < m.cols(); ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int Matrix::rank() const {
  Matrix m = *this;
  return static_cast<int>(rref(m).size());
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  auto x = solve(identity(*F_, rows_));
  return x;
}

std::vector<Vec> Matrix::nullspace() const {
  Matrix m = *this;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols_, F_->zero());
    v[free] = F_->one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F_->neg(m(static_cast<int>(r), free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Matrix> Matrix::solve(const Matrix& B) const {
  if (B.rows_ != rows_) throw AlgebraError("solve shape mismatch");
  Matrix aug(*F_, rows_, cols_ + B.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    for (int j = 0; j < B.cols_; ++j) aug(i, cols_ + j) = B(i, j);
  }
  auto pivots = rref(aug);
  for (int c : pivots)
    if (c >= cols_) return std::nullopt;
  Matrix x(*F_, cols_, B.cols_);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (int j = 0; j < B.cols_; ++j) x(pivots[r], j) = aug(static_cast<int>(r), cols_ + j);
  return x;
}

Vec Subspace::reduce(const Vec& v) const {
  Vec w = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    FE c = w[pivots_[i]];
    if (c.v == 0) continue;
    for (int j = 0; j < n_; ++j) w[j] = F_->sub(w[j], F_->mul(c, rows_[i][j]));
  }
  return w;
}

bool Subspace::add(const Vec& v) {
  Vec w = reduce(v);
  int piv = -1;
  for (int j = 0; j < n_; ++j)
    if (w[j].v != 0) {
      piv = j;
      break;
    }
  if (piv < 0) return false;
  FE inv = F_->inv(w[piv]);
  for (auto& x : w) x = F_->mul(inv, x);
  for (auto& r : rows_) {
    FE c = r[piv];
    if (c.v == 0) continue;
    for (int j = 0; j < n_; ++j) r[j] = F_->sub(r[j], F_->mul(c, w[j]));
  }
  // keep rows ordered by pivot
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, piv);
  rows_.insert(rows_.begin() + pos, std::move(w));
  return true;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
  return std::all_of(o.rows_.begin(), o.rows_.end(), [&](const Vec& v) { return contains(v); });
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) return std::nullopt;
  Vec c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](FE x) { return x.v == 0; });
}

Vec axpy(const FiniteField& F, FE a, const Vec& x, const Vec& y) {
  Vec out = y;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = F.add(out[i], F.mul(a, x[i]));
  return out;
}

Vec scale(const FiniteField& F, FE a, const Vec& x) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = F.mul(a, x[i]);
  return out;
}

}  // namespace u21
