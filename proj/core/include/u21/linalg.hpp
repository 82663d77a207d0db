#pragma once

// Dense linear algebra over the coefficient field Λ.

#include <optional>
#include <vector>

#include "u21/fields.hpp"

namespace u21 {

using Vec = std::vector<FE>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(const FiniteField& F, int rows, int cols);

  static Matrix identity(const FiniteField& F, int n);
  static Matrix from_columns(const FiniteField& F, int rows, const std::vector<Vec>& cols);
  static Matrix from_rows(const FiniteField& F, int cols, const std::vector<Vec>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FiniteField& field() const { return *F_; }

  FE& operator()(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  FE operator()(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

  Vec column(int c) const;
  Vec row(int r) const;

  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(FE s) const;
  Matrix transpose() const;

  bool is_zero() const;
  FE trace() const;
  int rank() const;
  std::optional<Matrix> inverse() const;

  /// Basis of {x : A x = 0}.
  std::vector<Vec> nullspace() const;
  /// Basis of {y : yᵀ A = 0}.
  std::vector<Vec> left_nullspace() const { return transpose().nullspace(); }
  /// Some X with A X = B, if one exists.
  std::optional<Matrix> solve(const Matrix& B) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  const FiniteField* F_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::vector<FE> a_;
};

/// A subspace of Λ^n kept as a reduced row-echelon basis.
class Subspace {
 public:
  Subspace(const FiniteField& F, int ambient) : F_(&F), n_(ambient) {}

  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& basis() const { return rows_; }

  /// Adds v; returns true if the dimension grew.
  bool add(const Vec& v);
  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  /// Coordinates of v with respect to basis(), if v lies in the subspace.
  std::optional<Vec> coordinates(const Vec& v) const;
  /// v minus its projection along basis(); zero exactly at pivot positions.
  Vec reduce(const Vec& v) const;
  const std::vector<int>& pivots() const { return pivots_; }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  const FiniteField* F_;
  int n_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

bool is_zero(const Vec& v);
Vec axpy(const FiniteField& F, FE a, const Vec& x, const Vec& y);  // a·x + y
Vec scale(const FiniteField& F, FE a, const Vec& x);

}  // namespace u21
