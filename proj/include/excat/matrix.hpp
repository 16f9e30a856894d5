#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <vector>

#include "excat/field.hpp"

namespace excat {

struct RrefResult;

// Dense exact matrix. Row-major, entries canonical for the field.
class Matrix {
 public:
  Matrix(const Field& f, int rows, int cols)
      : field_(f), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, mpq_class(0)) {
    assert(rows >= 0 && cols >= 0);
  }

  static Matrix identity(const Field& f, int n);
  static Matrix zero(const Field& f, int rows, int cols) { return Matrix(f, rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return field_; }

  const mpq_class& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  void set(int i, int j, const mpq_class& v) { a_[static_cast<size_t>(i) * cols_ + j] = field_.canon(v); }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const mpq_class& c) const;
  Matrix negated() const { return scaled(mpq_class(-1)); }
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_identity() const;

  // Stacking and slicing.
  Matrix hstack(const Matrix& o) const;  // [this | o]
  Matrix vstack(const Matrix& o) const;  // [this ; o]
  Matrix submatrix(int r0, int c0, int nrows, int ncols) const;
  Matrix column(int j) const { return submatrix(0, j, rows_, 1); }
  static Matrix block_diag(const Field& f, const std::vector<Matrix>& blocks);

  // Reduced row echelon form with deterministic pivoting (first nonzero
  // entry in column order), so reduced forms are reproducible.
  RrefResult rref() const;

  int rank() const;

  // Columns form a basis of {v : this * v = 0}.
  Matrix kernel_basis() const;

  // Columns form a basis of the column space, in pivot order.
  Matrix column_space_basis() const;

  // Solve this * x = b (b may have several columns). Absent iff some
  // column of b is outside the column space.
  std::optional<Matrix> solve(const Matrix& b) const;

  std::optional<Matrix> inverse() const;
  bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

  // True iff every column of v lies in the column space of this.
  bool contains_columns(const Matrix& v) const;

  std::string to_string() const;

 private:
  Field field_;
  int rows_, cols_;
  std::vector<mpq_class> a_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<int> pivot_columns;
  int rank;
};

}  // namespace excat
