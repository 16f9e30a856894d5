#include "excat/matrix.hpp"

#include <sstream>

namespace excat {

Matrix Matrix::identity(const Field& f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, mpq_class(1));
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_);
  Matrix r(field_, rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.add(a_[k], o.a_[k]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_);
  Matrix r(field_, rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.sub(a_[k], o.a_[k]);
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  assert(cols_ == o.rows_ && field_ == o.field_);
  Matrix r(field_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const mpq_class& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j) == 0) continue;
        r.a_[static_cast<size_t>(i) * o.cols_ + j] += x * o.at(k, j);
      }
    }
  }
  for (auto& v : r.a_) v = field_.canon(v);
  return r;
}

Matrix Matrix::scaled(const mpq_class& c) const {
  Matrix r(field_, rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.mul(a_[k], c);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.a_[static_cast<size_t>(j) * rows_ + i] = at(i, j);
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && a_ == o.a_;
}

bool Matrix::is_zero() const {
  for (const auto& v : a_)
    if (v != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::hstack(const Matrix& o) const {
  assert(rows_ == o.rows_ && field_ == o.field_);
  Matrix r(field_, rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
    for (int j = 0; j < o.cols_; ++j) r.set(i, cols_ + j, o.at(i, j));
  }
  return r;
}

Matrix Matrix::vstack(const Matrix& o) const {
  assert(cols_ == o.cols_ && field_ == o.field_);
  Matrix r(field_, rows_ + o.rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(rows_ + i, j, o.at(i, j));
  return r;
}

Matrix Matrix::submatrix(int r0, int c0, int nrows, int ncols) const {
  assert(r0 >= 0 && c0 >= 0 && r0 + nrows <= rows_ && c0 + ncols <= cols_);
  Matrix r(field_, nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) r.set(i, j, at(r0 + i, c0 + j));
  return r;
}

Matrix Matrix::block_diag(const Field& f, const std::vector<Matrix>& blocks) {
  int rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix r(f, rows, cols);
  int r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) r.set(r0 + i, c0 + j, b.at(i, j));
    r0 += b.rows();
    c0 += b.cols();
  }
  return r;
}

RrefResult Matrix::rref() const {
  
  Matrix m = *this;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int sel = -1;
    for (int i = row; i < rows_; ++i) {
      if (m.at(i, col) != 0) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != row) {
      for (int j = 0; j < cols_; ++j) {
        mpq_class tmp = m.at(row, j);
        m.set(row, j, m.at(sel, j));
        m.set(sel, j, tmp);
      }
    }
    mpq_class inv = field_.inv(m.at(row, col));
    for (int j = col; j < cols_; ++j) m.set(row, j, field_.mul(m.at(row, j), inv));
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      mpq_class c = m.at(i, col);
      if (c == 0) continue;
      for (int j = col; j < cols_; ++j) m.set(i, j, field_.sub(m.at(i, j), field_.mul(c, m.at(row, j))));
    }
    pivots.push_back(col);
    ++row;
  }
  int rank = static_cast<int>(pivots.size());
  return RrefResult{std::move(m), std::move(pivots), rank};
}

Matrix Matrix::kernel_basis() const {
  RrefResult r = rref();
  std::vector<int> free_cols;
  {
    size_t pi = 0;
    for (int j = 0; j < cols_; ++j) {
      if (pi < r.pivot_columns.size() && r.pivot_columns[pi] == j)
        ++pi;
      else
        free_cols.push_back(j);
    }
  }
  Matrix k(field_, cols_, static_cast<int>(free_cols.size()));
  for (size_t fi = 0; fi < free_cols.size(); ++fi) {
    int fc = free_cols[fi];
    k.set(fc, static_cast<int>(fi), mpq_class(1));
    for (size_t pi = 0; pi < r.pivot_columns.size(); ++pi)
      k.set(r.pivot_columns[pi], static_cast<int>(fi), field_.neg(r.reduced.at(static_cast<int>(pi), fc)));
  }
  return k;
}

Matrix Matrix::column_space_basis() const {
  RrefResult r = rref();
  Matrix b(field_, rows_, r.rank);
  for (int k = 0; k < r.rank; ++k)
    for (int i = 0; i < rows_; ++i) b.set(i, k, at(i, r.pivot_columns[k]));
  return b;
}

std::optional<Matrix> Matrix::solve(const Matrix& b) const {
  assert(rows_ == b.rows_ && field_ == b.field_);
  Matrix aug = hstack(b);
  RrefResult r = aug.rref();
  for (int p : r.pivot_columns)
    if (p >= cols_) return std::nullopt;  // inconsistent
  Matrix x(field_, cols_, b.cols_);
  for (size_t pi = 0; pi < r.pivot_columns.size(); ++pi) {
    int pc = r.pivot_columns[pi];
    for (int j = 0; j < b.cols_; ++j) x.set(pc, j, r.reduced.at(static_cast<int>(pi), cols_ + j));
  }
  return x;
}

int Matrix::rank() const { return rref().rank; }

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  auto x = solve(identity(field_, rows_));
  if (!x) return std::nullopt;
  if ((*this) * (*x) != identity(field_, rows_)) return std::nullopt;
  return x;
}

bool Matrix::contains_columns(const Matrix& v) const {
  return solve(v).has_value();
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << " ";
      os << field_.to_string(at(i, j));
    }
  }
  os << "]";
  return os.str();
}

}  // namespace excat
