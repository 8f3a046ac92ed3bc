#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prodlab/field.hpp"

namespace prodlab::fq {

/// Dense matrix over a small finite field, row-major.
class Matrix {
 public:
  Matrix(const Field& field, int rows, int cols);

  static Matrix identity(const Field& field, int n);
  static Matrix zero(const Field& field, int n) { return Matrix(field, n, n); }

  /// Rows separated by ';', entries by ','. Entries are field codes.
  static Matrix parse(const Field& field, std::string_view text);

  const Field& field() const { return *field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  Elem& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  const std::vector<Elem>& entries() const { return a_; }
  std::vector<Elem>& entries() { return a_; }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(Elem s) const;

  bool operator==(const Matrix& rhs) const { return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_; }
  bool operator!=(const Matrix& rhs) const { return !(*this == rhs); }

  int rank() const;
  Elem determinant() const;
  std::optional<Matrix> inverse() const;
  bool invertible() const { return square() && determinant() != 0; }

  bool is_unipotent_upper() const;

  std::string to_string() const;

 private:
  const Field* field_;
  int rows_;
  int cols_;
  std::vector<Elem> a_;
};

/// Row-reduction rank of a row-major n x n entry array.
int rank_of(const Field& field, std::vector<Elem> entries, int rows, int cols);

}  // namespace prodlab::fq
