#include "prodlab/fq_matrix.hpp"

#include <charconv>
#include <string>

#include "prodlab/error.hpp"

namespace prodlab::fq {

Matrix::Matrix(const Field& field, int rows, int cols)
    : field_(&field), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

Matrix Matrix::identity(const Field& field, int n) {
  Matrix m(field, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::parse(const Field& field, std::string_view text) {
  std::vector<std::vector<Elem>> rows;
  std::vector<Elem> row;
  std::size_t i = 0;
  auto flush_row = [&] {
    if (!row.empty()) rows.push_back(std::move(row));
    row.clear();
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == ',' || c == '\r' || c == '\n') {
      ++i;
    } else if (c == ';') {
      flush_row();
      ++i;
    } else if (c >= '0' && c <= '9') {
      int v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc{}) throw Error(ErrorKind::ParseError, "bad matrix entry");
      if (v >= field.order()) throw Error(ErrorKind::ParseError, "matrix entry " + std::to_string(v) + " is not a field element");
      row.push_back(static_cast<Elem>(v));
      i = static_cast<std::size_t>(ptr - text.data());
    } else {
      throw Error(ErrorKind::ParseError, "unexpected character in matrix: " + std::string(text));
    }
  }
  flush_row();
  if (rows.empty()) throw Error(ErrorKind::ParseError, "empty matrix");
  const int cols = static_cast<int>(rows.front().size());
  Matrix m(field, static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows_; ++r) {
    if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != cols) throw Error(ErrorKind::ParseError, "ragged matrix rows");
    for (int c = 0; c < cols; ++c) m.at(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorKind::SizeMismatch, "matrix product dimensions");
  Matrix out(*field_, rows_, rhs.cols_);
  const Field& f = *field_;
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Elem x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) = f.add(out(i, j), f.mul(x, rhs(k, j)));
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorKind::SizeMismatch, "matrix sum dimensions");
  Matrix out(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->add(a_[i], rhs.a_[i]);
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorKind::SizeMismatch, "matrix difference dimensions");
  Matrix out(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->sub(a_[i], rhs.a_[i]);
  return out;
}

Matrix Matrix::scaled(Elem s) const {
  Matrix out(*this);
  for (auto& x : out.a_) x = field_->mul(x, s);
  return out;
}

int rank_of(const Field& f, std::vector<Elem> m, int rows, int cols) {
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[static_cast<std::size_t>(r * cols + c)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = 0; j < cols; ++j) std::swap(m[static_cast<std::size_t>(pivot * cols + j)], m[static_cast<std::size_t>(rank * cols + j)]);
    const Elem inv = f.inv(m[static_cast<std::size_t>(rank * cols + c)]);
    for (int r = rank + 1; r < rows; ++r) {
      const Elem factor = f.mul(m[static_cast<std::size_t>(r * cols + c)], inv);
      if (factor == 0) continue;
      for (int j = c; j < cols; ++j)
        m[static_cast<std::size_t>(r * cols + j)] =
            f.sub(m[static_cast<std::size_t>(r * cols + j)], f.mul(factor, m[static_cast<std::size_t>(rank * cols + j)]));
    }
    ++rank;
  }
  return rank;
}

int Matrix::rank() const { return rank_of(*field_, a_, rows_, cols_); }

Elem Matrix::determinant() const {
  if (!square()) throw Error(ErrorKind::SizeMismatch, "determinant of a non-square matrix");
  const Field& f = *field_;
  std::vector<Elem> m = a_;
  const int n = rows_;
  Elem det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (m[static_cast<std::size_t>(r * n + c)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(m[static_cast<std::size_t>(pivot * n + j)], m[static_cast<std::size_t>(c * n + j)]);
      det = f.neg(det);
    }
    const Elem p = m[static_cast<std::size_t>(c * n + c)];
    det = f.mul(det, p);
    const Elem inv = f.inv(p);
    for (int r = c + 1; r < n; ++r) {
      const Elem factor = f.mul(m[static_cast<std::size_t>(r * n + c)], inv);
      if (factor == 0) continue;
      for (int j = c; j < n; ++j)
        m[static_cast<std::size_t>(r * n + j)] = f.sub(m[static_cast<std::size_t>(r * n + j)], f.mul(factor, m[static_cast<std::size_t>(c * n + j)]));
    }
  }
  return det;
}

std::optional<Matrix> Matrix::inverse() const {
  if (!square()) return std::nullopt;
  const Field& f = *field_;
  const int n = rows_;
  Matrix work(*this);
  Matrix inv = identity(f, n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (work(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    if (pivot != c)
      for (int j = 0; j < n; ++j) {
        std::swap(work.at(pivot, j), work.at(c, j));
        std::swap(inv.at(pivot, j), inv.at(c, j));
      }
    const Elem s = f.inv(work(c, c));
    for (int j = 0; j < n; ++j) {
      work.at(c, j) = f.mul(work(c, j), s);
      inv.at(c, j) = f.mul(inv(c, j), s);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const Elem factor = work(r, c);
      if (factor == 0) continue;
      for (int j = 0; j < n; ++j) {
        work.at(r, j) = f.sub(work(r, j), f.mul(factor, work(c, j)));
        inv.at(r, j) = f.sub(inv(r, j), f.mul(factor, inv(c, j)));
      }
    }
  }
  return inv;
}

bool Matrix::is_unipotent_upper() const {
  if (!square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j <= i; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

std::string Matrix::to_string() const {
  std::string out;
  for (int r = 0; r < rows_; ++r) {
    if (r) out += ';';
    for (int c = 0; c < cols_; ++c) {
      if (c) out += ',';
      out += std::to_string((*this)(r, c));
    }
  }
  return out;
}

}  // namespace prodlab::fq
