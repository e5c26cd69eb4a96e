#include "graded/matrix.hpp"

#include <stdexcept>

namespace graded {

CycMatrix CycMatrix::identity(unsigned n) {
  CycMatrix m(n, n);
  for (unsigned i = 0; i < n; ++i) m.at(i, i) = Cyclotomic(1L);
  return m;
}

CycMatrix CycMatrix::operator+(const CycMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::domain_error("matrix shape mismatch");
  CycMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

CycMatrix CycMatrix::operator-(const CycMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::domain_error("matrix shape mismatch");
  CycMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const {
  if (cols_ != o.rows_) throw std::domain_error("matrix shape mismatch");
  CycMatrix r(rows_, o.cols_);
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned k = 0; k < cols_; ++k) {
      const Cyclotomic& x = at(i, k);
      if (x.is_zero()) continue;
      for (unsigned j = 0; j < o.cols_; ++j) {
        const Cyclotomic& y = o.at(k, j);
        if (y.is_zero()) continue;
        r.at(i, j) += x * y;
      }
    }
  return r;
}

CycMatrix CycMatrix::scaled(const Cyclotomic& c) const {
  CycMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i)
    if (!a_[i].is_zero()) r.a_[i] = a_[i] * c;
  return r;
}

CycMatrix CycMatrix::transposed() const {
  CycMatrix r(cols_, rows_);
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

CycMatrix CycMatrix::inverse() const {
  if (rows_ != cols_) throw std::domain_error("inverse of non-square matrix");
  unsigned n = rows_;
  CycMatrix a = *this;
  CycMatrix inv = identity(n);
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && a.at(piv, col).is_zero()) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    if (piv != col)
      for (unsigned j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    Cyclotomic d = a.at(col, col).inverse();
    for (unsigned j = 0; j < n; ++j) {
      a.at(col, j) *= d;
      inv.at(col, j) *= d;
    }
    for (unsigned i = 0; i < n; ++i) {
      if (i == col || a.at(i, col).is_zero()) continue;
      Cyclotomic f = a.at(i, col);
      for (unsigned j = 0; j < n; ++j) {
        a.at(i, j) -= f * a.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

CycMatrix CycMatrix::kron(const CycMatrix& o) const {
  CycMatrix r(rows_ * o.rows_, cols_ * o.cols_);
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned j = 0; j < cols_; ++j) {
      if (at(i, j).is_zero()) continue;
      for (unsigned k = 0; k < o.rows_; ++k)
        for (unsigned l = 0; l < o.cols_; ++l) {
          if (o.at(k, l).is_zero()) continue;
          r.at(i * o.rows_ + k, j * o.cols_ + l) = at(i, j) * o.at(k, l);
        }
    }
  return r;
}

Cyclotomic CycMatrix::trace() const {
  Cyclotomic t;
  for (unsigned i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
  return t;
}

bool CycMatrix::operator==(const CycMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (!(a_[i] == o.a_[i])) return false;
  return true;
}

bool CycMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace graded
