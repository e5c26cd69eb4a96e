#pragma once

#include "graded/cyclotomic.hpp"

#include <vector>

namespace graded {

// Dense matrix over the cyclotomic scalars. Sizes stay small (at most a few
// dozen rows), so exactness beats sparsity everywhere except multiplication,
// which skips zero entries.
class CycMatrix {
public:
  CycMatrix() : rows_(0), cols_(0) {}
  CycMatrix(unsigned rows, unsigned cols)
      : rows_(rows), cols_(cols), a_(rows * (size_t)cols) {}

  static CycMatrix identity(unsigned n);

  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }

  Cyclotomic& at(unsigned i, unsigned j) { return a_[(size_t)i * cols_ + j]; }
  const Cyclotomic& at(unsigned i, unsigned j) const { return a_[(size_t)i * cols_ + j]; }

  CycMatrix operator+(const CycMatrix& o) const;
  CycMatrix operator-(const CycMatrix& o) const;
  CycMatrix operator*(const CycMatrix& o) const;
  CycMatrix scaled(const Cyclotomic& c) const;
  CycMatrix transposed() const;
  CycMatrix inverse() const;  // throws std::domain_error if singular
  CycMatrix kron(const CycMatrix& o) const;

  Cyclotomic trace() const;

  bool operator==(const CycMatrix& o) const;
  bool operator!=(const CycMatrix& o) const { return !(*this == o); }
  bool is_zero() const;

private:
  unsigned rows_, cols_;
  std::vector<Cyclotomic> a_;
};

}  // namespace graded
