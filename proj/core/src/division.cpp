#include "graded/division.hpp"

#include <stdexcept>

namespace graded {

namespace {

// X = diag(eps^{l-1}, ..., eps, 1)
CycMatrix clock_matrix(unsigned ell) {
  CycMatrix X(ell, ell);
  for (unsigned i = 0; i < ell; ++i)
    X.at(i, i) = Cyclotomic::root_of_unity(ell, (long)(ell - 1 - i));
  return X;
}

// Y e_j = e_{j-1} cyclically, so that X Y = eps Y X
CycMatrix shift_matrix(unsigned ell) {
  CycMatrix Y(ell, ell);
  for (unsigned i = 0; i < ell; ++i) Y.at(i, (i + 1) % ell) = Cyclotomic(1);
  return Y;
}

}  // namespace

GradedDivisionAlgebra::GradedDivisionAlgebra(TorsionGroup T) : T_(std::move(T)) {
  unsigned long d = 1;
  for (unsigned ell : T_.ell) d *= ell;
  d_ = (unsigned)d;

  // generator matrices, one clock/shift pair per symplectic pair
  std::vector<CycMatrix> gen(2 * T_.rank());
  for (unsigned k = 0; k < T_.rank(); ++k) {
    CycMatrix a = CycMatrix::identity(1);
    CycMatrix b = CycMatrix::identity(1);
    for (unsigned m = 0; m < T_.rank(); ++m) {
      CycMatrix ia = m == k ? clock_matrix(T_.ell[m]) : CycMatrix::identity(T_.ell[m]);
      CycMatrix ib = m == k ? shift_matrix(T_.ell[m]) : CycMatrix::identity(T_.ell[m]);
      a = a.kron(ia);
      b = b.kron(ib);
    }
    gen[2 * k] = a;
    gen[2 * k + 1] = b;
  }

  basis_.reserve(T_.order());
  for (unsigned long idx = 0; idx < T_.order(); ++idx) {
    TorsionElement t = element_at(T_, idx);
    CycMatrix M = CycMatrix::identity(d_);
    for (unsigned k = 0; k < 2 * T_.rank(); ++k)
      for (uint8_t p = 0; p < t.e[k]; ++p) M = M * gen[k];
    basis_.push_back(std::move(M));
  }
}

const CycMatrix& GradedDivisionAlgebra::pauli(const TorsionElement& t) const {
  return basis_[element_index(T_, t)];
}

CycMatrix GradedDivisionAlgebra::pauli_inverse(const TorsionElement& t) const {
  TorsionElement ti = inv(T_, t);
  return pauli(ti).scaled(cocycle(ti, t).inverse());
}

Cyclotomic GradedDivisionAlgebra::match_scalar(const CycMatrix& M,
                                               const TorsionElement& w) const {
  const CycMatrix& X = pauli(w);
  Cyclotomic c;
  bool have = false;
  for (unsigned i = 0; i < X.rows() && !have; ++i)
    for (unsigned j = 0; j < X.cols() && !have; ++j)
      if (!X.at(i, j).is_zero()) {
        c = M.at(i, j) * X.at(i, j).inverse();
        have = true;
      }
  if (!have) throw std::logic_error("basis matrix is zero");
  if (M != X.scaled(c)) throw std::logic_error("matrix is not a scalar multiple of X_w");
  return c;
}

std::optional<Cyclotomic> GradedDivisionAlgebra::try_match(
    const CycMatrix& M, const TorsionElement& w) const {
  const CycMatrix& X = pauli(w);
  Cyclotomic c;
  bool have = false;
  for (unsigned i = 0; i < X.rows() && !have; ++i)
    for (unsigned j = 0; j < X.cols() && !have; ++j)
      if (!X.at(i, j).is_zero()) {
        c = M.at(i, j) * X.at(i, j).inverse();
        have = true;
      }
  if (!have || M != X.scaled(c)) return std::nullopt;
  return c;
}

const Cyclotomic& GradedDivisionAlgebra::cocycle(const TorsionElement& u,
                                                 const TorsionElement& v) const {
  auto key = std::make_pair(element_index(T_, u), element_index(T_, v));
  auto it = cocycle_.find(key);
  if (it != cocycle_.end()) return it->second;
  Cyclotomic c = match_scalar(pauli(u) * pauli(v), mul(T_, u, v));
  return cocycle_.emplace(key, std::move(c)).first->second;
}

Cyclotomic GradedDivisionAlgebra::power_scalar(const TorsionElement& t,
                                               unsigned long e) const {
  Cyclotomic c(1);
  TorsionElement acc = TorsionElement::identity(T_);
  for (unsigned long p = 0; p < e; ++p) {
    c = c * cocycle(acc, t);
    acc = mul(T_, acc, t);
  }
  return c;
}

TorsionElement GradedDivisionAlgebra::flip_map(const TorsionElement& u) const {
  TorsionElement w = u;
  for (unsigned k = 0; k < T_.rank(); ++k)
    w.e[2 * k + 1] = (uint8_t)((T_.ell[k] - u.e[2 * k + 1]) % T_.ell[k]);
  return w;
}

Cyclotomic GradedDivisionAlgebra::transpose_scalar(const TorsionElement& u) const {
  return match_scalar(pauli(u).transposed(), flip_map(u));
}

}  // namespace graded
