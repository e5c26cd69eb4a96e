#pragma once

#include "graded/matrix.hpp"
#include "graded/torsion.hpp"

#include <map>
#include <optional>
#include <vector>

namespace graded {

// standard graded division algebra D(T): one Pauli pair per symplectic pair
// of T, realized inside M_d with d = prod l_k.  Basis X_t is the ordered
// product X_{a_1}^{i_1} X_{b_1}^{j_1} ... over the exponents of t.
class GradedDivisionAlgebra {
 public:
  explicit GradedDivisionAlgebra(TorsionGroup T);

  const TorsionGroup& group() const { return T_; }
  unsigned dim() const { return d_; }

  const CycMatrix& pauli(const TorsionElement& t) const;
  CycMatrix pauli_inverse(const TorsionElement& t) const;

  // sigma(u, v) with X_u X_v = sigma(u, v) X_{uv}, memoized with an exact
  // entrywise check of the product against the basis
  const Cyclotomic& cocycle(const TorsionElement& u, const TorsionElement& v) const;

  // scalar c with X_t^e = c X_{t^e}
  Cyclotomic power_scalar(const TorsionElement& t, unsigned long e) const;

  // transpose data: t(X_u) = transpose_scalar(u) X_{flip_map(u)}
  TorsionElement flip_map(const TorsionElement& u) const;
  Cyclotomic transpose_scalar(const TorsionElement& u) const;

  // scalar c with M = c X_w exactly; throws std::logic_error otherwise
  Cyclotomic match_scalar(const CycMatrix& M, const TorsionElement& w) const;

  // non-throwing variant of match_scalar
  std::optional<Cyclotomic> try_match(const CycMatrix& M, const TorsionElement& w) const;

 private:
  TorsionGroup T_;
  unsigned d_;
  std::vector<CycMatrix> basis_;  // indexed by element_index
  mutable std::map<std::pair<unsigned long, unsigned long>, Cyclotomic> cocycle_;
};

}  // namespace graded
