#pragma once

#include <gmpxx.h>

#include <vector>

namespace graded {

// Smith normal form of an integer matrix whose rows index generators and
// whose columns index relations.  Only the row transform is kept: U*A*V is
// diagonal with divisibility d_1 | d_2 | ..., and column j of U gives the
// coordinates of old generator j in the new cyclic factors.
struct SmithNormalForm {
  std::vector<mpz_class> diag;            // length min(rows, cols)
  std::vector<std::vector<mpz_class>> U;  // rows x rows, invertible over Z
};

SmithNormalForm smith_left(std::vector<std::vector<mpz_class>> A);

// finitely generated abelian group shape: invariant torsion factors > 1 in
// divisibility order plus a free rank
struct AbelianInvariants {
  std::vector<unsigned long> torsion;
  unsigned free_rank = 0;

  bool operator==(const AbelianInvariants& o) const {
    return torsion == o.torsion && free_rank == o.free_rank;
  }
};

// quotient of Z^generators by the relation columns
AbelianInvariants abelian_quotient(unsigned generators,
                                   const std::vector<std::vector<mpz_class>>& relation_columns);

}  // namespace graded
