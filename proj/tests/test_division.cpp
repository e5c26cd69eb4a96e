#include "graded/automorphism.hpp"
#include "graded/division.hpp"
#include "graded/symplectic.hpp"

#include <doctest.h>

using namespace graded;

TEST_CASE("pauli basis is a graded division algebra") {
  for (const TorsionGroup& T : {TorsionGroup{{2}}, TorsionGroup{{3}}, TorsionGroup{{2, 2}}}) {
    GradedDivisionAlgebra D(T);
    CHECK(D.pauli(TorsionElement::identity(T)) == CycMatrix::identity(D.dim()));
    for (const TorsionElement& u : all_elements(T)) {
      CHECK(D.pauli(u) * D.pauli_inverse(u) == CycMatrix::identity(D.dim()));
      for (const TorsionElement& v : all_elements(T)) {
        CHECK(D.pauli(u) * D.pauli(v) == D.pauli(mul(T, u, v)).scaled(D.cocycle(u, v)));
      }
    }
  }
}

TEST_CASE("identity division automorphism has unit scalars") {
  TorsionGroup T{{2, 2}};
  GradedDivisionAlgebra D(T);
  DivisionAutomorphism id = division_identity(D);
  DivisionAutomorphism realized = realize_division_map(D, sym_identity(T));
  for (const TorsionElement& t : all_elements(T)) {
    CHECK(id.c(T, t).is_one());
    CHECK(realized.c(T, t).is_one());
  }
}

TEST_CASE("realized maps are multiplicative over the whole group") {
  for (const TorsionGroup& T : {TorsionGroup{{2}}, TorsionGroup{{3}}, TorsionGroup{{2, 2}}}) {
    GradedDivisionAlgebra D(T);
    SymplecticGroup G = aut_group(T);
    G.for_each([&](const SymplecticMap& alpha) {
      DivisionAutomorphism psi = realize_division_map(D, alpha);
      for (const TorsionElement& u : all_elements(T)) {
        for (const TorsionElement& v : all_elements(T)) {
          // c_u c_v sigma(alpha u, alpha v) = sigma(u, v) c_uv
          CHECK(psi.c(T, u) * psi.c(T, v) * D.cocycle(alpha.apply(T, u), alpha.apply(T, v)) ==
                D.cocycle(u, v) * psi.c(T, mul(T, u, v)));
        }
      }
    });
  }
}

TEST_CASE("generator scalars keep pauli orders") {
  TorsionGroup T{{4}};
  GradedDivisionAlgebra D(T);
  SymplecticGroup G = aut_group(T);
  G.for_each([&](const SymplecticMap& alpha) {
    DivisionAutomorphism psi = realize_division_map(D, alpha);
    for (const TorsionElement& t : all_elements(T)) {
      // the image scalar is compatible with X_t^l = power_scalar X_e
      unsigned long l = T.ell[0];
      Cyclotomic lhs = psi.c(T, t).pow((long)l) * D.power_scalar(alpha.apply(T, t), l);
      CHECK(lhs == D.power_scalar(t, l));
    }
  });
}

TEST_CASE("non symplectic maps are rejected") {
  TorsionGroup T{{2, 2}};
  GradedDivisionAlgebra D(T);
  SymplecticMap bad = sym_identity(T);
  bad.images[1] = basis_a(T, 0);  // b_1 -> a_1 kills the pairing
  CHECK_THROWS_AS(realize_division_map(D, bad), std::domain_error);
}
