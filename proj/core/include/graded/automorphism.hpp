#pragma once

#include "graded/grading.hpp"
#include "graded/symplectic.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graded {

// graded automorphism of D(T): X_t -> c_t X_{alpha(t)}
struct DivisionAutomorphism {
  SymplecticMap alpha;
  std::vector<Cyclotomic> scalar;  // c_t indexed by element_index

  const Cyclotomic& c(const TorsionGroup& T, const TorsionElement& t) const;
};

DivisionAutomorphism division_identity(const GradedDivisionAlgebra& D);

// extends alpha from the symplectic basis: each generator scalar is an l-th
// root of power_scalar(alpha(g), l)^{-1}, the rest follow from the ordered
// product expansion; multiplicativity is then checked on all |T|^2 pairs
DivisionAutomorphism realize_division_map(const GradedDivisionAlgebra& D,
                                          const SymplecticMap& alpha);

// homogeneous block value c X_u
struct BlockScalar {
  Cyclotomic c = Cyclotomic(1);
  TorsionElement u;
};

// x -> P D psi0(x) D^-1 P^-1, optionally followed by the negative transpose;
// P permutes the blocks, D = diag(d_1..d_k), psi0 acts entrywise
struct SymbolicAutomorphism {
  std::vector<unsigned> perm;     // 1-based block images, empty = identity
  std::vector<BlockScalar> diag;  // d_i per block, empty = all identity
  DivisionAutomorphism division_map;
  bool antiflag = false;
  std::string role;  // generator family label

  // conjugation datum of a phi-respecting element, see transported_form_check
  std::optional<BlockScalar> d0;
  int phi_sign = +1;  // sign in psi phi psi^-1 = phi_sign phi
};

struct BasisImage {
  unsigned i = 1;
  unsigned j = 1;
  TorsionElement t;
  Cyclotomic c;
};

// exact linear action on the basis E_ij (x) X_t; the flags record the law
// A(x)A(y) = product_sign A(xy), with xy reversed when anti is set
struct BasisAction {
  bool anti = false;
  int product_sign = +1;
  std::map<BasisIndex, BasisImage> img;
};

BasisAction identity_action(const GradedMatrixAlgebra& R);
BasisAction symbolic_action(const GradedMatrixAlgebra& R, const SymbolicAutomorphism& psi);
// the transpose twist x -> Phi^-1 tx Phi of a phi-type spec
BasisAction phi_basis_action(const GradedMatrixAlgebra& R);
// f after g
BasisAction compose(const GradedMatrixAlgebra& R, const BasisAction& f, const BasisAction& g);
// inverse of a bijective action; the law flags carry over unchanged
BasisAction inverse_action(const BasisAction& A);
bool same_action(const BasisAction& a, const BasisAction& b);
// sign with a == sign * b on every basis element, 0 when there is none
int action_sign(const BasisAction& a, const BasisAction& b);

// checks the recorded (anti)automorphism law on every basis pair
void verify_action(const GradedMatrixAlgebra& R, const BasisAction& A);

// permutation of the canonical support induced by A; verification_error when
// a component fails to land in a single component, or the map is no bijection
std::map<SupportElement, SupportElement> induced_support_permutation(const GradedMatrixAlgebra& R,
                                                                     const BasisAction& A);

// checks phi0(d_i) X_{t_pi(i)} d_i = d0 psi0(X_{t_i}) on the diagonal blocks
// and phi0(d_left) d_right = d0 (pair order kept) or delta d0 (pair reversed)
// on the pair blocks; throws verification_error on failure
void transported_form_check(const GradedMatrixAlgebra& R, const SymbolicAutomorphism& psi);

// decides whether A is conjugation by diag(lambda_1, ..., lambda_k) (x) X_t
// and returns the witness; phi-type specs also require the diag relation
// chain, so a scalar action breaking the chain is rejected
std::optional<DiagElement> diag_membership(const GradedMatrixAlgebra& R, const BasisAction& A);
std::optional<DiagElement> diag_membership(const GradedMatrixAlgebra& R,
                                           const SymbolicAutomorphism& psi);

}  // namespace graded
