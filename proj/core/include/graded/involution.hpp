#pragma once

#include "graded/grading.hpp"
#include "graded/symplectic.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace graded {

// anti-automorphism X -> Phi^{-1} (transpose X) Phi
struct PhiMap {
  CycMatrix phi_matrix;
  CycMatrix phi_inverse;

  CycMatrix action(const CycMatrix& X) const {
    return phi_inverse * X.transposed() * phi_matrix;
  }
};

// Phi = blockdiag(X_{t_1}, ..., X_{t_q}, [[0, I], [mu_1 I, 0]], ...); the
// algebra overload verifies that the action preserves every component
PhiMap build_phi(const GradingSpec& spec);
PhiMap build_phi(const GradedMatrixAlgebra& R);

// nonzero content of a matrix of the shape c (E_ij (x) X_t), 1-based blocks
struct BlockAtom {
  unsigned i = 1;
  unsigned j = 1;
  TorsionElement t;
  Cyclotomic c;
};

// decompose M as a scalar multiple of a single basis matrix; nullopt when M
// is zero or not of that shape
std::optional<BlockAtom> block_atom(const GradedMatrixAlgebra& R, const CycMatrix& M);

// true iff every component is phi-stable and phi^2 acts by a scalar on each
// component (the inner-diagonal membership criterion)
bool check_phi_grading(const GradedMatrixAlgebra& R, const PhiMap& phi);

enum class InvolutionType { not_involution, orthogonal, symplectic };

const char* involution_type_name(InvolutionType t);

// sign criterion (all quad signs and pair scalars share one value delta)
// checked against exact computation of phi^2 on the matrix basis; the two
// must agree or a verification_error is thrown
InvolutionType involution_type(const GradingSpec& spec);

// false exactly for q = 2, s = 0, t_1 = t_2
bool is_fine_phi(const GradingSpec& spec);

// B(x, y) = (transpose x) Phi y on n-by-d rectangles, D-sesquilinear with
// respect to phi0 = transpose on D, and B(r x, y) = B(x, phi(r) y)
struct SesquilinearWitness {
  CycMatrix matrix;  // Phi

  CycMatrix phi0(const CycMatrix& d) const { return d.transposed(); }
  CycMatrix form(const CycMatrix& x, const CycMatrix& y) const {
    return x.transposed() * matrix * y;
  }
};

SesquilinearWitness sesquilinear_witness(const GradingSpec& spec);

// exact sweep of B(r x, y) = B(x, phi(r) y) over matrix-unit triples
bool adjoint_identity(const GradingSpec& spec);

// true iff (r, q, s) match and the natural-orbit canonical forms of the
// entry multisets coincide
bool weakly_equivalent(const GradingSpec& a, const GradingSpec& b);

// true iff both involutions exist, signs match, (r, q, s) match, and the
// twisted-orbit canonical forms coincide
bool equivalent_involution(const GradingSpec& a, const GradingSpec& b);

// decider result plus, when true and both groups are nontrivial-compatible,
// an affine map carrying the first entry multiset onto the second
struct EquivalenceWitness {
  bool equivalent = false;
  std::optional<AffineSymplectic> transporter;
};

EquivalenceWitness weakly_equivalent_witness(const GradingSpec& a, const GradingSpec& b);
EquivalenceWitness equivalent_involution_witness(const GradingSpec& a, const GradingSpec& b);

// one canonical spec per equivalence class of fine gradings at the given
// size; series AI and AII partition the type-A classes between them
std::vector<GradingSpec> enumerate_fine_gradings(Series series, unsigned n);

}  // namespace graded
