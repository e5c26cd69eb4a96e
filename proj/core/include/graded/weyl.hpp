#pragma once

#include "graded/automorphism.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace graded {

// structure term of a Weyl group: leaves are named groups with exact order,
// inner nodes combine parts
struct WeylTerm {
  std::string op;    // empty for leaves, else direct | semidirect | wreath | extension
  std::string name;  // leaf or part label
  mpz_class order = 1;
  std::vector<WeylTerm> parts;
};

struct WeylDescription {
  WeylTerm term;
  mpz_class order;
};

WeylDescription weyl_closed_form(const GradingSpec& spec, unsigned long bound = kDefaultAutBound);

// conjugation generators of the Weyl group, each verified on the basis; the
// A-II list ends with the diagonal sign generators, which act trivially on
// the matrix support and only show up in the kernel bookkeeping
std::vector<SymbolicAutomorphism> realize_generators(const GradingSpec& spec,
                                                     unsigned long bound = kDefaultAutBound);

struct WeylClosure {
  std::vector<SupportElement> support;          // canonical components in order
  // sorted permutation vectors of the closure domain: support components for
  // the first kind and A-I, basis lines for A-II (support moves alone miss
  // stabilizer shifts that swap lines inside a component)
  std::vector<std::vector<unsigned>> elements;
  mpz_class quotient_order;                     // size of the permutation group
  unsigned kernel_rank = 0;  // A-II: rank of the diagonal sign classes
  mpz_class order;           // 2^kernel_rank * quotient_order
};

WeylClosure brute_force_weyl(const GradingSpec& spec, unsigned long support_bound = 600,
                             unsigned long closure_bound = 1'000'000);

// image indices of the support under A; composition satisfies
// vec(compose(f, g))[i] = vec(f)[vec(g)[i]]
std::vector<unsigned> support_permutation_vector(const GradedMatrixAlgebra& R,
                                                 const std::vector<SupportElement>& support,
                                                 const BasisAction& A);

}  // namespace graded
