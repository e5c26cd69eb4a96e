#pragma once

#include "graded/division.hpp"
#include "graded/errors.hpp"
#include "graded/snf.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graded {

enum class Series { AI, AII, B, C, D, RAW_M, RAW_MPHI };

const char* series_name(Series s);
std::optional<Series> series_from_name(const std::string& name);

// Discrete datum naming one grading: block structure over the division
// algebra D(T), plus the sesquilinear block data (q, s, tau) and pair-block
// scalars for the transpose-twisted series.
struct GradingSpec {
  Series series = Series::RAW_M;
  TorsionGroup group;
  unsigned k = 1;  // block count for AI / RAW_M
  unsigned q = 0;
  unsigned s = 0;
  std::vector<TorsionElement> tau;  // q entries
  std::vector<Cyclotomic> mu;       // RAW_MPHI pair scalars; empty means all 1
  int delta = +1;                   // C: -1, B/D: +1

  bool phi_type() const;  // AII / B / C / D / RAW_MPHI
  unsigned blocks() const { return phi_type() ? q + 2 * s : k; }
  unsigned size() const;                     // n = blocks * sqrt(|T|)
  Cyclotomic pair_scalar(unsigned j) const;  // scalar of pair block j, 0-based
};

// Matrix-level well-formedness. allow_sl2 admits the two 2x2 specials
// AI(trivial, k=2) and AI(Z2xZ2, k=1) that are otherwise rejected.
// require_fine = false skips the q = 2, s = 0 refinement check.
void validate_spec(const GradingSpec& spec, bool allow_sl2 = false, bool require_fine = true);

// degree symbol z_{i,j,t} = g_i t g_j^{-1}, block indices 1-based
struct SupportElement {
  unsigned i = 1;
  unsigned j = 1;
  TorsionElement t;

  bool diagonal() const { return i == j; }
  bool operator==(const SupportElement& o) const { return i == o.i && j == o.j && t == o.t; }
  bool operator!=(const SupportElement& o) const { return !(*this == o); }
  bool operator<(const SupportElement& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return t < o.t;
  }
};

// the identified partner (iota(j), iota(i), u_i u_j^{-1} t); off-diagonal
// symbols of AI / RAW_M and fixed points come back unchanged
SupportElement mirror_support(const GradingSpec& spec, const SupportElement& z);

// canonical representative: all diagonal symbols collapse to i = j = 1, and
// of an identified off-diagonal pair the lexicographically least survives
SupportElement canonical_support(const GradingSpec& spec, unsigned i, unsigned j,
                                 const TorsionElement& t);

// basis element E_ij (x) X_t, block indices 1-based
struct BasisIndex {
  unsigned i = 1;
  unsigned j = 1;
  TorsionElement t;

  bool operator==(const BasisIndex& o) const { return i == o.i && j == o.j && t == o.t; }
  bool operator<(const BasisIndex& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return t < o.t;
  }
};

class GradedMatrixAlgebra {
 public:
  explicit GradedMatrixAlgebra(GradingSpec spec);

  const GradingSpec& spec() const { return spec_; }
  const GradedDivisionAlgebra& division() const { return div_; }
  unsigned blocks() const { return spec_.blocks(); }
  unsigned size() const { return n_; }

  SupportElement degree(const BasisIndex& b) const;
  const std::map<SupportElement, std::vector<BasisIndex>>& components() const {
    return components_;
  }
  const std::vector<BasisIndex>& component(const SupportElement& g) const;

  CycMatrix basis_matrix(const BasisIndex& b) const;
  // n x n matrix with the d x d block placed at block position (i, j), 1-based
  CycMatrix from_block(unsigned i, unsigned j, const CycMatrix& block) const;

 private:
  GradingSpec spec_;
  unsigned n_;  // validated before the division algebra is materialized
  GradedDivisionAlgebra div_;
  std::map<SupportElement, std::vector<BasisIndex>> components_;

  void verify_grading_axiom() const;
};

GradedMatrixAlgebra build_M(const TorsionGroup& T, unsigned k);
GradedMatrixAlgebra build_M_phi(const GradingSpec& spec);
GradedMatrixAlgebra build_algebra(const GradingSpec& spec);

// abelian presentation with nonnegative relation words, kept around so the
// central extension can re-lift the exact defining relations
struct ZPresentation {
  std::vector<std::string> names;
  // each relation: list of (generator index, positive exponent); generator
  // orders are included as ordinary relation words
  std::vector<std::vector<std::pair<unsigned, unsigned>>> words;

  unsigned gens() const { return (unsigned)names.size(); }
  std::vector<std::vector<mpz_class>> relation_columns() const;
};

// generators of the universal grading group: the T-basis a_1, b_1, ... plus
// the chain symbols z_1, ..., z_m
ZPresentation universal_presentation(const GradingSpec& spec);

struct UniversalPresentation {
  AbelianInvariants invariants;
  unsigned two_rank = 0;
  unsigned four_rank = 0;
  unsigned free_rank = 0;
  std::vector<std::string> generator_names;
  // per generator: coordinates in the cyclic factors, torsion first then free
  std::vector<std::vector<mpz_class>> generator_images;
  std::vector<TorsionElement> T0_basis;  // F2-basis of <t_i t_{i+1}>
  unsigned T0_dim = 0;
};

// normal-form reduction of an abelian presentation; T0 fields stay empty
UniversalPresentation reduce_presentation(const ZPresentation& pres);

// reduces the defining presentation and cross-checks the invariant factors
// against the closed form; disagreement throws verification_error
UniversalPresentation universal_group(const GradingSpec& spec);

// conjugation by diag(lambda_1, ..., lambda_blocks) (x) X_t
struct DiagElement {
  std::vector<Cyclotomic> scalars;
  TorsionElement twist;
};

// checks the relation chain lambda_1^2 beta(t,t_1) = ... = lambda_{q+1}lambda_{q+2} = ...
void validate_diag(const GradingSpec& spec, const DiagElement& d);
CycMatrix diag_matrix(const GradedMatrixAlgebra& R, const DiagElement& d);
// the scalar by which d acts on component g; verification_error if the
// per-basis scalars inside the component disagree
Cyclotomic diag_component_scalar(const GradedMatrixAlgebra& R, const DiagElement& d,
                                 const SupportElement& g);

struct TypeIIExtension {
  UniversalPresentation base;
  // scalar action of phi^2 on each component, +-1
  std::map<SupportElement, int> component_lambda;
  std::vector<int> lambda;     // per base generator
  std::vector<Cyclotomic> mu;  // chosen square roots of lambda per generator
  // the twisting 2-cocycle evaluated on base generator pairs, +-1
  std::vector<std::vector<int>> epsilon;
  UniversalPresentation extended;  // generators of base plus h appended last
  std::vector<mpz_class> h;        // coordinates of h in the extended factors
  std::vector<Cyclotomic> chi;     // character values per extended generator
  bool split = false;
};

// mu choice used when lifting the relations; both must yield the same
// invariant factors and split verdict
enum class MuChoice { Canonical, Flipped };

TypeIIExtension typeII_extension(const GradingSpec& spec, MuChoice choice = MuChoice::Canonical);

}  // namespace graded
