#pragma once

#include "graded/errors.hpp"
#include "graded/torsion.hpp"

#include <gmpxx.h>

#include <functional>
#include <stdexcept>
#include <vector>

namespace graded {

struct SymplecticMap {
  std::vector<TorsionElement> images;  // of a_1, b_1, ..., a_r, b_r

  TorsionElement apply(const TorsionGroup& T, const TorsionElement& t) const;
  bool operator==(const SymplecticMap& o) const { return images == o.images; }
  bool operator<(const SymplecticMap& o) const { return images < o.images; }
};

SymplecticMap sym_identity(const TorsionGroup& T);
SymplecticMap sym_compose(const TorsionGroup& T, const SymplecticMap& f, const SymplecticMap& g);
SymplecticMap sym_inverse(const TorsionGroup& T, const SymplecticMap& f);
bool preserves_beta(const TorsionGroup& T, const SymplecticMap& f);

// symplectic transvection x -> x + beta2(x, v) v on an elementary 2-group
SymplecticMap transvection(const TorsionGroup& T, const TorsionElement& v);

inline constexpr unsigned long kDefaultAutBound = 50'000'000;

// Aut(T, beta) handle: exact order, a generating set, and deterministic
// on-demand enumeration of all elements.
struct SymplecticGroup {
  TorsionGroup T;
  mpz_class order;
  std::vector<SymplecticMap> generators;

  void for_each(const std::function<void(const SymplecticMap&)>& fn) const;
  std::vector<SymplecticMap> elements() const;
};

SymplecticGroup aut_group(const TorsionGroup& T, unsigned long node_bound = kDefaultAutBound);

// unique t with beta(t, u) = qsign(alpha^{-1}(u)) qsign(u) for all u
TorsionElement t_alpha(const TorsionGroup& T, const SymplecticMap& alpha);

struct AffineSymplectic {
  TorsionElement shift;
  SymplecticMap map;  // t -> map(t) * shift

  TorsionElement apply(const TorsionGroup& T, const TorsionElement& t) const;
};

AffineSymplectic affine_identity(const TorsionGroup& T);
AffineSymplectic affine_compose(const TorsionGroup& T, const AffineSymplectic& f,
                                const AffineSymplectic& g);
AffineSymplectic affine_inverse(const TorsionGroup& T, const AffineSymplectic& f);

TorsionElement act_natural(const TorsionGroup& T, const AffineSymplectic& g,
                           const TorsionElement& t);
TorsionElement act_twisted(const TorsionGroup& T, const SymplecticMap& alpha,
                           const TorsionElement& t);

// multiset in T with canonically sorted entries
struct MultisetSigma {
  std::vector<std::pair<TorsionElement, unsigned>> entries;  // sorted by element

  static MultisetSigma from_tuple(const std::vector<TorsionElement>& tau);
  std::vector<TorsionElement> flat() const;  // sorted with multiplicity
  unsigned total() const;
  bool operator==(const MultisetSigma& o) const { return entries == o.entries; }
  bool operator<(const MultisetSigma& o) const { return entries < o.entries; }
};

enum class SigmaAction { natural, twisted };

MultisetSigma apply_to_multiset(const TorsionGroup& T, const AffineSymplectic& g,
                                const MultisetSigma& sigma);

// lexicographically least multiset in the orbit of sigma
MultisetSigma orbit_canonical(const TorsionGroup& T, const MultisetSigma& sigma,
                              SigmaAction kind, unsigned long bound = kDefaultAutBound);

// canonical form together with a group element carrying sigma onto it
std::pair<MultisetSigma, AffineSymplectic> orbit_canonical_with_witness(
    const TorsionGroup& T, const MultisetSigma& sigma, SigmaAction kind,
    unsigned long bound = kDefaultAutBound);

struct SigmaStabilizer {
  mpz_class order;
  mpz_class orbit_size;
  std::vector<AffineSymplectic> generators;  // twisted kind: shift == t_alpha
  // restriction to Sym(q) per generator, as images of 0-based positions in
  // the canonically sorted tuple
  std::vector<std::vector<unsigned>> restriction;
};

SigmaStabilizer sigma_stabilizer(const TorsionGroup& T, const MultisetSigma& sigma,
                                 SigmaAction kind, unsigned long bound = kDefaultAutBound);

// order of Sp_{2r}(2) from the hyperbolic-basis counting formula
mpz_class sp2r_order_closed_form(unsigned r);

}  // namespace graded
