#include "graded/symplectic.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace graded {

namespace {

// ---- packed helpers for elementary 2-groups ----
// element t is packed as bits (i_1, j_1, ..., i_r, j_r), bit 2k = i_{k+1}

TorsionElement unpack2(const TorsionGroup& T, uint32_t w) {
  TorsionElement t = TorsionElement::identity(T);
  for (size_t k = 0; k < t.e.size(); ++k) t.e[k] = (w >> k) & 1;
  return t;
}

// swap bit pairs (2k, 2k+1); beta2(u, v) = parity(u & swap(v))
uint32_t swap_pairs(uint32_t w) {
  return ((w & 0x55555555u) << 1) | ((w & 0xAAAAAAAAu) >> 1);
}

int beta2_packed(uint32_t u, uint32_t v) { return __builtin_parity(u & swap_pairs(v)); }

// beta(u, v) as a rational number of turns in [0, 1)
mpq_class beta_fraction(const TorsionGroup& T, const TorsionElement& u,
                        const TorsionElement& v) {
  mpq_class s = 0;
  std::vector<unsigned> ex = beta_exponents(T, u, v);
  for (unsigned k = 0; k < T.rank(); ++k) {
    mpq_class term(ex[k], T.ell[k]);
    // mpq arithmetic and equality require canonical operands, and the
    // two-argument constructor does not canonicalize
    term.canonicalize();
    s += term;
  }
  s -= mpz_class(s.get_num() / s.get_den());
  if (s < 0) s += 1;
  return s;
}

// backtracking enumeration of symplectic basis images for an elementary
// 2-group; calls leaf(imgs) for every full tuple, in ascending packed order
struct Sp2Backtrack {
  unsigned width;  // 2r
  unsigned long nodes = 0;
  unsigned long bound;
  std::vector<uint32_t> imgs;
  std::vector<uint32_t> echelon;  // reduced row masks of the chosen span
  const std::function<void(const std::vector<uint32_t>&)>& leaf;

  Sp2Backtrack(unsigned w, unsigned long b,
               const std::function<void(const std::vector<uint32_t>&)>& fn)
      : width(w), bound(b), leaf(fn) {}

  // rows are kept in descending leading-bit order with distinct leading
  // bits, so a single top-down pass fully reduces v over the span
  uint32_t residue(uint32_t v) const {
    for (uint32_t row : echelon) {
      uint32_t top = 1u << (31 - __builtin_clz(row));
      if (v & top) v ^= row;
    }
    return v;
  }

  void run(unsigned slot) {
    if (++nodes > bound)
      throw resource_error("symplectic enumeration exceeded node bound");
    if (slot == width) {
      leaf(imgs);
      return;
    }
    for (uint32_t c = 1; c < (1u << width); ++c) {
      bool ok = true;
      for (unsigned p = 0; p < slot && ok; ++p) {
        int want = (p ^ 1) == slot ? 1 : 0;
        ok = beta2_packed(c, imgs[p]) == want;
      }
      if (!ok) continue;
      uint32_t red = residue(c);
      if (red == 0) continue;
      imgs.push_back(c);
      echelon.insert(std::lower_bound(echelon.begin(), echelon.end(), red,
                                      std::greater<uint32_t>()),
                     red);
      run(slot + 1);
      echelon.erase(std::find(echelon.begin(), echelon.end(), red));
      imgs.pop_back();
    }
  }
};

void enumerate_sp2(const TorsionGroup& T, unsigned long bound,
                   const std::function<void(const SymplecticMap&)>& fn) {
  unsigned width = 2 * T.rank();
  std::function<void(const std::vector<uint32_t>&)> leaf =
      [&](const std::vector<uint32_t>& imgs) {
        SymplecticMap m;
        m.images.reserve(width);
        for (uint32_t w : imgs) m.images.push_back(unpack2(T, w));
        fn(m);
      };
  Sp2Backtrack bt(width, bound, leaf);
  bt.run(0);
}

// general-torsion enumeration: images of a_1, b_1, ... chosen among elements
// of compatible order, pruned by exact pairing preservation
void enumerate_general(const TorsionGroup& T, unsigned long bound,
                       const std::function<void(const SymplecticMap&)>& fn) {
  unsigned width = 2 * T.rank();
  std::vector<TorsionElement> basis;
  for (unsigned k = 0; k < T.rank(); ++k) {
    basis.push_back(basis_a(T, k));
    basis.push_back(basis_b(T, k));
  }
  std::vector<std::vector<TorsionElement>> candidates(width);
  for (unsigned s = 0; s < width; ++s) {
    unsigned order = T.ell[s / 2];
    for (const TorsionElement& x : all_elements(T))
      if (pow(T, x, order).is_identity()) candidates[s].push_back(x);
  }
  std::vector<TorsionElement> imgs;
  unsigned long nodes = 0;
  std::function<void(unsigned)> rec = [&](unsigned slot) {
    if (++nodes > bound)
      throw resource_error("automorphism enumeration exceeded node bound");
    if (slot == width) {
      SymplecticMap m{imgs};
      // pairing preservation forces injectivity, but only once the map is
      // onto the right orders; preserves_beta re-checks everything at once
      if (preserves_beta(T, m)) fn(m);
      return;
    }
    for (const TorsionElement& c : candidates[slot]) {
      bool ok = true;
      for (unsigned p = 0; p < slot && ok; ++p)
        ok = beta_fraction(T, c, imgs[p]) == beta_fraction(T, basis[slot], basis[p]);
      if (!ok) continue;
      imgs.push_back(c);
      rec(slot + 1);
      imgs.pop_back();
    }
  };
  rec(0);
}

std::string flat_key(const std::vector<TorsionElement>& flat) {
  std::string key;
  for (const TorsionElement& t : flat)
    key.append(reinterpret_cast<const char*>(t.e.data()), t.e.size());
  return key;
}

std::string affine_key(const AffineSymplectic& g) {
  std::string key;
  key.append(reinterpret_cast<const char*>(g.shift.e.data()), g.shift.e.size());
  for (const TorsionElement& t : g.map.images)
    key.append(reinterpret_cast<const char*>(t.e.data()), t.e.size());
  return key;
}

// generators of the acting group for orbit walks on multisets
std::vector<AffineSymplectic> orbit_generators(const TorsionGroup& T, SigmaAction kind,
                                               unsigned long bound) {
  std::vector<AffineSymplectic> gens;
  if (T.elementary2()) {
    for (unsigned long i = 1; i < T.order(); ++i) {
      TorsionElement v = element_at(T, i);
      SymplecticMap tv = transvection(T, v);
      if (kind == SigmaAction::twisted) {
        gens.push_back({t_alpha(T, tv), tv});
      } else {
        gens.push_back({TorsionElement::identity(T), tv});
      }
    }
    if (kind == SigmaAction::natural) {
      for (unsigned k = 0; k < T.rank(); ++k) {
        gens.push_back({basis_a(T, k), sym_identity(T)});
        gens.push_back({basis_b(T, k), sym_identity(T)});
      }
    }
  } else {
    if (kind == SigmaAction::twisted)
      throw std::domain_error("twisted action needs an elementary 2-group");
    SymplecticGroup G = aut_group(T, bound);
    for (const SymplecticMap& m : G.elements())
      gens.push_back({TorsionElement::identity(T), m});
    for (unsigned long i = 1; i < T.order(); ++i)
      gens.push_back({element_at(T, i), sym_identity(T)});
  }
  return gens;
}

mpz_class acting_group_order(const TorsionGroup& T, SigmaAction kind, unsigned long bound) {
  mpz_class sp = aut_group(T, bound).order;
  if (kind == SigmaAction::twisted) return sp;
  return sp * mpz_class(T.order());
}

// order-preserving position permutation induced on the sorted tuple
std::vector<unsigned> position_restriction(const TorsionGroup& T, const AffineSymplectic& g,
                                           const std::vector<TorsionElement>& flat) {
  std::map<TorsionElement, unsigned> first, seen;
  for (unsigned p = 0; p < flat.size(); ++p)
    if (!first.count(flat[p])) first[flat[p]] = p;
  std::vector<unsigned> perm(flat.size());
  for (unsigned p = 0; p < flat.size(); ++p) {
    TorsionElement w = g.apply(T, flat[p]);
    auto it = first.find(w);
    if (it == first.end())
      throw verification_error("generator does not stabilize the multiset");
    perm[p] = it->second + seen[flat[p]]++;
  }
  return perm;
}

}  // namespace

TorsionElement SymplecticMap::apply(const TorsionGroup& T, const TorsionElement& t) const {
  TorsionElement out = TorsionElement::identity(T);
  for (size_t k = 0; k < t.e.size(); ++k)
    if (t.e[k]) out = mul(T, out, pow(T, images[k], t.e[k]));
  return out;
}

SymplecticMap sym_identity(const TorsionGroup& T) {
  SymplecticMap m;
  for (unsigned k = 0; k < T.rank(); ++k) {
    m.images.push_back(basis_a(T, k));
    m.images.push_back(basis_b(T, k));
  }
  return m;
}

SymplecticMap sym_compose(const TorsionGroup& T, const SymplecticMap& f,
                          const SymplecticMap& g) {
  SymplecticMap m;
  m.images.reserve(g.images.size());
  for (const TorsionElement& t : g.images) m.images.push_back(f.apply(T, t));
  return m;
}

SymplecticMap sym_inverse(const TorsionGroup& T, const SymplecticMap& f) {
  // invert via the full value table; groups here are small
  std::vector<unsigned long> to(T.order());
  for (unsigned long i = 0; i < T.order(); ++i)
    to[element_index(T, f.apply(T, element_at(T, i)))] = i;
  SymplecticMap m;
  for (unsigned k = 0; k < T.rank(); ++k) {
    m.images.push_back(element_at(T, to[element_index(T, basis_a(T, k))]));
    m.images.push_back(element_at(T, to[element_index(T, basis_b(T, k))]));
  }
  if (!(sym_compose(T, f, m) == sym_identity(T)))
    throw std::domain_error("map is not invertible");
  return m;
}

bool preserves_beta(const TorsionGroup& T, const SymplecticMap& f) {
  if (f.images.size() != 2 * T.rank()) return false;
  std::vector<TorsionElement> basis;
  for (unsigned k = 0; k < T.rank(); ++k) {
    basis.push_back(basis_a(T, k));
    basis.push_back(basis_b(T, k));
  }
  for (unsigned s = 0; s < basis.size(); ++s)
    if (!pow(T, f.images[s], T.ell[s / 2]).is_identity()) return false;
  for (unsigned u = 0; u < basis.size(); ++u)
    for (unsigned v = u + 1; v < basis.size(); ++v)
      if (beta_fraction(T, f.images[u], f.images[v]) !=
          beta_fraction(T, basis[u], basis[v]))
        return false;
  // a pairing-preserving endomorphism has trivial kernel, hence is bijective
  return true;
}

SymplecticMap transvection(const TorsionGroup& T, const TorsionElement& v) {
  if (!T.elementary2())
    throw std::domain_error("transvections are defined on elementary 2-groups");
  SymplecticMap m = sym_identity(T);
  for (TorsionElement& img : m.images)
    if (beta_bit(T, img, v)) img = mul(T, img, v);
  return m;
}

mpz_class sp2r_order_closed_form(unsigned r) {
  mpz_class n = 1;
  mpz_class two = 2;
  mpz_pow_ui(n.get_mpz_t(), two.get_mpz_t(), (unsigned long)r * r);
  for (unsigned i = 1; i <= r; ++i) {
    mpz_class q;
    mpz_pow_ui(q.get_mpz_t(), mpz_class(4).get_mpz_t(), i);
    n *= q - 1;
  }
  return n;
}

SymplecticGroup aut_group(const TorsionGroup& T, unsigned long node_bound) {
  SymplecticGroup G;
  G.T = T;
  mpz_class count = 0;
  if (T.elementary2()) {
    enumerate_sp2(T, node_bound, [&](const SymplecticMap&) { ++count; });
    if (count != sp2r_order_closed_form(T.rank()))
      throw verification_error("Sp_{2r}(2) enumeration disagrees with closed form");
    for (unsigned long i = 1; i < T.order(); ++i)
      G.generators.push_back(transvection(T, element_at(T, i)));
  } else {
    enumerate_general(T, node_bound, [&](const SymplecticMap& m) {
      ++count;
      if (!(m == sym_identity(T))) G.generators.push_back(m);
    });
  }
  G.order = count;
  return G;
}

void SymplecticGroup::for_each(const std::function<void(const SymplecticMap&)>& fn) const {
  if (T.elementary2()) {
    enumerate_sp2(T, kDefaultAutBound, fn);
  } else {
    enumerate_general(T, kDefaultAutBound, fn);
  }
}

std::vector<SymplecticMap> SymplecticGroup::elements() const {
  if (order > 200000)
    throw resource_error("element list too large, use for_each");
  std::vector<SymplecticMap> out;
  for_each([&](const SymplecticMap& m) { out.push_back(m); });
  return out;
}

TorsionElement t_alpha(const TorsionGroup& T, const SymplecticMap& alpha) {
  if (!T.elementary2())
    throw std::domain_error("t_alpha needs an elementary 2-group");
  SymplecticMap ainv = sym_inverse(T, alpha);
  auto f = [&](const TorsionElement& g) -> uint8_t {
    return (quad_sign(T, ainv.apply(T, g)) != quad_sign(T, g)) ? 1 : 0;
  };
  TorsionElement t = TorsionElement::identity(T);
  for (unsigned k = 0; k < T.rank(); ++k) {
    t.e[2 * k] = f(basis_b(T, k));      // i_k from pairing against b_k
    t.e[2 * k + 1] = f(basis_a(T, k));  // j_k from pairing against a_k
  }
  for (const TorsionElement& u : all_elements(T)) {
    int lhs = beta_bit(T, t, u) ? -1 : 1;
    int rhs = quad_sign(T, ainv.apply(T, u)) * quad_sign(T, u);
    if (lhs != rhs) throw verification_error("t_alpha defining identity failed");
  }
  return t;
}

TorsionElement AffineSymplectic::apply(const TorsionGroup& T, const TorsionElement& t) const {
  return mul(T, map.apply(T, t), shift);
}

AffineSymplectic affine_identity(const TorsionGroup& T) {
  return {TorsionElement::identity(T), sym_identity(T)};
}

AffineSymplectic affine_compose(const TorsionGroup& T, const AffineSymplectic& f,
                                const AffineSymplectic& g) {
  return {mul(T, f.map.apply(T, g.shift), f.shift), sym_compose(T, f.map, g.map)};
}

AffineSymplectic affine_inverse(const TorsionGroup& T, const AffineSymplectic& f) {
  SymplecticMap minv = sym_inverse(T, f.map);
  return {minv.apply(T, inv(T, f.shift)), minv};
}

TorsionElement act_natural(const TorsionGroup& T, const AffineSymplectic& g,
                           const TorsionElement& t) {
  return g.apply(T, t);
}

TorsionElement act_twisted(const TorsionGroup& T, const SymplecticMap& alpha,
                           const TorsionElement& t) {
  return mul(T, alpha.apply(T, t), t_alpha(T, alpha));
}

MultisetSigma MultisetSigma::from_tuple(const std::vector<TorsionElement>& tau) {
  std::vector<TorsionElement> sorted = tau;
  std::sort(sorted.begin(), sorted.end());
  MultisetSigma s;
  for (const TorsionElement& t : sorted) {
    if (!s.entries.empty() && s.entries.back().first == t)
      ++s.entries.back().second;
    else
      s.entries.push_back({t, 1});
  }
  return s;
}

std::vector<TorsionElement> MultisetSigma::flat() const {
  std::vector<TorsionElement> out;
  for (const auto& [t, mult] : entries)
    for (unsigned i = 0; i < mult; ++i) out.push_back(t);
  return out;
}

unsigned MultisetSigma::total() const {
  unsigned n = 0;
  for (const auto& [t, mult] : entries) n += mult;
  return n;
}

MultisetSigma apply_to_multiset(const TorsionGroup& T, const AffineSymplectic& g,
                                const MultisetSigma& sigma) {
  std::vector<TorsionElement> out;
  for (const TorsionElement& t : sigma.flat()) out.push_back(g.apply(T, t));
  return MultisetSigma::from_tuple(out);
}

MultisetSigma orbit_canonical(const TorsionGroup& T, const MultisetSigma& sigma,
                              SigmaAction kind, unsigned long bound) {
  return orbit_canonical_with_witness(T, sigma, kind, bound).first;
}

std::pair<MultisetSigma, AffineSymplectic> orbit_canonical_with_witness(
    const TorsionGroup& T, const MultisetSigma& sigma, SigmaAction kind,
    unsigned long bound) {
  std::vector<AffineSymplectic> gens = orbit_generators(T, kind, bound);
  // each visited multiset is stored with a transporter mapping sigma onto it
  std::map<std::string, std::pair<MultisetSigma, AffineSymplectic>> seen;
  AffineSymplectic id = affine_identity(T);
  seen[flat_key(sigma.flat())] = {sigma, id};
  std::vector<MultisetSigma> frontier{sigma};
  MultisetSigma best = sigma;
  AffineSymplectic best_transporter = id;
  unsigned long steps = 0;
  while (!frontier.empty()) {
    std::vector<MultisetSigma> next;
    for (const MultisetSigma& x : frontier) {
      const AffineSymplectic& to_x = seen.at(flat_key(x.flat())).second;
      for (const AffineSymplectic& g : gens) {
        if (++steps > bound) throw resource_error("orbit walk exceeded bound");
        MultisetSigma y = apply_to_multiset(T, g, x);
        std::string key = flat_key(y.flat());
        if (seen.count(key)) continue;
        AffineSymplectic to_y = affine_compose(T, g, to_x);
        seen[key] = {y, to_y};
        if (y < best) {
          best = y;
          best_transporter = to_y;
        }
        next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  if (!(apply_to_multiset(T, best_transporter, sigma) == best)) {
    throw verification_error("orbit transporter fails to reach the canonical form");
  }
  return {best, best_transporter};
}

SigmaStabilizer sigma_stabilizer(const TorsionGroup& T, const MultisetSigma& sigma,
                                 SigmaAction kind, unsigned long bound) {
  SigmaStabilizer out;
  std::vector<TorsionElement> flat = sigma.flat();
  mpz_class group_order = acting_group_order(T, kind, bound);
  bool small = !T.elementary2() || T.rank() <= 2;
  if (small) {
    // direct scan of the whole acting group
    SymplecticGroup G = aut_group(T, bound);
    mpz_class stab = 0;
    auto consider = [&](const AffineSymplectic& g) {
      if (!(apply_to_multiset(T, g, sigma) == sigma)) return;
      ++stab;
      if (!(g.map == sym_identity(T)) || !g.shift.is_identity())
        out.generators.push_back(g);
    };
    G.for_each([&](const SymplecticMap& m) {
      if (kind == SigmaAction::twisted) {
        consider({t_alpha(T, m), m});
      } else {
        for (unsigned long i = 0; i < T.order(); ++i)
          consider({element_at(T, i), m});
      }
    });
    out.order = stab;
    if (!mpz_divisible_p(group_order.get_mpz_t(), stab.get_mpz_t()))
      throw verification_error("stabilizer order does not divide the group order");
    out.orbit_size = group_order / stab;
  } else {
    // orbit-transversal walk with Schreier generators
    std::vector<AffineSymplectic> gens = orbit_generators(T, kind, bound);
    std::map<std::string, AffineSymplectic> transversal;
    transversal[flat_key(flat)] = affine_identity(T);
    std::vector<MultisetSigma> frontier{sigma};
    std::set<std::string> gen_keys;
    unsigned long steps = 0;
    auto schreier = [&](const AffineSymplectic& ux, const AffineSymplectic& g,
                        const AffineSymplectic& uy) {
      AffineSymplectic s =
          affine_compose(T, affine_inverse(T, uy), affine_compose(T, g, ux));
      if (s.map == sym_identity(T) && s.shift.is_identity()) return;
      if (!(apply_to_multiset(T, s, sigma) == sigma))
        throw verification_error("Schreier element does not stabilize");
      if (kind == SigmaAction::twisted && !(t_alpha(T, s.map) == s.shift))
        throw verification_error("Schreier element left the twisted embedding");
      if (gen_keys.insert(affine_key(s)).second) out.generators.push_back(s);
    };
    while (!frontier.empty()) {
      std::vector<MultisetSigma> next;
      for (const MultisetSigma& x : frontier) {
        const AffineSymplectic ux = transversal.at(flat_key(x.flat()));
        for (const AffineSymplectic& g : gens) {
          if (++steps > bound) throw resource_error("orbit walk exceeded bound");
          MultisetSigma y = apply_to_multiset(T, g, x);
          std::string key = flat_key(y.flat());
          auto it = transversal.find(key);
          if (it == transversal.end()) {
            AffineSymplectic uy = affine_compose(T, g, ux);
            transversal[key] = uy;
            next.push_back(y);
          } else {
            schreier(ux, g, it->second);
          }
        }
      }
      frontier = std::move(next);
    }
    out.orbit_size = mpz_class((unsigned long)transversal.size());
    if (!mpz_divisible_p(group_order.get_mpz_t(), out.orbit_size.get_mpz_t()))
      throw verification_error("orbit size does not divide the group order");
    out.order = group_order / out.orbit_size;
  }
  for (const AffineSymplectic& g : out.generators)
    out.restriction.push_back(position_restriction(T, g, flat));
  return out;
}

}  // namespace graded
