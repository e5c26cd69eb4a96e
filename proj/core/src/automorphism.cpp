#include "graded/automorphism.hpp"

#include "graded/errors.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace graded {

namespace {

BlockScalar bs_x(const TorsionElement& u) { return BlockScalar{Cyclotomic(1), u}; }

BlockScalar bs_mul(const GradedDivisionAlgebra& D, const BlockScalar& a, const BlockScalar& b) {
  return BlockScalar{a.c * b.c * D.cocycle(a.u, b.u), mul(D.group(), a.u, b.u)};
}

BlockScalar bs_inv(const GradedDivisionAlgebra& D, const BlockScalar& a) {
  TorsionElement ui = inv(D.group(), a.u);
  return BlockScalar{(a.c * D.cocycle(ui, a.u)).inverse(), ui};
}

BlockScalar bs_transpose(const GradedDivisionAlgebra& D, const BlockScalar& a) {
  return BlockScalar{a.c * D.transpose_scalar(a.u), D.flip_map(a.u)};
}

bool bs_eq(const BlockScalar& a, const BlockScalar& b) { return a.u == b.u && a.c == b.c; }

std::vector<unsigned> effective_perm(const GradedMatrixAlgebra& R,
                                     const SymbolicAutomorphism& psi) {
  unsigned k = R.blocks();
  if (psi.perm.empty()) {
    std::vector<unsigned> id(k);
    for (unsigned i = 0; i < k; ++i) id[i] = i + 1;
    return id;
  }
  if (psi.perm.size() != k) throw std::domain_error("block permutation has wrong length");
  std::vector<bool> hit(k, false);
  for (unsigned v : psi.perm) {
    if (v < 1 || v > k || hit[v - 1]) throw std::domain_error("block permutation is no bijection");
    hit[v - 1] = true;
  }
  return psi.perm;
}

std::vector<BlockScalar> effective_diag(const GradedMatrixAlgebra& R,
                                        const SymbolicAutomorphism& psi) {
  unsigned k = R.blocks();
  if (psi.diag.empty()) {
    TorsionElement e = TorsionElement::identity(R.division().group());
    return std::vector<BlockScalar>(k, bs_x(e));
  }
  if (psi.diag.size() != k) throw std::domain_error("block diagonal has wrong length");
  return psi.diag;
}

DivisionAutomorphism effective_division(const GradedMatrixAlgebra& R,
                                        const SymbolicAutomorphism& psi) {
  if (psi.division_map.scalar.empty()) return division_identity(R.division());
  return psi.division_map;
}

}  // namespace

const Cyclotomic& DivisionAutomorphism::c(const TorsionGroup& T, const TorsionElement& t) const {
  return scalar.at(element_index(T, t));
}

DivisionAutomorphism division_identity(const GradedDivisionAlgebra& D) {
  const TorsionGroup& T = D.group();
  DivisionAutomorphism psi;
  psi.alpha = sym_identity(T);
  psi.scalar.assign(T.order(), Cyclotomic(1));
  return psi;
}

DivisionAutomorphism realize_division_map(const GradedDivisionAlgebra& D,
                                          const SymplecticMap& alpha) {
  const TorsionGroup& T = D.group();
  if (alpha.images.size() != 2 * (size_t)T.rank()) {
    throw std::domain_error("division map images have wrong length");
  }
  if (!preserves_beta(T, alpha)) {
    throw std::domain_error("division map does not preserve the commutation form");
  }

  DivisionAutomorphism psi;
  psi.alpha = alpha;
  psi.scalar.assign(T.order(), Cyclotomic(0));

  // generator scalars: (c X_w)^l = c^l power_scalar(w, l) X_e must be X_e
  std::vector<Cyclotomic> gen_scalar(2 * T.rank(), Cyclotomic(1));
  for (unsigned m = 0; m < 2 * T.rank(); ++m) {
    unsigned long l = T.ell[m / 2];
    gen_scalar[m] = D.power_scalar(alpha.images[m], l).inverse().nth_root_of_unity_value(l);
  }

  // ordered product expansion X_t = X_{a_1}^{i_1} X_{b_1}^{j_1} ...
  for (const TorsionElement& t : all_elements(T)) {
    BlockScalar acc = bs_x(TorsionElement::identity(T));
    for (unsigned m = 0; m < 2 * T.rank(); ++m) {
      unsigned e = t.e[m];
      if (e == 0) continue;
      Cyclotomic c = Cyclotomic(1);
      for (unsigned p = 0; p < e; ++p) c = c * gen_scalar[m];
      const TorsionElement& w = alpha.images[m];
      BlockScalar term{c * D.power_scalar(w, e), pow(T, w, (long)e)};
      acc = bs_mul(D, acc, term);
    }
    if (acc.u != alpha.apply(T, t)) {
      throw verification_error("division map image degree disagrees with the expansion");
    }
    psi.scalar[element_index(T, t)] = acc.c;
  }

  for (const TorsionElement& u : all_elements(T)) {
    for (const TorsionElement& v : all_elements(T)) {
      Cyclotomic lhs = psi.c(T, u) * psi.c(T, v) *
                       D.cocycle(alpha.apply(T, u), alpha.apply(T, v));
      Cyclotomic rhs = D.cocycle(u, v) * psi.c(T, mul(T, u, v));
      if (!(lhs == rhs)) {
        throw verification_error("division automorphism fails multiplicativity on a pair");
      }
    }
  }
  return psi;
}

BasisAction identity_action(const GradedMatrixAlgebra& R) {
  BasisAction A;
  for (const auto& [g, basis] : R.components()) {
    (void)g;
    for (const BasisIndex& b : basis) A.img[b] = BasisImage{b.i, b.j, b.t, Cyclotomic(1)};
  }
  return A;
}

BasisAction symbolic_action(const GradedMatrixAlgebra& R, const SymbolicAutomorphism& psi) {
  const GradedDivisionAlgebra& D = R.division();
  const TorsionGroup& T = D.group();
  std::vector<unsigned> perm = effective_perm(R, psi);
  std::vector<BlockScalar> diag = effective_diag(R, psi);
  DivisionAutomorphism psi0 = effective_division(R, psi);

  std::vector<BlockScalar> diag_inv;
  diag_inv.reserve(diag.size());
  for (const BlockScalar& d : diag) diag_inv.push_back(bs_inv(D, d));

  BasisAction A;
  A.anti = psi.antiflag;
  A.product_sign = psi.antiflag ? -1 : +1;
  for (const auto& [g, basis] : R.components()) {
    (void)g;
    for (const BasisIndex& b : basis) {
      BlockScalar val{psi0.c(T, b.t), psi0.alpha.apply(T, b.t)};
      val = bs_mul(D, diag[b.i - 1], bs_mul(D, val, diag_inv[b.j - 1]));
      unsigned ii = perm[b.i - 1];
      unsigned jj = perm[b.j - 1];
      if (psi.antiflag) {
        val = bs_transpose(D, val);
        val.c = val.c * Cyclotomic(-1);
        std::swap(ii, jj);
      }
      A.img[b] = BasisImage{ii, jj, val.u, val.c};
    }
  }
  return A;
}

BasisAction phi_basis_action(const GradedMatrixAlgebra& R) {
  const GradingSpec& spec = R.spec();
  if (!spec.phi_type()) throw std::domain_error("series carries no transpose twist");
  const GradedDivisionAlgebra& D = R.division();
  unsigned k = R.blocks();

  // Phi = sum_i E_{i sigma(i)} (x) g_i
  std::vector<unsigned> sigma(k);
  std::vector<BlockScalar> g(k, bs_x(TorsionElement::identity(D.group())));
  for (unsigned i = 0; i < spec.q; ++i) {
    sigma[i] = i + 1;
    g[i] = bs_x(spec.tau[i]);
  }
  for (unsigned j = 0; j < spec.s; ++j) {
    unsigned a = spec.q + 2 * j;  // 0-based left pair block
    sigma[a] = a + 2;
    sigma[a + 1] = a + 1;
    g[a + 1].c = spec.pair_scalar(j);
  }

  std::vector<BlockScalar> g_inv;
  g_inv.reserve(k);
  for (const BlockScalar& v : g) g_inv.push_back(bs_inv(D, v));

  BasisAction A;
  A.anti = true;
  A.product_sign = +1;
  for (const auto& [comp, basis] : R.components()) {
    (void)comp;
    for (const BasisIndex& b : basis) {
      BlockScalar val = bs_mul(D, g_inv[b.j - 1], bs_mul(D, bs_transpose(D, bs_x(b.t)), g[b.i - 1]));
      A.img[b] = BasisImage{sigma[b.j - 1], sigma[b.i - 1], val.u, val.c};
    }
  }
  return A;
}

BasisAction compose(const GradedMatrixAlgebra& R, const BasisAction& f, const BasisAction& g) {
  (void)R;
  BasisAction h;
  h.anti = f.anti != g.anti;
  h.product_sign = f.product_sign * g.product_sign;
  for (const auto& [b, gi] : g.img) {
    const BasisImage& fi = f.img.at(BasisIndex{gi.i, gi.j, gi.t});
    h.img[b] = BasisImage{fi.i, fi.j, fi.t, gi.c * fi.c};
  }
  return h;
}

BasisAction inverse_action(const BasisAction& A) {
  BasisAction inv;
  inv.anti = A.anti;
  inv.product_sign = A.product_sign;
  for (const auto& [b, im] : A.img) {
    BasisIndex target{im.i, im.j, im.t};
    if (!inv.img.emplace(target, BasisImage{b.i, b.j, b.t, im.c.inverse()}).second) {
      throw verification_error("action image is not a bijection");
    }
  }
  return inv;
}

bool same_action(const BasisAction& a, const BasisAction& b) { return action_sign(a, b) == +1; }

int action_sign(const BasisAction& a, const BasisAction& b) {
  if (a.img.size() != b.img.size()) return 0;
  int sign = 0;
  for (const auto& [x, ia] : a.img) {
    auto it = b.img.find(x);
    if (it == b.img.end()) return 0;
    const BasisImage& ib = it->second;
    if (ia.i != ib.i || ia.j != ib.j || !(ia.t == ib.t)) return 0;
    if (ia.c == ib.c) {
      if (sign == -1) return 0;
      sign = +1;
    } else if (ia.c == ib.c * Cyclotomic(-1)) {
      if (sign == +1) return 0;
      sign = -1;
    } else {
      return 0;
    }
  }
  return sign;
}

void verify_action(const GradedMatrixAlgebra& R, const BasisAction& A) {
  const GradedDivisionAlgebra& D = R.division();
  const TorsionGroup& T = D.group();
  std::vector<BasisIndex> basis;
  for (const auto& [g, list] : R.components()) {
    (void)g;
    basis.insert(basis.end(), list.begin(), list.end());
  }
  for (const BasisIndex& x : basis) {
    for (const BasisIndex& y : basis) {
      const BasisImage& fx = A.img.at(x);
      const BasisImage& fy = A.img.at(y);
      // m = xy, or yx for anti maps
      const BasisIndex& l = A.anti ? y : x;
      const BasisIndex& r = A.anti ? x : y;
      bool nz = l.j == r.i;
      bool img_nz = fx.j == fy.i;
      if (nz != img_nz) throw verification_error("action breaks the product zero pattern");
      if (!nz) continue;
      Cyclotomic mc = D.cocycle(l.t, r.t);
      BasisIndex m{l.i, r.j, mul(T, l.t, r.t)};
      const BasisImage& fm = A.img.at(m);
      Cyclotomic lhs = fx.c * fy.c * D.cocycle(fx.t, fy.t);
      Cyclotomic rhs = Cyclotomic((long)A.product_sign) * mc * fm.c;
      TorsionElement lt = mul(T, fx.t, fy.t);
      if (fx.i != fm.i || fy.j != fm.j || lt != fm.t || !(lhs == rhs)) {
        throw verification_error("action fails the product law on a basis pair");
      }
    }
  }
}

std::map<SupportElement, SupportElement> induced_support_permutation(const GradedMatrixAlgebra& R,
                                                                     const BasisAction& A) {
  const GradingSpec& spec = R.spec();
  std::map<SupportElement, SupportElement> out;
  std::set<SupportElement> hit;
  for (const auto& [g, basis] : R.components()) {
    bool first = true;
    SupportElement to;
    for (const BasisIndex& b : basis) {
      const BasisImage& im = A.img.at(b);
      SupportElement cand = canonical_support(spec, im.i, im.j, im.t);
      if (first) {
        to = cand;
        first = false;
      } else if (!(to == cand)) {
        throw verification_error("component image is not a single component");
      }
    }
    out[g] = to;
    hit.insert(to);
  }
  if (hit.size() != out.size()) throw verification_error("support image is not a bijection");
  return out;
}

void transported_form_check(const GradedMatrixAlgebra& R, const SymbolicAutomorphism& psi) {
  const GradingSpec& spec = R.spec();
  if (!spec.phi_type()) throw std::domain_error("series carries no transpose twist");
  if (!psi.d0) throw std::domain_error("conjugation datum carries no d0");
  if (psi.antiflag) throw std::domain_error("conjugation datum applies to conjugations only");
  const GradedDivisionAlgebra& D = R.division();
  const TorsionGroup& T = D.group();
  std::vector<unsigned> perm = effective_perm(R, psi);
  std::vector<BlockScalar> diag = effective_diag(R, psi);
  DivisionAutomorphism psi0 = effective_division(R, psi);
  const BlockScalar& d0 = *psi.d0;

  for (unsigned i = 0; i < spec.q; ++i) {
    if (perm[i] < 1 || perm[i] > spec.q) {
      throw verification_error("conjugation datum mixes diagonal and pair blocks");
    }
    BlockScalar lhs = bs_mul(D, bs_transpose(D, diag[i]),
                             bs_mul(D, bs_x(spec.tau[perm[i] - 1]), diag[i]));
    BlockScalar rhs =
        bs_mul(D, d0, BlockScalar{psi0.c(T, spec.tau[i]), psi0.alpha.apply(T, spec.tau[i])});
    if (!bs_eq(lhs, rhs)) {
      throw verification_error("transported form fails on a diagonal block");
    }
  }
  for (unsigned j = 0; j < spec.s; ++j) {
    unsigned a = spec.q + 2 * j;  // 0-based left pair block
    unsigned pa = perm[a];
    unsigned pb = perm[a + 1];
    if (pa <= spec.q || pb <= spec.q || (pa - spec.q - 1) / 2 != (pb - spec.q - 1) / 2) {
      throw verification_error("conjugation datum tears a pair apart");
    }
    BlockScalar lhs = bs_mul(D, bs_transpose(D, diag[a]), diag[a + 1]);
    BlockScalar rhs = d0;
    if (pa > pb) rhs.c = rhs.c * spec.pair_scalar(j);
    if (!bs_eq(lhs, rhs)) {
      throw verification_error("transported form fails on a pair block");
    }
  }
}

std::optional<DiagElement> diag_membership(const GradedMatrixAlgebra& R, const BasisAction& A) {
  if (A.anti) return std::nullopt;
  const GradingSpec& spec = R.spec();
  const TorsionGroup& T = R.division().group();
  unsigned k = R.blocks();

  for (const auto& [b, im] : A.img) {
    if (im.i != b.i || im.j != b.j || !(im.t == b.t)) return std::nullopt;
  }

  // twist from the commutation scalars on the first diagonal block
  std::optional<TorsionElement> twist;
  for (const TorsionElement& t : all_elements(T)) {
    bool ok = true;
    for (const TorsionElement& u : all_elements(T)) {
      const BasisImage& im = A.img.at(BasisIndex{1, 1, u});
      if (!(im.c == beta_eval(T, t, u))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      twist = t;
      break;
    }
  }
  if (!twist) return std::nullopt;

  DiagElement d;
  d.twist = *twist;
  d.scalars.assign(k, Cyclotomic(1));
  TorsionElement e = TorsionElement::identity(T);
  for (unsigned j = 2; j <= k; ++j) {
    d.scalars[j - 1] = A.img.at(BasisIndex{1, j, e}).c.inverse();
  }

  for (const auto& [b, im] : A.img) {
    Cyclotomic expect =
        d.scalars[b.i - 1] * d.scalars[b.j - 1].inverse() * beta_eval(T, d.twist, b.t);
    if (!(im.c == expect)) return std::nullopt;
  }
  if (spec.phi_type()) {
    try {
      validate_diag(spec, d);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return d;
}

std::optional<DiagElement> diag_membership(const GradedMatrixAlgebra& R,
                                           const SymbolicAutomorphism& psi) {
  return diag_membership(R, symbolic_action(R, psi));
}

}  // namespace graded
