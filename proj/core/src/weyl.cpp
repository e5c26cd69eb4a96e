#include "graded/weyl.hpp"

#include "graded/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace graded {

namespace {

mpz_class factorial(unsigned m) {
  mpz_class f = 1;
  for (unsigned i = 2; i <= m; ++i) f *= i;
  return f;
}

mpz_class mpow(const mpz_class& b, unsigned e) {
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), e);
  return p;
}

WeylTerm leaf(std::string name, mpz_class order) {
  WeylTerm t;
  t.name = std::move(name);
  t.order = std::move(order);
  return t;
}

WeylTerm node(const char* op, std::string name, std::vector<WeylTerm> parts) {
  WeylTerm t;
  t.op = op;
  t.name = std::move(name);
  t.order = 1;
  for (const WeylTerm& p : parts) t.order *= p.order;
  t.parts = std::move(parts);
  return t;
}

// multiplicities of the distinct diagonal degrees
std::vector<unsigned> multiplicities(const GradingSpec& spec) {
  std::vector<unsigned> m;
  for (const auto& [t, cnt] : MultisetSigma::from_tuple(spec.tau).entries) {
    (void)t;
    m.push_back(cnt);
  }
  return m;
}

bool sl2_cartan(const GradingSpec& spec) {
  return spec.series == Series::AI && spec.group.rank() == 0 && spec.k == 2;
}

bool sl2_pauli(const GradingSpec& spec) {
  return spec.series == Series::AI && spec.group.ell == std::vector<unsigned>{2} && spec.k == 1;
}

SymplecticMap inversion_map(const TorsionGroup& T) {
  SymplecticMap f;
  for (unsigned m = 0; m < 2 * T.rank(); ++m) {
    TorsionElement g = (m % 2 == 0) ? basis_a(T, m / 2) : basis_b(T, m / 2);
    f.images.push_back(inv(T, g));
  }
  return f;
}

std::vector<TorsionElement> basis_generators(const TorsionGroup& T) {
  std::vector<TorsionElement> gens;
  for (unsigned m = 0; m < T.rank(); ++m) {
    gens.push_back(basis_a(T, m));
    gens.push_back(basis_b(T, m));
  }
  return gens;
}

std::vector<unsigned> identity_perm(unsigned k) {
  std::vector<unsigned> p(k);
  for (unsigned i = 0; i < k; ++i) p[i] = i + 1;
  return p;
}

BlockScalar bs_one(const TorsionGroup& T) {
  return BlockScalar{Cyclotomic(1), TorsionElement::identity(T)};
}

// scalar and degree of t(X_w) X_t X_w
BlockScalar twist_frame(const GradedDivisionAlgebra& D, const TorsionElement& w,
                        const TorsionElement& t) {
  const TorsionGroup& T = D.group();
  Cyclotomic c = D.transpose_scalar(w) * D.cocycle(D.flip_map(w), t) *
                 D.cocycle(mul(T, D.flip_map(w), t), w);
  return BlockScalar{c, mul(T, mul(T, D.flip_map(w), t), w)};
}

struct ConjPlan {
  std::string role;
  std::vector<unsigned> perm;
  std::vector<TorsionElement> wdeg;  // degree of d_i per block
  DivisionAutomorphism psi0;
  TorsionElement d0_degree;
};

// solves the per-block scalars of a phi-respecting conjugation from the
// transported-form equations, with d0 fixed to scalar one on its degree
SymbolicAutomorphism solve_conj(const GradedMatrixAlgebra& R, const ConjPlan& plan) {
  const GradingSpec& spec = R.spec();
  const GradedDivisionAlgebra& D = R.division();
  const TorsionGroup& T = D.group();

  SymbolicAutomorphism psi;
  psi.role = plan.role;
  psi.perm = plan.perm;
  psi.division_map = plan.psi0;
  psi.d0 = BlockScalar{Cyclotomic(1), plan.d0_degree};
  psi.diag.assign(R.blocks(), bs_one(T));

  for (unsigned i = 0; i < spec.q; ++i) {
    const TorsionElement& w = plan.wdeg[i];
    BlockScalar base = twist_frame(D, w, spec.tau[plan.perm[i] - 1]);
    BlockScalar rhs{plan.psi0.c(T, spec.tau[i]) * D.cocycle(plan.d0_degree, plan.psi0.alpha.apply(T, spec.tau[i])),
                    mul(T, plan.d0_degree, plan.psi0.alpha.apply(T, spec.tau[i]))};
    if (base.u != rhs.u) {
      throw verification_error("transported degree mismatch on a diagonal block");
    }
    Cyclotomic lambda = (rhs.c * base.c.inverse()).sqrt_root_of_unity();
    psi.diag[i] = BlockScalar{lambda, w};
  }
  for (unsigned j = 0; j < spec.s; ++j) {
    unsigned a = spec.q + 2 * j;  // 0-based left pair block
    const TorsionElement& wl = plan.wdeg[a];
    const TorsionElement& wr = plan.wdeg[a + 1];
    BlockScalar base{D.transpose_scalar(wl) * D.cocycle(D.flip_map(wl), wr),
                     mul(T, D.flip_map(wl), wr)};
    if (base.u != plan.d0_degree) {
      throw verification_error("transported degree mismatch on a pair block");
    }
    Cyclotomic want = Cyclotomic(1);
    if (plan.perm[a] > plan.perm[a + 1]) want = spec.pair_scalar(j);
    psi.diag[a] = BlockScalar{Cyclotomic(1), wl};
    psi.diag[a + 1] = BlockScalar{want * base.c.inverse(), wr};
  }
  return psi;
}

// permutation of the diagonal blocks matching tau_pi(i) = alpha(tau_i) shift,
// stable in i; pair blocks stay put
std::vector<unsigned> diagonal_matching(const GradingSpec& spec, const AffineSymplectic& g) {
  const TorsionGroup& T = spec.group;
  std::vector<unsigned> perm = identity_perm(spec.q + 2 * spec.s);
  std::vector<bool> used(spec.q, false);
  for (unsigned i = 0; i < spec.q; ++i) {
    TorsionElement want = g.apply(T, spec.tau[i]);
    bool found = false;
    for (unsigned j = 0; j < spec.q; ++j) {
      if (!used[j] && spec.tau[j] == want) {
        perm[i] = j + 1;
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) {
      throw verification_error("stabilizer element does not stabilize the diagonal multiset");
    }
  }
  return perm;
}

// greedy reduction of a generating list: keep an element only when it grows
// the generated subgroup, tracked by exact closure over composition keys
std::vector<AffineSymplectic> reduce_affine_generators(const TorsionGroup& T,
                                                       std::vector<AffineSymplectic> gens) {
  auto key = [&](const AffineSymplectic& g) {
    std::string k;
    for (const TorsionElement& im : g.map.images)
      for (uint8_t v : im.e) k += (char)('0' + v);
    k += '|';
    for (uint8_t v : g.shift.e) k += (char)('0' + v);
    return k;
  };
  std::map<std::string, AffineSymplectic> closed;
  AffineSymplectic id = affine_identity(T);
  closed[key(id)] = id;
  std::vector<AffineSymplectic> kept;
  for (const AffineSymplectic& g : gens) {
    if (closed.count(key(g))) continue;
    kept.push_back(g);
    // rebuild the closure with the new generator
    std::deque<AffineSymplectic> frontier;
    for (const auto& [k, v] : closed) {
      (void)k;
      frontier.push_back(v);
    }
    closed[key(g)] = g;
    frontier.push_back(g);
    while (!frontier.empty()) {
      AffineSymplectic cur = frontier.front();
      frontier.pop_front();
      for (const AffineSymplectic& h : kept) {
        AffineSymplectic nxt = affine_compose(T, h, cur);
        std::string nk = key(nxt);
        if (!closed.count(nk)) {
          closed[nk] = nxt;
          frontier.push_back(nxt);
        }
      }
    }
  }
  return kept;
}

void append_phi_generators(const GradedMatrixAlgebra& R, unsigned long bound,
                           std::vector<SymbolicAutomorphism>& out) {
  const GradingSpec& spec = R.spec();
  const GradedDivisionAlgebra& D = R.division();
  const TorsionGroup& T = D.group();
  unsigned k = R.blocks();
  TorsionElement e = TorsionElement::identity(T);
  DivisionAutomorphism id0 = division_identity(D);

  auto flat_plan = [&](const char* role) {
    ConjPlan plan;
    plan.role = role;
    plan.perm = identity_perm(k);
    plan.wdeg.assign(k, e);
    plan.psi0 = id0;
    plan.d0_degree = e;
    return plan;
  };

  // degree twists, one slot at a time
  for (unsigned slot = 0; slot < spec.q + spec.s; ++slot) {
    for (const TorsionElement& g : basis_generators(T)) {
      ConjPlan plan = flat_plan("diag_twist");
      if (slot < spec.q) {
        plan.wdeg[slot] = g;
      } else {
        unsigned a = spec.q + 2 * (slot - spec.q);
        plan.wdeg[a] = g;
        plan.wdeg[a + 1] = g;
      }
      out.push_back(solve_conj(R, plan));
    }
  }

  // transpositions of equal diagonal degrees
  for (unsigned i = 0; i + 1 < spec.q; ++i) {
    for (unsigned j = i + 1; j < spec.q; ++j) {
      if (!(spec.tau[i] == spec.tau[j])) continue;
      ConjPlan plan = flat_plan("sigma_perm");
      std::swap(plan.perm[i], plan.perm[j]);
      out.push_back(solve_conj(R, plan));
    }
  }

  // swap inside one pair
  for (unsigned p = 0; p < spec.s; ++p) {
    ConjPlan plan = flat_plan("pair_swap");
    unsigned a = spec.q + 2 * p;
    std::swap(plan.perm[a], plan.perm[a + 1]);
    out.push_back(solve_conj(R, plan));
  }

  // transpositions of adjacent pairs
  for (unsigned p = 0; p + 1 < spec.s; ++p) {
    ConjPlan plan = flat_plan("pair_perm");
    unsigned a = spec.q + 2 * p;
    std::swap(plan.perm[a], plan.perm[a + 2]);
    std::swap(plan.perm[a + 1], plan.perm[a + 3]);
    out.push_back(solve_conj(R, plan));
  }

  // stabilizer of the diagonal multiset, natural action for A-II and the
  // twisted one for the involution series
  SigmaAction kind = spec.series == Series::AII ? SigmaAction::natural : SigmaAction::twisted;
  MultisetSigma sigma = MultisetSigma::from_tuple(spec.tau);
  SigmaStabilizer stab = sigma_stabilizer(T, sigma, kind, bound);
  for (const AffineSymplectic& g : reduce_affine_generators(T, stab.generators)) {
    if (quad_sign(T, t_alpha(T, g.map)) != +1) {
      throw verification_error("twisted shift fails the plus-type constraint");
    }
    ConjPlan plan;
    plan.role = "sigma_aut";
    plan.perm = diagonal_matching(spec, g);
    plan.wdeg.assign(k, e);
    for (unsigned p = 0; p < spec.s; ++p) plan.wdeg[spec.q + 2 * p + 1] = g.shift;
    plan.psi0 = realize_division_map(D, g.map);
    plan.d0_degree = g.shift;
    out.push_back(solve_conj(R, plan));
  }

  // diagonal sign generators, one slot at a time
  if (spec.series == Series::AII) {
    Cyclotomic i4 = Cyclotomic::root_of_unity(4, 1);
    for (unsigned slot = 0; slot < spec.q + spec.s; ++slot) {
      SymbolicAutomorphism psi;
      psi.role = "sign_flip";
      psi.diag.assign(k, bs_one(T));
      if (slot < spec.q) {
        psi.diag[slot].c = i4;
      } else {
        unsigned a = spec.q + 2 * (slot - spec.q);
        psi.diag[a].c = i4;
        psi.diag[a + 1].c = i4;
      }
      out.push_back(psi);
    }
  }
}

void append_ai_generators(const GradedMatrixAlgebra& R, unsigned long bound,
                          std::vector<SymbolicAutomorphism>& out) {
  const GradedDivisionAlgebra& D = R.division();
  const TorsionGroup& T = D.group();
  unsigned k = R.blocks();

  for (unsigned slot = 0; slot < k; ++slot) {
    for (const TorsionElement& g : basis_generators(T)) {
      SymbolicAutomorphism psi;
      psi.role = "diag_twist";
      psi.diag.assign(k, bs_one(T));
      psi.diag[slot].u = g;
      out.push_back(psi);
    }
  }
  for (unsigned i = 0; i + 1 < k; ++i) {
    SymbolicAutomorphism psi;
    psi.role = "block_perm";
    psi.perm = identity_perm(k);
    std::swap(psi.perm[i], psi.perm[i + 1]);
    out.push_back(psi);
  }
  for (const SymplecticMap& alpha : aut_group(T, bound).generators) {
    SymbolicAutomorphism psi;
    psi.role = "division_aut";
    psi.division_map = realize_division_map(D, alpha);
    out.push_back(psi);
  }
  {
    SymbolicAutomorphism psi;
    psi.role = "flip";
    psi.antiflag = true;
    psi.division_map = realize_division_map(D, inversion_map(T));
    out.push_back(psi);
  }
}

}  // namespace

WeylDescription weyl_closed_form(const GradingSpec& spec, unsigned long bound) {
  validate_spec(spec, true);
  const TorsionGroup& T = spec.group;
  mpz_class torder = (long)T.order();
  WeylDescription out;

  switch (spec.series) {
    case Series::AI: {
      if (sl2_cartan(spec)) {
        out.term = leaf("Sym(2)", 2);
        break;
      }
      if (sl2_pauli(spec)) {
        out.term = leaf("Aut(T,beta)", 6);
        break;
      }
      mpz_class auto_order = aut_group(T, bound).order;
      out.term = node(
          "semidirect", "",
          {leaf("T^(k-1)", mpow(torder, spec.k - 1)),
           node("direct", "",
                {leaf("Sym(k)", factorial(spec.k)),
                 node("semidirect", "", {leaf("Aut(T,beta)", auto_order), leaf("flip", 2)})})});
      break;
    }
    case Series::B: {
      WeylTerm ws = node("wreath", "W(s)", {leaf("Z2", 2), leaf("Sym(s)", factorial(spec.s))});
      ws.order = mpow(2, spec.s) * factorial(spec.s);
      out.term = node("direct", "", {leaf("Sym(q)", factorial(spec.q)), std::move(ws)});
      break;
    }
    case Series::AII:
    case Series::C:
    case Series::D: {
      mpz_class symsigma = 1;
      for (unsigned m : multiplicities(spec)) symsigma *= factorial(m);
      WeylTerm inner = node(
          "semidirect", "",
          {node("direct", "",
                {leaf("T^(q+s-1)", mpow(torder, spec.q + spec.s - 1)), leaf("Z2^s", mpow(2, spec.s))}),
           node("direct", "",
                {leaf("SymSigma", symsigma), leaf("Sym(s)", factorial(spec.s))})});
      SigmaAction kind = spec.series == Series::AII ? SigmaAction::natural : SigmaAction::twisted;
      mpz_class stab =
          sigma_stabilizer(T, MultisetSigma::from_tuple(spec.tau), kind, bound).order;
      if (spec.series == Series::AII) {
        WeylTerm quot = node("semidirect", "", {std::move(inner), leaf("AutStarSigma", stab)});
        out.term = node("extension", "",
                        {leaf("N", mpow(2, spec.q + spec.s - 1)), std::move(quot)});
      } else {
        out.term = node("semidirect", "", {std::move(inner), leaf("AutSigma", stab)});
      }
      break;
    }
    default:
      throw std::domain_error("the Weyl description covers the classified series only");
  }
  out.order = out.term.order;
  return out;
}

std::vector<SymbolicAutomorphism> realize_generators(const GradingSpec& spec,
                                                     unsigned long bound) {
  validate_spec(spec, true);
  if (spec.series == Series::RAW_M || spec.series == Series::RAW_MPHI) {
    throw std::domain_error("the Weyl description covers the classified series only");
  }
  GradedMatrixAlgebra R = build_algebra(spec);
  std::vector<SymbolicAutomorphism> out;
  if (spec.series == Series::AI) {
    append_ai_generators(R, bound, out);
  } else {
    append_phi_generators(R, bound, out);
  }

  BasisAction phi;
  if (spec.phi_type()) phi = phi_basis_action(R);
  for (SymbolicAutomorphism& psi : out) {
    BasisAction A = symbolic_action(R, psi);
    verify_action(R, A);
    std::map<SupportElement, SupportElement> perm = induced_support_permutation(R, A);
    if (psi.role == "sign_flip") {
      for (const auto& [g, h] : perm) {
        if (!(g == h)) throw verification_error("sign generator moves the support");
      }
      continue;
    }
    if (!spec.phi_type()) continue;
    BasisAction left = compose(R, A, phi);
    BasisAction right = compose(R, phi, A);
    if (spec.series != Series::AII) {
      // the skew part generates the algebra, so a first-kind generator must
      // commute with the involution on the nose
      int sign = action_sign(left, right);
      if (sign != +1) {
        throw verification_error("generator does not commute with the involution");
      }
      psi.phi_sign = sign;
      if (psi.d0) transported_form_check(R, psi);
      continue;
    }
    // second-kind case: mirror pairs glue into one component and the fixed
    // components refine into two, so the generator must keep the mirror
    // pairing and twist each fixed component by a single scalar
    auto mirror_of = [&spec](const SupportElement& z) {
      SupportElement m = mirror_support(spec, z);
      return canonical_support(spec, m.i, m.j, m.t);
    };
    for (const auto& [z, w] : perm) {
      if (!(mirror_of(w) == perm.at(mirror_of(z)))) {
        throw verification_error("generator breaks the mirror pairing of the support");
      }
    }
    for (const auto& [z, basis] : R.components()) {
      if (!(mirror_of(z) == z)) continue;
      bool have = false;
      Cyclotomic ratio;
      for (const BasisIndex& b : basis) {
        const BasisImage& lb = left.img.at(b);
        const BasisImage& rb = right.img.at(b);
        if (!(lb.i == rb.i && lb.j == rb.j && lb.t == rb.t)) {
          throw verification_error("generator does not normalize the transpose twist");
        }
        Cyclotomic r = lb.c * rb.c.inverse();
        if (!have) {
          ratio = r;
          have = true;
        } else if (!(ratio == r)) {
          throw verification_error("generator twists a fixed component unevenly");
        }
      }
    }
    psi.phi_sign = +1;
    if (psi.d0) transported_form_check(R, psi);
  }
  return out;
}

std::vector<unsigned> support_permutation_vector(const GradedMatrixAlgebra& R,
                                                 const std::vector<SupportElement>& support,
                                                 const BasisAction& A) {
  std::map<SupportElement, unsigned> index;
  for (unsigned i = 0; i < support.size(); ++i) index[support[i]] = i;
  std::map<SupportElement, SupportElement> perm = induced_support_permutation(R, A);
  std::vector<unsigned> vec(support.size());
  for (const auto& [g, h] : perm) vec[index.at(g)] = index.at(h);
  return vec;
}

namespace {

unsigned f2_rank(std::vector<std::vector<bool>> rows) {
  unsigned rank = 0;
  if (rows.empty()) return 0;
  size_t cols = rows[0].size();
  for (size_t c = 0; c < cols; ++c) {
    size_t pivot = rows.size();
    for (size_t r = rank; r < rows.size(); ++r) {
      if (rows[r][c]) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][c]) {
        for (size_t cc = 0; cc < cols; ++cc) rows[r][cc] = rows[r][cc] != rows[rank][cc];
      }
    }
    ++rank;
    if (rank == rows.size()) break;
  }
  return rank;
}

}  // namespace

WeylClosure brute_force_weyl(const GradingSpec& spec, unsigned long support_bound,
                             unsigned long closure_bound) {
  validate_spec(spec, true);
  GradedMatrixAlgebra R = build_algebra(spec);

  WeylClosure out;
  for (const auto& [g, basis] : R.components()) {
    (void)basis;
    out.support.push_back(g);
  }
  if (out.support.size() > support_bound) {
    throw resource_error("component count exceeds the support bound");
  }

  // A-II stabilizer elements can act trivially on the support while still
  // swapping basis lines inside a component, so the faithful permutation
  // domain for the quotient is the set of basis lines, not the support
  bool use_lines = spec.series == Series::AII;
  std::vector<BasisIndex> line_list;
  std::map<BasisIndex, unsigned> line_index;
  if (use_lines) {
    for (const auto& [g, basis] : R.components()) {
      (void)g;
      for (const BasisIndex& b : basis) {
        line_index[b] = (unsigned)line_list.size();
        line_list.push_back(b);
      }
    }
    if (line_list.size() > support_bound) {
      throw resource_error("line count exceeds the support bound");
    }
  }
  auto line_perm = [&](const BasisAction& A) {
    std::vector<unsigned> vec(line_list.size());
    for (unsigned i = 0; i < line_list.size(); ++i) {
      const BasisImage& im = A.img.at(line_list[i]);
      vec[i] = line_index.at(BasisIndex{im.i, im.j, im.t});
    }
    return vec;
  };

  std::vector<SymbolicAutomorphism> gens = realize_generators(spec);
  std::vector<std::vector<unsigned>> genperms;
  std::vector<std::vector<bool>> sign_rows;
  for (const SymbolicAutomorphism& psi : gens) {
    if (psi.role == "sign_flip") {
      // nu per slot from the solved scalars, recorded as an F2 row
      std::vector<bool> row;
      for (unsigned slot = 0; slot < spec.q + spec.s; ++slot) {
        Cyclotomic nu = slot < spec.q
                            ? psi.diag[slot].c * psi.diag[slot].c
                            : psi.diag[spec.q + 2 * (slot - spec.q)].c *
                                  psi.diag[spec.q + 2 * (slot - spec.q) + 1].c;
        if (nu == Cyclotomic(1)) {
          row.push_back(false);
        } else if (nu == Cyclotomic(-1)) {
          row.push_back(true);
        } else {
          throw verification_error("sign generator scalar is not a sign");
        }
      }
      sign_rows.push_back(std::move(row));
      continue;
    }
    BasisAction act = symbolic_action(R, psi);
    genperms.push_back(use_lines ? line_perm(act)
                                 : support_permutation_vector(R, out.support, act));
  }

  std::vector<unsigned> id(use_lines ? line_list.size() : out.support.size());
  for (unsigned i = 0; i < id.size(); ++i) id[i] = i;
  std::set<std::vector<unsigned>> seen{id};
  std::deque<const std::vector<unsigned>*> frontier{&*seen.begin()};
  while (!frontier.empty()) {
    const std::vector<unsigned>& cur = *frontier.front();
    frontier.pop_front();
    for (const std::vector<unsigned>& p : genperms) {
      std::vector<unsigned> nxt(cur.size());
      for (unsigned i = 0; i < cur.size(); ++i) nxt[i] = p[cur[i]];
      auto [it, fresh] = seen.insert(std::move(nxt));
      if (fresh) {
        if (seen.size() > closure_bound) {
          throw resource_error("closure exceeds the element bound");
        }
        frontier.push_back(&*it);
      }
    }
  }
  out.quotient_order = (long)seen.size();
  out.elements.assign(seen.begin(), seen.end());

  if (spec.series == Series::AII) {
    if (sign_rows.size() != spec.q + spec.s) {
      throw verification_error("sign classes do not span the expected kernel");
    }
    std::vector<std::vector<bool>> with_ones = sign_rows;
    with_ones.emplace_back(spec.q + spec.s, true);
    unsigned rank = f2_rank(with_ones) - 1;
    if (rank != spec.q + spec.s - 1) {
      throw verification_error("sign classes do not span the expected kernel");
    }
    out.kernel_rank = rank;
  }
  out.order = mpow(2, out.kernel_rank) * out.quotient_order;
  return out;
}

}  // namespace graded
