#include "graded/involution.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace graded {

namespace {

CycMatrix phi_matrix_for(const GradedMatrixAlgebra& R) {
  const GradingSpec& spec = R.spec();
  if (!spec.phi_type()) {
    throw std::domain_error("series carries no transpose twist");
  }
  const GradedDivisionAlgebra& D = R.division();
  CycMatrix phi(R.size(), R.size());
  for (unsigned i = 1; i <= spec.q; ++i) {
    phi = phi + R.from_block(i, i, D.pauli(spec.tau[i - 1]));
  }
  CycMatrix id = CycMatrix::identity(D.dim());
  for (unsigned j = 0; j < spec.s; ++j) {
    unsigned a = spec.q + 2 * j + 1;
    phi = phi + R.from_block(a, a + 1, id);
    phi = phi + R.from_block(a + 1, a, id.scaled(spec.pair_scalar(j)));
  }
  return phi;
}

// basis indices to sweep: everything for small n, one per component beyond
std::vector<BasisIndex> sweep_basis(const GradedMatrixAlgebra& R) {
  std::vector<BasisIndex> out;
  bool full = R.size() <= 32;
  for (const auto& [g, basis] : R.components()) {
    if (full) {
      out.insert(out.end(), basis.begin(), basis.end());
    } else {
      out.push_back(basis.front());
    }
  }
  return out;
}

MultisetSigma sigma_of(const GradingSpec& spec) {
  return MultisetSigma::from_tuple(spec.tau);
}

}  // namespace

PhiMap build_phi(const GradedMatrixAlgebra& R) {
  CycMatrix phi = phi_matrix_for(R);
  PhiMap m{phi, phi.inverse()};
  for (const BasisIndex& b : sweep_basis(R)) {
    CycMatrix img = m.action(R.basis_matrix(b));
    std::optional<BlockAtom> atom = block_atom(R, img);
    if (!atom || canonical_support(R.spec(), atom->i, atom->j, atom->t) != R.degree(b)) {
      throw verification_error("transpose twist does not preserve the components");
    }
  }
  return m;
}

PhiMap build_phi(const GradingSpec& spec) {
  return build_phi(GradedMatrixAlgebra(spec));
}

std::optional<BlockAtom> block_atom(const GradedMatrixAlgebra& R, const CycMatrix& M) {
  if (M.rows() != R.size() || M.cols() != R.size()) {
    throw std::domain_error("matrix size does not match the algebra");
  }
  unsigned d = R.division().dim();
  unsigned kb = R.blocks();
  std::optional<std::pair<unsigned, unsigned>> pos;
  for (unsigned bi = 0; bi < kb; ++bi) {
    for (unsigned bj = 0; bj < kb; ++bj) {
      bool nonzero = false;
      for (unsigned a = 0; a < d && !nonzero; ++a) {
        for (unsigned b = 0; b < d && !nonzero; ++b) {
          if (!M.at(bi * d + a, bj * d + b).is_zero()) nonzero = true;
        }
      }
      if (!nonzero) continue;
      if (pos) return std::nullopt;
      pos = {bi, bj};
    }
  }
  if (!pos) return std::nullopt;
  CycMatrix block(d, d);
  for (unsigned a = 0; a < d; ++a) {
    for (unsigned b = 0; b < d; ++b) {
      block.at(a, b) = M.at(pos->first * d + a, pos->second * d + b);
    }
  }
  for (const TorsionElement& t : all_elements(R.division().group())) {
    if (std::optional<Cyclotomic> c = R.division().try_match(block, t)) {
      return BlockAtom{pos->first + 1, pos->second + 1, t, *c};
    }
  }
  return std::nullopt;
}

bool check_phi_grading(const GradedMatrixAlgebra& R, const PhiMap& phi) {
  if (phi.phi_matrix.rows() != R.size() || phi.phi_matrix.cols() != R.size()) {
    throw std::domain_error("matrix size does not match the algebra");
  }
  std::map<SupportElement, Cyclotomic> square_scalar;
  for (const BasisIndex& b : sweep_basis(R)) {
    SupportElement g = R.degree(b);
    CycMatrix B = R.basis_matrix(b);
    CycMatrix img = phi.action(B);
    std::optional<BlockAtom> atom = block_atom(R, img);
    if (!atom || canonical_support(R.spec(), atom->i, atom->j, atom->t) != g) {
      return false;
    }
    // phi^2 must multiply each basis matrix by a component-wide scalar
    CycMatrix sq = phi.action(img);
    std::optional<BlockAtom> satom = block_atom(R, sq);
    if (!satom || satom->i != b.i || satom->j != b.j || !(satom->t == b.t)) {
      return false;
    }
    auto it = square_scalar.find(g);
    if (it == square_scalar.end()) {
      square_scalar.emplace(g, satom->c);
    } else if (it->second != satom->c) {
      return false;
    }
  }
  return true;
}

const char* involution_type_name(InvolutionType t) {
  switch (t) {
    case InvolutionType::orthogonal: return "orthogonal";
    case InvolutionType::symplectic: return "symplectic";
    default: return "not_involution";
  }
}

InvolutionType involution_type(const GradingSpec& spec) {
  validate_spec(spec);
  if (!spec.phi_type()) {
    throw std::domain_error("series carries no transpose twist");
  }
  std::optional<int> delta;
  bool involution = true;
  auto feed = [&](int v) {
    if (!delta) {
      delta = v;
    } else if (*delta != v) {
      involution = false;
    }
  };
  for (const TorsionElement& t : spec.tau) feed(quad_sign(spec.group, t));
  for (unsigned j = 0; j < spec.s && involution; ++j) {
    Cyclotomic m = spec.pair_scalar(j);
    if (m.is_one()) {
      feed(+1);
    } else if (m == Cyclotomic(-1L)) {
      feed(-1);
    } else {
      involution = false;
    }
  }
  InvolutionType by_criterion =
      !involution ? InvolutionType::not_involution
                  : (*delta == +1 ? InvolutionType::orthogonal : InvolutionType::symplectic);

  GradedMatrixAlgebra R{spec};
  PhiMap phi = build_phi(R);
  bool identity = true;
  for (const BasisIndex& b : sweep_basis(R)) {
    CycMatrix B = R.basis_matrix(b);
    if (phi.action(phi.action(B)) != B) {
      identity = false;
      break;
    }
  }
  InvolutionType by_matrix = InvolutionType::not_involution;
  if (identity) {
    CycMatrix t = phi.phi_matrix.transposed();
    if (t == phi.phi_matrix) {
      by_matrix = InvolutionType::orthogonal;
    } else if (t == phi.phi_matrix.scaled(Cyclotomic(-1L))) {
      by_matrix = InvolutionType::symplectic;
    } else {
      throw verification_error("squared twist is identity but the matrix is not (anti)symmetric");
    }
  }
  if (by_matrix != by_criterion) {
    throw verification_error("involution criterion disagrees with the matrix computation");
  }
  return by_criterion;
}

bool is_fine_phi(const GradingSpec& spec) {
  validate_spec(spec, /*allow_sl2=*/false, /*require_fine=*/false);
  if (!spec.phi_type()) return true;
  return !(spec.q == 2 && spec.s == 0 && spec.tau[0] == spec.tau[1]);
}

SesquilinearWitness sesquilinear_witness(const GradingSpec& spec) {
  GradedMatrixAlgebra R{spec};
  return SesquilinearWitness{phi_matrix_for(R)};
}

bool adjoint_identity(const GradingSpec& spec) {
  GradedMatrixAlgebra R{spec};
  PhiMap phi = build_phi(R);
  SesquilinearWitness w{phi.phi_matrix};
  unsigned n = R.size();
  unsigned d = R.division().dim();
  // x, y sweep the n-by-d matrix units, r the n-by-n matrix units
  auto unit_nd = [&](unsigned a, unsigned b) {
    CycMatrix m(n, d);
    m.at(a, b) = Cyclotomic(1);
    return m;
  };
  for (unsigned p = 0; p < n; ++p) {
    for (unsigned q2 = 0; q2 < n; ++q2) {
      CycMatrix r(n, n);
      r.at(p, q2) = Cyclotomic(1);
      CycMatrix phir = phi.action(r);
      for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = 0; b < d; ++b) {
          CycMatrix x = unit_nd(a, b);
          CycMatrix rx = r * x;
          for (unsigned c2 = 0; c2 < n; ++c2) {
            for (unsigned e2 = 0; e2 < d; ++e2) {
              CycMatrix y = unit_nd(c2, e2);
              if (w.form(rx, y) != w.form(x, phir * y)) return false;
            }
          }
        }
      }
    }
  }
  return true;
}

EquivalenceWitness weakly_equivalent_witness(const GradingSpec& a, const GradingSpec& b) {
  validate_spec(a);
  validate_spec(b);
  if (!a.phi_type() || !b.phi_type()) {
    throw std::domain_error("weak equivalence compares transpose-twisted specs");
  }
  EquivalenceWitness out;
  if (!(a.group == b.group) || a.q != b.q || a.s != b.s) return out;
  auto [ca, wa] = orbit_canonical_with_witness(a.group, sigma_of(a), SigmaAction::natural);
  auto [cb, wb] = orbit_canonical_with_witness(b.group, sigma_of(b), SigmaAction::natural);
  if (!(ca == cb)) return out;
  out.equivalent = true;
  out.transporter = affine_compose(a.group, affine_inverse(a.group, wb), wa);
  return out;
}

bool weakly_equivalent(const GradingSpec& a, const GradingSpec& b) {
  return weakly_equivalent_witness(a, b).equivalent;
}

EquivalenceWitness equivalent_involution_witness(const GradingSpec& a, const GradingSpec& b) {
  InvolutionType ta = involution_type(a);
  InvolutionType tb = involution_type(b);
  if (ta == InvolutionType::not_involution || tb == InvolutionType::not_involution) {
    throw std::domain_error("spec does not define an involution");
  }
  EquivalenceWitness out;
  if (ta != tb) return out;
  if (!(a.group == b.group) || a.q != b.q || a.s != b.s) return out;
  auto [ca, wa] = orbit_canonical_with_witness(a.group, sigma_of(a), SigmaAction::twisted);
  auto [cb, wb] = orbit_canonical_with_witness(b.group, sigma_of(b), SigmaAction::twisted);
  if (!(ca == cb)) return out;
  out.equivalent = true;
  out.transporter = affine_compose(a.group, affine_inverse(a.group, wb), wa);
  return out;
}

bool equivalent_involution(const GradingSpec& a, const GradingSpec& b) {
  return equivalent_involution_witness(a, b).equivalent;
}

namespace {

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned k = 1; k <= n; ++k) {
    if (n % k == 0) out.push_back(k);
  }
  return out;
}

void partitions_rec(unsigned e, unsigned largest, std::vector<unsigned>& cur,
                    std::vector<std::vector<unsigned>>& out) {
  if (e == 0) {
    out.push_back(cur);
    return;
  }
  for (unsigned part = std::min(e, largest); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(e - part, part, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<unsigned>> partitions_of(unsigned e) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  partitions_rec(e, e, cur, out);
  return out;
}

// cycle orders of the abelian groups of order m, each as a sorted
// prime-power list; m = 1 yields the single empty list
std::vector<std::vector<unsigned>> abelian_orders(unsigned m) {
  std::vector<std::pair<unsigned, unsigned>> factor;
  unsigned rest = m;
  for (unsigned p = 2; (unsigned long)p * p <= rest; ++p) {
    if (rest % p) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    factor.push_back({p, e});
  }
  if (rest > 1) factor.push_back({rest, 1});
  std::vector<std::vector<unsigned>> out{{}};
  for (const auto& [p, e] : factor) {
    std::vector<std::vector<unsigned>> next;
    for (const std::vector<unsigned>& lam : partitions_of(e)) {
      std::vector<unsigned> powers;
      for (unsigned part : lam) {
        unsigned pw = 1;
        for (unsigned i = 0; i < part; ++i) pw *= p;
        powers.push_back(pw);
      }
      for (const std::vector<unsigned>& prefix : out) {
        std::vector<unsigned> combined = prefix;
        combined.insert(combined.end(), powers.begin(), powers.end());
        next.push_back(combined);
      }
    }
    out = std::move(next);
  }
  for (std::vector<unsigned>& ell : out) std::sort(ell.begin(), ell.end());
  std::sort(out.begin(), out.end());
  return out;
}

// orbit representatives of size-q multisets over the pool, canonical flats
std::vector<std::vector<TorsionElement>> sigma_orbit_reps(
    const TorsionGroup& T, unsigned q, SigmaAction kind,
    const std::vector<TorsionElement>& pool) {
  std::vector<std::vector<TorsionElement>> combos;
  std::vector<TorsionElement> cur;
  auto rec = [&](auto&& self, unsigned start) -> void {
    if (cur.size() == q) {
      combos.push_back(cur);
      return;
    }
    for (unsigned idx = start; idx < pool.size(); ++idx) {
      cur.push_back(pool[idx]);
      self(self, idx);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::set<MultisetSigma> canon;
  for (const std::vector<TorsionElement>& combo : combos) {
    canon.insert(orbit_canonical(T, MultisetSigma::from_tuple(combo), kind));
  }
  std::vector<std::vector<TorsionElement>> reps;
  for (const MultisetSigma& sig : canon) reps.push_back(sig.flat());
  return reps;
}

bool refines_further(unsigned q, unsigned s, const std::vector<TorsionElement>& tau) {
  return q == 2 && s == 0 && tau[0] == tau[1];
}

// lexicographic (r, q, s, tau) order used for deterministic output
bool spec_less(const GradingSpec& a, const GradingSpec& b) {
  if (a.group.rank() != b.group.rank()) return a.group.rank() < b.group.rank();
  if (a.q != b.q) return a.q < b.q;
  if (a.s != b.s) return a.s < b.s;
  return a.tau < b.tau;
}

std::vector<GradingSpec> enumerate_ai(unsigned n) {
  std::vector<GradingSpec> out;
  for (unsigned k : divisors(n)) {
    for (const std::vector<unsigned>& ell : abelian_orders(n / k)) {
      TorsionGroup T;
      T.ell = ell;
      if (T.elementary2() && k <= 2) continue;
      GradingSpec spec;
      spec.series = Series::AI;
      spec.group = T;
      spec.k = k;
      validate_spec(spec);
      out.push_back(spec);
    }
  }
  std::sort(out.begin(), out.end(), [](const GradingSpec& a, const GradingSpec& b) {
    if (a.k != b.k) return a.k < b.k;
    return a.group.ell < b.group.ell;
  });
  return out;
}

std::vector<GradingSpec> enumerate_phi_series(Series series, unsigned n) {
  std::vector<GradingSpec> out;
  for (unsigned r = 0; (1u << r) <= n; ++r) {
    if (n % (1u << r)) continue;
    unsigned m = n >> r;
    TorsionGroup T;
    T.ell.assign(r, 2);
    std::vector<TorsionElement> pool;
    for (const TorsionElement& t : all_elements(T)) {
      if (series == Series::AII || quad_sign(T, t) == (series == Series::C ? -1 : +1)) {
        pool.push_back(t);
      }
    }
    SigmaAction kind = series == Series::AII ? SigmaAction::natural : SigmaAction::twisted;
    for (unsigned s = 0; 2 * s <= m; ++s) {
      unsigned q = m - 2 * s;
      if (q > 0 && pool.empty()) continue;
      for (std::vector<TorsionElement>& tau : sigma_orbit_reps(T, q, kind, pool)) {
        if (refines_further(q, s, tau)) continue;
        GradingSpec spec;
        spec.series = series;
        spec.group = T;
        spec.q = q;
        spec.s = s;
        spec.tau = std::move(tau);
        spec.delta = series == Series::C ? -1 : +1;
        validate_spec(spec);
        out.push_back(spec);
      }
    }
  }
  std::sort(out.begin(), out.end(), spec_less);
  return out;
}

std::vector<GradingSpec> enumerate_b(unsigned n) {
  std::vector<GradingSpec> out;
  TorsionGroup trivial;
  for (unsigned s = 0; 2 * s < n; ++s) {
    GradingSpec spec;
    spec.series = Series::B;
    spec.group = trivial;
    spec.q = n - 2 * s;
    spec.s = s;
    spec.tau.assign(spec.q, TorsionElement::identity(trivial));
    validate_spec(spec);
    out.push_back(spec);
  }
  std::sort(out.begin(), out.end(), spec_less);
  return out;
}

}  // namespace

std::vector<GradingSpec> enumerate_fine_gradings(Series series, unsigned n) {
  switch (series) {
    case Series::AI:
      if (n < 3) throw std::domain_error("series A requires n >= 3");
      return enumerate_ai(n);
    case Series::AII:
      if (n < 3) throw std::domain_error("series A requires n >= 3");
      return enumerate_phi_series(Series::AII, n);
    case Series::B:
      if (n % 2 == 0 || n < 5) throw std::domain_error("series B requires odd n >= 5");
      return enumerate_b(n);
    case Series::C:
      if (n % 2 != 0 || n < 4) throw std::domain_error("series C requires even n >= 4");
      return enumerate_phi_series(Series::C, n);
    case Series::D:
      if (n % 2 != 0 || n < 6 || n == 8) {
        throw std::domain_error("series D requires even n >= 6, n != 8");
      }
      return enumerate_phi_series(Series::D, n);
    default:
      throw std::domain_error("enumeration covers the classified series only");
  }
}

}  // namespace graded
