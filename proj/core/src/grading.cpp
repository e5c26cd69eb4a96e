#include "graded/grading.hpp"

#include <algorithm>
#include <sstream>

namespace graded {

const char* series_name(Series s) {
  switch (s) {
    case Series::AI: return "AI";
    case Series::AII: return "AII";
    case Series::B: return "B";
    case Series::C: return "C";
    case Series::D: return "D";
    case Series::RAW_M: return "M";
    case Series::RAW_MPHI: return "Mphi";
  }
  return "?";
}

std::optional<Series> series_from_name(const std::string& name) {
  for (Series s : {Series::AI, Series::AII, Series::B, Series::C, Series::D, Series::RAW_M,
                   Series::RAW_MPHI}) {
    if (name == series_name(s)) return s;
  }
  return std::nullopt;
}

bool GradingSpec::phi_type() const {
  return series == Series::AII || series == Series::B || series == Series::C ||
         series == Series::D || series == Series::RAW_MPHI;
}

unsigned GradingSpec::size() const {
  unsigned d = 1;
  for (unsigned l : group.ell) d *= l;
  return blocks() * d;
}

Cyclotomic GradingSpec::pair_scalar(unsigned j) const {
  if (series == Series::C || series == Series::D) return Cyclotomic((long)delta);
  if (series == Series::RAW_MPHI && j < mu.size()) return mu[j];
  return Cyclotomic(1);
}

static void check_element(const TorsionGroup& T, const TorsionElement& t, const char* what) {
  if (t.e.size() != 2 * (size_t)T.rank()) {
    throw std::domain_error(std::string(what) + ": exponent vector has wrong length");
  }
  for (unsigned k = 0; k < T.rank(); ++k) {
    if (t.e[2 * k] >= T.ell[k] || t.e[2 * k + 1] >= T.ell[k]) {
      throw std::domain_error(std::string(what) + ": exponent out of range");
    }
  }
}

void validate_spec(const GradingSpec& spec, bool allow_sl2, bool require_fine) {
  for (unsigned l : spec.group.ell) {
    if (l < 2) throw std::domain_error("group orders must be at least 2");
  }
  if (spec.phi_type()) {
    if (!spec.group.elementary2()) {
      throw std::domain_error("transpose-twisted series require an elementary 2-group");
    }
    if (spec.tau.size() != spec.q) throw std::domain_error("tau must list exactly q elements");
    if (spec.q + 2 * spec.s < 1) throw std::domain_error("q + 2s must be at least 1");
    for (const TorsionElement& t : spec.tau) check_element(spec.group, t, "tau");
    if (require_fine && spec.q == 2 && spec.s == 0 && spec.tau[0] == spec.tau[1]) {
      throw std::domain_error("q = 2, s = 0 with equal tau entries refines further");
    }
    switch (spec.series) {
      case Series::AII:
        for (const Cyclotomic& m : spec.mu) {
          if (!m.is_one()) throw std::domain_error("AII pair scalars are normalized to 1");
        }
        if (spec.delta != +1) throw std::domain_error("AII does not carry a sign");
        break;
      case Series::B:
        if (spec.group.rank() != 0) throw std::domain_error("B requires the trivial group");
        if (spec.delta != +1) throw std::domain_error("B requires delta = +1");
        break;
      case Series::C:
        if (spec.delta != -1) throw std::domain_error("C requires delta = -1");
        for (const TorsionElement& t : spec.tau) {
          if (quad_sign(spec.group, t) != -1) {
            throw std::domain_error("C requires transpose-antisymmetric tau entries");
          }
        }
        break;
      case Series::D:
        if (spec.delta != +1) throw std::domain_error("D requires delta = +1");
        for (const TorsionElement& t : spec.tau) {
          if (quad_sign(spec.group, t) != +1) {
            throw std::domain_error("D requires transpose-symmetric tau entries");
          }
        }
        break;
      case Series::RAW_MPHI:
        if (!spec.mu.empty() && spec.mu.size() != spec.s) {
          throw std::domain_error("pair scalar list must have s entries");
        }
        for (const Cyclotomic& m : spec.mu) {
          if (m.is_zero()) throw std::domain_error("pair scalars must be nonzero");
        }
        break;
      default: break;
    }
  } else {
    if (spec.k < 1) throw std::domain_error("block count must be at least 1");
    if (spec.q != 0 || spec.s != 0 || !spec.tau.empty() || !spec.mu.empty()) {
      throw std::domain_error("q, s, tau, mu do not apply to this series");
    }
    if (spec.series == Series::AI && spec.group.elementary2() && spec.k < 3) {
      if (!(allow_sl2 && spec.size() == 2)) {
        throw std::domain_error("AI with an elementary 2-group needs at least 3 blocks");
      }
    }
  }
}

SupportElement mirror_support(const GradingSpec& spec, const SupportElement& z) {
  if (!spec.phi_type() || z.diagonal()) return z;
  const TorsionGroup& T = spec.group;
  auto iota = [&](unsigned i) -> unsigned {
    if (i <= spec.q) return i;
    unsigned off = i - spec.q;  // 1-based within the pair range
    return spec.q + (off % 2 == 1 ? off + 1 : off - 1);
  };
  auto shift = [&](unsigned i) -> TorsionElement {
    return i <= spec.q ? spec.tau[i - 1] : TorsionElement::identity(T);
  };
  TorsionElement t = mul(T, mul(T, shift(z.i), inv(T, shift(z.j))), z.t);
  return SupportElement{iota(z.j), iota(z.i), t};
}

SupportElement canonical_support(const GradingSpec& spec, unsigned i, unsigned j,
                                 const TorsionElement& t) {
  if (i == j) return SupportElement{1, 1, t};
  SupportElement z{i, j, t};
  SupportElement m = mirror_support(spec, z);
  return m < z ? m : z;
}

static unsigned checked_size(const GradingSpec& spec) {
  validate_spec(spec, /*allow_sl2=*/true);
  unsigned n = spec.size();
  if (n > 128) throw resource_error("matrix size exceeds the supported bound");
  return n;
}

GradedMatrixAlgebra::GradedMatrixAlgebra(GradingSpec spec)
    : spec_(std::move(spec)), n_(checked_size(spec_)), div_(spec_.group) {
  unsigned k = blocks();
  for (unsigned i = 1; i <= k; ++i) {
    for (unsigned j = 1; j <= k; ++j) {
      for (const TorsionElement& t : all_elements(spec_.group)) {
        components_[canonical_support(spec_, i, j, t)].push_back(BasisIndex{i, j, t});
      }
    }
  }
  if (n_ <= 12) verify_grading_axiom();
}

SupportElement GradedMatrixAlgebra::degree(const BasisIndex& b) const {
  return canonical_support(spec_, b.i, b.j, b.t);
}

const std::vector<BasisIndex>& GradedMatrixAlgebra::component(const SupportElement& g) const {
  auto it = components_.find(g);
  if (it == components_.end()) throw std::domain_error("no component of that degree");
  return it->second;
}

CycMatrix GradedMatrixAlgebra::from_block(unsigned i, unsigned j, const CycMatrix& block) const {
  unsigned d = div_.dim();
  if (block.rows() != d || block.cols() != d) throw std::domain_error("block has wrong size");
  CycMatrix M(n_, n_);
  for (unsigned a = 0; a < d; ++a) {
    for (unsigned b = 0; b < d; ++b) {
      M.at((i - 1) * d + a, (j - 1) * d + b) = block.at(a, b);
    }
  }
  return M;
}

CycMatrix GradedMatrixAlgebra::basis_matrix(const BasisIndex& b) const {
  return from_block(b.i, b.j, div_.pauli(b.t));
}

void GradedMatrixAlgebra::verify_grading_axiom() const {
  std::vector<BasisIndex> basis;
  for (const auto& [g, elems] : components_) {
    basis.insert(basis.end(), elems.begin(), elems.end());
  }
  std::map<std::pair<SupportElement, SupportElement>, SupportElement> product_degree;
  for (const BasisIndex& a : basis) {
    CycMatrix ma = basis_matrix(a);
    for (const BasisIndex& b : basis) {
      if (a.j != b.i) continue;
      TorsionElement tu = mul(spec_.group, a.t, b.t);
      CycMatrix expected =
          basis_matrix(BasisIndex{a.i, b.j, tu}).scaled(div_.cocycle(a.t, b.t));
      if (ma * basis_matrix(b) != expected) {
        throw verification_error("basis product deviates from the division cocycle");
      }
      auto key = std::make_pair(degree(a), degree(b));
      SupportElement dg = canonical_support(spec_, a.i, b.j, tu);
      auto [it, inserted] = product_degree.emplace(key, dg);
      if (!inserted && it->second != dg) {
        throw verification_error("component product spreads over several degrees");
      }
    }
  }
}

GradedMatrixAlgebra build_M(const TorsionGroup& T, unsigned k) {
  GradingSpec spec;
  spec.series = Series::RAW_M;
  spec.group = T;
  spec.k = k;
  return GradedMatrixAlgebra(spec);
}

GradedMatrixAlgebra build_M_phi(const GradingSpec& spec) {
  if (!spec.phi_type()) throw std::domain_error("spec does not describe a twisted grading");
  return GradedMatrixAlgebra(spec);
}

GradedMatrixAlgebra build_algebra(const GradingSpec& spec) { return GradedMatrixAlgebra(spec); }

std::vector<std::vector<mpz_class>> ZPresentation::relation_columns() const {
  std::vector<std::vector<mpz_class>> cols;
  for (const auto& word : words) {
    std::vector<mpz_class> col(gens(), 0);
    for (auto [g, e] : word) col[g] += e;
    cols.push_back(std::move(col));
  }
  return cols;
}

static std::vector<unsigned> element_bits(const TorsionElement& t) {
  std::vector<unsigned> idx;
  for (unsigned m = 0; m < t.e.size(); ++m) {
    if (t.e[m]) idx.push_back(m);
  }
  return idx;
}

ZPresentation universal_presentation(const GradingSpec& spec) {
  validate_spec(spec, /*allow_sl2=*/true);
  const TorsionGroup& T = spec.group;
  ZPresentation pres;
  for (unsigned m = 0; m < T.rank(); ++m) {
    pres.names.push_back("a" + std::to_string(m + 1));
    pres.names.push_back("b" + std::to_string(m + 1));
  }
  unsigned nz;
  if (spec.phi_type()) {
    nz = spec.s == 0 ? (spec.q > 0 ? spec.q - 1 : 0) : spec.q + spec.s;
  } else {
    nz = spec.k - 1;
  }
  unsigned zbase = 2 * T.rank();
  for (unsigned i = 1; i <= nz; ++i) pres.names.push_back("z" + std::to_string(i));

  for (unsigned m = 0; m < 2 * T.rank(); ++m) {
    pres.words.push_back({{m, T.ell[m / 2]}});
  }
  if (spec.phi_type()) {
    // z_i^2 = t_i t_{i+1} for i < q, and z_q^2 z_{q+s} = t_q when both blocks
    // are present; exponents stay nonnegative since every t has order 2
    for (unsigned i = 1; i + 1 <= spec.q; ++i) {
      std::vector<std::pair<unsigned, unsigned>> w{{zbase + i - 1, 2}};
      for (unsigned m : element_bits(mul(T, spec.tau[i - 1], spec.tau[i]))) w.push_back({m, 1});
      pres.words.push_back(std::move(w));
    }
    if (spec.q > 0 && spec.s > 0) {
      std::vector<std::pair<unsigned, unsigned>> w{{zbase + spec.q - 1, 2},
                                                   {zbase + spec.q + spec.s - 1, 1}};
      for (unsigned m : element_bits(spec.tau[spec.q - 1])) w.push_back({m, 1});
      pres.words.push_back(std::move(w));
    }
  }
  return pres;
}

// F2-reduced basis of the span of the given order-2 elements
static std::vector<TorsionElement> f2_span_basis(const TorsionGroup& T,
                                                 const std::vector<TorsionElement>& gens) {
  std::vector<TorsionElement> basis;
  for (TorsionElement v : gens) {
    for (const TorsionElement& b : basis) {
      unsigned lead = (unsigned)(element_bits(b)[0]);
      if (v.e[lead]) v = mul(T, v, b);
    }
    if (!v.is_identity()) {
      basis.push_back(v);
      std::sort(basis.begin(), basis.end(), [](const TorsionElement& x, const TorsionElement& y) {
        return element_bits(x)[0] < element_bits(y)[0];
      });
    }
  }
  return basis;
}

static AbelianInvariants group_invariants(const TorsionGroup& T) {
  std::vector<std::vector<mpz_class>> cols;
  for (unsigned m = 0; m < 2 * T.rank(); ++m) {
    std::vector<mpz_class> col(2 * T.rank(), 0);
    col[m] = T.ell[m / 2];
    cols.push_back(std::move(col));
  }
  return abelian_quotient(2 * T.rank(), cols);
}

UniversalPresentation reduce_presentation(const ZPresentation& pres) {
  auto cols = pres.relation_columns();
  std::vector<std::vector<mpz_class>> A(pres.gens(), std::vector<mpz_class>(cols.size(), 0));
  for (unsigned c = 0; c < cols.size(); ++c) {
    for (unsigned g = 0; g < pres.gens(); ++g) A[g][c] = cols[c][g];
  }
  SmithNormalForm snf = smith_left(A);

  UniversalPresentation up;
  up.generator_names = pres.names;
  unsigned gens = pres.gens();
  std::vector<unsigned> torsion_rows, free_rows;
  for (unsigned r = 0; r < gens; ++r) {
    mpz_class d = r < snf.diag.size() ? snf.diag[r] : mpz_class(0);
    if (d == 0) {
      free_rows.push_back(r);
    } else if (d > 1) {
      torsion_rows.push_back(r);
      up.invariants.torsion.push_back(d.get_ui());
    }
  }
  up.invariants.free_rank = (unsigned)free_rows.size();
  up.free_rank = up.invariants.free_rank;
  for (unsigned long d : up.invariants.torsion) {
    if (d == 2) ++up.two_rank;
    if (d == 4) ++up.four_rank;
  }
  for (unsigned g = 0; g < gens; ++g) {
    std::vector<mpz_class> img;
    for (unsigned r : torsion_rows) {
      mpz_class d = snf.diag[r];
      mpz_class c = snf.U[r][g] % d;
      if (c < 0) c += d;
      img.push_back(c);
    }
    for (unsigned r : free_rows) img.push_back(snf.U[r][g]);
    up.generator_images.push_back(std::move(img));
  }
  return up;
}

UniversalPresentation universal_group(const GradingSpec& spec) {
  ZPresentation pres = universal_presentation(spec);
  UniversalPresentation up = reduce_presentation(pres);

  AbelianInvariants expected;
  if (spec.phi_type()) {
    std::vector<TorsionElement> t0gens;
    for (unsigned i = 1; i + 1 <= spec.q; ++i) {
      t0gens.push_back(mul(spec.group, spec.tau[i - 1], spec.tau[i]));
    }
    up.T0_basis = f2_span_basis(spec.group, t0gens);
    up.T0_dim = (unsigned)up.T0_basis.size();
    long dimT = 2 * (long)spec.group.rank();
    long a = dimT - 2 * (long)up.T0_dim + (spec.q > 0 ? (long)spec.q - 1 : 0);
    if (a < 0) throw verification_error("negative 2-rank in the closed form");
    expected.torsion.assign((size_t)a, 2);
    expected.torsion.insert(expected.torsion.end(), up.T0_dim, 4);
    expected.free_rank = spec.s;
  } else {
    expected = group_invariants(spec.group);
    expected.free_rank = spec.k - 1;
  }
  if (!(up.invariants == expected)) {
    throw verification_error("universal group reduction disagrees with the closed form");
  }
  return up;
}

void validate_diag(const GradingSpec& spec, const DiagElement& d) {
  if (d.scalars.size() != spec.blocks()) {
    throw std::domain_error("diagonal element needs one scalar per block");
  }
  for (const Cyclotomic& c : d.scalars) {
    if (c.is_zero()) throw std::domain_error("diagonal scalars must be nonzero");
  }
  check_element(spec.group, d.twist, "twist");
  if (!spec.phi_type()) return;
  std::vector<Cyclotomic> chain;
  for (unsigned i = 0; i < spec.q; ++i) {
    chain.push_back(d.scalars[i] * d.scalars[i] * beta_eval(spec.group, d.twist, spec.tau[i]));
  }
  for (unsigned j = 0; j < spec.s; ++j) {
    chain.push_back(d.scalars[spec.q + 2 * j] * d.scalars[spec.q + 2 * j + 1]);
  }
  for (const Cyclotomic& v : chain) {
    if (v != chain.front()) {
      throw std::domain_error("scalars violate the diagonal relation chain");
    }
  }
}

CycMatrix diag_matrix(const GradedMatrixAlgebra& R, const DiagElement& d) {
  validate_diag(R.spec(), d);
  unsigned n = R.size(), dd = R.division().dim();
  CycMatrix M(n, n);
  const CycMatrix& X = R.division().pauli(d.twist);
  for (unsigned i = 0; i < R.blocks(); ++i) {
    for (unsigned a = 0; a < dd; ++a) {
      for (unsigned b = 0; b < dd; ++b) {
        M.at(i * dd + a, i * dd + b) = d.scalars[i] * X.at(a, b);
      }
    }
  }
  return M;
}

Cyclotomic diag_component_scalar(const GradedMatrixAlgebra& R, const DiagElement& d,
                                 const SupportElement& g) {
  validate_diag(R.spec(), d);
  const GradedDivisionAlgebra& D = R.division();
  std::vector<Cyclotomic> seen;
  for (const BasisIndex& b : R.component(g)) {
    CycMatrix M = D.pauli(d.twist) * D.pauli(b.t) * D.pauli_inverse(d.twist);
    Cyclotomic c = d.scalars[b.i - 1] * d.scalars[b.j - 1].inverse() * D.match_scalar(M, b.t);
    seen.push_back(std::move(c));
  }
  for (const Cyclotomic& c : seen) {
    if (c != seen.front()) {
      throw verification_error("diagonal element is not scalar on a component");
    }
  }
  return seen.front();
}

}  // namespace graded
