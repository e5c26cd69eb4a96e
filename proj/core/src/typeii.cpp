#include "graded/grading.hpp"
#include "graded/involution.hpp"

#include <algorithm>

namespace graded {

namespace {

// support symbol of each presentation generator: T-basis elements first,
// then the chain symbols z_1, ..., z_m
std::vector<SupportElement> generator_supports(const GradingSpec& spec) {
  const TorsionGroup& T = spec.group;
  TorsionElement e = TorsionElement::identity(T);
  std::vector<SupportElement> out;
  for (unsigned k = 0; k < T.rank(); ++k) {
    out.push_back(canonical_support(spec, 1, 1, basis_a(T, k)));
    out.push_back(canonical_support(spec, 1, 1, basis_b(T, k)));
  }
  unsigned zq = spec.s == 0 ? (spec.q > 0 ? spec.q - 1 : 0) : spec.q;
  for (unsigned i = 1; i <= zq; ++i) {
    out.push_back(canonical_support(spec, i, i + 1, e));
  }
  if (spec.s > 0) {
    for (unsigned i = 1; i + 1 <= spec.s; ++i) {
      out.push_back(canonical_support(spec, spec.q + 2 * i - 1, spec.q + 2 * i + 1, e));
    }
    out.push_back(canonical_support(spec, spec.q + 1, spec.q + 2, e));
  }
  return out;
}

// phi^2 scalar on every component, verified to be a sign
std::map<SupportElement, int> component_lambda_map(const GradedMatrixAlgebra& R,
                                                   const PhiMap& phi) {
  std::map<SupportElement, int> out;
  bool full = R.size() <= 12;
  for (const auto& [g, basis] : R.components()) {
    std::optional<int> value;
    for (const BasisIndex& b : basis) {
      CycMatrix B = R.basis_matrix(b);
      CycMatrix sq = phi.action(phi.action(B));
      int sign;
      if (sq == B) {
        sign = +1;
      } else if (sq == B.scaled(Cyclotomic(-1L))) {
        sign = -1;
      } else {
        throw verification_error("squared twist is not a sign on a component");
      }
      if (!value) {
        value = sign;
      } else if (*value != sign) {
        throw verification_error("squared twist scalar varies inside a component");
      }
      if (!full) break;
    }
    out.emplace(g, *value);
  }
  return out;
}

struct MuEvaluator {
  const UniversalPresentation* base;
  std::vector<int> lambda_bits;  // per generator, lambda = (-1)^bit
  bool flipped;

  // lambda of the element with the given generator exponents
  int lambda_of(const std::vector<unsigned>& exp) const {
    unsigned bit = 0;
    for (unsigned i = 0; i < exp.size(); ++i) bit += exp[i] * (unsigned)lambda_bits[i];
    return bit % 2 ? -1 : +1;
  }

  // sign twist distinguishing the second square-root choice; a quadratic
  // function of the canonical torsion coordinates, so not a character
  int nu_of(const std::vector<unsigned>& exp) const {
    if (!flipped) return +1;
    unsigned long total = 0;
    size_t nt = base->invariants.torsion.size();
    for (size_t f = 0; f < nt; ++f) {
      unsigned long d = base->invariants.torsion[f];
      unsigned long c = 0;
      for (unsigned i = 0; i < exp.size(); ++i) {
        c += (unsigned long)exp[i] * base->generator_images[i][f].get_ui();
      }
      total += c % d;
    }
    return (total * (total - 1) / 2) % 2 ? -1 : +1;
  }

  Cyclotomic mu_of(const std::vector<unsigned>& exp) const {
    Cyclotomic m = lambda_of(exp) == +1 ? Cyclotomic(1) : Cyclotomic::root_of_unity(4, 1);
    if (nu_of(exp) == -1) m = m * Cyclotomic(-1L);
    return m;
  }
};

int epsilon_of(const MuEvaluator& ev, const std::vector<unsigned>& x,
               const std::vector<unsigned>& y) {
  std::vector<unsigned> xy(x.size());
  for (size_t i = 0; i < x.size(); ++i) xy[i] = x[i] + y[i];
  Cyclotomic c = ev.mu_of(xy) * (ev.mu_of(x) * ev.mu_of(y)).inverse();
  if (c.is_one()) return +1;
  if (c == Cyclotomic(-1L)) return -1;
  throw verification_error("cocycle value is not a sign");
}

// sign picked up when a defining relation word is lifted along trivial lifts
int lift_sign(const MuEvaluator& ev, unsigned gens,
              const std::vector<std::pair<unsigned, unsigned>>& word) {
  std::vector<unsigned> partial(gens, 0);
  std::vector<unsigned> step(gens, 0);
  int sign = +1;
  for (const auto& [g, e] : word) {
    for (unsigned rep = 0; rep < e; ++rep) {
      std::fill(step.begin(), step.end(), 0);
      step[g] = 1;
      sign *= epsilon_of(ev, partial, step);
      partial[g] += 1;
    }
  }
  return sign;
}

// does some translate t_i t land entirely in one quadratic type
bool split_by_translation(const GradingSpec& spec) {
  if (spec.q == 0) return true;
  for (const TorsionElement& t : all_elements(spec.group)) {
    int common = quad_sign(spec.group, mul(spec.group, spec.tau[0], t));
    bool ok = true;
    for (unsigned i = 1; i < spec.q && ok; ++i) {
      ok = quad_sign(spec.group, mul(spec.group, spec.tau[i], t)) == common;
    }
    if (ok) return true;
  }
  return false;
}

// does lambda admit a character square root: solve over F2 for the sign
// adjustments of the fourth-root lifts against every defining relation
bool split_by_character_lift(const ZPresentation& pres, const std::vector<int>& lambda_bits) {
  unsigned n = pres.gens();
  std::vector<std::vector<int>> rows;
  std::vector<int> rhs;
  for (const auto& word : pres.words) {
    std::vector<int> row(n, 0);
    unsigned L = 0;
    for (const auto& [g, e] : word) {
      row[g] = (row[g] + e) % 2;
      L += e * (unsigned)lambda_bits[g];
    }
    if (L % 2) throw verification_error("squared-twist character fails on a defining relation");
    rows.push_back(std::move(row));
    rhs.push_back((L / 2) % 2);
  }
  // Gaussian elimination over F2
  unsigned rank = 0;
  for (unsigned col = 0; col < n && rank < rows.size(); ++col) {
    unsigned pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    std::swap(rhs[pivot], rhs[rank]);
    for (unsigned r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][col]) {
        for (unsigned c = col; c < n; ++c) rows[r][c] ^= rows[rank][c];
        rhs[r] ^= rhs[rank];
      }
    }
    ++rank;
  }
  for (unsigned r = rank; r < rows.size(); ++r) {
    if (rhs[r]) return false;
  }
  return true;
}

}  // namespace

TypeIIExtension typeII_extension(const GradingSpec& spec, MuChoice choice) {
  if (spec.series != Series::AII) {
    throw std::domain_error("the central extension is defined for series AII");
  }
  validate_spec(spec);

  TypeIIExtension out;
  out.base = universal_group(spec);
  ZPresentation pres = universal_presentation(spec);
  unsigned gens = pres.gens();

  GradedMatrixAlgebra R{spec};
  PhiMap phi = build_phi(R);
  out.component_lambda = component_lambda_map(R, phi);

  std::vector<SupportElement> supports = generator_supports(spec);
  MuEvaluator ev;
  ev.base = &out.base;
  ev.flipped = choice == MuChoice::Flipped;
  for (const SupportElement& g : supports) {
    int l = out.component_lambda.at(g);
    out.lambda.push_back(l);
    ev.lambda_bits.push_back(l == -1 ? 1 : 0);
  }
  for (unsigned i = 0; i < gens; ++i) {
    std::vector<unsigned> exp(gens, 0);
    exp[i] = 1;
    out.mu.push_back(ev.mu_of(exp));
  }
  out.epsilon.assign(gens, std::vector<int>(gens, +1));
  for (unsigned i = 0; i < gens; ++i) {
    std::vector<unsigned> ei(gens, 0);
    ei[i] = 1;
    for (unsigned j = 0; j < gens; ++j) {
      std::vector<unsigned> ej(gens, 0);
      ej[j] = 1;
      out.epsilon[i][j] = epsilon_of(ev, ei, ej);
    }
  }

  // present G on the trivial lifts plus h, correcting each relation by the
  // sign it picks up
  ZPresentation ext = pres;
  ext.names.push_back("h");
  unsigned hidx = gens;
  for (auto& word : ext.words) {
    if (lift_sign(ev, gens, word) == -1) word.push_back({hidx, 1});
  }
  ext.words.push_back({{hidx, 2}});
  out.extended = reduce_presentation(ext);

  out.h = out.extended.generator_images.back();
  size_t ext_torsion = out.extended.invariants.torsion.size();
  bool h_nonzero = false;
  for (size_t f = 0; f < out.h.size(); ++f) {
    if (out.h[f] == 0) continue;
    if (f >= ext_torsion) throw verification_error("distinguished element has infinite order");
    if (2 * out.h[f] % (long)out.extended.invariants.torsion[f] != 0) {
      throw verification_error("distinguished element does not have order two");
    }
    h_nonzero = true;
  }
  if (!h_nonzero) throw verification_error("central extension collapsed");

  bool split_t = split_by_translation(spec);
  bool split_lift = split_by_character_lift(pres, ev.lambda_bits);
  if (split_t != split_lift) {
    throw verification_error("translation criterion disagrees with the character lift");
  }
  out.split = split_t;

  // two-case closed form for the extended invariant factors
  unsigned a = out.base.two_rank;
  unsigned d0 = out.base.four_rank;
  AbelianInvariants expected;
  if (out.split) {
    expected.torsion.assign(a + 1, 2);
    expected.torsion.insert(expected.torsion.end(), d0, 4);
  } else {
    if (a == 0) throw verification_error("non-split extension with no free sign slot");
    expected.torsion.assign(a - 1, 2);
    expected.torsion.insert(expected.torsion.end(), d0 + 1, 4);
  }
  expected.free_rank = out.base.free_rank;
  if (!(out.extended.invariants == expected)) {
    throw verification_error("extension invariants disagree with the closed form");
  }

  // character with chi(h) = -1, supported on one cyclic factor
  size_t f_star = 0;
  while (f_star < out.h.size() && out.h[f_star] == 0) ++f_star;
  unsigned long d = out.extended.invariants.torsion[f_star];
  for (const auto& img : out.extended.generator_images) {
    out.chi.push_back(Cyclotomic::root_of_unity((unsigned)d, img[f_star].get_ui() % d));
  }
  if (!(out.chi.back() == Cyclotomic(-1L))) {
    throw verification_error("character fails to separate the distinguished element");
  }
  return out;
}

}  // namespace graded
