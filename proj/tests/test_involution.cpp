#include "graded/involution.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace graded;

namespace {

GradingSpec phi_spec(Series series, unsigned r, unsigned q, unsigned s,
                     std::vector<TorsionElement> tau, int delta = +1) {
  GradingSpec spec;
  spec.series = series;
  spec.group.ell.assign(r, 2u);
  spec.q = q;
  spec.s = s;
  spec.tau = std::move(tau);
  spec.delta = delta;
  return spec;
}

TorsionElement el(const TorsionGroup& T, unsigned long idx) { return element_at(T, idx); }

}  // namespace

TEST_CASE("involution types match the sign criterion") {
  CHECK(involution_type(phi_spec(Series::C, 1, 0, 1, {}, -1)) == InvolutionType::symplectic);
  CHECK(involution_type(phi_spec(Series::B, 0, 3, 1, {{}, {}, {}})) ==
        InvolutionType::orthogonal);
  CHECK(involution_type(phi_spec(Series::D, 1, 2, 0,
                                 {TorsionElement{{0, 0}}, TorsionElement{{1, 0}}})) ==
        InvolutionType::orthogonal);
  // mixed quadratic signs leave the second kind
  GradingSpec aii = phi_spec(Series::AII, 1, 2, 0, {TorsionElement{{0, 0}}, TorsionElement{{1, 1}}});
  CHECK(involution_type(aii) == InvolutionType::not_involution);
}

TEST_CASE("involution criterion agrees with the exact square on small specs") {
  // involution_type itself recomputes phi^2 on the basis and throws
  // verification_error if the sign criterion ever disagrees
  for (unsigned r = 0; r <= 1; ++r) {
    TorsionGroup T;
    T.ell.assign(r, 2u);
    std::vector<TorsionElement> els = all_elements(T);
    for (unsigned q = 0; q <= 4; ++q) {
      for (unsigned s = 0; q + 2 * s <= 4; ++s) {
        if (q + 2 * s < 1) continue;
        std::vector<unsigned long> idx(q, 0);
        while (true) {
          std::vector<TorsionElement> tau;
          for (unsigned long i : idx) tau.push_back(els[i]);
          GradingSpec spec = phi_spec(Series::RAW_MPHI, r, q, s, tau);
          bool fine = !(q == 2 && s == 0 && tau[0] == tau[1]);
          if (fine) CHECK_NOTHROW(involution_type(spec));
          unsigned pos = 0;
          while (pos < q && idx[pos] + 1 == els.size()) idx[pos++] = 0;
          if (pos == q) break;
          ++idx[pos];
        }
        if (q == 0) {
          CHECK_NOTHROW(involution_type(phi_spec(Series::RAW_MPHI, r, q, s, {})));
        }
      }
    }
  }
}

TEST_CASE("random rank two specs keep criterion and square in step") {
  TorsionGroup T{{2, 2}};
  std::vector<TorsionElement> els = all_elements(T);
  std::mt19937 rng(424242);
  std::uniform_int_distribution<unsigned> pick_q(0, 3);
  std::uniform_int_distribution<unsigned long> pick_t(0, els.size() - 1);
  int done = 0;
  while (done < 50) {
    unsigned q = pick_q(rng);
    unsigned s = (4 - q) / 2 > 0 ? (rng() % ((4 - q) / 2 + 1)) : 0;
    if (q + 2 * s < 1) continue;
    std::vector<TorsionElement> tau;
    for (unsigned i = 0; i < q; ++i) tau.push_back(els[pick_t(rng)]);
    if (q == 2 && s == 0 && tau[0] == tau[1]) continue;
    CHECK_NOTHROW(involution_type(phi_spec(Series::RAW_MPHI, 2, q, s, tau)));
    ++done;
  }
}

TEST_CASE("fineness excludes only the repeated two block case") {
  TorsionGroup T{{2}};
  for (const TorsionElement& t : all_elements(T)) {
    CHECK_FALSE(is_fine_phi(phi_spec(Series::AII, 1, 2, 0, {t, t})));
    CHECK(is_fine_phi(phi_spec(Series::AII, 1, 2, 1, {t, t})));
  }
  CHECK(is_fine_phi(phi_spec(Series::AII, 1, 2, 0, {el(T, 0), el(T, 1)})));
}

TEST_CASE("sesquilinear form satisfies the adjoint identity") {
  CHECK(adjoint_identity(phi_spec(Series::B, 0, 3, 0, {{}, {}, {}})));
  CHECK(adjoint_identity(phi_spec(Series::C, 1, 0, 1, {}, -1)));
  CHECK(adjoint_identity(
      phi_spec(Series::D, 1, 2, 0, {TorsionElement{{0, 0}}, TorsionElement{{1, 0}}})));
  CHECK(adjoint_identity(phi_spec(Series::AII, 1, 1, 1, {TorsionElement{{0, 0}}})));
}

TEST_CASE("phi preserves every component of the grading") {
  for (const GradingSpec& spec :
       {phi_spec(Series::B, 0, 1, 2, {{}}), phi_spec(Series::C, 1, 0, 1, {}, -1),
        phi_spec(Series::AII, 1, 1, 1, {TorsionElement{{0, 0}}})}) {
    GradedMatrixAlgebra R = build_algebra(spec);
    PhiMap phi = build_phi(R);
    CHECK(check_phi_grading(R, phi));
    // anti-homomorphism spot check on matrix units
    TorsionElement e = TorsionElement::identity(spec.group);
    CycMatrix x = R.basis_matrix({1, 2, e});
    CycMatrix y = R.basis_matrix({2, 1, e});
    CHECK(phi.action(x * y) == phi.action(y) * phi.action(x));
  }
}

TEST_CASE("weak equivalence ignores entry order and translation") {
  TorsionGroup T{{2}};
  GradingSpec a = phi_spec(Series::AII, 1, 2, 1, {el(T, 0), el(T, 2)});
  GradingSpec b = phi_spec(Series::AII, 1, 2, 1, {el(T, 2), el(T, 0)});
  CHECK(weakly_equivalent(a, b));
  // translate both entries by a fixed element
  GradingSpec c = phi_spec(Series::AII, 1, 2, 1,
                           {mul(T, el(T, 0), el(T, 3)), mul(T, el(T, 2), el(T, 3))});
  CHECK(weakly_equivalent(a, c));
  EquivalenceWitness w = weakly_equivalent_witness(a, c);
  REQUIRE(w.equivalent);
  REQUIRE(w.transporter.has_value());
  MultisetSigma sa = MultisetSigma::from_tuple(a.tau);
  MultisetSigma sc = MultisetSigma::from_tuple(c.tau);
  CHECK(apply_to_multiset(T, *w.transporter, sa) == sc);

  CHECK_FALSE(weakly_equivalent(a, phi_spec(Series::AII, 1, 4, 0,
                                            {el(T, 0), el(T, 1), el(T, 2), el(T, 3)})));
}

TEST_CASE("involution equivalence needs matching signs") {
  TorsionGroup T{{2}};
  GradingSpec d1 = phi_spec(Series::D, 1, 2, 0, {el(T, 0), el(T, 1)});
  GradingSpec d2 = phi_spec(Series::D, 1, 2, 0, {el(T, 1), el(T, 0)});
  CHECK(equivalent_involution(d1, d2));
  EquivalenceWitness w = equivalent_involution_witness(d1, d2);
  REQUIRE(w.equivalent);
  REQUIRE(w.transporter.has_value());
  CHECK(w.transporter->shift == t_alpha(T, w.transporter->map));

  GradingSpec c1 = phi_spec(Series::C, 1, 0, 1, {}, -1);
  GradingSpec d3 = phi_spec(Series::D, 1, 0, 1, {});
  CHECK_FALSE(equivalent_involution(c1, d3));
  CHECK(weakly_equivalent(c1, d3));
}

TEST_CASE("twisted translates stay equivalent as involutions") {
  TorsionGroup T{{2, 2}};
  GradingSpec d1 = phi_spec(Series::D, 2, 3, 0, {el(T, 0), el(T, 1), el(T, 2)});
  REQUIRE(involution_type(d1) == InvolutionType::orthogonal);
  SymplecticGroup G = aut_group(T);
  std::mt19937 rng(11);
  std::vector<SymplecticMap> els = G.elements();
  std::uniform_int_distribution<size_t> pick(0, els.size() - 1);
  for (int trial = 0; trial < 5; ++trial) {
    const SymplecticMap& alpha = els[pick(rng)];
    std::vector<TorsionElement> tau;
    for (const TorsionElement& t : d1.tau) tau.push_back(act_twisted(T, alpha, t));
    GradingSpec d2 = phi_spec(Series::D, 2, 3, 0, tau);
    CHECK(equivalent_involution(d1, d2));
  }
}

TEST_CASE("classification counts are stable") {
  CHECK(enumerate_fine_gradings(Series::B, 5).size() == 3);
  CHECK(enumerate_fine_gradings(Series::B, 7).size() == 4);
  CHECK(enumerate_fine_gradings(Series::C, 4).size() == 3);
  CHECK(enumerate_fine_gradings(Series::C, 6).size() == 3);
  CHECK(enumerate_fine_gradings(Series::D, 6).size() == 8);
  CHECK(enumerate_fine_gradings(Series::AI, 3).size() +
            enumerate_fine_gradings(Series::AII, 3).size() ==
        4);
  CHECK(enumerate_fine_gradings(Series::AI, 4).size() == 2);
  CHECK(enumerate_fine_gradings(Series::AII, 4).size() == 6);
}

TEST_CASE("enumerated classes are valid canonical and pairwise inequivalent") {
  for (auto [series, n] : std::vector<std::pair<Series, unsigned>>{
           {Series::B, 5}, {Series::C, 4}, {Series::D, 6}, {Series::AII, 4}, {Series::AI, 4}}) {
    std::vector<GradingSpec> classes = enumerate_fine_gradings(series, n);
    for (const GradingSpec& spec : classes) {
      CHECK_NOTHROW(validate_spec(spec));
      CHECK(spec.size() == n);
      if (spec.phi_type()) {
        SigmaAction kind = series == Series::AII ? SigmaAction::natural : SigmaAction::twisted;
        MultisetSigma sigma = MultisetSigma::from_tuple(spec.tau);
        CHECK(orbit_canonical(spec.group, sigma, kind) == sigma);
      }
    }
    for (size_t i = 0; i < classes.size(); ++i) {
      for (size_t j = i + 1; j < classes.size(); ++j) {
        if (series == Series::AI) {
          bool same = classes[i].group == classes[j].group && classes[i].k == classes[j].k;
          CHECK_FALSE(same);
        } else if (series == Series::AII) {
          CHECK_FALSE(weakly_equivalent(classes[i], classes[j]));
        } else {
          CHECK_FALSE(equivalent_involution(classes[i], classes[j]));
        }
      }
    }
  }
}

TEST_CASE("size ranges are enforced") {
  CHECK_THROWS_AS(enumerate_fine_gradings(Series::B, 4), std::domain_error);
  CHECK_THROWS_AS(enumerate_fine_gradings(Series::B, 3), std::domain_error);
  CHECK_THROWS_AS(enumerate_fine_gradings(Series::C, 5), std::domain_error);
  CHECK_THROWS_AS(enumerate_fine_gradings(Series::D, 8), std::domain_error);
  CHECK_THROWS_AS(enumerate_fine_gradings(Series::D, 4), std::domain_error);
  CHECK_THROWS_AS(enumerate_fine_gradings(Series::AI, 2), std::domain_error);
  CHECK_THROWS_AS(enumerate_fine_gradings(Series::AII, 2), std::domain_error);
}
