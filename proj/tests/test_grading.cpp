#include "graded/grading.hpp"

#include <doctest.h>

#include <map>
#include <set>
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

GradingSpec block_spec(std::vector<unsigned> ell, unsigned k) {
  GradingSpec spec;
  spec.series = Series::RAW_M;
  spec.group.ell = std::move(ell);
  spec.k = k;
  return spec;
}

}  // namespace

TEST_CASE("support components partition the basis") {
  std::vector<GradingSpec> specs = {
      block_spec({}, 3),
      block_spec({2}, 2),
      block_spec({3}, 2),
      phi_spec(Series::B, 0, 3, 1, {{}, {}, {}}),
      phi_spec(Series::C, 1, 0, 1, {}, -1),
      phi_spec(Series::D, 1, 2, 0, {TorsionElement{{0, 0}}, TorsionElement{{1, 0}}}),
  };
  for (const GradingSpec& spec : specs) {
    GradedMatrixAlgebra R = build_algebra(spec);
    size_t total = 0;
    for (const auto& [z, basis] : R.components()) {
      CHECK(canonical_support(spec, z.i, z.j, z.t) == z);
      SupportElement m = mirror_support(spec, z);
      CHECK(R.components().count(canonical_support(spec, m.i, m.j, m.t)) == 1);
      for (const BasisIndex& b : basis) CHECK(R.degree(b) == z);
      total += basis.size();
    }
    CHECK(total == (size_t)R.size() * R.size());
  }
}

TEST_CASE("mirror is an involution on the support") {
  GradingSpec spec = phi_spec(Series::B, 0, 1, 2, {{}});
  GradedMatrixAlgebra R = build_algebra(spec);
  for (const auto& [z, basis] : R.components()) {
    SupportElement m = mirror_support(spec, z);
    SupportElement mm = mirror_support(spec, m);
    CHECK(canonical_support(spec, mm.i, mm.j, mm.t) == z);
  }
}

TEST_CASE("block grading universal group is torsion times a free part") {
  for (unsigned k = 1; k <= 4; ++k) {
    for (const std::vector<unsigned>& ell :
         {std::vector<unsigned>{}, std::vector<unsigned>{2}, std::vector<unsigned>{3}}) {
      GradingSpec spec = block_spec(ell, k);
      UniversalPresentation up = universal_group(spec);
      CHECK(up.free_rank == k - 1);
      std::multiset<unsigned long> primary;
      for (unsigned long d : up.invariants.torsion) {
        // split invariant factors into prime powers for a basis-free compare
        for (unsigned long p = 2; p <= d; ++p) {
          if (d % p) continue;
          unsigned long pk = 1;
          while (d % p == 0) {
            pk *= p;
            d /= p;
          }
          primary.insert(pk);
        }
      }
      std::multiset<unsigned long> expect;
      for (unsigned l : ell) {
        expect.insert(l);
        expect.insert(l);
      }
      CHECK(primary == expect);
    }
  }
}

TEST_CASE("transpose twisted universal groups match known values") {
  UniversalPresentation b31 = universal_group(phi_spec(Series::B, 0, 3, 1, {{}, {}, {}}));
  CHECK(b31.two_rank == 2);
  CHECK(b31.four_rank == 0);
  CHECK(b31.free_rank == 1);

  UniversalPresentation c01 = universal_group(phi_spec(Series::C, 1, 0, 1, {}, -1));
  CHECK(c01.two_rank == 2);
  CHECK(c01.four_rank == 0);
  CHECK(c01.free_rank == 1);

  UniversalPresentation d20 = universal_group(
      phi_spec(Series::D, 1, 2, 0, {TorsionElement{{0, 0}}, TorsionElement{{1, 0}}}));
  CHECK(d20.two_rank == 1);
  CHECK(d20.four_rank == 1);
  CHECK(d20.free_rank == 0);
  CHECK(d20.T0_dim == 1);
}

TEST_CASE("presentation reduction computes smith normal form") {
  ZPresentation pres;
  pres.names = {"x", "y"};
  pres.words.push_back({{0, 2}});
  pres.words.push_back({{1, 4}});
  UniversalPresentation up = reduce_presentation(pres);
  CHECK(up.two_rank == 1);
  CHECK(up.four_rank == 1);
  CHECK(up.free_rank == 0);

  ZPresentation free2;
  free2.names = {"x", "y", "z"};
  free2.words.push_back({{0, 2}, {1, 1}});  // x^2 y = e
  UniversalPresentation uf = reduce_presentation(free2);
  CHECK(uf.free_rank == 2);
  CHECK(uf.invariants.torsion.empty());
}

TEST_CASE("diagonal conjugation acts by one scalar per component") {
  GradingSpec spec = phi_spec(Series::C, 1, 0, 1, {}, -1);
  GradedMatrixAlgebra R = build_algebra(spec);
  DiagElement d;
  d.scalars = {Cyclotomic(1L), Cyclotomic(-1L)};
  d.twist = basis_a(spec.group, 0);
  // the chain demands lambda_1 lambda_2 = beta-corrected squares
  validate_diag(spec, d);
  CycMatrix D = diag_matrix(R, d);
  CycMatrix Dinv = D.inverse();
  for (const auto& [z, basis] : R.components()) {
    Cyclotomic c = diag_component_scalar(R, d, z);
    for (const BasisIndex& b : basis) {
      CycMatrix X = R.basis_matrix(b);
      CHECK(D * X * Dinv == X.scaled(c));
    }
  }
}

TEST_CASE("diag chain rejects inconsistent scalars") {
  GradingSpec spec = phi_spec(Series::B, 0, 3, 0, {{}, {}, {}});
  DiagElement bad;
  bad.scalars = {Cyclotomic(1L), Cyclotomic(1L), Cyclotomic::root_of_unity(4, 1)};
  bad.twist = TorsionElement::identity(spec.group);
  CHECK_THROWS_AS(validate_diag(spec, bad), std::domain_error);
}

TEST_CASE("spec validation rejects malformed data") {
  // C carries delta = -1 and antisymmetric tau entries
  CHECK_THROWS_AS(validate_spec(phi_spec(Series::C, 0, 1, 1, {{}})), std::domain_error);
  CHECK_THROWS_AS(
      validate_spec(phi_spec(Series::C, 1, 1, 1, {TorsionElement{{0, 0}}}, -1)),
      std::domain_error);
  // B only exists over the trivial group
  CHECK_THROWS_AS(validate_spec(phi_spec(Series::B, 1, 1, 1, {TorsionElement{{0, 0}}})),
                  std::domain_error);
  GradingSpec nonfine =
      phi_spec(Series::D, 1, 2, 0, {TorsionElement{{0, 0}}, TorsionElement{{0, 0}}});
  CHECK_THROWS_AS(validate_spec(nonfine), std::domain_error);
  CHECK_NOTHROW(validate_spec(nonfine, false, false));
  GradingSpec sl2 = block_spec({}, 2);
  sl2.series = Series::AI;
  CHECK_THROWS_AS(validate_spec(sl2), std::domain_error);
  CHECK_NOTHROW(validate_spec(sl2, true));
}
