#include "doctest.h"
#include "sticklab/carlitz_oracle.hpp"
#include "sticklab/errors.hpp"
#include "support/fixtures.hpp"

using namespace sticklab;

namespace {

XPoly xpoly(FieldPtr f, std::vector<const char*> cs) {
  XPoly out;
  for (auto c : cs) out.push_back(FqPoly::parse(f, c));
  return out;
}

}  // namespace

TEST_CASE("carlitz action of small polynomials") {
  auto f = FiniteField::make(3);
  auto t2 = carlitz_action(FqPoly::parse(f, "t^2"));
  // Phi_{t^2} = t^2 x + (t + t^3) x^3 + x^9
  REQUIRE(t2.c.size() == 3);
  CHECK(t2.c[0] == FqPoly::parse(f, "1*t^2"));
  CHECK(t2.c[1] == FqPoly::parse(f, "1*t+1*t^3"));
  CHECK(t2.c[2].is_one());
  // Phi_a o Phi_b = Phi_{ab}
  auto a = FqPoly::parse(f, "1+2*t"), b = FqPoly::parse(f, "2+1*t^2");
  auto ab = compose(carlitz_action(a), carlitz_action(b));
  auto direct = carlitz_action(a * b);
  REQUIRE(ab.c.size() == direct.c.size());
  for (std::size_t i = 0; i < ab.c.size(); ++i) CHECK(ab.c[i] == direct.c[i]);
}

TEST_CASE("torsion polynomials") {
  auto f3 = FiniteField::make(3);
  CHECK(carlitz_torsion_poly(FqPoly::parse(f3, "t"), 1) == xpoly(f3, {"1*t", "0", "1"}));
  auto f2 = FiniteField::make(2);
  CHECK(carlitz_torsion_poly(FqPoly::parse(f2, "t"), 1) == xpoly(f2, {"1*t", "1"}));
  // degree |(A/p^n)^*|
  CHECK(carlitz_torsion_poly(FqPoly::parse(f3, "t"), 2).size() == 7);
  CHECK(carlitz_torsion_poly(FqPoly::parse(f2, "1+1*t+1*t^2"), 2).size() == 13);
  CHECK_THROWS_AS(carlitz_torsion_poly(FqPoly::parse(f3, "t"), 7), GuardrailError);
}

TEST_CASE("factoring agrees with the class group order") {
  for (auto [q, prime, level] : {std::tuple{3u, "t", 1}, std::tuple{3u, "t", 2}, std::tuple{2u, "1+1*t+1*t^2", 2},
                                 std::tuple{2u, "t", 3}, std::tuple{5u, "t", 1}, std::tuple{4u, "t", 1}}) {
    CAPTURE(q);
    CAPTURE(prime);
    auto k = fixtures::carlitz(q, prime, level, 2);
    auto rows = reciprocity_report(*k.prov, q <= 3 ? 4 : 2, 3);
    CHECK_FALSE(rows.empty());
    for (auto& r : rows) {
      CAPTURE(r.place);
      CHECK(r.ok);
    }
  }
}

TEST_CASE("ramified place is rejected") {
  auto f = FiniteField::make(3);
  auto tor = carlitz_torsion_poly(FqPoly::parse(f, "t"), 1);
  CHECK_THROWS_AS(frobenius_order_oracle(tor, FqPoly::parse(f, "t")), ValidationError);
}

TEST_CASE("genus from conductors") {
  auto f3 = FiniteField::make(3), f2 = FiniteField::make(2);
  CHECK(genus_formula(FqPoly::parse(f3, "t"), 1) == 0);
  CHECK(genus_formula(FqPoly::parse(f3, "t"), 2) == 1);
  CHECK(genus_formula(FqPoly::parse(f3, "t"), 3) == 10);
  CHECK(genus_formula(FqPoly::parse(f2, "1+1*t+1*t^2"), 1) == 0);
  CHECK(genus_formula(FqPoly::parse(f2, "1+1*t+1*t^2"), 2) == 9);
}

TEST_CASE("zeta of the rational function field") {
  // N_m = q^m + 1 gives P = 1 and h = 1
  std::vector<std::int64_t> N = {0, 4, 10, 28};
  auto r = zeta_from_counts(3, N, 0);
  CHECK(r.diagnostics.empty());
  CHECK(r.P == std::vector<mpz_class>{1});
  CHECK(r.h == 1);
  CHECK(r.overdetermined_checks == 3);
  // a wrong count is reported
  N[2] = 11;
  CHECK_FALSE(zeta_from_counts(3, N, 0).diagnostics.empty());
}

TEST_CASE("elliptic census") {
  // y^2 = x^3 - x over F_3 has 4 points, so P = 1 - 0u + 3u^2 after N_1 = 4
  auto r = zeta_from_counts(3, {0, 4, 16}, 1);
  CHECK(r.diagnostics.empty());
  CHECK(r.P == std::vector<mpz_class>{1, 0, 3});
  CHECK(r.h == 4);
}

TEST_CASE("census of carlitz covers") {
  auto f3 = FiniteField::make(3), f2 = FiniteField::make(2);
  auto c1 = place_census(FqPoly::parse(f3, "t"), 1, 4);
  // genus 0: N_m = q^m + 1
  for (int m = 1; m <= 4; ++m) CHECK(c1.N[m] == ipow(3, m) + 1);
  auto z2 = zeta_from_census(FqPoly::parse(f3, "t"), 2);
  CHECK(z2.genus == 1);
  CHECK(z2.diagnostics.empty());
  CHECK(z2.overdetermined_checks >= 2);
  CHECK(z2.weil_bounds);
  auto z9 = zeta_from_census(FqPoly::parse(f2, "1+1*t+1*t^2"), 2, 4);
  CHECK(z9.genus == 9);
  CHECK(z9.diagnostics.empty());
  CHECK(z9.overdetermined_checks >= 1);
  MESSAGE("h(2,t^2+t+1,2) = " << z9.h.get_str() << ", v_2 = " << z9.v_p_h);
  MESSAGE("h(3,t,2) = " << z2.h.get_str() << ", v_3 = " << z2.v_p_h);
}
