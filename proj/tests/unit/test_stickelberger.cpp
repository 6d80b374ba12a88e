#include "doctest.h"
#include "sticklab/errors.hpp"
#include "sticklab/stickelberger.hpp"
#include "support/fixtures.hpp"

using namespace sticklab;

namespace {

// one unramified place of degree 1 with Frobenius sigma, H = Z/3, G trivial
CoverDescription one_place_cover(std::uint32_t sigma) {
  auto c = CoverDescription::make(2, 1, AbelianGroup({3}), AbelianGroup());
  SPlace v1{"P", 1, {}, {}, {0}, {}, true};
  SPlace inf{"inf", 1, {}, {}, {0}, {}, false};
  c.S = {v1, inf};
  c.gal_F1_over_HA = {{1}};
  c.degree_bound = 6;
  c.places.push_back({1, {static_cast<std::int64_t>(sigma)}, {}, "Q"});
  c.validate();
  return c;
}

std::vector<ZElem> brute_theta(const fixtures::Carlitz& k, int D) {
  // c_d = sum over monic a of degree d prime to p of [a]^{-1}, by direct enumeration
  std::vector<ZElem> out;
  const auto& g = k.prov->Gamma();
  for (int d = 0; d <= D; ++d) {
    ZElem e(g);
    for (std::uint64_t i = 0; i < monic_count(k.prov->field(), d); ++i) {
      FqPoly a = monic_at(k.prov->field(), d, i);
      if ((a % k.prov->prime()).is_zero()) continue;
      e.add_term(g->neg(k.prov->class_of(a)), 1);
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace

TEST_CASE("euler product basics") {
  auto c = one_place_cover(1);
  auto th0 = theta_euler(c, 0);
  REQUIRE(th0.coeffs.size() == 1);
  CHECK(th0.coeffs[0] == ZElem::one(c.Gamma));
  auto th = theta_euler(c, 5);
  for (int d = 0; d <= 5; ++d) CHECK(th.coeffs[d] == ZElem::basis(c.Gamma, c.Gamma->scale(2, d), 1));
  CHECK_THROWS_AS(theta_euler(c, 7), ValidationError);
}

TEST_CASE("first coefficient for q=3, p=t, n=1") {
  auto k = fixtures::carlitz(3, "t", 1, 4);
  auto th = theta_euler(k.cover, 2);
  ZElem expect(k.cover.Gamma);
  expect.add_term(k.cover.Gamma->neg(k.prov->class_of(FqPoly::parse(k.prov->field(), "t+1"))), 1);
  expect.add_term(k.cover.Gamma->neg(k.prov->class_of(FqPoly::parse(k.prov->field(), "t+2"))), 1);
  CHECK(th.coeffs[1] == expect);
  // [1] + [2]: both classes once
  CHECK(th.coeffs[1].coeff(0) == 1);
  CHECK(th.coeffs[1].coeff(1) == 1);
}

TEST_CASE("euler equals dirichlet equals enumeration") {
  struct Case {
    std::uint32_t q;
    const char* prime;
    int level;
    int D;
  };
  for (auto cs : {Case{3, "t", 1, 6}, Case{3, "t", 2, 6}, Case{2, "t^2+t+1", 1, 6}, Case{2, "t^2+t+1", 2, 6},
                  Case{2, "t", 3, 6}, Case{4, "t", 1, 4}}) {
    CAPTURE(cs.q);
    CAPTURE(cs.prime);
    CAPTURE(cs.level);
    auto k = fixtures::carlitz(cs.q, cs.prime, cs.level, cs.D);
    auto e1 = theta_euler(k.cover, cs.D, 1);
    auto e3 = theta_euler(k.cover, cs.D, 3);
    auto d1 = theta_dirichlet(*k.prov, cs.D, 1);
    auto d4 = theta_dirichlet(*k.prov, cs.D, 4);
    CHECK(theta_equal(e1, d1));
    CHECK(theta_equal(e1, e3));
    CHECK(theta_equal(d1, d4));
    auto brute = brute_theta(k, cs.D);
    for (int d = 0; d <= cs.D; ++d) CHECK(d1.coeffs[d] == brute[d]);
  }
}

TEST_CASE("character parts stabilize") {
  for (auto [q, prime, level] : {std::tuple{3u, "t", 1}, std::tuple{3u, "t", 2}, std::tuple{2u, "t^2+t+1", 1},
                                 std::tuple{2u, "t^2+t+1", 2}}) {
    auto k = fixtures::carlitz(q, prime, level, 8);
    auto th = theta_euler(k.cover, 8);
    const int D0 = level * k.prov->prime_degree();
    for (auto& chi : all_characters(*k.cover.H)) {
      auto ct = chi_theta(k.cover, th, chi);
      CHECK(ct.stab.verified);
      CHECK(ct.stab.D0 == D0);
      std::vector<std::uint32_t> all(k.cover.G->order());
      for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
      const WElem nG = WElem::norm(k.cover.G, all);
      for (int d = D0; d <= 8; ++d) {
        if (!chi.is_trivial()) {
          CHECK(ct.series[d].is_zero());
        } else {
          // every class of Gamma holds q^{d-D0} monics, and chi_0 folds |H| classes onto each g
          long mult = static_cast<long>(ipow(q, d - D0) * k.cover.H->order());
          CHECK(ct.series[d] == nG.scale(Cyclo(mult)));
        }
      }
      if (!chi.is_trivial()) CHECK(ct.theta.degree() < D0);
    }
  }
}

TEST_CASE("quadratic character examples for q=3, p=t") {
  auto k1 = fixtures::carlitz(3, "t", 1, 4);
  auto th1 = theta_euler(k1.cover, 4);
  Character quad = character_from_exponents(*k1.cover.H, {1});
  auto ct1 = chi_theta(k1.cover, th1, quad);
  CHECK(ct1.theta.degree() == 0);
  CHECK(ct1.theta.eval_at_one() == WElem::one(k1.cover.G).scale(Cyclo::rational(2, 1)));
  CHECK(classify(k1.cover, quad) == CharType::Type1);

  auto k2 = fixtures::carlitz(3, "t", 2, 4);
  auto th2 = theta_euler(k2.cover, 4);
  auto ct2 = chi_theta(k2.cover, th2, character_from_exponents(*k2.cover.H, {1}));
  CHECK(ct2.theta.degree() <= 1);
  WElem b1 = apply_character_H(k2.cover, character_from_exponents(*k2.cover.H, {1}), th2.coeffs[1]);
  CHECK(ct2.theta.coeff(1) == b1);
}

TEST_CASE("trivial character rational form") {
  auto k = fixtures::carlitz(3, "t", 2, 6);
  auto th = theta_euler(k.cover, 6);
  auto ct = chi_theta(k.cover, th, character_from_exponents(*k.cover.H, {0}));
  // the closed form reproduces every computed coefficient
  auto s = ct.theta.series(7);
  for (int d = 0; d <= 6; ++d) CHECK(s[d] == ct.series[d]);
  auto rt = rationalize(k.cover, th);
  CHECK(rt.stab.verified);
  auto s2 = rt.theta.series(7);
  for (int d = 0; d <= 6; ++d) CHECK(s2[d] == to_welem(th.coeffs[d], 1));
}

TEST_CASE("declared stabilization that the data contradicts is a hard error") {
  auto k = fixtures::carlitz(3, "t", 2, 5);
  auto th = theta_euler(k.cover, 5);
  k.cover.stabilization_degree = 1;
  CHECK_THROWS_AS(chi_theta(k.cover, th, character_from_exponents(*k.cover.H, {1})), TheoremViolation);
}

TEST_CASE("unverifiable tail is flagged") {
  auto k = fixtures::carlitz(2, "t^2+t+1", 2, 3);
  auto th = theta_euler(k.cover, 3);
  auto ct = chi_theta(k.cover, th, character_from_exponents(*k.cover.H, {0}));
  CHECK_FALSE(ct.stab.verified);
}

TEST_CASE("level projection compatibility") {
  auto k1 = fixtures::carlitz(3, "t", 1, 4);
  auto k2 = fixtures::carlitz(3, "t", 2, 4);
  auto map = k2.prov->projection_to(*k1.prov);
  auto t1 = theta_euler(k1.cover, 4), t2 = theta_euler(k2.cover, 4);
  CHECK(projection_compatible(t2, t1, map));
  CHECK(t2.coeffs[0].map_group(k1.cover.Gamma, map) == ZElem::one(k1.cover.Gamma));
  // a broken map is noticed
  std::vector<std::uint32_t> bad(map.size(), 0);
  CHECK_FALSE(projection_compatible(t2, t1, bad));
}

TEST_CASE("trivial zero orders") {
  GroupPtr g = std::make_shared<AbelianGroup>(AbelianGroup({3}));
  auto one = GammaPoly::constant(WElem::one(g), 1, 3);
  CHECK(one.vanishing_order_at_one() == 0);
  auto lin = GammaPoly::one_minus(g, 1, 3, 1);
  auto pl = GammaPoly::from_coeffs(g, 1, 3, {WElem::one(g), WElem::one(g)});
  CHECK((lin * pl).vanishing_order_at_one() == 1);
  CHECK((lin * pl).divide_exact(lin, "t") == pl);
  CHECK((lin * lin).vanishing_order_at_one() == 2);
  CHECK_THROWS_AS(GammaPoly(g, 1, 3).vanishing_order_at_one(), ValidationError);
  // (1 - sigma g) vanishes at g = 1 only after augmentation, not in W[G]
  auto tw = GammaPoly::one_minus(g, 1, 3, 1, 1);
  CHECK(tw.vanishing_order_at_one() == 0);
  CHECK(tw.eval_at_one() == WElem::one(g) - WElem::basis(g, 1, Cyclo(1L)));
}
