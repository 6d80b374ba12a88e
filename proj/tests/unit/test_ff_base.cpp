#include <random>

#include "doctest.h"
#include "sticklab/errors.hpp"
#include "sticklab/fq_poly.hpp"
#include "sticklab/laurent.hpp"

using namespace sticklab;

namespace {

// trial division by every monic of degree 1..deg/2
bool irreducible_by_trial_division(const FqPoly& f) {
  if (f.degree() < 1) return false;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    std::uint64_t n = monic_count(f.field(), d);
    for (std::uint64_t i = 0; i < n; ++i)
      if ((f % monic_at(f.field(), d, i)).is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("prime and extension field arithmetic") {
  auto f4 = FiniteField::make(2, 2);
  CHECK(f4->size() == 4);
  CHECK(FqPoly(f4->base(), f4->modulus()).to_string() == "1+1*t+1*t^2");
  auto f9 = FiniteField::make(3, 2);
  CHECK(FqPoly(f9->base(), f9->modulus()).to_string() == "1+1*t^2");
  for (auto f : {FiniteField::make(5), f4, f9, FiniteField::make(2, 4), FiniteField::make(3, 3)}) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<Fq> pick(0, f->size() - 1);
    for (int it = 0; it < 300; ++it) {
      Fq a = pick(rng), b = pick(rng), c = pick(rng);
      CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
      CHECK(f->add(a, f->neg(a)) == 0);
      CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
      if (a) CHECK(f->mul(a, f->inv(a)) == 1);
    }
    CHECK(f->pow(f->primitive_element(), f->size() - 1) == 1);
  }
}

TEST_CASE("tower extension over a non-prime base") {
  auto f4 = FiniteField::make(2, 2);
  auto m = first_monic_irreducible(f4, 2);
  auto f16 = FiniteField::extension(f4, m.coeffs());
  CHECK(f16->size() == 16);
  CHECK(f16->prime_degree() == 4);
  for (Fq a = 1; a < 16; ++a) CHECK(f16->mul(a, f16->inv(a)) == 1);
  // every element satisfies x^16 = x
  for (Fq a = 0; a < 16; ++a) CHECK(f16->pow(a, 16) == a);
}

TEST_CASE("frobenius power examples") {
  auto f2 = FiniteField::make(2);
  auto mod = FqPoly::parse(f2, "t^2+t+1");
  CHECK(frob_power(FqPoly::t(f2), 1, mod) == FqPoly::parse(f2, "t+1"));
  CHECK(frob_power(FqPoly::t(f2), 2, mod) == FqPoly::t(f2));
  // over F_3: t^2 = 1 modulo t^2+2, so the cube of t is t
  auto f3 = FiniteField::make(3);
  auto m3 = FqPoly::parse(f3, "t^2+2");
  CHECK(frob_power(FqPoly::t(f3), 1, m3) == FqPoly::t(f3));
}

TEST_CASE("irreducibility agrees with trial division and with the necklace count") {
  for (auto [p, r, maxd] : {std::tuple{2u, 1u, 10}, std::tuple{3u, 1u, 6}, std::tuple{2u, 2u, 4}, std::tuple{5u, 1u, 4}}) {
    auto f = FiniteField::make(p, r);
    for (int d = 1; d <= maxd; ++d) {
      auto irr = enumerate_monic_irreducibles(f, d);
      CHECK(irr.size() == irreducible_count(f->size(), d));
      if (monic_count(f, d) <= 800) {
        std::size_t brute = 0;
        for_each_monic(f, d, 0, monic_count(f, d), [&](const FqPoly& m) {
          bool a = is_irreducible(m), b = irreducible_by_trial_division(m);
          CHECK(a == b);
          brute += b;
        });
        CHECK(brute == irr.size());
      }
    }
  }
}

TEST_CASE("monic enumeration order") {
  auto f3 = FiniteField::make(3);
  std::vector<std::string> got;
  for_each_monic(f3, 2, 0, 4, [&](const FqPoly& m) { got.push_back(m.to_string()); });
  CHECK(got == std::vector<std::string>{"1*t^2", "1*t+1*t^2", "2*t+1*t^2", "1+1*t^2"});
  for (std::uint64_t i = 0; i < 27; ++i) CHECK(monic_index(monic_at(f3, 3, i)) == i);
  auto a = monic_at(f3, 3, 5), b = monic_at(f3, 3, 6);
  CHECK(a < b);
}

TEST_CASE("distinct-degree factorization splits by degree") {
  auto f3 = FiniteField::make(3);
  auto f = FqPoly::parse(f3, "t") * FqPoly::parse(f3, "t+1") * FqPoly::parse(f3, "t^2+1") *
           FqPoly::parse(f3, "t^3+2*t+1");
  auto ddf = distinct_degree_factorization(f);
  REQUIRE(ddf.size() == 3);
  CHECK(ddf[0].first == 1);
  CHECK(ddf[0].second == FqPoly::parse(f3, "t^2+t"));
  CHECK(ddf[1].second == FqPoly::parse(f3, "t^2+1"));
  CHECK(ddf[2].first == 3);
  CHECK_THROWS_AS(is_irreducible(FqPoly::parse(f3, "2*t+1")), ValidationError);
}

TEST_CASE("polynomial text round trip") {
  auto f3 = FiniteField::make(3);
  for (std::uint64_t i = 0; i < 81; ++i) {
    auto m = monic_at(f3, 4, i) - FqPoly::constant(f3, 2);
    CHECK(FqPoly::parse(f3, m.to_string()) == m);
  }
  CHECK(FqPoly::parse(f3, "t^2 - 1") == FqPoly::parse(f3, "2+t^2"));
  CHECK_THROWS_AS(FqPoly::parse(f3, "t^^2"), ValidationError);
  CHECK_THROWS_AS(FiniteField::make(6), ValidationError);
  CHECK_THROWS_AS(FiniteField::make(2, 17), GuardrailError);
}

TEST_CASE("laurent numbers: sign of the expansion and precision bookkeeping") {
  auto f3 = FiniteField::make(3);
  // t + 1 = pi^{-1} (1 + pi)
  auto a = LaurentNum::from_poly(FqPoly::parse(f3, "t+1"));
  CHECK(a.val() == -1);
  CHECK(a.coeff(-1) == 1);
  CHECK(a.coeff(0) == 1);
  auto one_plus_pi = a.shift(1);
  auto inv = one_plus_pi.inverse(8);
  CHECK(inv.prec() == 8);
  for (int i = 0; i < 8; ++i) CHECK(inv.coeff(i) == (i % 2 ? 2u : 1u));

  auto x = LaurentNum::from_coeffs(f3, 0, {1, 1}, 5);
  auto y = LaurentNum::from_coeffs(f3, -2, {1}, 3);
  CHECK((x * y).prec() == 3);
  CHECK((x + y).prec() == 3);
  auto z = LaurentNum::from_coeffs(f3, 1, {2}, 4);
  CHECK(z.inverse(100).prec() == 2);
  CHECK(z.inverse(100).val() == -1);
  CHECK_THROWS_AS(LaurentNum::zero(f3, 5).inverse(10), ValidationError);
}

TEST_CASE("laurent inverse property") {
  std::mt19937 rng(5);
  auto f = FiniteField::make(2, 2);
  for (int it = 0; it < 50; ++it) {
    std::vector<Fq> c(6);
    for (auto& v : c) v = rng() % 4;
    c[0] = 1 + rng() % 3;
    int v = static_cast<int>(rng() % 5) - 2;
    auto a = LaurentNum::from_coeffs(f, v, c, 20);
    auto prod = a * a.inverse(30);
    CHECK(prod.agrees_to(LaurentNum::constant(f, 1), prod.prec()));
    CHECK(prod.prec() == 20 - 2 * v + v);
    auto sq = a.pow(3, 12) * a.pow(-1, 40);
    CHECK(sq.agrees_to(a.pow(2, 40), std::min<std::int64_t>(sq.prec(), 12)));
  }
}
