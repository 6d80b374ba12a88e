#include <random>

#include "doctest.h"
#include "sticklab/errors.hpp"
#include "sticklab/goss_zeta.hpp"

using namespace sticklab;

namespace {

FqPoly random_monic(const FieldPtr& f, int d, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, monic_count(f, d) - 1);
  return monic_at(f, d, pick(rng));
}

LaurentNum pi_poly(const FieldPtr& f, std::vector<Fq> c, std::int64_t prec) {
  return LaurentNum::from_coeffs(f, 0, std::move(c), prec);
}

}  // namespace

TEST_CASE("one units") {
  auto f = FiniteField::make(3);
  CHECK(one_unit(FqPoly::parse(f, "1")) == LaurentNum::constant(f, 1));
  CHECK(one_unit(FqPoly::parse(f, "1+1*t")) == pi_poly(f, {1, 1}, LaurentNum::kExact));
  CHECK(one_unit(FqPoly::parse(f, "1*t+1*t^2")) == pi_poly(f, {1, 1}, LaurentNum::kExact));
  CHECK_THROWS_AS(one_unit(FqPoly::parse(f, "2*t")), ValidationError);
}

TEST_CASE("unit powers") {
  auto f3 = FiniteField::make(3), f2 = FiniteField::make(2);
  auto u = pi_poly(f3, {1, 1}, LaurentNum::kExact);
  CHECK(unit_pow(u, YExp::integer(0), 8).agrees_to(LaurentNum::constant(f3, 1), 8));
  CHECK(unit_pow(u, YExp::integer(3), 8).agrees_to(pi_poly(f3, {1, 0, 0, 1}, 8), 8));
  // geometric series
  CHECK(unit_pow(u, YExp::integer(-1), 4) == pi_poly(f3, {1, 2, 1, 2}, 4));
  auto u2 = pi_poly(f2, {1, 1}, LaurentNum::kExact);
  CHECK(unit_pow(u2, YExp::integer(-1), 4) == pi_poly(f2, {1, 1, 1, 1}, 4));
  CHECK_THROWS_AS(unit_pow(u, YExp::mod(2, 2), 10), ValidationError);
}

TEST_CASE("residue exponents only depend on y mod p^M") {
  std::mt19937 rng(7);
  auto f = FiniteField::make(3);
  for (int it = 0; it < 50; ++it) {
    std::vector<Fq> c(9);
    c[0] = 1;
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = static_cast<Fq>(rng() % 3);
    auto u = pi_poly(f, c, 9);
    std::int64_t y = static_cast<std::int64_t>(rng() % 200) - 100;
    auto a = unit_pow(u, YExp::mod(y, 2), 9);
    auto b = unit_pow(u, YExp::mod(y + 9 * static_cast<std::int64_t>(rng() % 5 + 1), 2), 9);
    CHECK(a.agrees_to(b, 9));
    // and they agree with the integer exponent
    CHECK(a.agrees_to(unit_pow(u, YExp::integer(y), 9), 9));
  }
}

TEST_CASE("ideal power is multiplicative") {
  std::mt19937 rng(11);
  for (std::uint32_t q : {2u, 3u}) {
    auto f = FiniteField::make(q);
    SPoint s{LaurentNum::from_poly(FqPoly::parse(f, "1+1*t^2")), YExp::integer(-2)};
    for (int it = 0; it < 100; ++it) {
      auto a = random_monic(f, static_cast<int>(rng() % 4), rng);
      auto b = random_monic(f, static_cast<int>(rng() % 4), rng);
      auto lhs = ideal_power(a * b, s, 10);
      auto rhs = ideal_power(a, s, 10) * ideal_power(b, s, 10);
      CHECK(rhs.prec() >= 4);
      CHECK(lhs.agrees_to(rhs, rhs.prec()));
    }
  }
  auto f = FiniteField::make(3);
  auto a = FqPoly::parse(f, "2+1*t+1*t^3");
  // s = (t, 1) gives a itself, s = (t^2, 2) gives a^2
  CHECK(ideal_power(a, {LaurentNum::from_poly(FqPoly::t(f)), YExp::integer(1)}, 10).agrees_to(LaurentNum::from_poly(a), 10));
  CHECK(ideal_power(a, {LaurentNum::from_poly(FqPoly::parse(f, "1*t^2")), YExp::integer(2)}, 10)
            .agrees_to(LaurentNum::from_poly(a * a), 10));
}

TEST_CASE("partial zeta values") {
  auto f = FiniteField::make(3);
  auto x = LaurentNum::from_poly(FqPoly::t(f));
  auto z0 = zeta_partial(f, {x, YExp::integer(0)}, 4, 12);
  CHECK(z0.value.agrees_to(LaurentNum::constant(f, 1), z0.value.prec()));
  CHECK(zeta_partial(f, {x, YExp::integer(5)}, 0, 12).value.agrees_to(LaurentNum::constant(f, 1), 1));
  // s = (t, 1): sum of 1/a over monics by direct summation
  auto z1 = zeta_partial(f, {x, YExp::integer(1)}, 3, 12);
  LaurentNum direct = LaurentNum::zero(f, 12);
  for (int d = 0; d <= 3; ++d)
    for (std::uint64_t i = 0; i < monic_count(f, d); ++i) direct += LaurentNum::from_poly(monic_at(f, d, i)).inverse(12);
  CHECK(z1.tail_valuation == 4);
  CHECK(z1.value.agrees_to(direct, 4));
  // raising D never changes digits below the old tail bound
  auto z2 = zeta_partial(f, {x, YExp::integer(1)}, 5, 12);
  CHECK(z2.value.agrees_to(z1.value, z1.tail_valuation));
  CHECK_THROWS_AS(zeta_partial(f, {LaurentNum::constant(f, 1), YExp::integer(1)}, 3, 12), ValidationError);
}

TEST_CASE("values at negative integers") {
  for (std::uint32_t q : {2u, 3u}) {
    auto f = FiniteField::make(q);
    for (int j = 1; j <= 6; ++j) {
      CAPTURE(q);
      CAPTURE(j);
      auto z = zeta_at_negative_int(f, j);
      CHECK_FALSE(z.certificate.empty());
      CHECK(z.stopped_at > j);
      if (q == 3 && j % 2 == 0) CHECK(z.value.is_zero());
    }
  }
  auto z = zeta_at_negative_int(FiniteField::make(3), 1);
  CHECK(z.strata[1].is_zero());
  CHECK(z.value.is_one());
}

TEST_CASE("interpolation identity per degree") {
  auto f = FiniteField::make(3);
  for (auto prime : {"t", "1+1*t^2"})
    for (auto y : {YExp::integer(0), YExp::integer(1), YExp::integer(-1), YExp::integer(3), YExp::mod(2, 2)}) {
      CAPTURE(prime);
      CAPTURE(y.describe());
      auto rep = interpolation_check(FqPoly::parse(f, prime), y, 5, 9, 2);
      CHECK(rep.ok);
      CHECK(rep.rows.size() == 6);
    }
  // y = 0 counts monics prime to p mod 3
  auto rep = interpolation_check(FqPoly::parse(f, "t"), YExp::integer(0), 3, 4);
  CHECK(rep.rows[0].euler.agrees_to(LaurentNum::constant(f, 1), 4));
  CHECK(rep.rows[1].euler.agrees_to(LaurentNum::constant(f, 2), 4));
  for (int d = 2; d <= 3; ++d) CHECK(rep.rows[d].euler.is_zero());
}

TEST_CASE("euler and dirichlet sides agree in characteristic 2") {
  auto f = FiniteField::make(2);
  for (auto y : {YExp::integer(1), YExp::integer(-3), YExp::integer(5)}) {
    auto rep = interpolation_check(FqPoly::parse(f, "1+1*t+1*t^2"), y, 6, 10);
    CHECK(rep.ok);
  }
}
