#include "doctest.h"
#include "sticklab/errors.hpp"
#include "sticklab/fitting.hpp"
#include "support/fixtures.hpp"
#include "support/synthetic_covers.hpp"

using namespace sticklab;

namespace {

std::string cover_path(const std::string& f) { return std::string(STICKLAB_DATA_DIR) + "/covers/" + f; }

GammaPoly lift_chi(const CoverDescription& c, const Character& chi, const GammaPoly& x) {
  WElem e = idempotent(c, chi);
  std::vector<WElem> num;
  for (auto& a : x.num()) num.push_back(e * lift_from_G(c, a));
  return GammaPoly::from_coeffs(c.Gamma, x.m(), x.q(), num, x.denom_power());
}

struct Case {
  std::uint32_t q;
  const char* prime;
  int level;
};
const Case kCarlitz[] = {{3, "t", 1}, {3, "t", 2}, {2, "1+1*t+1*t^2", 1}, {2, "1+1*t+1*t^2", 2}};

}  // namespace

TEST_CASE("synthetic elliptic covers: theta_chi has the Riemann-Roch closed form") {
  for (auto& s : fixtures::synthetic_specs()) {
    CAPTURE(s.file);
    auto c = load_cover(cover_path(s.file));
    auto th = theta_euler(c, c.degree_bound);
    int frob_trivial = 0, frob_nontrivial = 0;
    for (auto& chi : all_characters(*c.H)) {
      if (chi.is_trivial()) continue;
      auto ct = chi_theta(c, th, chi);
      CHECK(ct.stab.verified);
      CHECK(ct.data.type == CharType::Type3);
      // (1 - u)(1 - chi(Fr_p)^{-1} u^d)
      const Cyclo cbar = Cyclo::zeta(chi.m, -ct.data.frob_p_exp);
      auto expect = GammaPoly::one_minus(c.G, chi.m, c.q(), 1) * GammaPoly::one_minus(c.G, chi.m, c.q(), s.d, 0, cbar);
      CHECK(ct.theta == expect);
      auto cd = fitting_class_dual(c, ct);
      CHECK(cd.division_exact);
      if (ct.data.frob_p_trivial) {
        ++frob_trivial;
        CHECK(cd.tag == "type3-double-zero");
        CHECK(cd.trivial_zero_order == 2);
      } else {
        ++frob_nontrivial;
        CHECK(cd.tag == "type3-frob-nontrivial");
        CHECK(cd.trivial_zero_order == 1);
      }
      CHECK(fitting_chi_tate_dual(c, ct).at_one().ideal(6) == cd.ideal(6));
    }
    CHECK(frob_trivial > 0);
    CHECK(frob_nontrivial > 0);
  }
}

TEST_CASE("carlitz class duals") {
  for (auto cs : kCarlitz) {
    CAPTURE(cs.q);
    CAPTURE(cs.prime);
    CAPTURE(cs.level);
    auto k = fixtures::carlitz(cs.q, cs.prime, cs.level, 8);
    auto th = theta_euler(k.cover, 8);
    for (auto& chi : all_characters(*k.cover.H)) {
      auto ct = chi_theta(k.cover, th, chi);
      auto cd = fitting_class_dual(k.cover, ct);
      CHECK(cd.division_exact);
      switch (ct.data.type) {
        case CharType::Type1:
          CHECK(cd.tag == "type1");
          CHECK(cd.gens.size() == 1);
          break;
        case CharType::Type2:
          CHECK(cd.tag == "type2");
          CHECK(cd.trivial_zero_order >= 1);
          break;
        case CharType::Type3:
          CHECK(chi.is_trivial());
          CHECK(cd.tag == "type3-trivial");
          break;
      }
      // the general chi-part formula specialized at g = 1 gives the same ideal
      CHECK(fitting_chi_tate_dual(k.cover, ct).at_one().ideal(6) == cd.ideal(6));
    }
  }
}

TEST_CASE("p dividing the degree of p is surfaced in the audit") {
  auto k = fixtures::carlitz(2, "1+1*t+1*t^2", 2, 8);
  auto th = theta_euler(k.cover, 8);
  auto ct = chi_theta(k.cover, th, character_from_exponents(*k.cover.H, {0}));
  auto cd = fitting_class_dual(k.cover, ct);
  bool seen = false;
  for (auto& a : cd.audit)
    if (a.divisor == "2") {
      seen = true;
      CHECK(a.note.find("p divides d_p") != std::string::npos);
      CHECK(cd.fractional == !a.p_integral);
    }
  CHECK(seen);
}

TEST_CASE("class dual preconditions") {
  auto k = fixtures::carlitz(3, "t", 2, 6);
  auto th = theta_euler(k.cover, 6);
  auto ct = chi_theta(k.cover, th, character_from_exponents(*k.cover.H, {1}));
  auto bad = k.cover;
  bad.S[bad.infinity_index()].frob_G = {1};
  CHECK_THROWS_AS(fitting_class_dual(bad, ct), ValidationError);
}

TEST_CASE("integral form equals the sum of its chi-parts") {
  for (auto cs : kCarlitz) {
    CAPTURE(cs.q);
    CAPTURE(cs.prime);
    CAPTURE(cs.level);
    auto k = fixtures::carlitz(cs.q, cs.prime, cs.level, 8);
    auto th = theta_euler(k.cover, 8);
    auto rt = rationalize(k.cover, th);
    auto tot = fitting_tate_dual_totram(k.cover, rt);
    std::vector<GammaPoly> assembled;
    int m = 1;
    for (auto& chi : all_characters(*k.cover.H)) {
      m = chi.m;
      for (auto& g : fitting_chi_tate_dual(k.cover, chi_theta(k.cover, th, chi)).gens)
        assembled.push_back(lift_chi(k.cover, chi, g));
    }
    for (int K : {1, 2}) {
      RingSpec spec{k.cover.Gamma, m, static_cast<std::int64_t>(k.cover.p), 6, K};
      CHECK(IdealHandle(spec, tot.gens) == IdealHandle(spec, assembled));
    }
  }
}

TEST_CASE("subset form and euler relations") {
  for (auto cs : kCarlitz) {
    CAPTURE(cs.q);
    CAPTURE(cs.prime);
    CAPTURE(cs.level);
    auto k = fixtures::carlitz(cs.q, cs.prime, cs.level, 8);
    auto rt = rationalize(k.cover, theta_euler(k.cover, 8));
    auto sub = fitting_subset_form(k.cover, 8);
    REQUIRE(sub.parts.size() == 2);
    for (std::size_t i = 0; i < sub.parts.size(); ++i)
      CHECK(euler_relation_holds(k.cover, rt, sub.parts[i].W, sub.corestricted[i]));
    auto app = fitting_tate_dual_totram(k.cover, rt).at_one();
    auto A = app.ideal(6), B = sub.fitt.ideal(6);
    CHECK(B.is_subset_of(A));
    // AppFitt at gamma = 1 is the subset ideal plus the W = S' choice taken with
    // the e_v factor, which is n(Gamma) prod |I_v| / (1 - q)
    std::vector<GammaPoly> plus = sub.fitt.gens;
    std::vector<std::uint32_t> all(k.cover.Gamma->order());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto inf = k.cover.inertia(k.cover.S[k.cover.infinity_index()]);
    mpq_class extra(static_cast<long>(inf.size()));
    extra /= mpq_class(1 - static_cast<long>(k.cover.q()));
    plus.push_back(GammaPoly::constant(WElem::norm(k.cover.Gamma, all).scale(Cyclo(extra)), 1, k.cover.q()));
    CHECK(IdealHandle(RingSpec{k.cover.Gamma, 1, static_cast<std::int64_t>(k.cover.p), 6, 1}, plus) == A);
    if (k.prov->prime_degree() % static_cast<int>(k.cover.p) != 0) CHECK(A == B);
  }
}

TEST_CASE("g_T for overlapping inertia") {
  auto c = CoverDescription::make(2, 1, AbelianGroup(), AbelianGroup({2}));
  c.S = {SPlace{"v1", 1, {{}}, {{1}}, {}, {0}, true}, SPlace{"v", 1, {{}}, {{1}}, {}, {0}, false},
         SPlace{"inf", 2, {{}}, {{1}}, {}, {0}, false}};
  c.degree_bound = 1;
  c.validate();
  CHECK(g_T(c, {"v"}) == 1);
  CHECK(g_T(c, {"v", "inf"}) == 2);
}

TEST_CASE("pro-fitting along levels for q=3, p=t") {
  auto k1 = fixtures::carlitz(3, "t", 1, 6), k2 = fixtures::carlitz(3, "t", 2, 6);
  auto t1 = theta_euler(k1.cover, 6), t2 = theta_euler(k2.cover, 6);
  auto map = k2.prov->projection_to(*k1.prov);
  CHECK(projection_compatible(t2, t1, map));
  for (auto& chi : all_characters(*k1.cover.H)) {
    auto f1 = fitting_class_dual(k1.cover, chi_theta(k1.cover, t1, chi));
    auto f2 = fitting_class_dual(k2.cover, chi_theta(k2.cover, t2, chi));
    auto rep = pro_fitting_report({{k1.cover, f1, {}}, {k2.cover, f2, map}}, 6);
    REQUIRE(rep.steps.size() == 1);
    CHECK(rep.steps[0].contained);
    CHECK(rep.steps[0].norm_projection_ok);
    if (rep.steps[0].equality_expected) CHECK(rep.steps[0].equal);
    CHECK(rep.ok);
  }
}

TEST_CASE("generators need an observed tail") {
  auto k = fixtures::carlitz(2, "t^2+t+1", 2, 3);
  auto th = theta_euler(k.cover, 3);
  auto ct = chi_theta(k.cover, th, character_from_exponents(*k.cover.H, {0}));
  REQUIRE_FALSE(ct.stab.verified);
  CHECK_THROWS_AS(fitting_class_dual(k.cover, ct), ValidationError);
  CHECK_THROWS_AS(fitting_chi_tate_dual(k.cover, ct), ValidationError);
  CHECK_THROWS_AS(fitting_tate_dual_totram(k.cover, rationalize(k.cover, th)), ValidationError);
}
