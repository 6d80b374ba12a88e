#include "sticklab/goss_zeta.hpp"

#include "sticklab/errors.hpp"
#include "sticklab/parallel.hpp"

namespace sticklab {

YExp YExp::negated() const {
  YExp r = *this;
  r.value = -value;
  return r;
}

std::string YExp::describe() const {
  if (!residue) return std::to_string(value);
  return std::to_string(value) + " mod p^" + std::to_string(M);
}

LaurentNum one_unit(const FqPoly& a) {
  if (a.is_zero() || !a.is_monic()) throw ValidationError("one-unit of a non-monic polynomial " + a.to_string());
  return LaurentNum::from_poly(a).shift(a.degree());
}

LaurentNum unit_pow(const LaurentNum& u, const YExp& y, std::int64_t P) {
  if (u.is_zero() || u.val() != 0 || u.coeff(0) != 1) throw ValidationError("unit_pow needs a one-unit");
  if (!y.residue) return u.pow(y.value, P);
  const std::int64_t p = u.field()->characteristic();
  std::int64_t pm = 1;
  for (int i = 0; i < y.M; ++i) {
    pm *= p;
    if (pm > (std::int64_t(1) << 40)) break;
  }
  if (P > pm)
    throw ValidationError("precision " + std::to_string(P) + " exceeds p^M = " + std::to_string(pm) +
                          " for a residue exponent");
  // u^{p^M} = 1 + (u-1)^{p^M} is 1 below pi^{p^M}, so any representative works
  std::int64_t y0 = ((y.value % pm) + pm) % pm;
  return u.truncate(P).pow(y0, P);
}

LaurentNum ideal_power(const FqPoly& a, const SPoint& s, std::int64_t P) {
  if (!s.x) throw ValidationError("ideal_power needs an evaluated x");
  if (s.x->is_zero()) throw ValidationError("ideal_power needs x != 0");
  // x^{deg a} shifts the known window by deg a * val(x)
  const std::int64_t lift = std::max<std::int64_t>(0, -s.x->val() * a.degree());
  LaurentNum up = unit_pow(one_unit(a), s.y, P + lift);
  return (s.x->pow(a.degree(), P + lift) * up).truncate(P);
}

LaurentNum power_sum(const FieldPtr& f, int d, const YExp& y, std::int64_t P, const FqPoly* avoid, int workers) {
  const std::uint64_t n = monic_count(f, d);
  std::vector<LaurentNum> part(static_cast<std::size_t>(std::max(1, workers)), LaurentNum::zero(f, P));
  parallel_ranges(n, workers, [&](std::uint64_t b, std::uint64_t e, int w) {
    LaurentNum acc = LaurentNum::zero(f, P);
    for_each_monic(f, d, b, e, [&](const FqPoly& a) {
      if (avoid && (a % *avoid).is_zero()) return;
      acc += unit_pow(one_unit(a), y, P);
    });
    part[static_cast<std::size_t>(w)] = acc;
  });
  LaurentNum s = LaurentNum::zero(f, P);
  for (auto& x : part) s += x;
  return s;
}

ZetaPartial zeta_partial(const FieldPtr& f, const SPoint& s, int D, std::int64_t P, int workers) {
  if (!s.x) throw ValidationError("zeta_partial needs an evaluated x; use interpolate for the formal variable");
  if (s.x->is_zero() || s.x->val() >= 0) throw ValidationError("zeta_partial needs |x| > 1");
  LaurentNum xi = s.x->inverse(P);
  const std::int64_t v = xi.val();
  ZetaPartial out;
  // each stratum S_d(-y) has absolute value <= 1
  out.tail_valuation = (D + 1) * v;
  const std::int64_t prec = std::min<std::int64_t>(P, out.tail_valuation);
  LaurentNum acc = LaurentNum::zero(f, prec), xp = LaurentNum::constant(f, 1, prec);
  const YExp ny = s.y.negated();
  for (int d = 0; d <= D; ++d) {
    acc += (xp * power_sum(f, d, ny, prec, nullptr, workers)).truncate(prec);
    xp = (xp * xi).truncate(prec);
  }
  out.value = acc;
  return out;
}

NegativeZeta zeta_at_negative_int(const FieldPtr& f, int j, int workers) {
  if (j < 1) throw ValidationError("zeta_at_negative_int needs j >= 1");
  NegativeZeta out;
  out.j = j;
  out.value = FqPoly(f);
  int zeros = 0;
  const int abort_at = j + 8;
  for (int d = 0;; ++d) {
    if (d > abort_at)
      throw TheoremViolation("no two consecutive zero strata by degree " + std::to_string(abort_at) + " for j = " +
                             std::to_string(j));
    std::vector<FqPoly> part(static_cast<std::size_t>(std::max(1, workers)), FqPoly(f));
    parallel_ranges(monic_count(f, d), workers, [&](std::uint64_t b, std::uint64_t e, int w) {
      FqPoly acc(f);
      for_each_monic(f, d, b, e, [&](const FqPoly& a) {
        FqPoly pw = FqPoly::constant(f, 1);
        for (int i = 0; i < j; ++i) pw *= a;
        acc += pw;
      });
      part[static_cast<std::size_t>(w)] = acc;
    });
    FqPoly stratum(f);
    for (auto& x : part) stratum += x;
    out.strata.push_back(stratum);
    out.value += stratum;
    zeros = stratum.is_zero() ? zeros + 1 : 0;
    if (zeros >= 2 && d > j) {
      out.stopped_at = d;
      out.certificate = "strata " + std::to_string(d - 1) + " and " + std::to_string(d) + " vanish, degree " +
                        std::to_string(d) + " > j = " + std::to_string(j);
      return out;
    }
  }
}

InterpolationReport interpolation_check(const FqPoly& prime, const YExp& y, int D, std::int64_t P, int workers) {
  if (!prime.is_monic() || !is_irreducible(prime)) throw ValidationError("interpolation needs a monic irreducible p");
  const FieldPtr& f = prime.field();
  InterpolationReport rep;
  rep.prime = prime.to_string();
  rep.y = y;
  rep.D = D;
  rep.P = P;
  // Euler side: prod over q != p of (1 - <q>^y u^deg q)^{-1}
  std::vector<LaurentNum> e(static_cast<std::size_t>(D + 1), LaurentNum::zero(f, P));
  e[0] = LaurentNum::constant(f, 1, P);
  for (int k = 1; k <= D; ++k)
    for (auto& q : enumerate_monic_irreducibles(f, k)) {
      if (q == prime) continue;
      LaurentNum w = unit_pow(one_unit(q), y, P);
      for (int i = k; i <= D; ++i) e[i] += (w * e[i - k]).truncate(P);
    }
  std::vector<LaurentNum> S;
  for (int d = 0; d <= D; ++d) S.push_back(power_sum(f, d, y, P, nullptr, workers));
  LaurentNum pw = unit_pow(one_unit(prime), y, P);
  for (int d = 0; d <= D; ++d) {
    InterpolationRow r;
    r.d = d;
    r.euler = e[d];
    r.zeta_side = S[d];
    if (d >= prime.degree()) r.zeta_side = (r.zeta_side - pw * S[d - prime.degree()]).truncate(P);
    r.restricted = power_sum(f, d, y, P, &prime, workers);
    r.match = r.euler.agrees_to(r.zeta_side, P) && r.restricted.agrees_to(r.zeta_side, P);
    rep.ok = rep.ok && r.match;
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

}  // namespace sticklab
