#pragma once
#include <optional>
#include <string>
#include <vector>

#include "sticklab/fq_poly.hpp"
#include "sticklab/laurent.hpp"

namespace sticklab {

// p-adic exponent: an integer, or a residue y0 mod p^M
struct YExp {
  bool residue = false;
  std::int64_t value = 0;
  int M = 0;

  static YExp integer(std::int64_t y) { return {false, y, 0}; }
  static YExp mod(std::int64_t y0, int M) { return {true, y0, M}; }
  YExp negated() const;
  std::string describe() const;
};

// s = (x, y); no x means the formal variable
struct SPoint {
  std::optional<LaurentNum> x;
  YExp y;
};

// <a> = a t^{-deg a} for monic a
LaurentNum one_unit(const FqPoly& a);
// u^y at precision P; residue exponents need P <= p^M
LaurentNum unit_pow(const LaurentNum& u, const YExp& y, std::int64_t P);
// a^s = x^{deg a} <a>^y
LaurentNum ideal_power(const FqPoly& a, const SPoint& s, std::int64_t P);

// S_d(y) = sum of <a>^y over monic a of degree d, optionally skipping multiples of `avoid`
LaurentNum power_sum(const FieldPtr& f, int d, const YExp& y, std::int64_t P, const FqPoly* avoid = nullptr,
                     int workers = 1);

struct ZetaPartial {
  LaurentNum value;
  std::int64_t tail_valuation = 0;  // the omitted strata lie in pi^tail_valuation
};
// sum_{d <= D} x^{-d} S_d(-y), needs |x| > 1
ZetaPartial zeta_partial(const FieldPtr& f, const SPoint& s, int D, std::int64_t P, int workers = 1);

struct NegativeZeta {
  int j = 0;
  FqPoly value;
  std::vector<FqPoly> strata;  // sum of a^j over monic a of degree d
  int stopped_at = 0;          // last degree enumerated
  std::string certificate;
};
// sum of a^j over all monic a, by enumeration until two consecutive zero strata beyond degree j
NegativeZeta zeta_at_negative_int(const FieldPtr& f, int j, int workers = 1);

struct InterpolationRow {
  int d = 0;
  LaurentNum euler;       // Euler product side over irreducibles other than p
  LaurentNum zeta_side;   // S_d(y) - <p>^y S_{d - deg p}(y)
  LaurentNum restricted;  // direct sum over monics prime to p
  bool match = false;
};
struct InterpolationReport {
  std::string prime;
  YExp y;
  int D = 0;
  std::int64_t P = 0;
  std::vector<InterpolationRow> rows;
  bool ok = true;
};
InterpolationReport interpolation_check(const FqPoly& prime, const YExp& y, int D, std::int64_t P, int workers = 1);

}  // namespace sticklab
