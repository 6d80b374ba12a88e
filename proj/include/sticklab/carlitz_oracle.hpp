#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

#include "sticklab/carlitz.hpp"
#include "sticklab/fq_poly.hpp"

// Ground truth for the Carlitz covers computed without any class field theory:
// torsion polynomials, residual degrees by factoring, place counts and the
// zeta numerator. Only ff_base is shared with the provider.
namespace sticklab {

// c_0 x + c_1 x^q + ... + c_k x^{q^k} with c_i in F_q[t]
struct AdditivePoly {
  std::vector<FqPoly> c;
};
AdditivePoly compose(const AdditivePoly& a, const AdditivePoly& b);
// Phi_a for the Carlitz module Phi_t = t x + x^q
AdditivePoly carlitz_action(const FqPoly& a);

// dense polynomial in x with coefficients in F_q[t], low degree first
using XPoly = std::vector<FqPoly>;
XPoly to_dense(const AdditivePoly& a);
// Phi_{p^n}(x) / Phi_{p^{n-1}}(x), divisibility asserted
XPoly carlitz_torsion_poly(const FqPoly& prime, int n);

// residual degree of the place q in F_n, from a distinct-degree factorization of
// the torsion polynomial over A/q
int frobenius_order_oracle(const XPoly& torsion, const FqPoly& place);

struct ReciprocityRow {
  std::string place;
  int degree = 0;
  int f_factored = 0;
  int f_predicted = 0;
  bool ok = false;
};
// compares the oracle against the order of [q] in (A/p^n)^* for every monic irreducible q != p of degree <= max_deg
std::vector<ReciprocityRow> reciprocity_report(const CarlitzProvider& prov, int max_deg, int workers = 1);

struct Census {
  std::int64_t extension_degree = 0;       // [F_n : F]
  std::vector<std::int64_t> places;        // places[d] = number of places of F_n of degree d, d <= m_max
  std::vector<std::int64_t> N;             // N[m] for m = 1..m_max (N[0] unused)
};
static constexpr int kMaxCensusDegree = 10;
Census place_census(const FqPoly& prime, int n, int m_max, int workers = 1);

// conductor-discriminant formula
int genus_formula(const FqPoly& prime, int n);

struct ZetaReport {
  int genus = 0;
  int genus_formula = 0;
  std::vector<mpz_class> P;  // numerator coefficients, degree 2g
  std::vector<std::int64_t> N;
  mpz_class h;
  int v_p_h = 0;
  int overdetermined_checks = 0;  // census values beyond degree g confirmed by P
  bool functional_equation = false;
  bool weil_bounds = false;
  std::vector<std::string> diagnostics;
};
// census of the base field F itself gives P = 1
ZetaReport zeta_from_counts(std::int64_t q, const std::vector<std::int64_t>& N, int genus);
ZetaReport zeta_from_census(const FqPoly& prime, int n, int workers = 1);

}  // namespace sticklab
