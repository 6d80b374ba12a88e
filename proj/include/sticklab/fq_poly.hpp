#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sticklab/finite_field.hpp"

namespace sticklab {

// Dense polynomial over F_q in the variable t, low degree first, no trailing zeros.
class FqPoly {
 public:
  FqPoly() = default;
  explicit FqPoly(FieldPtr f) : f_(std::move(f)) {}
  FqPoly(FieldPtr f, std::vector<Fq> c);

  static FqPoly constant(FieldPtr f, Fq c);
  static FqPoly monomial(FieldPtr f, int deg, Fq c = 1);
  static FqPoly t(FieldPtr f) { return monomial(std::move(f), 1); }

  const FieldPtr& field() const { return f_; }
  const std::vector<Fq>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Fq lead() const { return c_.empty() ? 0 : c_.back(); }
  Fq coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }

  FqPoly operator+(const FqPoly& o) const;
  FqPoly operator-(const FqPoly& o) const;
  FqPoly operator-() const;
  FqPoly operator*(const FqPoly& o) const;
  FqPoly operator%(const FqPoly& o) const { return divmod(o).second; }
  FqPoly operator/(const FqPoly& o) const { return divmod(o).first; }
  FqPoly& operator+=(const FqPoly& o) { return *this = *this + o; }
  FqPoly& operator*=(const FqPoly& o) { return *this = *this * o; }
  bool operator==(const FqPoly& o) const { return c_ == o.c_; }
  bool operator!=(const FqPoly& o) const { return c_ != o.c_; }
  // ordering of the monic enumeration: degree, then coefficient vector with c0 most significant
  bool operator<(const FqPoly& o) const;

  std::pair<FqPoly, FqPoly> divmod(const FqPoly& d) const;
  FqPoly scale(Fq c) const;
  FqPoly make_monic() const;
  FqPoly shift(int k) const;  // multiply by t^k
  FqPoly derivative() const;
  Fq eval(Fq x) const;

  // "c0+c1*t+c2*t^2", zero terms omitted, "0" for the zero polynomial
  std::string to_string() const;
  static FqPoly parse(FieldPtr f, const std::string& text);

 private:
  void trim();
  FieldPtr f_;
  std::vector<Fq> c_;
};

FqPoly gcd(FqPoly a, FqPoly b);
// returns (g, s, u) with s*a + u*b = g monic
std::tuple<FqPoly, FqPoly, FqPoly> xgcd(const FqPoly& a, const FqPoly& b);
FqPoly mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m);
FqPoly powmod(FqPoly base, std::uint64_t e, const FqPoly& m);
// g^(Q^k) mod m with Q = |F_q|
FqPoly frob_power(const FqPoly& g, int k, const FqPoly& m);
// inverse of a modulo m; throws if not coprime
FqPoly invmod(const FqPoly& a, const FqPoly& m);

// distinct-degree test; requires a monic input
bool is_irreducible(const FqPoly& f);
// distinct-degree factorization of a monic squarefree-or-not polynomial:
// pairs (degree, product of the irreducible factors of that degree)
std::vector<std::pair<int, FqPoly>> distinct_degree_factorization(const FqPoly& f);

// Monics of degree d in enumeration order: coefficient vector (c0,...,c_{d-1})
// in lexicographic order with c0 most significant.
std::uint64_t monic_count(const FieldPtr& f, int d);
FqPoly monic_at(const FieldPtr& f, int d, std::uint64_t index);
std::uint64_t monic_index(const FqPoly& m);
void for_each_monic(const FieldPtr& f, int d, std::uint64_t begin, std::uint64_t end,
                    const std::function<void(const FqPoly&)>& fn);
std::vector<FqPoly> enumerate_monic_irreducibles(const FieldPtr& f, int d);
FqPoly first_monic_irreducible(const FieldPtr& f, int d);
// number of monic irreducibles of degree d (necklace count)
std::uint64_t irreducible_count(std::uint64_t q, int d);

}  // namespace sticklab
