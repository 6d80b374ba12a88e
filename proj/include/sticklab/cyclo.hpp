#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace sticklab {

// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}.
// m = 1 is plain Q. Mixed operations promote a rational operand.
class Cyclo {
 public:
  Cyclo() : m_(1), c_(1) {}
  Cyclo(long v) : m_(1), c_{mpq_class(v)} {}  // NOLINT: implicit on purpose, integers act as scalars
  explicit Cyclo(const mpq_class& v) : m_(1), c_{v} {}
  static Cyclo zero(int m);
  static Cyclo rational(int m, const mpq_class& v);
  static Cyclo zeta(int m, std::int64_t k);  // zeta_m^k

  int m() const { return m_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  mpq_class rational_part() const { return c_[0]; }

  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator-() const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  Cyclo inverse() const;
  Cyclo operator/(const Cyclo& o) const { return *this * o.inverse(); }
  bool operator==(const Cyclo& o) const;
  bool operator!=(const Cyclo& o) const { return !(*this == o); }
  Cyclo promote(int m) const;

  // every coefficient has denominator prime to p
  bool is_p_integral(std::int64_t p) const;
  // coefficients reduced into Z/p^M; throws if not p-integral
  std::vector<std::int64_t> reduce_mod(std::int64_t p, int M) const;
  // common denominator and numerators
  mpz_class common_denominator() const;
  std::string to_string() const;

  static const std::vector<mpz_class>& cyclotomic(int m);
  static int phi(int m);

 private:
  Cyclo(int m, std::vector<mpq_class> c) : m_(m), c_(std::move(c)) {}
  void reduce_poly(std::vector<mpq_class>& v) const;
  int m_;
  std::vector<mpq_class> c_;
};

std::int64_t ipow(std::int64_t b, int e);
// v_p of a nonzero rational
int valuation(const mpq_class& x, std::int64_t p);

}  // namespace sticklab
