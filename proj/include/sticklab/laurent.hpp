#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "sticklab/fq_poly.hpp"

namespace sticklab {

// Element of F_q((pi)), pi = 1/t, known modulo pi^prec. Coefficients
// below prec that are not stored in the window are zero.
class LaurentNum {
 public:
  static constexpr std::int64_t kExact = std::int64_t(1) << 60;

  LaurentNum() = default;
  static LaurentNum zero(FieldPtr f, std::int64_t prec = kExact);
  static LaurentNum constant(FieldPtr f, Fq c, std::int64_t prec = kExact);
  static LaurentNum pi_power(FieldPtr f, std::int64_t k, std::int64_t prec = kExact);
  // a(t) as a Laurent series in pi: t^k = pi^{-k}
  static LaurentNum from_poly(const FqPoly& a, std::int64_t prec = kExact);
  // explicit coefficients c_i of pi^{val+i}
  static LaurentNum from_coeffs(FieldPtr f, std::int64_t val, std::vector<Fq> c, std::int64_t prec);

  const FieldPtr& field() const { return f_; }
  bool is_exact() const { return prec_ >= kExact; }
  std::int64_t prec() const { return prec_; }
  // valuation of the known part; equals prec() when the known part is zero
  std::int64_t val() const { return win_.empty() ? prec_ : val_; }
  bool is_zero() const { return win_.empty(); }
  Fq coeff(std::int64_t k) const;  // throws for k >= prec()
  Fq leading() const { return win_.empty() ? 0 : win_.front(); }
  std::int64_t window_end() const { return val_ + static_cast<std::int64_t>(win_.size()); }

  LaurentNum operator+(const LaurentNum& o) const;
  LaurentNum operator-(const LaurentNum& o) const;
  LaurentNum operator-() const;
  LaurentNum operator*(const LaurentNum& o) const;
  LaurentNum& operator+=(const LaurentNum& o) { return *this = *this + o; }
  LaurentNum& operator*=(const LaurentNum& o) { return *this = *this * o; }
  LaurentNum scale(Fq c) const;
  LaurentNum shift(std::int64_t k) const;  // multiply by pi^k
  LaurentNum truncate(std::int64_t p) const;
  // prec of an exact input is replaced by cap
  LaurentNum inverse(std::int64_t cap) const;
  LaurentNum pow(std::int64_t n, std::int64_t cap) const;

  // coefficients agree for every exponent below upto (both must be known there)
  bool agrees_to(const LaurentNum& o, std::int64_t upto) const;
  // structural equality: same precision and same known coefficients
  bool operator==(const LaurentNum& o) const;

  std::string to_string() const;

 private:
  void normalize();
  FieldPtr f_;
  std::int64_t val_ = 0;
  std::vector<Fq> win_;
  std::int64_t prec_ = kExact;
};

}  // namespace sticklab
