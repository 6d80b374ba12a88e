#pragma once
#include <optional>
#include <string>
#include <vector>

#include "sticklab/group_ring.hpp"

namespace sticklab {

// N(g) / (1 - q g)^k with N a polynomial over W[G] = Q(zeta_m)[G]. Here g is
// the image of the inverse of the arithmetic Frobenius, so the Stickelberger
// series in u corresponds to the substitution u -> g.
class GammaPoly {
 public:
  GammaPoly() = default;
  GammaPoly(GroupPtr g, int m, std::int64_t q) : g_(std::move(g)), m_(m), q_(q) {}
  static GammaPoly constant(const WElem& x, int m, std::int64_t q);
  static GammaPoly from_coeffs(GroupPtr g, int m, std::int64_t q, std::vector<WElem> num, int k = 0);
  // 1 - c * sigma * g^d
  static GammaPoly one_minus(GroupPtr g, int m, std::int64_t q, int d, std::uint32_t sigma = 0, const Cyclo& c = Cyclo(1));
  // 1 + g + ... + g^{d-1}
  static GammaPoly geometric(GroupPtr g, int m, std::int64_t q, int d);

  const GroupPtr& group() const { return g_; }
  int m() const { return m_; }
  std::int64_t q() const { return q_; }
  const std::vector<WElem>& num() const { return num_; }
  int denom_power() const { return k_; }
  int degree() const { return static_cast<int>(num_.size()) - 1; }
  bool is_zero() const { return num_.empty(); }
  WElem coeff(int i) const;

  GammaPoly operator+(const GammaPoly& o) const;
  GammaPoly operator-(const GammaPoly& o) const;
  GammaPoly operator-() const;
  GammaPoly operator*(const GammaPoly& o) const;
  GammaPoly scale(const WElem& x) const;
  GammaPoly scale(const Cyclo& c) const;
  bool operator==(const GammaPoly& o) const;

  // exact quotient by d (d has no denominator and a single-term leading coefficient)
  std::optional<GammaPoly> try_divide(const GammaPoly& d) const;
  GammaPoly divide_exact(const GammaPoly& d, const std::string& tag) const;
  // largest j with (1-g)^j dividing the numerator; throws on zero
  int vanishing_order_at_one() const;
  // value at g = 1: N(1) / (1-q)^k
  WElem eval_at_one() const;
  // cancel factors (1 - q g) from the denominator where the numerator allows
  GammaPoly reduce_denominator() const;
  // power series coefficients of g^0..g^{K-1}
  std::vector<WElem> series(int K) const;
  // coefficients of T^0..T^{K-1} after g = 1 + T; T^0 is eval_at_one()
  std::vector<WElem> taylor_at_one(int K) const;
  GammaPoly map_group(GroupPtr target, const std::vector<std::uint32_t>& image) const;
  std::string to_string() const;

 private:
  void trim();
  WElem zero() const { return WElem(g_); }
  GroupPtr g_;
  int m_ = 1;
  std::int64_t q_ = 0;
  std::vector<WElem> num_;
  int k_ = 0;
};

}  // namespace sticklab
