#pragma once
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sticklab {

// Elements are encoded as integers 0..size-1. For an extension of a base
// field B by a monic modulus of degree k, an element sum c_j X^j is stored as
// sum c_j |B|^j, so every field ends up with its base-p digits as the flat
// coefficient vector over F_p. Addition is digitwise mod p.
using Fq = std::uint32_t;

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

class FiniteField {
 public:
  static constexpr std::uint32_t kMaxSize = 1u << 16;

  // F_{p^r} with the lexicographically least monic irreducible modulus
  static FieldPtr make(std::uint32_t p, std::uint32_t r = 1);
  // base[X]/(modulus); modulus is monic irreducible over base (low degree first)
  static FieldPtr extension(FieldPtr base, std::span<const Fq> modulus);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t size() const { return size_; }
  std::uint32_t prime_degree() const { return digits_; }
  bool is_prime_field() const { return digits_ == 1; }
  const FieldPtr& base() const { return base_; }
  const std::vector<Fq>& modulus() const { return modulus_; }
  Fq primitive_element() const { return gen_; }

  Fq add(Fq a, Fq b) const;
  Fq sub(Fq a, Fq b) const;
  Fq neg(Fq a) const;
  Fq mul(Fq a, Fq b) const {
    if (a == 0 || b == 0) return 0;
    if (digits_ == 1) return Fq((std::uint64_t(a) * b) % p_);
    std::uint32_t s = log_[a] + log_[b];
    if (s >= size_ - 1) s -= size_ - 1;
    return exp_[s];
  }
  Fq inv(Fq a) const;
  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
  Fq pow(Fq a, std::int64_t e) const;
  Fq from_int(std::int64_t v) const;
  // discrete log to base primitive_element(); a != 0
  std::uint32_t log(Fq a) const;
  Fq exp(std::uint64_t k) const;
  // value of a prime-field element as an integer, or throws
  std::int64_t to_int(Fq a) const;

  bool same_as(const FiniteField& o) const;
  std::string describe() const;

 private:
  FiniteField() = default;
  Fq slow_mul(Fq a, Fq b) const;
  void build_tables();

  std::uint32_t p_ = 0;
  std::uint32_t size_ = 0;
  std::uint32_t digits_ = 0;  // degree over F_p
  FieldPtr base_;
  std::vector<Fq> modulus_;  // over base_, monic, low degree first
  Fq gen_ = 1;
  std::vector<std::uint32_t> log_;
  std::vector<Fq> exp_;
};

}  // namespace sticklab
