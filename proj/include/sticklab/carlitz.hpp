#pragma once
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sticklab/cover.hpp"
#include "sticklab/fq_poly.hpp"

namespace sticklab {

// (A/p^n)^* = H x G for A = F_q[t]: H is the Teichmuller lift of (A/p)^*,
// generated by the lift of the first primitive root in enumeration order, and
// G = (1+p)/(1+p^n). Residues are encoded by their coefficient digits base q
// (constant term least significant).
class CarlitzProvider {
 public:
  static constexpr std::uint64_t kMaxResidues = 1u << 22;

  CarlitzProvider(FieldPtr f, FqPoly prime, int level);

  const FieldPtr& field() const { return f_; }
  const FqPoly& prime() const { return prime_; }
  int level() const { return level_; }
  int prime_degree() const { return prime_.degree(); }
  const FqPoly& modulus() const { return modulus_; }
  std::int64_t q() const { return f_->size(); }

  GroupPtr H() const { return H_; }
  GroupPtr G() const { return G_; }
  GroupPtr Gamma() const { return Gamma_; }

  std::uint64_t residue_code(const FqPoly& a) const;
  FqPoly residue_poly(std::uint64_t code) const;
  // Gamma index of the class of a, which must be prime to p
  std::uint32_t class_of(const FqPoly& a) const;
  std::optional<std::uint32_t> class_of_code(std::uint64_t code) const;
  FqPoly representative(std::uint32_t gamma) const;
  FqPoly teichmuller_generator() const { return omega_; }
  std::uint32_t infinity_inertia_generator() const;

  // split a unit into (x^{|G| b}, x^{|H| a}) by powering, independent of the class table
  std::pair<FqPoly, FqPoly> hg_split(const FqPoly& x) const;

  // Gamma at this level -> Gamma at a lower level of the same prime
  std::vector<std::uint32_t> projection_to(const CarlitzProvider& lower) const;
  // place stream up to degree D (all monic irreducibles other than p)
  // irreducibles(d) may supply cached enumerations
  CoverDescription describe(int D, const std::function<std::vector<FqPoly>(int)>& irreducibles = {}) const;

 private:
  FieldPtr f_;
  FqPoly prime_;
  int level_;
  FqPoly modulus_;
  int N_;  // degree of p^n
  GroupPtr H_, G_, Gamma_;
  FqPoly omega_;
  std::vector<std::int32_t> class_;        // residue code -> Gamma index or -1
  std::vector<std::uint64_t> rep_;         // Gamma index -> residue code
  std::int64_t exp_h_ = 1, exp_g_ = 1;     // exponents of the Teichmuller and one-unit projections
};

}  // namespace sticklab
