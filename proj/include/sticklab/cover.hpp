#pragma once
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sticklab/group_ring.hpp"

namespace sticklab {

using Elem = AbelianGroup::Elem;

struct SPlace {
  std::string label;
  int degree = 1;
  // I_v is generated by the pairs (inertia_H[i], inertia_G[i])
  std::vector<Elem> inertia_H, inertia_G;
  Elem frob_H, frob_G;
  bool totally_ramified = false;
};

struct PlaceRecord {
  int degree = 1;
  Elem frob_H, frob_G;
  std::string label;
};

// Galois data of X/F with Gal = H x G, |H| prime to p and G a p-group.
struct CoverDescription {
  std::uint32_t p = 2, r = 1;
  GroupPtr H, G, Gamma;  // Gamma = H x G, H factors first
  std::vector<Elem> gal_F1_over_HA;  // generators inside H
  std::vector<SPlace> S;
  int degree_bound = 0;
  std::vector<PlaceRecord> places;
  std::optional<int> stabilization_degree;
  nlohmann::json provider;  // free-form provenance, e.g. the Carlitz parameters

  static CoverDescription make(std::uint32_t p, std::uint32_t r, AbelianGroup H, AbelianGroup G);
  std::int64_t q() const;
  std::uint32_t gamma_index(const Elem& h, const Elem& g) const;
  std::uint32_t h_part(std::uint32_t gamma) const { return gamma % H->order(); }
  std::uint32_t g_part(std::uint32_t gamma) const { return gamma / H->order(); }
  std::uint32_t frob(const PlaceRecord& v) const { return gamma_index(v.frob_H, v.frob_G); }
  std::uint32_t frob(const SPlace& v) const { return gamma_index(v.frob_H, v.frob_G); }
  std::vector<std::uint32_t> inertia_generators(const SPlace& v) const;
  std::vector<std::uint32_t> inertia(const SPlace& v) const;  // sorted subgroup of Gamma
  std::size_t v1_index() const;                                // the totally ramified place
  std::size_t infinity_index() const;
  // throws ValidationError describing the first inconsistency
  void validate() const;
  bool operator==(const CoverDescription& o) const;
};

nlohmann::json cover_to_json(const CoverDescription& c);
CoverDescription cover_from_json(const nlohmann::json& j);
CoverDescription load_cover(const std::string& path);
void save_cover(const CoverDescription& c, const std::string& path);
std::string cover_hash(const CoverDescription& c);

// Character of H: chi(h) = zeta_m^{sum c_i h_i m/d_i}, m = exponent(H).
struct Character {
  Elem c;
  int m = 1;
  bool is_trivial() const;
  std::int64_t value_exp(const AbelianGroup& H, std::uint32_t h) const;
  std::string descriptor() const;
  bool operator==(const Character& o) const { return c == o.c && m == o.m; }
};
std::vector<Character> all_characters(const AbelianGroup& H);
Character character_from_exponents(const AbelianGroup& H, const Elem& c);

enum class CharType { Type1 = 1, Type2 = 2, Type3 = 3 };

struct CharacterData {
  Character chi;
  CharType type = CharType::Type3;
  std::int64_t frob_p_exp = 0;  // chi(Fr_{p,H}) = zeta_m^frob_p_exp
  bool frob_p_trivial = true;
  std::vector<std::string> S_chi, S1_chi;
};
CharType classify(const CoverDescription& c, const Character& chi);
CharacterData character_data(const CoverDescription& c, const Character& chi);
std::string type_name(CharType t);

// Z[H x G] -> W[G], sigma = (h, g) -> chi(h) g, with W = Q(zeta_m)
WElem apply_character_H(const CoverDescription& c, const Character& chi, const ZElem& x);
WElem apply_character_H(const CoverDescription& c, const Character& chi, const WElem& x);

// e_chi = |H|^{-1} sum_h chi(h)^{-1} h inside W[Gamma]
WElem idempotent(const CoverDescription& c, const Character& chi);
// W[G] -> W[Gamma] along G = {0} x G
WElem lift_from_G(const CoverDescription& c, const WElem& x);

// Quotient by the inertia groups of the places of S labelled in W. The places
// in W leave S and are appended to the place stream with their Frobenius.
struct CoverQuotient {
  CoverDescription cover;
  std::vector<std::uint32_t> gamma_image;  // old Gamma index -> new Gamma index
};
CoverQuotient cover_quotient(const CoverDescription& c, const std::vector<std::string>& W);

}  // namespace sticklab
