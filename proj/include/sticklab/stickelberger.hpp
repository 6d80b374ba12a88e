#pragma once
#include <string>
#include <vector>

#include "sticklab/carlitz.hpp"
#include "sticklab/cover.hpp"
#include "sticklab/gamma_poly.hpp"

namespace sticklab {

// Theta_{K/F,S}(u) = prod_{v not in S} (1 - Fr_v^{-1} u^{deg v})^{-1}, truncated mod u^{D+1}
struct ThetaSeries {
  GroupPtr gamma;
  std::int64_t q = 0;
  int D = 0;
  std::vector<ZElem> coeffs;  // u^0 .. u^D
  std::string method;
};

ThetaSeries theta_euler(const CoverDescription& c, int D, int workers = 1);
// sum over monic a prime to p of [a]^{-1} u^{deg a}
ThetaSeries theta_dirichlet(const CarlitzProvider& prov, int D, int workers = 1);
bool theta_equal(const ThetaSeries& a, const ThetaSeries& b);

struct Stabilization {
  int D0 = 0;
  bool declared = false;  // D0 came from the cover rather than from the data
  bool verified = false;
  std::string note;
};

struct ChiTheta {
  CharacterData data;
  std::vector<WElem> series;  // coefficients over W[G], u^0..u^D
  GammaPoly theta;            // N(g)/(1-qg)^k, k = 1 only for chi_0
  Stabilization stab;
};

ChiTheta chi_theta(const CoverDescription& c, const ThetaSeries& th, const Character& chi);

// (1 - q u) Theta as an element of Q[Gamma][g], divided back by (1 - q g)
struct RationalTheta {
  GammaPoly theta;
  Stabilization stab;
};
RationalTheta rationalize(const CoverDescription& c, const ThetaSeries& th);

// Theta at a higher level pushed down to a lower one, coefficientwise
bool projection_compatible(const ThetaSeries& hi, const ThetaSeries& lo, const std::vector<std::uint32_t>& gamma_map);

ZElem theta_as_zelem(const ThetaSeries& th, int d);

}  // namespace sticklab
