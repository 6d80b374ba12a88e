#pragma once
#include <memory>
#include <string>

#include "sticklab/carlitz.hpp"
#include "sticklab/stickelberger.hpp"

namespace fixtures {

struct Carlitz {
  std::shared_ptr<sticklab::CarlitzProvider> prov;
  sticklab::CoverDescription cover;
};

inline Carlitz carlitz(std::uint32_t q, const std::string& prime, int level, int D) {
  std::uint32_t p = q, r = 1;
  for (std::uint32_t c = 2; c <= q; ++c)
    if (q % c == 0) {
      p = c;
      break;
    }
  for (std::uint32_t x = p; x < q; x *= p) ++r;
  auto f = sticklab::FiniteField::make(p, r);
  auto prov = std::make_shared<sticklab::CarlitzProvider>(f, sticklab::FqPoly::parse(f, prime), level);
  return {prov, prov->describe(D)};
}

}  // namespace fixtures
