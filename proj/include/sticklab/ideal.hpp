#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "sticklab/gamma_poly.hpp"

namespace sticklab {

// Row-echelon Howell form of a submodule of (Z/p^M)^n. Pivots are normalized
// to powers of p and entries above a pivot p^v are reduced into [0, p^v).
class HowellForm {
 public:
  HowellForm(std::int64_t p, int M, std::size_t ncols);
  static HowellForm build(std::int64_t p, int M, std::size_t ncols, std::vector<std::vector<std::int64_t>> rows);

  std::int64_t p() const { return p_; }
  int M() const { return M_; }
  std::int64_t modulus() const { return pm_; }
  std::size_t ncols() const { return n_; }
  const std::vector<std::vector<std::int64_t>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivot_cols() const { return pcols_; }
  const std::vector<int>& pivot_vals() const { return pvals_; }

  bool contains(std::vector<std::int64_t> v) const;
  // log_p of the index of the submodule in (Z/p^M)^n
  int colength() const;
  bool operator==(const HowellForm& o) const;

 private:
  int val(std::int64_t x) const;
  std::int64_t p_;
  int M_;
  std::int64_t pm_;
  std::size_t n_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::size_t> pcols_;
  std::vector<int> pvals_;
};

// Ring (W/p^M)[G][T]/(T^K) with W = Z_p[zeta_m] and T = g - 1, the local
// picture at gamma = 1; K = 1 is evaluation at g = 1.
struct RingSpec {
  GroupPtr group;
  int m = 1;
  std::int64_t p = 2;
  int M = 6;
  int K = 1;
  std::size_t ncols() const;
};

class IdealHandle {
 public:
  IdealHandle(RingSpec spec, std::vector<GammaPoly> gens);
  static IdealHandle from_elems(RingSpec spec, const std::vector<WElem>& gens);

  const RingSpec& ring() const { return spec_; }
  const std::vector<GammaPoly>& generators() const { return gens_; }
  const HowellForm& howell() const { return hf_; }
  bool contains(const GammaPoly& x) const;
  bool contains(const WElem& x) const;
  bool is_subset_of(const IdealHandle& o) const;
  bool operator==(const IdealHandle& o) const { return hf_ == o.hf_; }
  // Z_p-length of R / (I + p^M R)
  int colength() const { return hf_.colength(); }
  bool is_unit_ideal() const { return hf_.colength() == 0; }

  // coordinate vector of an element of the ring, entries in Z/p^M
  std::vector<std::int64_t> coordinates(const GammaPoly& x) const;

 private:
  RingSpec spec_;
  std::vector<GammaPoly> gens_;
  HowellForm hf_;
};

}  // namespace sticklab
