#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace sticklab {

// Finite abelian group Z/o_1 x ... x Z/o_k. Elements are addressed by a
// mixed-radix index with the first factor least significant, so for a
// product A x B the index is a + |A| * b.
class AbelianGroup {
 public:
  using Elem = std::vector<std::int64_t>;

  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<std::int64_t> orders);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::uint32_t order() const { return order_; }
  std::int64_t exponent() const;
  bool is_trivial() const { return order_ == 1; }

  Elem reduce(const Elem& e) const;
  std::uint32_t index(const Elem& e) const;
  Elem element(std::uint32_t idx) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t scale(std::uint32_t a, std::int64_t k) const;
  std::int64_t element_order(std::uint32_t a) const;
  // sorted list of the indices in the subgroup generated by gens
  std::vector<std::uint32_t> subgroup(const std::vector<std::uint32_t>& gens) const;

  static AbelianGroup product(const AbelianGroup& a, const AbelianGroup& b);
  bool operator==(const AbelianGroup& o) const { return orders_ == o.orders_; }
  bool operator!=(const AbelianGroup& o) const { return orders_ != o.orders_; }
  std::string to_string() const;

 private:
  std::vector<std::int64_t> orders_;
  std::uint32_t order_ = 1;
};

// Smith form of an integer relation matrix (rows are relations on Z^k).
// invariants[i] > 1 are the orders of Z^k / rowspace; coordinates of x in
// the quotient are (x * V)[kept[i]] mod invariants[i].
struct SmithForm {
  std::vector<std::int64_t> invariants;
  std::vector<std::size_t> kept;
  std::vector<std::vector<std::int64_t>> V;  // k x k, column operations
  AbelianGroup::Elem coordinates(const AbelianGroup::Elem& x) const;
};
SmithForm smith_form(std::vector<std::vector<std::int64_t>> rows, std::size_t k);

struct QuotientMap {
  AbelianGroup target;
  std::vector<std::uint32_t> image;  // source index -> target index
};
QuotientMap quotient(const AbelianGroup& a, const std::vector<std::uint32_t>& gens);

// Structure of the group generated by gens inside some ambient group given only
// through a multiplication callback on opaque ids.
struct BlackBoxDecomposition {
  AbelianGroup group;
  std::unordered_map<std::uint64_t, std::uint32_t> index_of;  // id -> group index
  std::vector<std::uint64_t> id_of;                           // group index -> id
};
BlackBoxDecomposition decompose_black_box(std::uint64_t identity, const std::vector<std::uint64_t>& gens,
                                          const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& mul,
                                          std::size_t limit);

}  // namespace sticklab
