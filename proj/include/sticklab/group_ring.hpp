#pragma once
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "sticklab/abelian_group.hpp"
#include "sticklab/cyclo.hpp"
#include "sticklab/errors.hpp"

namespace sticklab {

using GroupPtr = std::shared_ptr<const AbelianGroup>;

inline bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || (a && b && *a == *b); }

// Sparse element of C[group]; zero coefficients are never stored.
template <class C>
class GroupRingElem {
 public:
  GroupRingElem() = default;
  explicit GroupRingElem(GroupPtr g) : g_(std::move(g)) {}

  static GroupRingElem one(GroupPtr g) { return basis(std::move(g), 0, C(1)); }
  static GroupRingElem basis(GroupPtr g, std::uint32_t idx, const C& c) {
    GroupRingElem r(std::move(g));
    if (!is_zero_coeff(c)) r.c_[idx] = c;
    return r;
  }
  // sum of the listed group elements
  static GroupRingElem norm(GroupPtr g, const std::vector<std::uint32_t>& elems) {
    GroupRingElem r(std::move(g));
    for (auto e : elems) r.c_[e] = r.c_[e] + C(1);
    return r;
  }

  const GroupPtr& group() const { return g_; }
  const std::map<std::uint32_t, C>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  C coeff(std::uint32_t idx) const {
    auto it = c_.find(idx);
    return it == c_.end() ? C(0) : it->second;
  }
  void add_term(std::uint32_t idx, const C& c) {
    C v = coeff(idx) + c;
    if (is_zero_coeff(v)) c_.erase(idx);
    else c_[idx] = v;
  }

  GroupRingElem operator+(const GroupRingElem& o) const {
    check(o);
    GroupRingElem r = *this;
    if (!r.g_) r.g_ = o.g_;
    for (auto& [k, v] : o.c_) r.add_term(k, v);
    return r;
  }
  GroupRingElem operator-() const {
    GroupRingElem r = *this;
    for (auto& [k, v] : r.c_) v = -v;
    return r;
  }
  GroupRingElem operator-(const GroupRingElem& o) const { return *this + (-o); }
  GroupRingElem operator*(const GroupRingElem& o) const {
    check(o);
    GroupRingElem r(g_ ? g_ : o.g_);
    if (c_.empty() || o.c_.empty()) return r;
    for (auto& [a, x] : c_)
      for (auto& [b, y] : o.c_) r.add_term(r.g_->add(a, b), x * y);
    return r;
  }
  GroupRingElem scale(const C& s) const {
    GroupRingElem r(g_);
    if (is_zero_coeff(s)) return r;
    for (auto& [k, v] : c_) r.add_term(k, v * s);
    return r;
  }
  // multiply by a group element
  GroupRingElem shift(std::uint32_t idx) const {
    GroupRingElem r(g_);
    for (auto& [k, v] : c_) r.c_[g_->add(k, idx)] = v;
    return r;
  }
  GroupRingElem& operator+=(const GroupRingElem& o) { return *this = *this + o; }
  GroupRingElem& operator-=(const GroupRingElem& o) { return *this = *this - o; }
  GroupRingElem& operator*=(const GroupRingElem& o) { return *this = *this * o; }
  bool operator==(const GroupRingElem& o) const { return c_ == o.c_; }
  bool operator!=(const GroupRingElem& o) const { return c_ != o.c_; }

  C augmentation() const {
    C s(0);
    for (auto& [k, v] : c_) s = s + v;
    return s;
  }
  // push forward along a group homomorphism given as an index table
  GroupRingElem map_group(GroupPtr target, const std::vector<std::uint32_t>& image) const {
    GroupRingElem r(std::move(target));
    for (auto& [k, v] : c_) r.add_term(image.at(k), v);
    return r;
  }
  // the involution sigma -> sigma^{-1}
  GroupRingElem involution() const {
    GroupRingElem r(g_);
    for (auto& [k, v] : c_) r.c_[g_->neg(k)] = v;
    return r;
  }

  template <class D, class F>
  GroupRingElem<D> convert(F&& f) const {
    GroupRingElem<D> r(g_);
    for (auto& [k, v] : c_) r.add_term(k, f(v));
    return r;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : c_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << coeff_text(v) << ")[";
      auto e = g_->element(k);
      for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
      os << "]";
    }
    return os.str();
  }

  static bool is_zero_coeff(const C& c) {
    if constexpr (requires { c.is_zero(); }) return c.is_zero();
    else return c == C(0);
  }

 private:
  static std::string coeff_text(const C& c) {
    if constexpr (requires { c.to_string(); }) return c.to_string();
    else {
      std::ostringstream os;
      os << c;
      return os.str();
    }
  }
  void check(const GroupRingElem& o) const {
    if (g_ && o.g_ && !same_group(g_, o.g_)) throw ValidationError("group ring elements over different groups");
  }
  GroupPtr g_;
  std::map<std::uint32_t, C> c_;
};

using ZElem = GroupRingElem<std::int64_t>;
using WElem = GroupRingElem<Cyclo>;

inline WElem to_welem(const ZElem& x, int m) {
  return x.convert<Cyclo>([m](std::int64_t v) { return Cyclo::rational(m, mpq_class(static_cast<long>(v))); });
}

}  // namespace sticklab
