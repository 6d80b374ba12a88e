#include "sticklab/abelian_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "sticklab/errors.hpp"

namespace sticklab {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw GuardrailError("integer overflow in Smith form");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw GuardrailError("integer overflow in Smith form");
  return r;
}

// g = s*a + t*b
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return r0;
}

}  // namespace

AbelianGroup::AbelianGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  std::uint64_t n = 1;
  for (auto o : orders_) {
    if (o < 1) throw ValidationError("cyclic factor order must be positive");
    n *= static_cast<std::uint64_t>(o);
    if (n > (1u << 24)) throw GuardrailError("abelian group of order above 2^24");
  }
  order_ = static_cast<std::uint32_t>(n);
}

std::int64_t AbelianGroup::exponent() const {
  std::int64_t e = 1;
  for (auto o : orders_) e = std::lcm(e, o);
  return e;
}

AbelianGroup::Elem AbelianGroup::reduce(const Elem& e) const {
  if (e.size() != orders_.size())
    throw ValidationError("element has " + std::to_string(e.size()) + " coordinates, group has rank " +
                          std::to_string(orders_.size()));
  Elem r(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) r[i] = mod(e[i], orders_[i]);
  return r;
}

std::uint32_t AbelianGroup::index(const Elem& e) const {
  Elem r = reduce(e);
  std::uint64_t idx = 0;
  for (std::size_t i = orders_.size(); i-- > 0;) idx = idx * static_cast<std::uint64_t>(orders_[i]) + r[i];
  return static_cast<std::uint32_t>(idx);
}

AbelianGroup::Elem AbelianGroup::element(std::uint32_t idx) const {
  Elem e(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    e[i] = idx % orders_[i];
    idx /= static_cast<std::uint32_t>(orders_[i]);
  }
  return e;
}

std::uint32_t AbelianGroup::add(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t r = 0, stride = 1;
  for (auto o : orders_) {
    std::uint32_t m = static_cast<std::uint32_t>(o);
    std::uint32_t s = a % m + b % m;
    if (s >= m) s -= m;
    r += s * stride;
    stride *= m;
    a /= m;
    b /= m;
  }
  return r;
}

std::uint32_t AbelianGroup::neg(std::uint32_t a) const {
  std::uint32_t r = 0, stride = 1;
  for (auto o : orders_) {
    std::uint32_t m = static_cast<std::uint32_t>(o);
    std::uint32_t d = a % m;
    r += (d ? m - d : 0) * stride;
    stride *= m;
    a /= m;
  }
  return r;
}

std::uint32_t AbelianGroup::scale(std::uint32_t a, std::int64_t k) const {
  Elem e = element(a);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = mod(mod(k, orders_[i]) * e[i], orders_[i]);
  return index(e);
}

std::int64_t AbelianGroup::element_order(std::uint32_t a) const {
  Elem e = element(a);
  std::int64_t r = 1;
  for (std::size_t i = 0; i < e.size(); ++i) r = std::lcm(r, orders_[i] / std::gcd(orders_[i], e[i]));
  return r;
}

std::vector<std::uint32_t> AbelianGroup::subgroup(const std::vector<std::uint32_t>& gens) const {
  std::vector<char> seen(order_, 0);
  std::vector<std::uint32_t> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto g : gens) {
      std::uint32_t y = add(out[i], g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

AbelianGroup AbelianGroup::product(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<std::int64_t> o = a.orders_;
  o.insert(o.end(), b.orders_.begin(), b.orders_.end());
  return AbelianGroup(std::move(o));
}

std::string AbelianGroup::to_string() const {
  if (orders_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < orders_.size(); ++i) os << (i ? " x " : "") << "Z/" << orders_[i];
  return os.str();
}

AbelianGroup::Elem SmithForm::coordinates(const AbelianGroup::Elem& x) const {
  AbelianGroup::Elem out(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s = mod(s + mod(x[j], invariants[i]) * mod(V[j][kept[i]], invariants[i]), invariants[i]);
    out[i] = s;
  }
  return out;
}

SmithForm smith_form(std::vector<std::vector<std::int64_t>> a, std::size_t k) {
  const std::size_t r = a.size();
  for (auto& row : a)
    if (row.size() != k) throw ValidationError("relation row of wrong length");
  std::vector<std::vector<std::int64_t>> V(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) V[i][i] = 1;

  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : V) std::swap(row[x], row[y]);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {  // col dst -= q col src
    for (auto& row : a) row[dst] = checked_sub(row[dst], checked_mul(q, row[src]));
    for (auto& row : V) row[dst] = checked_sub(row[dst], checked_mul(q, row[src]));
  };
  auto row_axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (std::size_t j = 0; j < k; ++j) a[dst][j] = checked_sub(a[dst][j], checked_mul(q, a[src][j]));
  };

  std::vector<std::int64_t> diag;
  const std::size_t steps = std::min(r, k);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      std::size_t bi = r, bj = k;
      std::int64_t best = 0;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < k; ++j)
          if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
            best = std::llabs(a[i][j]);
            bi = i;
            bj = j;
          }
      if (best == 0) break;
      std::swap(a[t], a[bi]);
      if (bj != t) swap_cols(t, bj);
      bool dirty = false;
      for (std::size_t i = t + 1; i < r; ++i)
        if (a[i][t]) {
          row_axpy(i, t, a[i][t] / a[t][t]);
          dirty |= a[i][t] != 0;
        }
      for (std::size_t j = t + 1; j < k; ++j)
        if (a[t][j]) {
          col_axpy(j, t, a[t][j] / a[t][t]);
          dirty |= a[t][j] != 0;
        }
      if (dirty) continue;
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < k; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == r) break;
      row_axpy(t, bad, -1);
    }
  }
  SmithForm sf;
  for (std::size_t t = 0; t < k; ++t) {
    std::int64_t d = t < r ? std::llabs(a[t][t]) : 0;
    if (d == 0) throw ValidationError("relation lattice does not have full rank; quotient is infinite");
    if (d > 1) {
      sf.invariants.push_back(d);
      sf.kept.push_back(t);
    }
  }
  sf.V = std::move(V);
  return sf;
}

QuotientMap quotient(const AbelianGroup& a, const std::vector<std::uint32_t>& gens) {
  const std::size_t k = a.rank();
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::int64_t> row(k, 0);
    row[i] = a.orders()[i];
    rows.push_back(row);
  }
  for (auto g : gens) rows.push_back(a.element(g));
  QuotientMap out;
  if (k == 0) {
    out.image.assign(a.order(), 0);
    return out;
  }
  SmithForm sf = smith_form(rows, k);
  out.target = AbelianGroup(sf.invariants);
  out.image.resize(a.order());
  for (std::uint32_t x = 0; x < a.order(); ++x) out.image[x] = out.target.index(sf.coordinates(a.element(x)));
  return out;
}

BlackBoxDecomposition decompose_black_box(std::uint64_t identity, const std::vector<std::uint64_t>& gens,
                                          const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& mul,
                                          std::size_t limit) {
  const std::size_t k = gens.size();
  std::vector<std::uint64_t> ids{identity};
  std::vector<AbelianGroup::Elem> exps{AbelianGroup::Elem(k, 0)};
  std::unordered_map<std::uint64_t, std::size_t> pos{{identity, 0}};
  std::set<AbelianGroup::Elem> relations;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      std::uint64_t y = mul(ids[i], gens[j]);
      AbelianGroup::Elem e = exps[i];
      e[j] += 1;
      auto it = pos.find(y);
      if (it == pos.end()) {
        if (ids.size() >= limit) throw GuardrailError("black-box group exceeds " + std::to_string(limit) + " elements");
        pos.emplace(y, ids.size());
        ids.push_back(y);
        exps.push_back(std::move(e));
      } else {
        const auto& f = exps[it->second];
        AbelianGroup::Elem rel(k);
        bool nonzero = false;
        for (std::size_t c = 0; c < k; ++c) {
          rel[c] = e[c] - f[c];
          nonzero |= rel[c] != 0;
        }
        if (nonzero) relations.insert(std::move(rel));
      }
    }
  }
  const std::int64_t n = static_cast<std::int64_t>(ids.size());
  BlackBoxDecomposition out;
  if (k == 0 || n == 1) {
    out.index_of[identity] = 0;
    out.id_of = {identity};
    return out;
  }
  // echelon basis of the relation lattice modulo n Z^k
  std::vector<AbelianGroup::Elem> piv(k);
  for (auto v : relations) {
    for (auto& x : v) x = mod(x, n);
    for (std::size_t j = 0; j < k; ++j) {
      if (v[j] == 0) continue;
      if (piv[j].empty()) {
        piv[j] = v;
        break;
      }
      auto& b = piv[j];
      std::int64_t s, t;
      std::int64_t g = ext_gcd(b[j], v[j], s, t);
      AbelianGroup::Elem nb(k), nv(k);
      for (std::size_t c = 0; c < k; ++c) {
        nb[c] = mod(mod(s, n) * b[c] + mod(t, n) * v[c], n);
        nv[c] = mod((v[j] / g) * b[c] - (b[j] / g) * v[c], n);
      }
      b = std::move(nb);
      v = std::move(nv);
    }
  }
  std::vector<std::vector<std::int64_t>> rows;
  for (auto& b : piv)
    if (!b.empty()) rows.push_back(b);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::int64_t> row(k, 0);
    row[i] = n;
    rows.push_back(row);
  }
  SmithForm sf = smith_form(rows, k);
  out.group = AbelianGroup(sf.invariants);
  if (static_cast<std::int64_t>(out.group.order()) != n)
    throw TheoremViolation("black-box decomposition found order " + std::to_string(out.group.order()) + " for " +
                           std::to_string(n) + " elements");
  out.id_of.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::uint32_t idx = out.group.index(sf.coordinates(exps[i]));
    out.index_of[ids[i]] = idx;
    out.id_of[idx] = ids[i];
  }
  return out;
}

}  // namespace sticklab
