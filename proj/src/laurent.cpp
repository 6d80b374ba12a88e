#include "sticklab/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "sticklab/errors.hpp"

namespace sticklab {

namespace {

std::int64_t sat_add(std::int64_t p, std::int64_t v) {
  if (p >= LaurentNum::kExact || v >= LaurentNum::kExact) return LaurentNum::kExact;
  return std::min(p + v, LaurentNum::kExact);
}

}  // namespace

LaurentNum LaurentNum::zero(FieldPtr f, std::int64_t prec) {
  LaurentNum r;
  r.f_ = std::move(f);
  r.prec_ = std::min(prec, kExact);
  r.val_ = r.prec_;
  return r;
}

LaurentNum LaurentNum::constant(FieldPtr f, Fq c, std::int64_t prec) {
  return from_coeffs(std::move(f), 0, {c}, prec);
}

LaurentNum LaurentNum::pi_power(FieldPtr f, std::int64_t k, std::int64_t prec) {
  return from_coeffs(std::move(f), k, {1}, prec);
}

LaurentNum LaurentNum::from_poly(const FqPoly& a, std::int64_t prec) {
  if (a.is_zero()) return zero(a.field(), prec);
  std::vector<Fq> c(a.coeffs().rbegin(), a.coeffs().rend());
  return from_coeffs(a.field(), -a.degree(), std::move(c), prec);
}

LaurentNum LaurentNum::from_coeffs(FieldPtr f, std::int64_t val, std::vector<Fq> c, std::int64_t prec) {
  LaurentNum r;
  r.f_ = std::move(f);
  r.val_ = val;
  r.win_ = std::move(c);
  r.prec_ = std::min(prec, kExact);
  r.normalize();
  return r;
}

void LaurentNum::normalize() {
  if (prec_ < kExact) {
    std::int64_t room = prec_ - val_;
    if (room <= 0) {
      win_.clear();
    } else if (static_cast<std::int64_t>(win_.size()) > room) {
      win_.resize(static_cast<std::size_t>(room));
    }
  }
  std::size_t lead = 0;
  while (lead < win_.size() && win_[lead] == 0) ++lead;
  if (lead) {
    win_.erase(win_.begin(), win_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<std::int64_t>(lead);
  }
  while (!win_.empty() && win_.back() == 0) win_.pop_back();
  if (win_.empty()) val_ = prec_;
}

Fq LaurentNum::coeff(std::int64_t k) const {
  if (k >= prec_) throw ValidationError("coefficient of pi^" + std::to_string(k) + " is beyond the known precision");
  if (win_.empty() || k < val_ || k >= window_end()) return 0;
  return win_[static_cast<std::size_t>(k - val_)];
}

LaurentNum LaurentNum::operator+(const LaurentNum& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  std::int64_t p = std::min(prec_, o.prec_);
  if (win_.empty() && o.win_.empty()) return zero(f, p);
  std::int64_t lo = std::min(val(), o.val());
  std::int64_t hi = std::max(win_.empty() ? lo : window_end(), o.win_.empty() ? lo : o.window_end());
  if (p < kExact) hi = std::min(hi, p);
  if (hi <= lo) return zero(f, p);
  std::vector<Fq> c(static_cast<std::size_t>(hi - lo), 0);
  for (std::size_t i = 0; i < win_.size(); ++i) {
    std::int64_t e = val_ + static_cast<std::int64_t>(i);
    if (e < hi) c[static_cast<std::size_t>(e - lo)] = win_[i];
  }
  for (std::size_t i = 0; i < o.win_.size(); ++i) {
    std::int64_t e = o.val_ + static_cast<std::int64_t>(i);
    if (e < hi) c[static_cast<std::size_t>(e - lo)] = f->add(c[static_cast<std::size_t>(e - lo)], o.win_[i]);
  }
  return from_coeffs(f, lo, std::move(c), p);
}

LaurentNum LaurentNum::operator-() const {
  LaurentNum r = *this;
  for (auto& x : r.win_) x = f_->neg(x);
  return r;
}

LaurentNum LaurentNum::operator-(const LaurentNum& o) const { return *this + (-o); }

LaurentNum LaurentNum::operator*(const LaurentNum& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  std::int64_t p = std::min(sat_add(prec_, o.val()), sat_add(o.prec_, val()));
  if (win_.empty() || o.win_.empty()) return zero(f, p);
  std::int64_t lo = val_ + o.val_;
  std::size_t n = win_.size() + o.win_.size() - 1;
  if (p < kExact) n = static_cast<std::size_t>(std::clamp<std::int64_t>(p - lo, 0, static_cast<std::int64_t>(n)));
  std::vector<Fq> c(n, 0);
  for (std::size_t i = 0; i < win_.size() && i < n; ++i) {
    if (!win_[i]) continue;
    for (std::size_t j = 0; j < o.win_.size() && i + j < n; ++j)
      c[i + j] = f->add(c[i + j], f->mul(win_[i], o.win_[j]));
  }
  return from_coeffs(f, lo, std::move(c), p);
}

LaurentNum LaurentNum::scale(Fq c) const {
  LaurentNum r = *this;
  for (auto& x : r.win_) x = f_->mul(x, c);
  r.normalize();
  return r;
}

LaurentNum LaurentNum::shift(std::int64_t k) const {
  LaurentNum r = *this;
  r.prec_ = sat_add(prec_, k);
  if (!r.win_.empty()) r.val_ += k;
  else r.val_ = r.prec_;
  return r;
}

LaurentNum LaurentNum::truncate(std::int64_t p) const {
  LaurentNum r = *this;
  r.prec_ = std::min(prec_, p);
  r.normalize();
  return r;
}

LaurentNum LaurentNum::inverse(std::int64_t cap) const {
  if (win_.empty()) throw ValidationError("inverse of a Laurent number with no known nonzero coefficient");
  const std::int64_t v = val_;
  std::int64_t p = is_exact() ? cap : std::min(cap, prec_ - 2 * v);
  std::int64_t n = p + v;
  if (n <= 0) return zero(f_, p);
  const Fq u0i = f_->inv(win_[0]);
  std::vector<Fq> w(static_cast<std::size_t>(n), 0);
  w[0] = u0i;
  for (std::int64_t k = 1; k < n; ++k) {
    Fq s = 0;
    std::int64_t top = std::min<std::int64_t>(k, static_cast<std::int64_t>(win_.size()) - 1);
    for (std::int64_t i = 1; i <= top; ++i) s = f_->add(s, f_->mul(win_[i], w[k - i]));
    w[k] = f_->neg(f_->mul(u0i, s));
  }
  return from_coeffs(f_, -v, std::move(w), p);
}

LaurentNum LaurentNum::pow(std::int64_t n, std::int64_t cap) const {
  if (n == 0) return constant(f_, 1, is_exact() ? kExact : cap);
  if (n < 0) {
    std::int64_t m = -n;
    std::int64_t v = win_.empty() ? 0 : val_;
    std::int64_t inv_cap = std::max(cap, cap + (m - 1) * v);
    return inverse(inv_cap).pow(m, cap);
  }
  const bool can_trim = !win_.empty() && val_ >= 0;
  LaurentNum base = can_trim ? truncate(cap) : *this;
  LaurentNum acc = constant(f_, 1);
  std::int64_t e = n;
  while (e) {
    if (e & 1) {
      acc = acc * base;
      if (can_trim) acc = acc.truncate(cap);
    }
    e >>= 1;
    if (e) {
      base = base * base;
      if (can_trim) base = base.truncate(cap);
    }
  }
  return acc.truncate(cap);
}

bool LaurentNum::agrees_to(const LaurentNum& o, std::int64_t upto) const {
  if (prec_ < upto || o.prec_ < upto) return false;
  std::int64_t lo = std::min(val(), o.val());
  for (std::int64_t k = lo; k < upto; ++k)
    if (coeff(k) != o.coeff(k)) return false;
  return true;
}

bool LaurentNum::operator==(const LaurentNum& o) const {
  return prec_ == o.prec_ && win_ == o.win_ && (win_.empty() || val_ == o.val_);
}

std::string LaurentNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < win_.size(); ++i) {
    if (!win_[i]) continue;
    if (!first) os << " + ";
    first = false;
    os << win_[i] << "*pi^" << (val_ + static_cast<std::int64_t>(i));
  }
  if (!is_exact()) {
    if (!first) os << " + ";
    first = false;
    os << "O(pi^" << prec_ << ")";
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace sticklab
