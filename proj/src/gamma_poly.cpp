#include "sticklab/gamma_poly.hpp"

#include <sstream>

namespace sticklab {

namespace {

Cyclo q_scalar(int m, std::int64_t v) { return Cyclo::rational(m, mpq_class(static_cast<long>(v))); }

}  // namespace

GammaPoly GammaPoly::constant(const WElem& x, int m, std::int64_t q) {
  GammaPoly r(x.group(), m, q);
  r.num_ = {x};
  r.trim();
  return r;
}

GammaPoly GammaPoly::from_coeffs(GroupPtr g, int m, std::int64_t q, std::vector<WElem> num, int k) {
  GammaPoly r(std::move(g), m, q);
  r.num_ = std::move(num);
  for (auto& c : r.num_)
    if (!c.group()) c = WElem(r.g_) + c;
  r.k_ = k;
  r.trim();
  return r;
}

GammaPoly GammaPoly::one_minus(GroupPtr g, int m, std::int64_t q, int d, std::uint32_t sigma, const Cyclo& c) {
  std::vector<WElem> num(static_cast<std::size_t>(d) + 1, WElem(g));
  num[0] = WElem::one(g).scale(Cyclo::rational(m, 1));
  num[d] = num[d] - WElem::basis(g, sigma, c.promote(c.m() == 1 ? m : c.m()));
  return from_coeffs(std::move(g), m, q, std::move(num));
}

GammaPoly GammaPoly::geometric(GroupPtr g, int m, std::int64_t q, int d) {
  std::vector<WElem> num(static_cast<std::size_t>(d), WElem::one(g).scale(Cyclo::rational(m, 1)));
  return from_coeffs(std::move(g), m, q, std::move(num));
}

void GammaPoly::trim() {
  while (!num_.empty() && num_.back().is_zero()) num_.pop_back();
  if (num_.empty()) k_ = 0;
}

WElem GammaPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(num_.size())) return zero();
  return num_[i];
}

GammaPoly GammaPoly::operator*(const GammaPoly& o) const {
  GammaPoly r(g_ ? g_ : o.g_, m_ != 1 ? m_ : o.m_, q_ ? q_ : o.q_);
  if (is_zero() || o.is_zero()) return r;
  r.num_.assign(num_.size() + o.num_.size() - 1, r.zero());
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.num_.size(); ++j) r.num_[i + j] += num_[i] * o.num_[j];
  }
  r.k_ = k_ + o.k_;
  r.trim();
  return r;
}

GammaPoly GammaPoly::operator+(const GammaPoly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  const GroupPtr& g = g_ ? g_ : o.g_;
  const int K = std::max(k_, o.k_);
  GammaPoly one_mq = one_minus(g, m_ != 1 ? m_ : o.m_, q_, 1, 0, Cyclo(static_cast<long>(q_)));
  GammaPoly a = *this, b = o;
  for (int i = k_; i < K; ++i) a = a * one_mq;
  for (int i = o.k_; i < K; ++i) b = b * one_mq;
  GammaPoly r(g, a.m_ != 1 ? a.m_ : b.m_, q_ ? q_ : o.q_);
  r.num_.assign(std::max(a.num_.size(), b.num_.size()), r.zero());
  for (std::size_t i = 0; i < a.num_.size(); ++i) r.num_[i] += a.num_[i];
  for (std::size_t i = 0; i < b.num_.size(); ++i) r.num_[i] += b.num_[i];
  r.k_ = std::max(k_, o.k_);
  r.trim();
  return r;
}

GammaPoly GammaPoly::operator-() const {
  GammaPoly r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

GammaPoly GammaPoly::operator-(const GammaPoly& o) const { return *this + (-o); }

GammaPoly GammaPoly::scale(const WElem& x) const {
  GammaPoly r = *this;
  for (auto& c : r.num_) c = c * x;
  r.trim();
  return r;
}

GammaPoly GammaPoly::scale(const Cyclo& s) const {
  GammaPoly r = *this;
  for (auto& c : r.num_) c = c.scale(s);
  r.trim();
  return r;
}

bool GammaPoly::operator==(const GammaPoly& o) const {
  GammaPoly d = *this - o;
  return d.is_zero();
}

std::optional<GammaPoly> GammaPoly::try_divide(const GammaPoly& d) const {
  if (d.is_zero()) throw ValidationError("division by the zero polynomial");
  if (d.k_ != 0) throw ValidationError("divisor must be a polynomial");
  const WElem& lead = d.num_.back();
  if (lead.terms().size() != 1) throw ValidationError("divisor leading coefficient is not a monomial unit");
  const auto& [sidx, sc] = *lead.terms().begin();
  const GroupPtr& g = g_ ? g_ : d.g_;
  WElem lead_inv = WElem::basis(g, g->neg(sidx), sc.inverse());
  GammaPoly r(g, m_ != 1 ? m_ : d.m_, q_ ? q_ : d.q_);
  r.k_ = k_;
  if (is_zero()) return r;
  std::vector<WElem> rem = num_;
  const int e = d.degree();
  const int n = degree();
  if (n < e) return std::nullopt;
  r.num_.assign(static_cast<std::size_t>(n - e) + 1, r.zero());
  for (int i = n; i >= e; --i) {
    if (rem[i].is_zero()) continue;
    WElem t = rem[i] * lead_inv;
    r.num_[i - e] = t;
    for (int j = 0; j <= e; ++j) rem[i - e + j] -= t * d.num_[j];
  }
  for (int i = 0; i < e; ++i)
    if (!rem[i].is_zero()) return std::nullopt;
  r.trim();
  r.k_ = k_;
  return r;
}

GammaPoly GammaPoly::divide_exact(const GammaPoly& d, const std::string& tag) const {
  auto r = try_divide(d);
  if (!r) throw TheoremViolation(tag + ": division by " + d.to_string() + " is inexact");
  return *r;
}

int GammaPoly::vanishing_order_at_one() const {
  if (is_zero()) throw ValidationError("trivial zero order of the zero series is undefined");
  GammaPoly cur = *this;
  cur.k_ = 0;
  GammaPoly lin = one_minus(g_, m_, q_, 1);
  int order = 0;
  for (;;) {
    WElem s(g_);
    for (auto& c : cur.num_) s += c;
    if (!s.is_zero()) return order;
    cur = cur.divide_exact(lin, "vanishing order");
    ++order;
  }
}

WElem GammaPoly::eval_at_one() const {
  WElem s(g_);
  for (auto& c : num_) s += c;
  if (k_ == 0) return s;
  mpq_class den = 1;
  for (int i = 0; i < k_; ++i) den *= (1 - q_);
  return s.scale(Cyclo::rational(m_, 1 / den));
}

GammaPoly GammaPoly::reduce_denominator() const {
  GammaPoly cur = *this;
  if (cur.is_zero()) return cur;
  GammaPoly lin = one_minus(g_, m_, q_, 1, 0, q_scalar(1, q_));
  while (cur.k_ > 0) {
    auto r = cur.try_divide(lin);
    if (!r) break;
    cur = *r;
    cur.k_ -= 1;
  }
  return cur;
}

std::vector<WElem> GammaPoly::series(int K) const {
  std::vector<WElem> s(static_cast<std::size_t>(std::max(K, 0)), zero());
  for (int i = 0; i < K && i < static_cast<int>(num_.size()); ++i) s[i] = num_[i];
  const Cyclo qc = q_scalar(m_, q_);
  for (int r = 0; r < k_; ++r)
    for (int i = 1; i < K; ++i) s[i] += s[i - 1].scale(qc);
  return s;
}

std::vector<WElem> GammaPoly::taylor_at_one(int K) const {
  std::vector<WElem> s(static_cast<std::size_t>(std::max(K, 0)), zero());
  // N(1 + T): binomial expansion, truncated at T^K
  for (std::size_t j = 0; j < num_.size(); ++j) {
    mpz_class b = 1;  // C(j, i)
    for (int i = 0; i < K && i <= static_cast<int>(j); ++i) {
      s[i] += num_[j].scale(Cyclo::rational(m_, mpq_class(b)));
      b = b * static_cast<long>(j - static_cast<std::size_t>(i)) / (i + 1);
    }
  }
  // divide k times by 1 - q(1 + T) = (1 - q) - q T
  const Cyclo a = Cyclo::rational(m_, mpq_class(1 - q_)), ainv = a.inverse(), qc = q_scalar(m_, q_);
  for (int r = 0; r < k_; ++r)
    for (int i = 0; i < K; ++i) {
      if (i > 0) s[i] += s[i - 1].scale(qc);
      s[i] = s[i].scale(ainv);
    }
  return s;
}

GammaPoly GammaPoly::map_group(GroupPtr target, const std::vector<std::uint32_t>& image) const {
  GammaPoly r(target, m_, q_);
  for (auto& c : num_) r.num_.push_back(c.map_group(target, image));
  r.k_ = k_;
  r.trim();
  return r;
}

std::string GammaPoly::to_string() const {
  std::ostringstream os;
  if (num_.empty()) return "0";
  os << "(";
  bool first = true;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "[" << num_[i].to_string() << "]";
    if (i == 1) os << "*g";
    if (i > 1) os << "*g^" << i;
  }
  os << ")";
  if (k_) os << "/(1-" << q_ << "g)^" << k_;
  return os.str();
}

}  // namespace sticklab
