#include "sticklab/cyclo.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "sticklab/errors.hpp"

namespace sticklab {

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// exact division in Q[x]; returns quotient, leaves remainder in a
QPoly poly_divmod(QPoly& a, const QPoly& b) {
  trim(a);
  QPoly q;
  if (a.size() < b.size()) return q;
  q.assign(a.size() - b.size() + 1, 0);
  const mpq_class lead = b.back();
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (a[i] == 0) continue;
    mpq_class c = a[i] / lead;
    q[i - (b.size() - 1)] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= c * b[j];
  }
  trim(a);
  return q;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

}  // namespace

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, b, &r)) throw GuardrailError("integer power overflow");
  }
  return r;
}

int valuation(const mpq_class& x, std::int64_t p) {
  if (x == 0) throw ValidationError("valuation of zero");
  int v = 0;
  mpz_class n = x.get_num(), d = x.get_den();
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

int Cyclo::phi(int m) {
  int r = m;
  int n = m;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    while (n % d == 0) n /= d;
    r -= r / d;
  }
  if (n > 1) r -= r / n;
  return r;
}

const std::vector<mpz_class>& Cyclo::cyclotomic(int m) {
  static std::mutex mu;
  static std::map<int, std::vector<mpz_class>> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  if (m < 1) throw ValidationError("cyclotomic index must be positive");
  QPoly num(static_cast<std::size_t>(m) + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d) continue;
    const auto& phd = cyclotomic(d);
    QPoly den(phd.begin(), phd.end());
    num = poly_divmod(num, den);
  }
  std::vector<mpz_class> out;
  for (auto& c : num) out.push_back(c.get_num());
  std::lock_guard<std::mutex> lk(mu);
  return cache.emplace(m, std::move(out)).first->second;
}

Cyclo Cyclo::zero(int m) { return Cyclo(m, QPoly(static_cast<std::size_t>(phi(m)), 0)); }

Cyclo Cyclo::rational(int m, const mpq_class& v) {
  Cyclo r = zero(m);
  r.c_[0] = v;
  return r;
}

Cyclo Cyclo::zeta(int m, std::int64_t k) {
  k %= m;
  if (k < 0) k += m;
  QPoly v(static_cast<std::size_t>(k) + 1, 0);
  v[k] = 1;
  Cyclo r(m, {});
  r.reduce_poly(v);
  r.c_ = std::move(v);
  return r;
}

void Cyclo::reduce_poly(QPoly& v) const {
  const auto& ph = cyclotomic(m_);
  const std::size_t f = ph.size() - 1;
  for (std::size_t i = v.size(); i-- > f;) {
    if (v[i] == 0) continue;
    mpq_class c = v[i];
    for (std::size_t j = 0; j < f; ++j) v[i - f + j] -= c * ph[j];
    v[i] = 0;
  }
  v.resize(f, 0);
}

bool Cyclo::is_zero() const {
  for (auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Cyclo Cyclo::promote(int m) const {
  if (m == m_) return *this;
  if (m_ != 1) throw ValidationError("cannot mix cyclotomic fields of orders " + std::to_string(m_) + " and " + std::to_string(m));
  return rational(m, c_[0]);
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  if (m_ != o.m_) {
    int m = m_ == 1 ? o.m_ : m_;
    return promote(m) + o.promote(m);
  }
  Cyclo r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
  if (m_ != o.m_) {
    if (m_ == 1 || o.m_ == 1) {
      const Cyclo& big = m_ == 1 ? o : *this;
      const mpq_class& s = m_ == 1 ? c_[0] : o.c_[0];
      Cyclo r = big;
      for (auto& c : r.c_) c *= s;
      return r;
    }
    throw ValidationError("cannot mix cyclotomic fields of orders " + std::to_string(m_) + " and " + std::to_string(o.m_));
  }
  if (m_ == 1) return Cyclo(1, {c_[0] * o.c_[0]});
  QPoly v = poly_mul(c_, o.c_);
  reduce_poly(v);
  return Cyclo(m_, std::move(v));
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw ValidationError("inverse of zero in Q(zeta_" + std::to_string(m_) + ")");
  if (m_ == 1) return Cyclo(1, {1 / c_[0]});
  // extended Euclid: s*a + u*Phi = g, g a nonzero constant since Phi is irreducible
  const auto& ph = cyclotomic(m_);
  QPoly r0 = c_, r1(ph.begin(), ph.end());
  trim(r0);
  QPoly s0{1}, s1{};
  while (!r1.empty()) {
    QPoly rem = r0;
    QPoly q = poly_divmod(rem, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    QPoly s2 = poly_sub(s0, poly_mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw TheoremViolation("cyclotomic polynomial is not irreducible over Q");
  for (auto& c : s0) c /= r0[0];
  reduce_poly(s0);
  return Cyclo(m_, std::move(s0));
}

bool Cyclo::operator==(const Cyclo& o) const {
  if (m_ != o.m_) {
    if (m_ != 1 && o.m_ != 1) return false;
    int m = m_ == 1 ? o.m_ : m_;
    return promote(m).c_ == o.promote(m).c_;
  }
  return c_ == o.c_;
}

bool Cyclo::is_p_integral(std::int64_t p) const {
  for (auto& c : c_)
    if (c.get_den() % p == 0) return false;
  return true;
}

std::vector<std::int64_t> Cyclo::reduce_mod(std::int64_t p, int M) const {
  const mpz_class pm = ipow(p, M);
  std::vector<std::int64_t> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    mpz_class den = c_[i].get_den();
    if (den % p == 0) throw TheoremViolation("coefficient " + c_[i].get_str() + " is not p-integral for p=" + std::to_string(p));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pm.get_mpz_t());
    mpz_class v = c_[i].get_num() * inv;
    v %= pm;
    if (v < 0) v += pm;
    out[i] = v.get_si();
  }
  return out;
}

mpz_class Cyclo::common_denominator() const {
  mpz_class d = 1;
  for (auto& c : c_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den().get_mpz_t());
  return d;
}

std::string Cyclo::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].get_str();
    if (i == 1) os << "*z";
    if (i >= 2) os << "*z^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace sticklab
