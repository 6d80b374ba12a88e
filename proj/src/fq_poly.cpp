#include "sticklab/fq_poly.hpp"

#include <cctype>
#include <sstream>

#include "sticklab/errors.hpp"

namespace sticklab {

namespace {

void require_same(const FqPoly& a, const FqPoly& b) {
  if (!a.field() || !b.field()) throw ValidationError("polynomial without a field");
  if (a.field() != b.field() && !a.field()->same_as(*b.field()))
    throw ValidationError("polynomials over different fields");
}

int mobius(int n) {
  int r = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    r = -r;
  }
  if (n > 1) r = -r;
  return r;
}

}  // namespace

FqPoly::FqPoly(FieldPtr f, std::vector<Fq> c) : f_(std::move(f)), c_(std::move(c)) {
  for (auto x : c_)
    if (x >= f_->size()) throw ValidationError("coefficient out of range for " + f_->describe());
  trim();
}

void FqPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FqPoly FqPoly::constant(FieldPtr f, Fq c) { return FqPoly(std::move(f), {c}); }

FqPoly FqPoly::monomial(FieldPtr f, int deg, Fq c) {
  std::vector<Fq> v(static_cast<std::size_t>(deg) + 1, 0);
  v[deg] = c;
  return FqPoly(std::move(f), std::move(v));
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
  require_same(*this, o);
  FqPoly r(f_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = f_->add(coeff(int(i)), o.coeff(int(i)));
  r.trim();
  return r;
}

FqPoly FqPoly::operator-() const {
  FqPoly r = *this;
  for (auto& x : r.c_) x = f_->neg(x);
  return r;
}

FqPoly FqPoly::operator-(const FqPoly& o) const { return *this + (-o); }

FqPoly FqPoly::operator*(const FqPoly& o) const {
  require_same(*this, o);
  FqPoly r(f_);
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      r.c_[i + j] = f_->add(r.c_[i + j], f_->mul(c_[i], o.c_[j]));
  }
  r.trim();
  return r;
}

bool FqPoly::operator<(const FqPoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

std::pair<FqPoly, FqPoly> FqPoly::divmod(const FqPoly& d) const {
  require_same(*this, d);
  if (d.is_zero()) throw ValidationError("polynomial division by zero");
  FqPoly q(f_), r = *this;
  if (degree() < d.degree()) return {q, r};
  const Fq linv = f_->inv(d.lead());
  const int dd = d.degree();
  q.c_.assign(static_cast<std::size_t>(degree() - dd) + 1, 0);
  for (int i = degree(); i >= dd; --i) {
    Fq c = r.c_[i];
    if (!c) continue;
    Fq m = f_->mul(c, linv);
    q.c_[i - dd] = m;
    for (int j = 0; j <= dd; ++j) r.c_[i - dd + j] = f_->sub(r.c_[i - dd + j], f_->mul(m, d.c_[j]));
  }
  q.trim();
  r.trim();
  return {q, r};
}

FqPoly FqPoly::scale(Fq c) const {
  FqPoly r = *this;
  for (auto& x : r.c_) x = f_->mul(x, c);
  r.trim();
  return r;
}

FqPoly FqPoly::make_monic() const {
  if (is_zero()) return *this;
  return scale(f_->inv(lead()));
}

FqPoly FqPoly::shift(int k) const {
  if (is_zero()) return *this;
  FqPoly r(f_);
  r.c_.assign(static_cast<std::size_t>(k), 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

FqPoly FqPoly::derivative() const {
  FqPoly r(f_);
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = f_->mul(c_[i], f_->from_int(static_cast<std::int64_t>(i)));
  r.trim();
  return r;
}

Fq FqPoly::eval(Fq x) const {
  Fq r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, x), c_[i]);
  return r;
}

std::string FqPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    if (!first) os << '+';
    first = false;
    os << c_[i];
    if (i == 1) os << "*t";
    if (i >= 2) os << "*t^" << i;
  }
  return os.str();
}

FqPoly FqPoly::parse(FieldPtr f, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ValidationError("empty polynomial text");
  std::vector<Fq> coeffs;
  std::size_t i = 0;
  auto fail = [&]() { throw ValidationError("cannot parse polynomial '" + text + "'"); };
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (i != 0) {
      fail();
    }
    std::uint64_t c = 1;
    bool have_c = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      c = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        c = c * 10 + static_cast<std::uint64_t>(s[i] - '0');
        if (c > (1ull << 40)) fail();
        ++i;
      }
      have_c = true;
      if (i < s.size() && s[i] == '*') {
        ++i;
        if (i >= s.size() || (s[i] != 't' && s[i] != 'x')) fail();
      }
    }
    std::size_t e = 0;
    if (i < s.size() && (s[i] == 't' || s[i] == 'x')) {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail();
        e = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          e = e * 10 + static_cast<std::size_t>(s[i] - '0');
          if (e > 4096) fail();
          ++i;
        }
      }
    } else if (!have_c) {
      fail();
    }
    Fq val;
    if (f->is_prime_field()) {
      val = f->from_int(static_cast<std::int64_t>(c % f->characteristic()));
    } else {
      if (c >= f->size()) fail();
      val = static_cast<Fq>(c);
    }
    if (negative) val = f->neg(val);
    if (coeffs.size() <= e) coeffs.resize(e + 1, 0);
    coeffs[e] = f->add(coeffs[e], val);
  }
  return FqPoly(std::move(f), std::move(coeffs));
}

FqPoly gcd(FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    FqPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.make_monic();
}

std::tuple<FqPoly, FqPoly, FqPoly> xgcd(const FqPoly& a, const FqPoly& b) {
  const FieldPtr& f = a.field();
  FqPoly r0 = a, r1 = b;
  FqPoly s0 = FqPoly::constant(f, 1), s1(f);
  FqPoly u0(f), u1 = FqPoly::constant(f, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    FqPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    FqPoly u2 = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0.is_zero()) return {r0, s0, u0};
  Fq li = f->inv(r0.lead());
  return {r0.scale(li), s0.scale(li), u0.scale(li)};
}

FqPoly mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m) { return (a * b) % m; }

FqPoly powmod(FqPoly base, std::uint64_t e, const FqPoly& m) {
  FqPoly r = FqPoly::constant(m.field(), 1) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    e >>= 1;
    if (e) base = mulmod(base, base, m);
  }
  return r;
}

FqPoly frob_power(const FqPoly& g, int k, const FqPoly& m) {
  FqPoly r = g % m;
  for (int i = 0; i < k; ++i) r = powmod(r, m.field()->size(), m);
  return r;
}

FqPoly invmod(const FqPoly& a, const FqPoly& m) {
  auto [g, s, u] = xgcd(a % m, m);
  if (!g.is_one()) throw ValidationError("polynomial " + a.to_string() + " is not invertible modulo " + m.to_string());
  return s % m;
}

bool is_irreducible(const FqPoly& f) {
  if (!f.is_monic()) throw ValidationError("irreducibility test needs a monic polynomial, got " + f.to_string());
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const FqPoly x = FqPoly::t(f.field());
  FqPoly h = x;
  for (int i = 1; 2 * i <= n; ++i) {
    h = powmod(h, f.field()->size(), f);
    if (!gcd(h - x, f).is_one()) return false;
  }
  return true;
}

std::vector<std::pair<int, FqPoly>> distinct_degree_factorization(const FqPoly& f) {
  if (!f.is_monic()) throw ValidationError("factorization needs a monic polynomial");
  std::vector<std::pair<int, FqPoly>> out;
  const FqPoly x = FqPoly::t(f.field());
  FqPoly rest = f;
  FqPoly h = x % rest;
  for (int i = 1; rest.degree() >= 2 * i; ++i) {
    h = powmod(h, f.field()->size(), rest);
    FqPoly g = gcd(h - x, rest);
    if (!g.is_one()) {
      out.emplace_back(i, g);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest.degree(), rest);
  return out;
}

std::uint64_t monic_count(const FieldPtr& f, int d) {
  std::uint64_t n = 1;
  for (int i = 0; i < d; ++i) {
    n *= f->size();
    if (n > (1ull << 40)) throw GuardrailError("monic enumeration too large");
  }
  return n;
}

FqPoly monic_at(const FieldPtr& f, int d, std::uint64_t index) {
  std::vector<Fq> c(static_cast<std::size_t>(d) + 1, 0);
  c[d] = 1;
  for (int i = d - 1; i >= 0; --i) {
    c[i] = static_cast<Fq>(index % f->size());
    index /= f->size();
  }
  return FqPoly(f, std::move(c));
}

std::uint64_t monic_index(const FqPoly& m) {
  if (!m.is_monic()) throw ValidationError("monic_index of a non-monic polynomial");
  std::uint64_t idx = 0;
  for (int i = 0; i < m.degree(); ++i) idx = idx * m.field()->size() + m.coeff(i);
  return idx;
}

void for_each_monic(const FieldPtr& f, int d, std::uint64_t begin, std::uint64_t end,
                    const std::function<void(const FqPoly&)>& fn) {
  if (begin >= end) return;
  FqPoly cur = monic_at(f, d, begin);
  std::vector<Fq> c(static_cast<std::size_t>(d) + 1, 0);
  for (int i = 0; i <= d; ++i) c[i] = cur.coeff(i);
  for (std::uint64_t k = begin; k < end; ++k) {
    fn(FqPoly(f, c));
    for (int i = d - 1; i >= 0; --i) {
      if (++c[i] < f->size()) break;
      c[i] = 0;
    }
  }
}

std::vector<FqPoly> enumerate_monic_irreducibles(const FieldPtr& f, int d) {
  std::vector<FqPoly> out;
  for_each_monic(f, d, 0, monic_count(f, d), [&](const FqPoly& m) {
    if (is_irreducible(m)) out.push_back(m);
  });
  return out;
}

FqPoly first_monic_irreducible(const FieldPtr& f, int d) {
  const std::uint64_t n = monic_count(f, d);
  for (std::uint64_t i = 0; i < n; ++i) {
    FqPoly m = monic_at(f, d, i);
    if (is_irreducible(m)) return m;
  }
  throw TheoremViolation("no monic irreducible of degree " + std::to_string(d));
}

std::uint64_t irreducible_count(std::uint64_t q, int d) {
  std::int64_t total = 0;
  for (int k = 1; k <= d; ++k) {
    if (d % k) continue;
    std::int64_t pw = 1;
    for (int i = 0; i < d / k; ++i) pw *= static_cast<std::int64_t>(q);
    total += mobius(k) * pw;
  }
  return static_cast<std::uint64_t>(total / d);
}

}  // namespace sticklab
