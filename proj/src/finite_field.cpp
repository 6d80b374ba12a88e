#include "sticklab/finite_field.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "sticklab/errors.hpp"
#include "sticklab/fq_poly.hpp"

namespace sticklab {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

FieldPtr FiniteField::make(std::uint32_t p, std::uint32_t r) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  if (!is_prime(p)) throw ValidationError("characteristic " + std::to_string(p) + " is not prime");
  if (r == 0) throw ValidationError("field degree must be positive");
  std::uint64_t sz = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    sz *= p;
    if (sz > kMaxSize) throw GuardrailError("field size " + std::to_string(p) + "^" + std::to_string(r) + " exceeds 2^16");
  }
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({p, r});
    if (it != cache.end()) return it->second;
  }
  FieldPtr result;
  if (r == 1) {
    auto f = std::shared_ptr<FiniteField>(new FiniteField());
    f->p_ = p;
    f->size_ = p;
    f->digits_ = 1;
    f->build_tables();
    result = f;
  } else {
    FieldPtr fp = make(p, 1);
    auto mods = first_monic_irreducible(fp, static_cast<int>(r));
    result = extension(fp, mods.coeffs());
  }
  std::lock_guard<std::mutex> lk(mu);
  auto [it, inserted] = cache.emplace(std::make_pair(p, r), result);
  return it->second;
}

FieldPtr FiniteField::extension(FieldPtr base, std::span<const Fq> modulus) {
  if (!base) throw ValidationError("extension of a null field");
  if (modulus.size() < 2 || modulus.back() != 1)
    throw ValidationError("extension modulus must be monic of positive degree");
  FqPoly m(base, std::vector<Fq>(modulus.begin(), modulus.end()));
  if (!is_irreducible(m)) throw ValidationError("extension modulus " + m.to_string() + " is reducible");
  std::uint64_t sz = 1;
  for (std::size_t i = 1; i < modulus.size(); ++i) {
    sz *= base->size();
    if (sz > kMaxSize) throw GuardrailError("extension field exceeds 2^16 elements");
  }
  auto f = std::shared_ptr<FiniteField>(new FiniteField());
  f->p_ = base->p_;
  f->size_ = static_cast<std::uint32_t>(sz);
  f->digits_ = base->digits_ * static_cast<std::uint32_t>(modulus.size() - 1);
  f->base_ = base;
  f->modulus_.assign(modulus.begin(), modulus.end());
  f->build_tables();
  return f;
}

Fq FiniteField::add(Fq a, Fq b) const {
  if (p_ == 2) return a ^ b;
  if (digits_ == 1) {
    Fq s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fq r = 0, scale = 1;
  while (a || b) {
    Fq d = a % p_ + b % p_;
    if (d >= p_) d -= p_;
    r += d * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Fq FiniteField::neg(Fq a) const {
  if (p_ == 2) return a;
  if (digits_ == 1) return a ? p_ - a : 0;
  Fq r = 0, scale = 1;
  while (a) {
    Fq d = a % p_;
    r += (d ? p_ - d : 0) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

Fq FiniteField::sub(Fq a, Fq b) const { return add(a, neg(b)); }

Fq FiniteField::inv(Fq a) const {
  if (a == 0) throw ValidationError("inverse of zero in " + describe());
  std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : size_ - 1 - l];
}

Fq FiniteField::pow(Fq a, std::int64_t e) const {
  if (e == 0) return 1;
  if (a == 0) {
    if (e < 0) throw ValidationError("negative power of zero");
    return 0;
  }
  std::int64_t n = size_ - 1;
  std::int64_t k = (static_cast<std::int64_t>(log_[a]) * (((e % n) + n) % n)) % n;
  return exp_[static_cast<std::size_t>(k)];
}

Fq FiniteField::from_int(std::int64_t v) const {
  std::int64_t p = p_;
  return static_cast<Fq>(((v % p) + p) % p);
}

std::uint32_t FiniteField::log(Fq a) const {
  if (a == 0) throw ValidationError("log of zero");
  return log_[a];
}

Fq FiniteField::exp(std::uint64_t k) const { return exp_[k % (size_ - 1)]; }

std::int64_t FiniteField::to_int(Fq a) const {
  if (a >= p_) throw ValidationError("element is not in the prime field");
  return a;
}

bool FiniteField::same_as(const FiniteField& o) const {
  if (this == &o) return true;
  if (p_ != o.p_ || size_ != o.size_ || modulus_ != o.modulus_) return false;
  if (!base_ || !o.base_) return !base_ && !o.base_;
  return base_->same_as(*o.base_);
}

std::string FiniteField::describe() const {
  std::ostringstream os;
  os << "F_" << size_;
  if (base_) {
    FqPoly m(base_, modulus_);
    os << "[" << m.to_string() << "]";
  }
  return os.str();
}

Fq FiniteField::slow_mul(Fq a, Fq b) const {
  if (digits_ == 1) return Fq((std::uint64_t(a) * b) % p_);
  const std::uint32_t Q = base_->size();
  const std::size_t k = modulus_.size() - 1;
  std::vector<Fq> x(k), y(k), r(2 * k - 1, 0);
  for (std::size_t j = 0; j < k; ++j) {
    x[j] = a % Q;
    a /= Q;
    y[j] = b % Q;
    b /= Q;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < k; ++j) r[i + j] = base_->add(r[i + j], base_->mul(x[i], y[j]));
  }
  for (std::size_t i = 2 * k - 2; i >= k; --i) {
    Fq c = r[i];
    if (!c) continue;
    for (std::size_t j = 0; j < k; ++j) r[i - k + j] = base_->sub(r[i - k + j], base_->mul(c, modulus_[j]));
    r[i] = 0;
  }
  Fq out = 0;
  for (std::size_t j = k; j-- > 0;) out = out * Q + r[j];
  return out;
}

void FiniteField::build_tables() {
  const std::uint32_t n = size_ - 1;
  auto slow_pow = [&](Fq a, std::uint32_t e) {
    Fq r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  const auto fac = prime_factors(n);
  gen_ = 1;
  if (size_ > 2) {
    for (Fq g = 2; g < size_; ++g) {
      bool ok = true;
      for (auto l : fac)
        if (slow_pow(g, n / l) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        gen_ = g;
        break;
      }
    }
  }
  exp_.assign(n, 0);
  log_.assign(size_, 0);
  Fq cur = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    exp_[i] = cur;
    log_[cur] = i;
    cur = slow_mul(cur, gen_);
  }
}

}  // namespace sticklab
