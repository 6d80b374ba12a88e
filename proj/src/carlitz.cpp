#include "sticklab/carlitz.hpp"

#include "sticklab/errors.hpp"

namespace sticklab {

namespace {

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t r0 = m, r1 = a % m, t0 = 0, t1 = 1;
  while (r1) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw TheoremViolation("orders of H and G are not coprime");
  return ((t0 % m) + m) % m;
}

}  // namespace

CarlitzProvider::CarlitzProvider(FieldPtr f, FqPoly prime, int level)
    : f_(std::move(f)), prime_(std::move(prime)), level_(level) {
  if (!prime_.is_monic() || !is_irreducible(prime_))
    throw ValidationError("prime " + prime_.to_string() + " is not monic irreducible");
  if (level_ < 1) throw ValidationError("level must be at least 1");
  modulus_ = FqPoly::constant(f_, 1);
  for (int i = 0; i < level_; ++i) modulus_ = modulus_ * prime_;
  N_ = modulus_.degree();
  std::uint64_t total = 1;
  for (int i = 0; i < N_; ++i) {
    total *= f_->size();
    if (total > kMaxResidues) throw GuardrailError("A/p^n has more than 2^22 residues");
  }
  const int d = prime_.degree();
  std::int64_t Hn = 1;
  for (int i = 0; i < d; ++i) Hn *= f_->size();
  Hn -= 1;
  const std::int64_t Gn = static_cast<std::int64_t>(total) / (Hn + 1);

  // first primitive root of (A/p)^* in code order
  const auto fac = prime_factors(Hn);
  FqPoly root;
  for (std::uint64_t c = 1; c <= static_cast<std::uint64_t>(Hn); ++c) {
    FqPoly x = residue_poly(c) % prime_;
    if (x.is_zero()) continue;
    bool ok = true;
    for (auto l : fac)
      if (powmod(x, static_cast<std::uint64_t>(Hn / l), prime_).is_one()) {
        ok = false;
        break;
      }
    if (ok) {
      root = x;
      break;
    }
  }
  if (root.is_zero() && Hn > 1) throw TheoremViolation("no primitive root modulo " + prime_.to_string());
  if (Hn == 1) root = FqPoly::constant(f_, 1);

  exp_h_ = Gn * inverse_mod(Gn % Hn, Hn);
  exp_g_ = Hn * inverse_mod(Hn % Gn, Gn);
  if (Hn == 1) exp_h_ = 0;
  if (Gn == 1) exp_g_ = 0;
  omega_ = powmod(root, static_cast<std::uint64_t>(exp_h_ == 0 ? 1 : exp_h_), modulus_);
  if (Hn == 1) omega_ = FqPoly::constant(f_, 1);

  std::vector<std::uint64_t> h_codes;
  {
    FqPoly cur = FqPoly::constant(f_, 1);
    for (std::int64_t i = 0; i < Hn; ++i) {
      h_codes.push_back(residue_code(cur));
      cur = mulmod(cur, omega_, modulus_);
    }
    if (!cur.is_one()) throw TheoremViolation("Teichmuller generator does not have order |H|");
  }

  auto mul = [this](std::uint64_t a, std::uint64_t b) {
    return residue_code(mulmod(residue_poly(a), residue_poly(b), modulus_));
  };
  std::vector<std::uint64_t> gens;
  FqPoly ppow = FqPoly::constant(f_, 1);
  for (int i = 1; i < level_; ++i) {
    ppow = ppow * prime_;
    for (int j = 0; j < d; ++j) {
      Fq digit = 1;
      for (std::uint32_t s = 0; s < f_->prime_degree(); ++s, digit *= f_->characteristic()) {
        FqPoly g = FqPoly::constant(f_, 1) + (FqPoly::monomial(f_, j, digit) * ppow) % modulus_;
        gens.push_back(residue_code(g));
      }
    }
  }
  BlackBoxDecomposition dec = decompose_black_box(1, gens, mul, static_cast<std::size_t>(Gn) + 1);
  if (static_cast<std::int64_t>(dec.group.order()) != Gn)
    throw TheoremViolation("one-unit group has order " + std::to_string(dec.group.order()) + ", expected " + std::to_string(Gn));

  H_ = std::make_shared<AbelianGroup>(Hn > 1 ? AbelianGroup({Hn}) : AbelianGroup());
  G_ = std::make_shared<AbelianGroup>(dec.group);
  Gamma_ = std::make_shared<AbelianGroup>(AbelianGroup::product(*H_, *G_));

  class_.assign(total, -1);
  rep_.assign(Gamma_->order(), 0);
  for (std::int64_t i = 0; i < Hn; ++i) {
    FqPoly h = residue_poly(h_codes[i]);
    for (std::uint32_t gi = 0; gi < G_->order(); ++gi) {
      std::uint64_t code = residue_code(mulmod(h, residue_poly(dec.id_of[gi]), modulus_));
      std::uint32_t idx = static_cast<std::uint32_t>(i) + static_cast<std::uint32_t>(Hn) * gi;
      if (class_[code] != -1) throw TheoremViolation("H x G does not cover (A/p^n)^* injectively");
      class_[code] = static_cast<std::int32_t>(idx);
      rep_[idx] = code;
    }
  }
}

std::uint64_t CarlitzProvider::residue_code(const FqPoly& a) const {
  FqPoly r = a % modulus_;
  std::uint64_t code = 0;
  for (int i = N_ - 1; i >= 0; --i) code = code * f_->size() + r.coeff(i);
  return code;
}

FqPoly CarlitzProvider::residue_poly(std::uint64_t code) const {
  std::vector<Fq> c(static_cast<std::size_t>(N_), 0);
  for (int i = 0; i < N_; ++i) {
    c[i] = static_cast<Fq>(code % f_->size());
    code /= f_->size();
  }
  return FqPoly(f_, std::move(c));
}

std::optional<std::uint32_t> CarlitzProvider::class_of_code(std::uint64_t code) const {
  if (code >= class_.size() || class_[code] < 0) return std::nullopt;
  return static_cast<std::uint32_t>(class_[code]);
}

std::uint32_t CarlitzProvider::class_of(const FqPoly& a) const {
  auto c = class_of_code(residue_code(a));
  if (!c) throw ValidationError(a.to_string() + " is not prime to " + prime_.to_string());
  return *c;
}

FqPoly CarlitzProvider::representative(std::uint32_t gamma) const { return residue_poly(rep_.at(gamma)); }

std::uint32_t CarlitzProvider::infinity_inertia_generator() const {
  return class_of(FqPoly::constant(f_, f_->primitive_element()));
}

std::pair<FqPoly, FqPoly> CarlitzProvider::hg_split(const FqPoly& x) const {
  if ((x % prime_).is_zero()) throw ValidationError(x.to_string() + " is not a unit modulo p^n");
  FqPoly h = exp_h_ ? powmod(x, static_cast<std::uint64_t>(exp_h_), modulus_) : FqPoly::constant(f_, 1);
  FqPoly g = exp_g_ ? powmod(x, static_cast<std::uint64_t>(exp_g_), modulus_) : FqPoly::constant(f_, 1);
  return {h, g};
}

std::vector<std::uint32_t> CarlitzProvider::projection_to(const CarlitzProvider& lower) const {
  if (!(lower.prime_ == prime_) || lower.level_ > level_)
    throw ValidationError("projection needs the same prime and a lower level");
  std::vector<std::uint32_t> out(Gamma_->order());
  for (std::uint32_t i = 0; i < Gamma_->order(); ++i) out[i] = lower.class_of(representative(i));
  return out;
}

CoverDescription CarlitzProvider::describe(int D, const std::function<std::vector<FqPoly>(int)>& irreducibles) const {
  if (D < 1) throw ValidationError("degree bound must be positive");
  CoverDescription c = CoverDescription::make(f_->characteristic(), f_->prime_degree(), *H_, *G_);
  // reuse our own group objects so that ring elements can be shared
  c.H = H_;
  c.G = G_;
  c.Gamma = Gamma_;
  const Elem h0(H_->rank(), 0), g0(G_->rank(), 0);
  if (!H_->is_trivial()) c.gal_F1_over_HA.push_back(Elem{1});

  SPlace pl;
  pl.label = prime_.to_string();
  pl.degree = prime_.degree();
  if (!H_->is_trivial()) {
    pl.inertia_H.push_back(Elem{1});
    pl.inertia_G.push_back(g0);
  }
  for (std::size_t i = 0; i < G_->rank(); ++i) {
    Elem e(G_->rank(), 0);
    e[i] = 1;
    pl.inertia_H.push_back(h0);
    pl.inertia_G.push_back(e);
  }
  pl.frob_H = h0;
  pl.frob_G = g0;
  pl.totally_ramified = true;
  c.S.push_back(pl);

  SPlace inf;
  inf.label = "inf";
  inf.degree = 1;
  std::uint32_t ig = infinity_inertia_generator();
  inf.inertia_H.push_back(H_->element(ig % H_->order()));
  inf.inertia_G.push_back(G_->element(ig / H_->order()));
  inf.frob_H = h0;
  inf.frob_G = g0;
  c.S.push_back(inf);

  c.degree_bound = D;
  for (int d = 1; d <= D; ++d) {
    std::vector<FqPoly> irr = irreducibles ? irreducibles(d) : enumerate_monic_irreducibles(f_, d);
    for (auto& m : irr) {
      if (m == prime_) continue;
      std::uint32_t cl = class_of(m);
      c.places.push_back({d, H_->element(cl % H_->order()), G_->element(cl / H_->order()), m.to_string()});
    }
  }
  c.stabilization_degree = level_ * prime_.degree();
  c.provider = {{"kind", "carlitz"}, {"q", f_->size()}, {"prime", prime_.to_string()}, {"level", level_}};
  return c;
}

}  // namespace sticklab
