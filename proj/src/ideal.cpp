#include "sticklab/ideal.hpp"

#include <algorithm>

namespace sticklab {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = ((a % m) + m) % m, t0 = 0, t1 = 1;
  while (r1) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw TheoremViolation("element is not a unit modulo p^M");
  return ((t0 % m) + m) % m;
}

void axpy(std::vector<std::int64_t>& dst, const std::vector<std::int64_t>& src, std::int64_t f, std::int64_t m) {
  if (f == 0) return;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (!src[i]) continue;
    std::int64_t v = dst[i] - mulmod(f, src[i], m);
    dst[i] = v < 0 ? v + m : v;
  }
}

bool is_zero_row(const std::vector<std::int64_t>& r) {
  return std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace

HowellForm::HowellForm(std::int64_t p, int M, std::size_t ncols) : p_(p), M_(M), pm_(ipow(p, M)), n_(ncols) {
  if (pm_ >= (std::int64_t(1) << 40)) throw GuardrailError("p^M must stay below 2^40");
}

int HowellForm::val(std::int64_t x) const {
  int v = 0;
  while (x % p_ == 0 && v < M_) {
    x /= p_;
    ++v;
  }
  return v;
}

HowellForm HowellForm::build(std::int64_t p, int M, std::size_t ncols, std::vector<std::vector<std::int64_t>> rows) {
  HowellForm h(p, M, ncols);
  const std::int64_t pm = h.pm_;
  std::vector<std::vector<std::int64_t>> work;
  for (auto& r : rows) {
    if (r.size() != ncols) throw ValidationError("Howell row of wrong length");
    for (auto& x : r) x = ((x % pm) + pm) % pm;
    if (!is_zero_row(r)) work.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < ncols && !work.empty(); ++j) {
    std::size_t best = work.size();
    int bestv = M;
    for (std::size_t r = 0; r < work.size(); ++r) {
      if (!work[r][j]) continue;
      int v = h.val(work[r][j]);
      if (v < bestv) {
        bestv = v;
        best = r;
        if (v == 0) break;
      }
    }
    if (best == work.size()) continue;
    std::vector<std::int64_t> piv = std::move(work[best]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
    const std::int64_t pv = ipow(p, bestv);
    const std::int64_t u = inv_mod(piv[j] / pv, pm);
    for (auto& x : piv) x = mulmod(x, u, pm);
    std::vector<std::vector<std::int64_t>> next;
    next.reserve(work.size() + 1);
    for (auto& s : work) {
      if (s[j]) axpy(s, piv, s[j] / pv, pm);
      if (!is_zero_row(s)) next.push_back(std::move(s));
    }
    if (bestv > 0) {
      std::vector<std::int64_t> sat(piv.size());
      const std::int64_t f = ipow(p, M - bestv);
      for (std::size_t i = 0; i < piv.size(); ++i) sat[i] = mulmod(piv[i], f, pm);
      if (!is_zero_row(sat)) next.push_back(std::move(sat));
    }
    work = std::move(next);
    h.rows_.push_back(std::move(piv));
    h.pcols_.push_back(j);
    h.pvals_.push_back(bestv);
  }
  for (std::size_t i = 0; i < h.rows_.size(); ++i) {
    const std::int64_t pv = ipow(p, h.pvals_[i]);
    for (std::size_t r = 0; r < i; ++r) {
      std::int64_t e = h.rows_[r][h.pcols_[i]];
      if (e >= pv) axpy(h.rows_[r], h.rows_[i], e / pv, pm);
    }
  }
  return h;
}

bool HowellForm::contains(std::vector<std::int64_t> v) const {
  if (v.size() != n_) throw ValidationError("vector of wrong length for membership test");
  for (auto& x : v) x = ((x % pm_) + pm_) % pm_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::int64_t e = v[pcols_[i]];
    if (!e) continue;
    const std::int64_t pv = ipow(p_, pvals_[i]);
    if (e % pv) return false;
    axpy(v, rows_[i], e / pv, pm_);
  }
  return is_zero_row(v);
}

int HowellForm::colength() const {
  int s = 0;
  for (int v : pvals_) s += v;
  return s + M_ * static_cast<int>(n_ - pcols_.size());
}

bool HowellForm::operator==(const HowellForm& o) const {
  return p_ == o.p_ && M_ == o.M_ && n_ == o.n_ && rows_ == o.rows_;
}

std::size_t RingSpec::ncols() const {
  return static_cast<std::size_t>(K) * group->order() * static_cast<std::size_t>(Cyclo::phi(m));
}

std::vector<std::int64_t> IdealHandle::coordinates(const GammaPoly& x) const {
  const std::size_t phi = static_cast<std::size_t>(Cyclo::phi(spec_.m));
  const std::size_t ng = spec_.group->order();
  std::vector<std::int64_t> out(spec_.ncols(), 0);
  auto s = x.taylor_at_one(spec_.K);
  for (int i = 0; i < spec_.K; ++i) {
    if (s[i].group() && !same_group(s[i].group(), spec_.group))
      throw ValidationError("ideal generator lives over a different group");
    for (auto& [sigma, c] : s[i].terms()) {
      auto red = c.promote(c.m() == 1 ? spec_.m : c.m());
      if (red.m() != spec_.m) throw ValidationError("coefficient field does not match the ideal's ring");
      auto v = red.reduce_mod(spec_.p, spec_.M);
      for (std::size_t l = 0; l < phi; ++l) out[(static_cast<std::size_t>(i) * ng + sigma) * phi + l] = v[l];
    }
  }
  return out;
}

IdealHandle::IdealHandle(RingSpec spec, std::vector<GammaPoly> gens)
    : spec_(std::move(spec)), gens_(std::move(gens)), hf_(spec_.p, spec_.M, spec_.ncols()) {
  const std::size_t phi = static_cast<std::size_t>(Cyclo::phi(spec_.m));
  const std::size_t ng = spec_.group->order();
  const std::int64_t pm = hf_.modulus();
  std::vector<std::int64_t> ph;
  for (auto& c : Cyclo::cyclotomic(spec_.m)) {
    mpz_class r = c % pm;
    if (r < 0) r += pm;
    ph.push_back(r.get_si());
  }
  std::vector<std::vector<std::int64_t>> rows;
  for (auto& gen : gens_) {
    auto base = coordinates(gen);
    std::vector<std::int64_t> cur = base;
    for (std::size_t l = 0; l < phi; ++l) {
      if (l > 0) {
        // multiply every W-block by zeta
        for (std::size_t blk = 0; blk < spec_.ncols() / phi; ++blk) {
          std::int64_t* a = &cur[blk * phi];
          std::int64_t top = a[phi - 1];
          for (std::size_t t = phi - 1; t > 0; --t) a[t] = a[t - 1];
          a[0] = 0;
          if (top)
            for (std::size_t t = 0; t < phi; ++t) {
              std::int64_t v = a[t] - mulmod(top, ph[t], pm);
              a[t] = v < 0 ? v + pm : v;
            }
        }
      }
      for (int gi = 0; gi < spec_.K; ++gi)
        for (std::uint32_t sigma = 0; sigma < ng; ++sigma) {
          std::vector<std::int64_t> row(spec_.ncols(), 0);
          bool any = false;
          for (int i = 0; i + gi < spec_.K; ++i)
            for (std::uint32_t tau = 0; tau < ng; ++tau)
              for (std::size_t t = 0; t < phi; ++t) {
                std::int64_t v = cur[(static_cast<std::size_t>(i) * ng + tau) * phi + t];
                if (!v) continue;
                std::uint32_t dst = spec_.group->add(tau, sigma);
                row[(static_cast<std::size_t>(i + gi) * ng + dst) * phi + t] = v;
                any = true;
              }
          if (any) rows.push_back(std::move(row));
        }
    }
  }
  hf_ = HowellForm::build(spec_.p, spec_.M, spec_.ncols(), std::move(rows));
}

IdealHandle IdealHandle::from_elems(RingSpec spec, const std::vector<WElem>& gens) {
  std::vector<GammaPoly> g;
  for (auto& x : gens) g.push_back(GammaPoly::constant(WElem(spec.group) + x, spec.m, 0));
  return IdealHandle(std::move(spec), std::move(g));
}

bool IdealHandle::contains(const GammaPoly& x) const { return hf_.contains(coordinates(x)); }

bool IdealHandle::contains(const WElem& x) const {
  return contains(GammaPoly::constant(WElem(spec_.group) + x, spec_.m, 0));
}

bool IdealHandle::is_subset_of(const IdealHandle& o) const {
  for (auto& r : hf_.rows())
    if (!o.hf_.contains(r)) return false;
  return true;
}

}  // namespace sticklab
