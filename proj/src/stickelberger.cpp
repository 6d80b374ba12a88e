#include "sticklab/stickelberger.hpp"

#include "sticklab/errors.hpp"
#include "sticklab/parallel.hpp"

namespace sticklab {

namespace {

using Dense = std::vector<std::int64_t>;  // (D+1) x |Gamma|, row-major in the u-degree

ThetaSeries from_dense(const GroupPtr& g, std::int64_t q, int D, const Dense& c, std::string method) {
  ThetaSeries th;
  th.gamma = g;
  th.q = q;
  th.D = D;
  th.method = std::move(method);
  const std::uint32_t n = g->order();
  for (int d = 0; d <= D; ++d) {
    ZElem e(g);
    for (std::uint32_t s = 0; s < n; ++s)
      if (std::int64_t v = c[static_cast<std::size_t>(d) * n + s]) e.add_term(s, v);
    th.coeffs.push_back(std::move(e));
  }
  return th;
}

Dense dense_product(const AbelianGroup& g, int D, const Dense& a, const Dense& b) {
  const std::uint32_t n = g.order();
  Dense r(a.size(), 0);
  for (int i = 0; i <= D; ++i)
    for (std::uint32_t x = 0; x < n; ++x) {
      std::int64_t av = a[static_cast<std::size_t>(i) * n + x];
      if (!av) continue;
      for (int j = 0; i + j <= D; ++j)
        for (std::uint32_t y = 0; y < n; ++y) {
          std::int64_t bv = b[static_cast<std::size_t>(j) * n + y];
          if (bv) r[static_cast<std::size_t>(i + j) * n + g.add(x, y)] += av * bv;
        }
    }
  return r;
}

}  // namespace

ThetaSeries theta_euler(const CoverDescription& c, int D, int workers) {
  if (D < 0) throw ValidationError("negative degree bound");
  if (D > c.degree_bound)
    throw ValidationError("the place stream only reaches degree " + std::to_string(c.degree_bound) + ", asked for " +
                          std::to_string(D));
  const AbelianGroup& g = *c.Gamma;
  const std::uint32_t n = g.order();
  std::vector<Dense> parts(static_cast<std::size_t>(std::max(1, workers)));
  parallel_ranges(c.places.size(), workers, [&](std::uint64_t b, std::uint64_t e, int w) {
    Dense s(static_cast<std::size_t>(D + 1) * n, 0);
    s[0] = 1;
    for (std::uint64_t i = b; i < e; ++i) {
      const PlaceRecord& v = c.places[i];
      if (v.degree > D) continue;
      const std::uint32_t sigma = g.neg(c.frob(v));
      // multiply by (1 - sigma u^d)^{-1}: ascending in-place update
      for (int j = v.degree; j <= D; ++j)
        for (std::uint32_t x = 0; x < n; ++x) {
          std::int64_t val = s[static_cast<std::size_t>(j - v.degree) * n + x];
          if (val) s[static_cast<std::size_t>(j) * n + g.add(x, sigma)] += val;
        }
    }
    parts[static_cast<std::size_t>(w)] = std::move(s);
  });
  Dense acc;
  for (auto& p : parts) {
    if (p.empty()) continue;
    acc = acc.empty() ? std::move(p) : dense_product(g, D, acc, p);
  }
  if (acc.empty()) {
    acc.assign(static_cast<std::size_t>(D + 1) * n, 0);
    acc[0] = 1;
  }
  return from_dense(c.Gamma, c.q(), D, acc, "euler");
}

ThetaSeries theta_dirichlet(const CarlitzProvider& prov, int D, int workers) {
  if (D < 0) throw ValidationError("negative degree bound");
  const AbelianGroup& g = *prov.Gamma();
  const std::uint32_t n = g.order();
  Dense acc(static_cast<std::size_t>(D + 1) * n, 0);
  for (int d = 0; d <= D; ++d) {
    const std::uint64_t total = monic_count(prov.field(), d);
    std::vector<std::vector<std::int64_t>> local(static_cast<std::size_t>(std::max(1, workers)), std::vector<std::int64_t>(n, 0));
    parallel_ranges(total, workers, [&](std::uint64_t b, std::uint64_t e, int w) {
      auto& cnt = local[static_cast<std::size_t>(w)];
      for_each_monic(prov.field(), d, b, e, [&](const FqPoly& a) {
        auto cl = prov.class_of_code(prov.residue_code(a));
        if (cl) ++cnt[g.neg(*cl)];
      });
    });
    for (auto& cnt : local)
      for (std::uint32_t s = 0; s < n; ++s) acc[static_cast<std::size_t>(d) * n + s] += cnt[s];
  }
  return from_dense(prov.Gamma(), prov.q(), D, acc, "dirichlet");
}

bool theta_equal(const ThetaSeries& a, const ThetaSeries& b) {
  if (!same_group(a.gamma, b.gamma) || a.D != b.D) return false;
  for (int d = 0; d <= a.D; ++d)
    if (a.coeffs[d] != b.coeffs[d]) return false;
  return true;
}

ZElem theta_as_zelem(const ThetaSeries& th, int d) { return th.coeffs.at(static_cast<std::size_t>(d)); }

namespace {

// numerator N_d = b_d - q b_{d-1}
std::vector<WElem> times_one_minus_qu(const std::vector<WElem>& b, std::int64_t q, const GroupPtr& g) {
  std::vector<WElem> n;
  for (std::size_t d = 0; d < b.size(); ++d) {
    WElem x = b[d];
    if (d > 0) x -= b[d - 1].scale(Cyclo(static_cast<long>(q)));
    n.push_back(WElem(g) + x);
  }
  return n;
}

int last_nonzero(const std::vector<WElem>& v) {
  for (int d = static_cast<int>(v.size()) - 1; d >= 0; --d)
    if (!v[d].is_zero()) return d;
  return -1;
}

// the part of v of degree < cut becomes the numerator, the rest must vanish
Stabilization check_tail(const std::vector<WElem>& v, std::optional<int> declared, int D, bool pole,
                         const std::string& what) {
  Stabilization st;
  const int offset = pole ? 1 : 0;  // chi_0: numerator has degree <= D0
  if (declared) {
    st.D0 = *declared;
    st.declared = true;
    for (int d = st.D0 + offset; d <= D; ++d)
      if (!v[d].is_zero())
        throw TheoremViolation(what + ": coefficient of u^" + std::to_string(d) + " is nonzero beyond the stabilization degree " +
                               std::to_string(st.D0));
    st.verified = D >= st.D0 + offset;
    if (!st.verified) st.note = "degree bound below the stabilization degree; tail not observed";
  } else {
    int L = last_nonzero(v);
    st.D0 = L + 1 - offset;
    if (st.D0 < 0) st.D0 = 0;
    st.verified = D - (st.D0 + offset) + 1 >= 2;
    st.note = st.verified ? "empirical: tail vanished on at least two coefficients" : "empirical: tail too short to verify";
  }
  return st;
}

}  // namespace

ChiTheta chi_theta(const CoverDescription& c, const ThetaSeries& th, const Character& chi) {
  if (!same_group(th.gamma, c.Gamma)) throw ValidationError("series and cover have different Galois groups");
  ChiTheta out;
  out.data = character_data(c, chi);
  for (auto& x : th.coeffs) out.series.push_back(apply_character_H(c, chi, x));
  const int m = chi.m;
  if (!chi.is_trivial()) {
    out.stab = check_tail(out.series, c.stabilization_degree, th.D, false, "chi-theta " + chi.descriptor());
    std::vector<WElem> num(out.series.begin(), out.series.begin() + std::min<int>(out.stab.D0, th.D + 1));
    out.theta = GammaPoly::from_coeffs(c.G, m, th.q, std::move(num), 0);
  } else {
    auto n = times_one_minus_qu(out.series, th.q, c.G);
    out.stab = check_tail(n, c.stabilization_degree, th.D, true, "chi-theta trivial character");
    std::vector<WElem> num(n.begin(), n.begin() + std::min<int>(out.stab.D0 + 1, th.D + 1));
    out.theta = GammaPoly::from_coeffs(c.G, m, th.q, std::move(num), 1).reduce_denominator();
  }
  return out;
}

RationalTheta rationalize(const CoverDescription& c, const ThetaSeries& th) {
  std::vector<WElem> b;
  for (auto& x : th.coeffs) b.push_back(to_welem(x, 1));
  auto n = times_one_minus_qu(b, th.q, th.gamma);
  RationalTheta out;
  out.stab = check_tail(n, c.stabilization_degree, th.D, true, "stickelberger series");
  std::vector<WElem> num(n.begin(), n.begin() + std::min<int>(out.stab.D0 + 1, th.D + 1));
  out.theta = GammaPoly::from_coeffs(th.gamma, 1, th.q, std::move(num), 1).reduce_denominator();
  return out;
}

bool projection_compatible(const ThetaSeries& hi, const ThetaSeries& lo, const std::vector<std::uint32_t>& gamma_map) {
  if (hi.D != lo.D) return false;
  for (int d = 0; d <= hi.D; ++d)
    if (hi.coeffs[d].map_group(lo.gamma, gamma_map) != lo.coeffs[d]) return false;
  return true;
}

}  // namespace sticklab
