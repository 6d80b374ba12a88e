#include "sticklab/carlitz_oracle.hpp"

#include <map>

#include "sticklab/errors.hpp"
#include "sticklab/parallel.hpp"

namespace sticklab {

namespace {

// b(t) -> b(t)^{q^i} = b(t^{q^i}) since the coefficients lie in F_q
FqPoly twist(const FqPoly& b, std::int64_t qi) {
  if (b.is_zero() || qi == 1) return b;
  std::vector<Fq> c(static_cast<std::size_t>(b.degree() * qi + 1), 0);
  for (int k = 0; k <= b.degree(); ++k) c[static_cast<std::size_t>(k * qi)] = b.coeff(k);
  return FqPoly(b.field(), std::move(c));
}

FieldPtr field_of(const AdditivePoly& a) {
  for (auto& x : a.c)
    if (x.field()) return x.field();
  throw ValidationError("additive polynomial without a field");
}

void trim(AdditivePoly& a) {
  while (!a.c.empty() && a.c.back().is_zero()) a.c.pop_back();
}

}  // namespace

AdditivePoly compose(const AdditivePoly& a, const AdditivePoly& b) {
  if (a.c.empty() || b.c.empty()) return {};
  FieldPtr f = field_of(a);
  const std::int64_t q = f->size();
  AdditivePoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, FqPoly(f));
  std::int64_t qi = 1;
  for (std::size_t i = 0; i < a.c.size(); ++i, qi *= q) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      if (!b.c[j].is_zero()) r.c[i + j] += a.c[i] * twist(b.c[j], qi);
  }
  trim(r);
  return r;
}

AdditivePoly carlitz_action(const FqPoly& a) {
  FieldPtr f = a.field();
  AdditivePoly phi_t{{FqPoly::t(f), FqPoly::constant(f, 1)}};
  AdditivePoly acc;
  // Horner in t: acc = acc o Phi_t + a_i
  for (int i = a.degree(); i >= 0; --i) {
    acc = compose(acc, phi_t);
    if (Fq ai = a.coeff(i)) {
      if (acc.c.empty()) acc.c.push_back(FqPoly(f));
      acc.c[0] += FqPoly::constant(f, ai);
    }
    trim(acc);
  }
  return acc;
}

XPoly to_dense(const AdditivePoly& a) {
  if (a.c.empty()) return {};
  FieldPtr f = field_of(a);
  const std::int64_t q = f->size();
  std::int64_t top = 1;
  for (std::size_t i = 1; i < a.c.size(); ++i) top *= q;
  XPoly x(static_cast<std::size_t>(top + 1), FqPoly(f));
  std::int64_t qi = 1;
  for (std::size_t i = 0; i < a.c.size(); ++i, qi *= q) x[static_cast<std::size_t>(qi)] = a.c[i];
  return x;
}

XPoly carlitz_torsion_poly(const FqPoly& prime, int n) {
  if (n < 1) throw ValidationError("torsion level must be positive");
  if (!prime.is_monic() || !is_irreducible(prime)) throw ValidationError("torsion prime must be monic irreducible");
  const std::int64_t q = prime.field()->size();
  std::int64_t deg = 1;
  for (int i = 0; i < n * prime.degree(); ++i) {
    deg *= q;
    if (deg > 729) throw GuardrailError("torsion polynomial degree exceeds 729");
  }
  FqPoly pn = FqPoly::constant(prime.field(), 1);
  for (int i = 1; i < n; ++i) pn *= prime;
  XPoly num = to_dense(carlitz_action(pn * prime));
  XPoly den = to_dense(carlitz_action(pn));
  // long division by a monic divisor over F_q[t]
  if (!den.back().is_one()) throw TheoremViolation("Carlitz polynomial is not monic");
  const int dn = static_cast<int>(den.size()) - 1;
  const int nn = static_cast<int>(num.size()) - 1;
  XPoly quo(static_cast<std::size_t>(nn - dn + 1), FqPoly(prime.field()));
  for (int k = nn - dn; k >= 0; --k) {
    FqPoly c = num[static_cast<std::size_t>(k + dn)];
    quo[static_cast<std::size_t>(k)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= dn; ++j) num[static_cast<std::size_t>(k + j)] = num[static_cast<std::size_t>(k + j)] - c * den[static_cast<std::size_t>(j)];
  }
  for (auto& r : num)
    if (!r.is_zero()) throw TheoremViolation("Phi_{p^n} is not divisible by Phi_{p^(n-1)}");
  return quo;
}

int frobenius_order_oracle(const XPoly& torsion, const FqPoly& place) {
  if (!place.is_monic() || !is_irreducible(place)) throw ValidationError("place must be monic irreducible");
  FieldPtr base = place.field();
  FieldPtr k = FiniteField::extension(base, place.coeffs());
  const std::uint64_t qb = base->size();
  std::vector<Fq> red;
  for (auto& c : torsion) {
    FqPoly r = c % place;
    std::uint64_t code = 0, scale = 1;
    for (int j = 0; j <= r.degree(); ++j, scale *= qb) code += r.coeff(j) * scale;
    red.push_back(static_cast<Fq>(code));
  }
  FqPoly f(k, std::move(red));
  if (!f.is_monic()) throw TheoremViolation("reduced torsion polynomial is not monic");
  if (!gcd(f, f.derivative()).is_one())
    throw ValidationError("torsion polynomial is not separable at " + place.to_string() + " (ramified place)");
  int degree = 0;
  for (auto& [d, g] : distinct_degree_factorization(f)) {
    if (g.degree() <= 0) continue;
    if (degree != 0 && degree != d)
      throw TheoremViolation("torsion polynomial has factors of degrees " + std::to_string(degree) + " and " +
                             std::to_string(d) + " at " + place.to_string());
    degree = d;
  }
  if (degree == 0) throw TheoremViolation("empty factorization");
  return degree;
}

std::vector<ReciprocityRow> reciprocity_report(const CarlitzProvider& prov, int max_deg, int workers) {
  XPoly tor = carlitz_torsion_poly(prov.prime(), prov.level());
  std::vector<FqPoly> places;
  for (int e = 1; e <= max_deg; ++e)
    for (auto& v : enumerate_monic_irreducibles(prov.field(), e))
      if (v != prov.prime()) places.push_back(v);
  std::vector<ReciprocityRow> rows(places.size());
  parallel_ranges(places.size(), workers, [&](std::uint64_t b, std::uint64_t e, int) {
    for (std::uint64_t i = b; i < e; ++i) {
      auto& r = rows[i];
      r.place = places[i].to_string();
      r.degree = places[i].degree();
      r.f_factored = frobenius_order_oracle(tor, places[i]);
      r.f_predicted = static_cast<int>(prov.Gamma()->element_order(prov.class_of(places[i])));
      r.ok = r.f_factored == r.f_predicted;
    }
  });
  return rows;
}

namespace {

std::int64_t unit_group_order(std::int64_t q, int d, int n) {
  std::int64_t r = 1;
  for (int i = 0; i < d; ++i) r *= q;
  std::int64_t out = r - 1;
  for (int i = 1; i < n; ++i) out *= r;
  return out;
}

}  // namespace

Census place_census(const FqPoly& prime, int n, int m_max, int workers) {
  if (m_max < 1 || m_max > kMaxCensusDegree) throw GuardrailError("census degree must lie in 1..10");
  const FieldPtr& f = prime.field();
  const std::int64_t q = f->size();
  std::uint64_t qm = 1;
  for (int i = 0; i < m_max; ++i) qm *= static_cast<std::uint64_t>(q);
  if (qm > (1u << 16)) throw GuardrailError("census needs residue fields above 2^16 elements");
  Census c;
  c.extension_degree = unit_group_order(q, prime.degree(), n);
  const std::int64_t N = c.extension_degree;
  c.places.assign(static_cast<std::size_t>(m_max + 1), 0);
  // infinity splits into N/(q-1) places of degree 1, p is totally ramified
  c.places[1] += N / (q - 1);
  if (prime.degree() <= m_max) c.places[static_cast<std::size_t>(prime.degree())] += 1;
  XPoly tor = carlitz_torsion_poly(prime, n);
  std::vector<FqPoly> base;
  for (int e = 1; e <= m_max; ++e)
    for (auto& v : enumerate_monic_irreducibles(f, e))
      if (v != prime) base.push_back(v);
  std::vector<std::vector<std::int64_t>> local(static_cast<std::size_t>(std::max(1, workers)),
                                               std::vector<std::int64_t>(static_cast<std::size_t>(m_max + 1), 0));
  parallel_ranges(base.size(), workers, [&](std::uint64_t b, std::uint64_t e, int w) {
    for (std::uint64_t i = b; i < e; ++i) {
      const int fd = frobenius_order_oracle(tor, base[i]);
      const int deg = fd * base[i].degree();
      if (N % fd != 0) throw TheoremViolation("residual degree does not divide the extension degree");
      if (deg <= m_max) local[static_cast<std::size_t>(w)][static_cast<std::size_t>(deg)] += N / fd;
    }
  });
  for (auto& l : local)
    for (int d = 1; d <= m_max; ++d) c.places[d] += l[d];
  c.N.assign(static_cast<std::size_t>(m_max + 1), 0);
  for (int m = 1; m <= m_max; ++m)
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) c.N[m] += d * c.places[d];
  return c;
}

int genus_formula(const FqPoly& prime, int n) {
  const std::int64_t q = prime.field()->size();
  const int d = prime.degree();
  const std::int64_t N = unit_group_order(q, d, n);
  // characters of conductor exactly p^c number phi(p^c) - phi(p^{c-1})
  std::int64_t cond = 0, prev = 1;
  for (int c = 1; c <= n; ++c) {
    std::int64_t cur = unit_group_order(q, d, c);
    cond += c * (cur - prev);
    prev = cur;
  }
  const std::int64_t odd = N - N / (q - 1);
  const std::int64_t twice = 2 - 2 * N + d * cond + odd;
  if (twice % 2 != 0 || twice < 0) throw TheoremViolation("conductor-discriminant formula gives a non-integral genus");
  return static_cast<int>(twice / 2);
}

namespace {

mpz_class binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

mpz_class zpow(std::int64_t q, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return r;
}

// point counts N_m = q^m + 1 - s_m, s_m the power sums of the inverse roots of P
std::vector<mpz_class> counts_from_numerator(std::int64_t q, const std::vector<mpz_class>& P, int m_max) {
  std::vector<mpz_class> s(static_cast<std::size_t>(m_max + 1), 0), out(static_cast<std::size_t>(m_max + 1), 0);
  auto a = [&](int i) { return i < static_cast<int>(P.size()) ? P[i] : mpz_class(0); };
  for (int m = 1; m <= m_max; ++m) {
    mpz_class v = -m * a(m);
    for (int i = 1; i < m; ++i) v -= a(i) * s[m - i];
    s[m] = v;
    out[m] = zpow(q, m) + 1 - s[m];
  }
  return out;
}

}  // namespace

ZetaReport zeta_from_counts(std::int64_t q, const std::vector<std::int64_t>& N, int genus) {
  ZetaReport r;
  r.genus = genus;
  r.N = N;
  const int m_max = static_cast<int>(N.size()) - 1;
  if (m_max < genus) throw ValidationError("need point counts through degree g to determine P");
  // Z(u) = exp(sum N_m u^m / m): k z_k = sum_{m=1}^k N_m z_{k-m}
  std::vector<mpq_class> z(static_cast<std::size_t>(genus + 1));
  z[0] = 1;
  for (int k = 1; k <= genus; ++k) {
    mpq_class acc = 0;
    for (int m = 1; m <= k; ++m) acc += mpq_class(static_cast<long>(N[m])) * z[k - m];
    z[k] = acc / k;
    z[k].canonicalize();
  }
  // P = Z (1-u)(1-qu), then the functional equation a_{2g-i} = q^{g-i} a_i
  std::vector<mpq_class> low(static_cast<std::size_t>(genus + 1));
  for (int i = 0; i <= genus; ++i) {
    low[i] = z[i];
    if (i >= 1) low[i] -= (q + 1) * z[i - 1];
    if (i >= 2) low[i] += q * z[i - 2];
  }
  r.P.assign(static_cast<std::size_t>(2 * genus + 1), 0);
  bool integral = true;
  for (int i = 0; i <= genus; ++i) {
    if (low[i].get_den() != 1) integral = false;
    r.P[i] = low[i].get_num();
  }
  if (!integral) r.diagnostics.push_back("P has non-integral coefficients; census inconsistent with genus");
  for (int i = 0; i < genus; ++i) r.P[2 * genus - i] = zpow(q, genus - i) * r.P[i];
  r.functional_equation = integral;

  r.weil_bounds = true;
  for (int i = 0; i <= 2 * genus; ++i) {
    mpz_class bound2 = binom(2 * genus, i) * binom(2 * genus, i) * zpow(q, i);
    if (r.P[i] * r.P[i] > bound2) r.weil_bounds = false;
  }
  if (!r.weil_bounds) r.diagnostics.push_back("a coefficient of P breaks the Weil bound");

  auto pred = counts_from_numerator(q, r.P, m_max);
  for (int m = 1; m <= m_max; ++m) {
    if (pred[m] != N[m]) {
      r.diagnostics.push_back("N_" + std::to_string(m) + " = " + std::to_string(N[m]) + " but P predicts " +
                              pred[m].get_str());
    } else if (m > genus) {
      ++r.overdetermined_checks;
    }
  }
  r.h = 0;
  for (auto& a : r.P) r.h += a;
  if (r.h <= 0) r.diagnostics.push_back("P(1) is not positive");
  return r;
}

ZetaReport zeta_from_census(const FqPoly& prime, int n, int workers) {
  const std::int64_t q = prime.field()->size();
  const int g = genus_formula(prime, n);
  // as many degrees as the guardrail allows, and at least g
  int m_max = 0;
  std::uint64_t qm = 1;
  while (m_max < kMaxCensusDegree && qm * static_cast<std::uint64_t>(q) <= (1u << 16)) {
    qm *= static_cast<std::uint64_t>(q);
    ++m_max;
  }
  if (m_max < std::max(g, 1)) throw GuardrailError("genus " + std::to_string(g) + " needs a census beyond the residue field limit");
  m_max = std::min(m_max, std::max(g + 2, 2));
  Census c = place_census(prime, n, m_max, workers);
  ZetaReport r = zeta_from_counts(q, c.N, g);
  r.genus_formula = g;
  if (!r.diagnostics.empty()) {
    // see whether some other genus fits the census
    for (int g2 = 0; g2 <= m_max; ++g2) {
      if (g2 == g) continue;
      auto alt = zeta_from_counts(q, c.N, g2);
      if (alt.diagnostics.empty()) {
        r.diagnostics.push_back("census is consistent with genus " + std::to_string(g2) + " instead");
        break;
      }
    }
    throw TheoremViolation("zeta numerator from the place census failed: " + r.diagnostics.front());
  }
  const std::int64_t p = prime.field()->characteristic();
  mpz_class h = r.h;
  r.v_p_h = 0;
  while (h != 0 && h % p == 0) {
    h /= p;
    ++r.v_p_h;
  }
  return r;
}

}  // namespace sticklab
