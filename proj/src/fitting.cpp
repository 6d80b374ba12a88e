#include "sticklab/fitting.hpp"

#include <algorithm>

#include "sticklab/errors.hpp"

namespace sticklab {

namespace {

bool poly_p_integral(const GammaPoly& x, std::int64_t p) {
  for (auto& c : x.num())
    for (auto& [k, v] : c.terms())
      if (!v.is_p_integral(p)) return false;
  return true;
}

GammaPoly const_poly(const WElem& x, int m, std::int64_t q) { return GammaPoly::constant(x, m, q); }

WElem norm_of(const GroupPtr& g, const std::vector<std::uint32_t>& elems, int m) {
  return WElem::norm(g, elems).scale(Cyclo::rational(m, 1));
}

std::vector<std::uint32_t> all_of(const AbelianGroup& g) {
  std::vector<std::uint32_t> out(g.order());
  for (std::uint32_t i = 0; i < g.order(); ++i) out[i] = i;
  return out;
}

std::vector<std::uint32_t> g_inertia(const CoverDescription& c, const SPlace& v) {
  std::vector<std::uint32_t> gens;
  for (auto& e : v.inertia_G) gens.push_back(c.G->index(e));
  return c.G->subgroup(gens);
}

const SPlace& place_by_label(const CoverDescription& c, const std::string& label) {
  for (auto& v : c.S)
    if (v.label == label) return v;
  throw ValidationError("no place '" + label + "' in S");
}

bool contains_label(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// 1 - chi(Fr_{v,H})^{-1} Fr_{v,G}^{-1} g^{d_v} over W[G]
GammaPoly e_v_chi(const CoverDescription& c, const Character& chi, const SPlace& v) {
  const std::int64_t e = chi.value_exp(*c.H, c.H->index(v.frob_H));
  Cyclo z = Cyclo::zeta(chi.m, (chi.m - e) % chi.m);
  return GammaPoly::one_minus(c.G, chi.m, c.q(), v.degree, c.G->neg(c.G->index(v.frob_G)), z);
}

// the closed form of Theta is only trusted once its tail has been observed
void require_stable(const Stabilization& st, const std::string& what) {
  if (!st.verified)
    throw ValidationError(what + ": Stickelberger series not stabilized (D0 = " + std::to_string(st.D0) + ", " +
                          st.note + "); raise the degree bound");
}

}  // namespace

IdealHandle FittingGenerators::ideal(int M, int K) const {
  RingSpec spec{group, m, p, M, K};
  return IdealHandle(spec, gens);
}

FittingGenerators FittingGenerators::at_one() const {
  FittingGenerators r = *this;
  r.gens.clear();
  for (auto& g : gens) {
    WElem v = g.eval_at_one();
    if (!v.is_zero()) r.gens.push_back(GammaPoly::constant(v, m, g.q()));
  }
  r.tag = tag + "@1";
  return r;
}

FittingGenerators expand_factors(const GammaPoly& theta, const GammaPoly& base_divisor,
                                 const std::vector<TwoGenFactor>& factors, const std::string& tag, std::int64_t p) {
  if (factors.size() > 12) throw GuardrailError("too many two-generator factors");
  FittingGenerators out;
  out.tag = tag;
  out.group = theta.group();
  out.m = theta.m();
  out.p = p;
  for (auto& f : factors)
    if (f.num.m() != 1) out.m = std::max(out.m, f.num.m());
  const std::uint32_t n = 1u << factors.size();
  for (std::uint32_t mask = 0; mask < n; ++mask) {
    GammaPoly num = theta, den = base_divisor;
    std::string labels;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      num = num * factors[i].num;
      den = den * factors[i].den;
      labels += (labels.empty() ? "" : ",") + factors[i].label;
    }
    const std::string what = labels.empty() ? "theta" : "theta * n(" + labels + ")";
    GammaPoly g = num;
    if (den.degree() > 0 || !(den.coeff(0) == WElem::one(den.group()).scale(Cyclo::rational(den.m(), 1)))) {
      g = num.divide_exact(den, tag + " [" + what + "]");
      out.audit.push_back({what, den.to_string(), poly_p_integral(g, p), "exact polynomial division"});
    }
    if (!poly_p_integral(g, p)) {
      out.p_integral = false;
      out.diagnostics.push_back(tag + ": generator " + what + " is not p-integral");
    }
    if (!g.is_zero()) out.gens.push_back(g);
  }
  return out;
}

FittingGenerators fitting_tate_dual_totram(const CoverDescription& c, const RationalTheta& th) {
  const SPlace& v1 = c.S[c.v1_index()];
  if (c.inertia(v1).size() != c.Gamma->order())
    throw ValidationError("the totally ramified formula needs I_v1 = Gal(K/F); '" + v1.label + "' has smaller inertia");
  require_stable(th.stab, "totally ramified formula");
  const std::int64_t q = c.q();
  const GroupPtr& G = c.Gamma;
  std::vector<TwoGenFactor> fs;
  GammaPoly one_minus_g = GammaPoly::one_minus(G, 1, q, 1);
  fs.push_back({v1.label, one_minus_g.scale(norm_of(G, all_of(*G), 1)), GammaPoly::one_minus(G, 1, q, v1.degree)});
  for (auto& v : c.S) {
    if (&v == &v1) continue;
    fs.push_back({v.label, const_poly(norm_of(G, c.inertia(v), 1), 1, q),
                  GammaPoly::one_minus(G, 1, q, v.degree, G->neg(c.frob(v)))});
  }
  GammaPoly one = const_poly(WElem::one(G), 1, q);
  auto out = expand_factors(th.theta, one, fs, "totally-ramified", c.p);
  return out;
}

WElem corestrict(const WElem& x, const GroupPtr& big, const std::vector<std::uint32_t>& image) {
  WElem r(big);
  for (std::uint32_t s = 0; s < big->order(); ++s) {
    auto v = x.coeff(image.at(s));
    if (!v.is_zero()) r.add_term(s, v);
  }
  return r;
}

GammaPoly corestrict(const GammaPoly& x, const GroupPtr& big, const std::vector<std::uint32_t>& image) {
  std::vector<WElem> num;
  for (auto& c : x.num()) num.push_back(corestrict(c, big, image));
  return GammaPoly::from_coeffs(big, x.m(), x.q(), std::move(num), x.denom_power());
}

std::int64_t g_T(const CoverDescription& c, const std::vector<std::string>& T) {
  std::int64_t prod = 1;
  std::vector<std::uint32_t> gens;
  for (auto& lab : T) {
    const SPlace& v = place_by_label(c, lab);
    prod *= static_cast<std::int64_t>(c.inertia(v).size());
    for (auto x : c.inertia_generators(v)) gens.push_back(x);
  }
  const auto joint = static_cast<std::int64_t>(c.Gamma->subgroup(gens).size());
  if (prod % joint) throw TheoremViolation("g_T is not an integer");
  return prod / joint;
}

SubsetForm fitting_subset_form(const CoverDescription& c, int D, int workers) {
  const SPlace& v1 = c.S[c.v1_index()];
  std::vector<std::string> rest;
  for (auto& v : c.S)
    if (&v != &v1) rest.push_back(v.label);
  if (rest.size() > 10) throw GuardrailError("too many places in S");
  SubsetForm out;
  out.fitt.tag = "subset-corestriction";
  out.fitt.group = c.Gamma;
  out.fitt.m = 1;
  out.fitt.p = c.p;
  for (std::uint32_t mask = 0; mask < (1u << rest.size()); ++mask) {
    SubsetGenerator sg;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (mask >> i & 1) sg.W.push_back(rest[i]);
    CoverQuotient cq = cover_quotient(c, sg.W);
    RationalTheta rt = rationalize(cq.cover, theta_euler(cq.cover, D, workers));
    std::string wl = "{";
    for (auto& w : sg.W) wl += (wl.size() > 1 ? "," : "") + w;
    wl += "}";
    if (!rt.stab.verified)
      throw ValidationError("subset W = " + wl + ": quotient Stickelberger series not stabilized by degree " +
                            std::to_string(D) + "; raise --degree");
    sg.D0 = rt.stab.D0;
    sg.g_W = g_T(c, sg.W);
    GammaPoly cor = corestrict(rt.theta, c.Gamma, cq.gamma_image);
    sg.value = cor.eval_at_one().scale(Cyclo(static_cast<long>(sg.g_W)));
    out.corestricted.push_back(cor);
    out.fitt.audit.push_back({"g_W cor(theta_{K^W,S-W}(1)) for W = " + wl, "(1-q)^" + std::to_string(rt.theta.denom_power()),
                              true, "1-q is prime to p"});
    if (!sg.value.is_zero()) out.fitt.gens.push_back(GammaPoly::constant(sg.value, 1, c.q()));
    for (auto& [k, v] : sg.value.terms())
      if (!v.is_p_integral(c.p)) out.fitt.p_integral = false;
    out.parts.push_back(std::move(sg));
  }
  return out;
}

bool euler_relation_holds(const CoverDescription& c, const RationalTheta& th, const std::vector<std::string>& T,
                          const GammaPoly& corestricted) {
  GammaPoly lhs = th.theta;
  GammaPoly rhs = corestricted.scale(Cyclo(static_cast<long>(g_T(c, T))));
  for (auto& lab : T) {
    const SPlace& v = place_by_label(c, lab);
    lhs = lhs.scale(norm_of(c.Gamma, c.inertia(v), 1));
    rhs = rhs * GammaPoly::one_minus(c.Gamma, 1, c.q(), v.degree, c.Gamma->neg(c.frob(v)));
  }
  return lhs == rhs;
}

FittingGenerators fitting_chi_tate_dual(const CoverDescription& c, const ChiTheta& ct) {
  require_stable(ct.stab, ct.data.chi.descriptor() + " part");
  const CharacterData& d = ct.data;
  const Character& chi = d.chi;
  const int m = chi.m;
  const std::int64_t q = c.q();
  const SPlace& v1 = c.S[c.v1_index()];
  GammaPoly base = const_poly(WElem::one(c.G).scale(Cyclo::rational(m, 1)), m, q);
  std::vector<TwoGenFactor> fs;
  std::string tag;
  if (!chi.is_trivial()) {
    tag = "chi-part " + chi.descriptor();
    for (auto& v : c.S) {
      if (!contains_label(d.S_chi, v.label)) continue;
      if (contains_label(d.S1_chi, v.label)) base = base * e_v_chi(c, chi, v);
      else fs.push_back({v.label, const_poly(norm_of(c.G, g_inertia(c, v), m), m, q), e_v_chi(c, chi, v)});
    }
  } else {
    tag = "chi_0 part";
    fs.push_back({v1.label, GammaPoly::one_minus(c.G, m, q, 1).scale(norm_of(c.G, all_of(*c.G), m)),
                  GammaPoly::one_minus(c.G, m, q, v1.degree)});
    for (auto& v : c.S) {
      if (&v == &v1) continue;
      if (contains_label(d.S1_chi, v.label)) base = base * e_v_chi(c, chi, v);
      else fs.push_back({v.label, const_poly(norm_of(c.G, g_inertia(c, v), m), m, q), e_v_chi(c, chi, v)});
    }
  }
  auto out = expand_factors(ct.theta, base, fs, tag, c.p);
  out.chi = chi.descriptor();
  out.m = m;
  out.group = c.G;
  out.trivial_zero_order = ct.theta.vanishing_order_at_one();
  return out;
}

std::string class_dual_case(const CharacterData& d) {
  switch (d.type) {
    case CharType::Type1: return "type1";
    case CharType::Type2: return "type2";
    default: break;
  }
  if (d.chi.is_trivial()) return "type3-trivial";
  return d.frob_p_trivial ? "type3-double-zero" : "type3-frob-nontrivial";
}

FittingGenerators fitting_class_dual(const CoverDescription& c, const ChiTheta& ct) {
  require_stable(ct.stab, ct.data.chi.descriptor() + " class dual");
  const std::size_t iv1 = c.v1_index(), iinf = c.infinity_index();
  const SPlace& v1 = c.S[iv1];
  const SPlace& inf = c.S[iinf];
  if (c.S.size() != 2) throw ValidationError("class-dual formula needs S = {p, inf}");
  for (auto& e : inf.inertia_G)
    if (c.G->index(e) != 0) throw ValidationError("class-dual formula needs I_inf inside H");
  if (c.frob(inf) != 0) throw ValidationError("class-dual formula needs Fr_inf = 1");
  if (c.G->index(v1.frob_G) != 0) throw ValidationError("class-dual formula needs Fr_{p,G} = 1");

  const CharacterData& d = ct.data;
  const int m = d.chi.m;
  const std::int64_t q = c.q(), p = c.p;
  FittingGenerators out;
  out.tag = class_dual_case(d);
  out.chi = d.chi.descriptor();
  out.group = c.G;
  out.m = m;
  out.p = p;
  const GammaPoly& th = ct.theta;
  const int k = th.vanishing_order_at_one();
  out.trivial_zero_order = k;
  const WElem nG = norm_of(c.G, all_of(*c.G), m);
  const GammaPoly lin = GammaPoly::one_minus(c.G, m, q, 1);

  auto divided = [&](int r, const std::string& name) {
    if (k < r)
      throw TheoremViolation(name + ": Theta_chi(g) vanishes to order " + std::to_string(k) + " at g = 1, expected at least " +
                             std::to_string(r));
    GammaPoly x = th;
    for (int i = 0; i < r; ++i) x = x.divide_exact(lin, name);
    if (r > 0) out.audit.push_back({"theta / (1-g)^" + std::to_string(r), lin.to_string(), poly_p_integral(x, p), "exact"});
    return x.eval_at_one();
  };
  // eps(x) n(G) / d, with the p | d situation surfaced rather than guessed
  auto norm_over_d = [&](const WElem& x, const std::string& name) {
    const Cyclo eps = x.augmentation();
    const long dd = v1.degree;
    Cyclo quot = eps * Cyclo::rational(m, mpq_class(1, dd));
    AuditEntry a{name + ": eps(x) n(G) / d_p", std::to_string(dd), quot.is_p_integral(p), ""};
    if (dd % p != 0) {
      a.note = "d_p prime to p";
    } else if (a.p_integral) {
      a.note = "p divides d_p but eps(x)/d_p is p-integral";
    } else {
      a.note = "p divides d_p and eps(x)/d_p is not p-integral; generator left undivided";
      out.fractional = true;
      out.diagnostics.push_back(name + ": n(G_n)/d_p with p | d_p; emitted eps(x) n(G_n) with a fractional marker");
      quot = eps;
    }
    out.audit.push_back(a);
    return nG.scale(quot);
  };

  std::vector<WElem> gens;
  if (out.tag == "type1") {
    gens.push_back(th.eval_at_one());
  } else if (out.tag == "type2") {
    gens.push_back(divided(1, "type-2"));
  } else if (out.tag == "type3-frob-nontrivial") {
    WElem a = divided(1, "type-3 chi(Fr_p) != 1");
    Cyclo s = Cyclo::rational(m, 1) - Cyclo::zeta(m, (m - d.frob_p_exp % m) % m);
    Cyclo inv = s.inverse();
    out.audit.push_back({"a n(G) / (1 - chi(Fr_p)^{-1})", s.to_string(), inv.is_p_integral(p), "root-of-unity difference"});
    if (!inv.is_p_integral(p)) {
      out.p_integral = false;
      out.diagnostics.push_back("type-3: 1/(1 - chi(Fr_p)^{-1}) is not p-integral");
    }
    gens.push_back(a);
    gens.push_back((a * nG).scale(inv));
  } else if (out.tag == "type3-double-zero") {
    WElem b = divided(2, "type-3 double zero");
    gens.push_back(norm_over_d(b, "type-3 double zero"));
  } else {
    WElem a = divided(1, "chi_0");
    gens.push_back(a);
    gens.push_back(norm_over_d(a, "chi_0"));
  }
  for (auto& g : gens) {
    for (auto& [i, v] : g.terms())
      if (!v.is_p_integral(p) && !out.fractional) {
        out.p_integral = false;
        out.diagnostics.push_back(out.tag + ": generator is not p-integral");
        break;
      }
    if (!g.is_zero()) out.gens.push_back(GammaPoly::constant(g, m, q));
  }
  return out;
}

namespace {

GammaPoly determinant(const std::vector<std::vector<GammaPoly>>& a, const GammaPoly& zero) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  GammaPoly det = zero;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<GammaPoly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<GammaPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    GammaPoly term = a[0][j] * determinant(minor, zero);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace

IdealHandle generic_fitting(const PresentedModule& pm) {
  const int r = pm.generators;
  if (r < 1) throw ValidationError("a presented module needs at least one generator");
  if (r > 6) throw GuardrailError("generic Fitting ideal limited to 6 generators");
  if (pm.relations.size() > 16) throw GuardrailError("generic Fitting ideal limited to 16 relations");
  for (auto& row : pm.relations)
    if (static_cast<int>(row.size()) != r) throw ValidationError("relation row length differs from the generator count");
  std::vector<GammaPoly> minors;
  const std::size_t n = pm.relations.size();
  if (static_cast<int>(n) >= r) {
    GammaPoly zero(pm.spec.group, pm.spec.m, 0);
    std::vector<std::size_t> pick(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) pick[i] = static_cast<std::size_t>(i);
    for (;;) {
      std::vector<std::vector<GammaPoly>> sub;
      for (auto i : pick) sub.push_back(pm.relations[i]);
      GammaPoly det = determinant(sub, zero);
      if (!det.is_zero()) minors.push_back(det);
      int i = r - 1;
      while (i >= 0 && pick[i] == n - static_cast<std::size_t>(r - i)) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return IdealHandle(pm.spec, minors);
}

std::vector<std::uint32_t> g_projection(const CoverDescription& hi, const CoverDescription& lo,
                                        const std::vector<std::uint32_t>& gamma_map) {
  if (gamma_map.size() != hi.Gamma->order()) throw ValidationError("level map has the wrong size");
  if (hi.H->order() != lo.H->order()) throw ValidationError("levels have different H");
  const Elem h0(hi.H->rank(), 0);
  for (std::uint32_t h = 0; h < hi.H->order(); ++h) {
    std::uint32_t x = gamma_map[hi.gamma_index(hi.H->element(h), Elem(hi.G->rank(), 0))];
    if (lo.g_part(x) != 0 || lo.h_part(x) != h) throw ValidationError("level map does not preserve the H factor");
  }
  std::vector<std::uint32_t> out(hi.G->order());
  for (std::uint32_t g = 0; g < hi.G->order(); ++g) {
    std::uint32_t x = gamma_map[hi.gamma_index(h0, hi.G->element(g))];
    if (lo.h_part(x) != 0) throw ValidationError("level map sends G into H");
    out[g] = lo.g_part(x);
  }
  return out;
}

ProFittingReport pro_fitting_report(const std::vector<ProFittingLevel>& levels, int M) {
  ProFittingReport rep;
  if (levels.empty()) return rep;
  rep.chi = levels.front().fitt.chi;
  rep.case_tag = levels.front().fitt.tag;
  rep.limit_is_zero = rep.case_tag == "type3-double-zero";
  for (auto& l : levels) rep.colengths.push_back(l.fitt.ideal(M).colength());
  for (std::size_t i = 1; i < levels.size(); ++i) {
    const auto& hi = levels[i];
    const auto& lo = levels[i - 1];
    ProFittingStep st;
    st.level = static_cast<int>(i);
    auto gmap = g_projection(hi.cover, lo.cover, hi.gamma_to_prev);
    std::vector<GammaPoly> mapped;
    for (auto& g : hi.fitt.gens) mapped.push_back(g.map_group(lo.cover.G, gmap));
    RingSpec spec{lo.cover.G, lo.fitt.m, lo.fitt.p, M, 1};
    IdealHandle proj(spec, mapped), low = lo.fitt.ideal(M);
    st.contained = proj.is_subset_of(low);
    st.equal = proj == low;
    st.equality_expected = rep.case_tag == "type1" || rep.case_tag == "type2";
    st.norm_factor = static_cast<std::int64_t>(hi.cover.G->order() / lo.cover.G->order());
    WElem nh = WElem::norm(hi.cover.G, all_of(*hi.cover.G)).scale(Cyclo(1L));
    WElem nl = WElem::norm(lo.cover.G, all_of(*lo.cover.G)).scale(Cyclo(static_cast<long>(st.norm_factor)));
    st.norm_projection_ok = nh.map_group(lo.cover.G, gmap) == nl;
    if (!st.contained || (st.equality_expected && !st.equal) || !st.norm_projection_ok) rep.ok = false;
    rep.steps.push_back(st);
  }
  return rep;
}

}  // namespace sticklab
