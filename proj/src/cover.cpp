#include "sticklab/cover.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "sticklab/cache.hpp"
#include "sticklab/finite_field.hpp"

namespace sticklab {

using nlohmann::json;

namespace {

bool is_power_of(std::uint64_t n, std::uint64_t p) {
  while (n > 1) {
    if (n % p) return false;
    n /= p;
  }
  return true;
}

void check_elem(const AbelianGroup& g, const Elem& e, const std::string& what) {
  if (e.size() != g.rank())
    throw ValidationError(what + " has " + std::to_string(e.size()) + " coordinates, expected " + std::to_string(g.rank()));
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 || e[i] >= g.orders()[i])
      throw ValidationError(what + ": coordinate " + std::to_string(e[i]) + " outside 0.." + std::to_string(g.orders()[i] - 1));
}

Elem elem_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array of integers");
  Elem e;
  for (auto& x : j) {
    if (!x.is_number_integer()) throw ValidationError(what + " must be an array of integers");
    e.push_back(x.get<std::int64_t>());
  }
  return e;
}

std::vector<Elem> elems_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array");
  std::vector<Elem> out;
  for (auto& x : j) out.push_back(elem_from_json(x, what));
  return out;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ValidationError(std::string("cover JSON is missing '") + name + "'");
  return j.at(name);
}

template <class T>
T get_as(const json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("cover JSON field '") + name + "' has the wrong type");
  }
}

}  // namespace

CoverDescription CoverDescription::make(std::uint32_t p, std::uint32_t r, AbelianGroup H, AbelianGroup G) {
  CoverDescription c;
  c.p = p;
  c.r = r;
  c.H = std::make_shared<AbelianGroup>(std::move(H));
  c.G = std::make_shared<AbelianGroup>(std::move(G));
  c.Gamma = std::make_shared<AbelianGroup>(AbelianGroup::product(*c.H, *c.G));
  return c;
}

std::int64_t CoverDescription::q() const { return ipow(p, static_cast<int>(r)); }

std::uint32_t CoverDescription::gamma_index(const Elem& h, const Elem& g) const {
  return H->index(h) + H->order() * G->index(g);
}

std::vector<std::uint32_t> CoverDescription::inertia_generators(const SPlace& v) const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < v.inertia_H.size(); ++i) out.push_back(gamma_index(v.inertia_H[i], v.inertia_G[i]));
  return out;
}

std::vector<std::uint32_t> CoverDescription::inertia(const SPlace& v) const {
  return Gamma->subgroup(inertia_generators(v));
}

std::size_t CoverDescription::v1_index() const {
  std::size_t found = S.size();
  for (std::size_t i = 0; i < S.size(); ++i)
    if (S[i].totally_ramified) {
      if (found != S.size()) throw ValidationError("more than one place of S is marked totally ramified");
      found = i;
    }
  if (found == S.size()) throw ValidationError("no place of S is marked totally ramified");
  return found;
}

std::size_t CoverDescription::infinity_index() const {
  for (std::size_t i = 0; i < S.size(); ++i)
    if (S[i].label == "inf" || S[i].label == "infinity") return i;
  if (S.size() == 2) return 1 - v1_index();
  throw ValidationError("cannot identify the place at infinity; label it 'inf'");
}

void CoverDescription::validate() const {
  FiniteField::make(p, r);
  if (!H || !G || !Gamma) throw ValidationError("cover groups are not set");
  if (!is_power_of(G->order(), p))
    throw ValidationError("|G| = " + std::to_string(G->order()) + " is not a power of p = " + std::to_string(p));
  if (H->order() % p == 0)
    throw ValidationError("|H| = " + std::to_string(H->order()) + " is divisible by p = " + std::to_string(p));
  if (degree_bound < 1) throw ValidationError("degree_bound must be positive");
  for (auto& e : gal_F1_over_HA) check_elem(*H, e, "gal_F1_over_HA generator");
  if (S.empty()) throw ValidationError("S is empty");
  std::set<std::string> labels;
  for (auto& v : S) {
    if (!labels.insert(v.label).second) throw ValidationError("duplicate label '" + v.label + "' in S");
    if (v.degree < 1) throw ValidationError("place '" + v.label + "' has non-positive degree");
    if (v.inertia_H.size() != v.inertia_G.size())
      throw ValidationError("place '" + v.label + "': inertia_H and inertia_G must pair up");
    for (auto& e : v.inertia_H) check_elem(*H, e, "inertia_H of " + v.label);
    for (auto& e : v.inertia_G) check_elem(*G, e, "inertia_G of " + v.label);
    check_elem(*H, v.frob_H, "frob_H of " + v.label);
    check_elem(*G, v.frob_G, "frob_G of " + v.label);
  }
  const SPlace& v1 = S[v1_index()];
  std::vector<std::uint32_t> gg;
  for (auto& e : v1.inertia_G) gg.push_back(G->index(e));
  if (G->subgroup(gg).size() != G->order())
    throw ValidationError("place '" + v1.label + "' is marked totally ramified but its inertia does not cover G");
  infinity_index();
  for (auto& w : places) {
    if (w.degree < 1 || w.degree > degree_bound)
      throw ValidationError("place of degree " + std::to_string(w.degree) + " outside 1.." + std::to_string(degree_bound));
    check_elem(*H, w.frob_H, "place frob_H");
    check_elem(*G, w.frob_G, "place frob_G");
  }
  if (stabilization_degree && *stabilization_degree < 0) throw ValidationError("stabilization_degree must be >= 0");
}

bool CoverDescription::operator==(const CoverDescription& o) const { return cover_to_json(*this) == cover_to_json(o); }

json cover_to_json(const CoverDescription& c) {
  json j;
  j["field"] = {{"p", c.p}, {"r", c.r}};
  j["H"] = {{"invariants", c.H->orders()}};
  j["G"] = {{"invariants", c.G->orders()}};
  j["gal_F1_over_HA"] = {{"generators", c.gal_F1_over_HA}};
  json s = json::array();
  for (auto& v : c.S)
    s.push_back({{"label", v.label},
                 {"degree", v.degree},
                 {"inertia_H", v.inertia_H},
                 {"inertia_G", v.inertia_G},
                 {"frob_H", v.frob_H},
                 {"frob_G", v.frob_G},
                 {"totally_ramified", v.totally_ramified}});
  j["S"] = s;
  j["degree_bound"] = c.degree_bound;
  json pl = json::array();
  for (auto& w : c.places) {
    json e{{"degree", w.degree}, {"frob_H", w.frob_H}, {"frob_G", w.frob_G}};
    if (!w.label.empty()) e["label"] = w.label;
    pl.push_back(e);
  }
  j["places"] = pl;
  if (c.stabilization_degree) j["stabilization_degree"] = *c.stabilization_degree;
  if (!c.provider.is_null()) j["provider"] = c.provider;
  return j;
}

CoverDescription cover_from_json(const json& j) {
  const json& f = field(j, "field");
  auto p = get_as<std::uint32_t>(f, "p");
  auto r = get_as<std::uint32_t>(f, "r");
  auto hinv = get_as<std::vector<std::int64_t>>(field(j, "H"), "invariants");
  auto ginv = get_as<std::vector<std::int64_t>>(field(j, "G"), "invariants");
  CoverDescription c = CoverDescription::make(p, r, AbelianGroup(hinv), AbelianGroup(ginv));
  c.gal_F1_over_HA = elems_from_json(field(field(j, "gal_F1_over_HA"), "generators"), "gal_F1_over_HA");
  for (auto& v : field(j, "S")) {
    SPlace s;
    s.label = get_as<std::string>(v, "label");
    s.degree = get_as<int>(v, "degree");
    s.inertia_H = elems_from_json(field(v, "inertia_H"), "inertia_H");
    s.inertia_G = elems_from_json(field(v, "inertia_G"), "inertia_G");
    s.frob_H = elem_from_json(field(v, "frob_H"), "frob_H");
    s.frob_G = elem_from_json(field(v, "frob_G"), "frob_G");
    s.totally_ramified = get_as<bool>(v, "totally_ramified");
    c.S.push_back(std::move(s));
  }
  c.degree_bound = get_as<int>(j, "degree_bound");
  for (auto& w : field(j, "places")) {
    PlaceRecord pr;
    pr.degree = get_as<int>(w, "degree");
    pr.frob_H = elem_from_json(field(w, "frob_H"), "frob_H");
    pr.frob_G = elem_from_json(field(w, "frob_G"), "frob_G");
    if (w.contains("label")) pr.label = w.at("label").get<std::string>();
    c.places.push_back(std::move(pr));
  }
  if (j.contains("stabilization_degree")) c.stabilization_degree = get_as<int>(j, "stabilization_degree");
  if (j.contains("provider")) c.provider = j.at("provider");
  c.validate();
  return c;
}

CoverDescription load_cover(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open cover file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("cover file " + path + " is not valid JSON: " + e.what());
  }
  return cover_from_json(j);
}

void save_cover(const CoverDescription& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write cover file " + path);
  out << cover_to_json(c).dump(1) << "\n";
}

std::string cover_hash(const CoverDescription& c) { return sha256_hex(cover_to_json(c).dump()); }

bool Character::is_trivial() const {
  return std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t Character::value_exp(const AbelianGroup& H, std::uint32_t h) const {
  Elem e = H.element(h);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s = (s + (c[i] * e[i] % m) * (m / H.orders()[i])) % m;
  return s;
}

std::string Character::descriptor() const {
  std::ostringstream os;
  os << "chi[";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

Character character_from_exponents(const AbelianGroup& H, const Elem& c) {
  Character chi;
  chi.m = static_cast<int>(H.exponent());
  chi.c = H.reduce(c);
  return chi;
}

std::vector<Character> all_characters(const AbelianGroup& H) {
  std::vector<Character> out;
  for (std::uint32_t i = 0; i < H.order(); ++i) out.push_back(character_from_exponents(H, H.element(i)));
  return out;
}

namespace {

bool trivial_on(const CoverDescription& c, const Character& chi, const std::vector<Elem>& hs) {
  for (auto& h : hs)
    if (chi.value_exp(*c.H, c.H->index(h)) != 0) return false;
  return true;
}

}  // namespace

CharType classify(const CoverDescription& c, const Character& chi) {
  const SPlace& inf = c.S[c.infinity_index()];
  if (!trivial_on(c, chi, inf.inertia_H)) return CharType::Type1;
  if (!trivial_on(c, chi, c.gal_F1_over_HA)) return CharType::Type2;
  return CharType::Type3;
}

std::string type_name(CharType t) {
  switch (t) {
    case CharType::Type1: return "type1";
    case CharType::Type2: return "type2";
    default: return "type3";
  }
}

CharacterData character_data(const CoverDescription& c, const Character& chi) {
  CharacterData d;
  d.chi = chi;
  d.type = classify(c, chi);
  const SPlace& v1 = c.S[c.v1_index()];
  d.frob_p_exp = chi.value_exp(*c.H, c.H->index(v1.frob_H));
  d.frob_p_trivial = d.frob_p_exp == 0;
  for (auto& v : c.S) {
    if (!trivial_on(c, chi, v.inertia_H)) continue;
    d.S_chi.push_back(v.label);
    bool g_trivial = std::all_of(v.inertia_G.begin(), v.inertia_G.end(),
                                 [&](const Elem& e) { return c.G->index(e) == 0; });
    if (g_trivial) d.S1_chi.push_back(v.label);
  }
  return d;
}

WElem apply_character_H(const CoverDescription& c, const Character& chi, const ZElem& x) {
  WElem r(c.G);
  for (auto& [idx, v] : x.terms()) {
    std::int64_t e = chi.value_exp(*c.H, c.h_part(idx));
    r.add_term(c.g_part(idx), Cyclo::zeta(chi.m, e) * Cyclo(static_cast<long>(v)));
  }
  return r;
}

WElem apply_character_H(const CoverDescription& c, const Character& chi, const WElem& x) {
  WElem r(c.G);
  for (auto& [idx, v] : x.terms()) {
    std::int64_t e = chi.value_exp(*c.H, c.h_part(idx));
    r.add_term(c.g_part(idx), Cyclo::zeta(chi.m, e) * v);
  }
  return r;
}

WElem idempotent(const CoverDescription& c, const Character& chi) {
  WElem r(c.Gamma);
  const mpq_class inv(1, static_cast<long>(c.H->order()));
  for (std::uint32_t h = 0; h < c.H->order(); ++h) {
    std::int64_t e = chi.value_exp(*c.H, h);
    r.add_term(h, Cyclo::zeta(chi.m, (chi.m - e) % chi.m) * Cyclo::rational(chi.m, inv));
  }
  return r;
}

WElem lift_from_G(const CoverDescription& c, const WElem& x) {
  WElem r(c.Gamma);
  for (auto& [g, v] : x.terms()) r.add_term(c.H->order() * g, v);
  return r;
}

CoverQuotient cover_quotient(const CoverDescription& c, const std::vector<std::string>& W) {
  std::vector<std::uint32_t> hg, gg;
  std::vector<const SPlace*> removed;
  for (auto& lab : W) {
    auto it = std::find_if(c.S.begin(), c.S.end(), [&](const SPlace& v) { return v.label == lab; });
    if (it == c.S.end()) throw ValidationError("no place '" + lab + "' in S");
    if (it->totally_ramified) throw ValidationError("the totally ramified place cannot be removed from S");
    removed.push_back(&*it);
    for (auto& e : it->inertia_H) hg.push_back(c.H->index(e));
    for (auto& e : it->inertia_G) gg.push_back(c.G->index(e));
  }
  QuotientMap qh = quotient(*c.H, hg), qg = quotient(*c.G, gg);
  CoverQuotient out;
  CoverDescription& n = out.cover;
  n = CoverDescription::make(c.p, c.r, qh.target, qg.target);
  auto mh = [&](const Elem& e) { return n.H->element(qh.image[c.H->index(e)]); };
  auto mg = [&](const Elem& e) { return n.G->element(qg.image[c.G->index(e)]); };
  for (auto& e : c.gal_F1_over_HA) n.gal_F1_over_HA.push_back(mh(e));
  for (auto& v : c.S) {
    if (std::find(W.begin(), W.end(), v.label) != W.end()) continue;
    SPlace s = v;
    s.inertia_H.clear();
    s.inertia_G.clear();
    for (auto& e : v.inertia_H) s.inertia_H.push_back(mh(e));
    for (auto& e : v.inertia_G) s.inertia_G.push_back(mg(e));
    s.frob_H = mh(v.frob_H);
    s.frob_G = mg(v.frob_G);
    n.S.push_back(std::move(s));
  }
  n.degree_bound = c.degree_bound;
  for (auto& w : c.places) n.places.push_back({w.degree, mh(w.frob_H), mg(w.frob_G), w.label});
  for (auto* v : removed)
    if (v->degree <= c.degree_bound) n.places.push_back({v->degree, mh(v->frob_H), mg(v->frob_G), v->label});
  n.provider = c.provider;
  out.gamma_image.resize(c.Gamma->order());
  for (std::uint32_t x = 0; x < c.Gamma->order(); ++x)
    out.gamma_image[x] = qh.image[c.h_part(x)] + n.H->order() * qg.image[c.g_part(x)];
  return out;
}

}  // namespace sticklab
