#pragma once
// Unramified covers of an elliptic curve E/F_q with group E(F_q) = Pic^0(E).
// The Frobenius of a closed point v is the class of v - deg(v) O, i.e. the sum
// of the geometric points of v. With S = {p, O} every character is of type 3 and
// Theta_chi(u) = (1 - u)(1 - chi(Fr_p)^{-1} u^{deg p}) for chi != 1, by
// Riemann-Roch (each divisor class of degree n >= 1 has (q^n - 1)/(q - 1)
// effective members).
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sticklab/cover.hpp"
#include "sticklab/errors.hpp"
#include "sticklab/fq_poly.hpp"

namespace fixtures {

using sticklab::Fq;
using sticklab::FieldPtr;

// y^2 = x^3 + a2 x^2 + a4 x + a6, p odd
struct Curve {
  Fq a2, a4, a6;
};

struct Pt {
  bool inf = true;
  Fq x = 0, y = 0;
  bool operator==(const Pt& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
};

inline Pt ec_add(const FieldPtr& k, const Curve& e, const Pt& P, const Pt& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  Fq lam;
  if (P.x == Q.x) {
    if (k->add(P.y, Q.y) == 0) return {};
    Fq num = k->add(k->add(k->mul(k->from_int(3), k->mul(P.x, P.x)), k->mul(k->from_int(2), k->mul(e.a2, P.x))), e.a4);
    lam = k->div(num, k->mul(k->from_int(2), P.y));
  } else {
    lam = k->div(k->sub(Q.y, P.y), k->sub(Q.x, P.x));
  }
  Pt R;
  R.inf = false;
  R.x = k->sub(k->sub(k->sub(k->mul(lam, lam), e.a2), P.x), Q.x);
  R.y = k->neg(k->add(P.y, k->mul(lam, k->sub(R.x, P.x))));
  return R;
}

inline Fq rhs(const FieldPtr& k, const Curve& e, Fq x) {
  Fq x2 = k->mul(x, x);
  return k->add(k->add(k->add(k->mul(x2, x), k->mul(e.a2, x2)), k->mul(e.a4, x)), e.a6);
}

// F_{q^n} over F_q, base elements keep their codes
inline FieldPtr layer(const FieldPtr& f, int n) {
  if (n == 1) return f;
  auto m = sticklab::first_monic_irreducible(f, n);
  return sticklab::FiniteField::extension(f, m.coeffs());
}

struct ClosedPoint {
  int degree = 1;
  Pt trace;       // sum of the geometric points, a point of E(F_q)
  Pt rep;         // one geometric point, in F_{q^degree}
};

inline std::vector<ClosedPoint> closed_points(const FieldPtr& f, const Curve& e, int D) {
  std::vector<ClosedPoint> out;
  const std::int64_t q = f->size();
  for (int n = 1; n <= D; ++n) {
    FieldPtr k = layer(f, n);
    std::vector<std::vector<Fq>> roots(k->size());
    for (Fq z = 0; z < k->size(); ++z) roots[k->mul(z, z)].push_back(z);
    std::set<std::pair<Fq, Fq>> seen;
    for (Fq x = 0; x < k->size(); ++x)
      for (Fq y : roots[rhs(k, e, x)]) {
        if (seen.count({x, y})) continue;
        // Frobenius orbit
        std::vector<Pt> orbit;
        Pt P{false, x, y};
        Pt cur = P;
        do {
          orbit.push_back(cur);
          seen.insert({cur.x, cur.y});
          cur = Pt{false, k->pow(cur.x, q), k->pow(cur.y, q)};
        } while (!(cur == P));
        if (static_cast<int>(orbit.size()) != n) continue;
        Pt s;
        for (auto& o : orbit) s = ec_add(k, e, s, o);
        if (!s.inf && (s.x >= f->size() || s.y >= f->size()))
          throw sticklab::TheoremViolation("trace of a closed point is not rational");
        out.push_back({n, s, P});
      }
  }
  return out;
}

// E(F_q) = Z/n1 x Z/n2 with explicit generators
struct RationalGroup {
  sticklab::AbelianGroup group;
  std::vector<Pt> points;                  // group index -> point
  std::map<std::pair<bool, std::pair<Fq, Fq>>, std::uint32_t> index;
};

inline std::pair<bool, std::pair<Fq, Fq>> key(const Pt& P) {
  return {P.inf, P.inf ? std::pair<Fq, Fq>{0, 0} : std::pair<Fq, Fq>{P.x, P.y}};
}

inline RationalGroup rational_group(const FieldPtr& f, const Curve& e) {
  std::vector<Pt> pts{Pt{}};
  for (Fq x = 0; x < f->size(); ++x)
    for (Fq y = 0; y < f->size(); ++y)
      if (f->mul(y, y) == rhs(f, e, x)) pts.push_back({false, x, y});
  const std::int64_t N = static_cast<std::int64_t>(pts.size());
  auto multiples = [&](const Pt& P) {
    std::vector<Pt> m{Pt{}};
    Pt c = P;
    while (!c.inf) {
      m.push_back(c);
      c = ec_add(f, e, c, P);
    }
    return m;
  };
  Pt gen1;
  std::vector<Pt> m1{Pt{}};
  for (auto& P : pts) {
    auto m = multiples(P);
    if (m.size() > m1.size()) {
      m1 = m;
      gen1 = P;
    }
  }
  const std::int64_t n1 = static_cast<std::int64_t>(m1.size()), n2 = N / n1;
  std::vector<Pt> m2{Pt{}};
  if (n2 > 1) {
    bool found = false;
    for (auto& P : pts) {
      auto m = multiples(P);
      if (static_cast<std::int64_t>(m.size()) != n2) continue;
      bool meets = false;
      for (std::size_t i = 1; i < m.size() && !meets; ++i)
        for (auto& a : m1)
          if (a == m[i]) meets = true;
      if (!meets) {
        m2 = m;
        found = true;
        break;
      }
    }
    if (!found) throw sticklab::TheoremViolation("no complement found in E(F_q)");
  }
  RationalGroup g{n2 > 1 ? sticklab::AbelianGroup({n1, n2}) : sticklab::AbelianGroup({n1}), {}, {}};
  g.points.resize(static_cast<std::size_t>(N));
  for (std::int64_t b = 0; b < n2; ++b)
    for (std::int64_t a = 0; a < n1; ++a) {
      Pt P = ec_add(f, e, m1[static_cast<std::size_t>(a)], m2[static_cast<std::size_t>(b)]);
      std::uint32_t idx = static_cast<std::uint32_t>(a + n1 * b);
      g.points[idx] = P;
      g.index[key(P)] = idx;
    }
  if (g.index.size() != static_cast<std::size_t>(N)) throw sticklab::TheoremViolation("E(F_q) decomposition is not bijective");
  return g;
}

struct EllipticCover {
  sticklab::CoverDescription cover;
  RationalGroup E;
  std::uint32_t frob_p = 0;
};

// p is the `pick`-th closed point of degree d (in enumeration order) whose class is nontrivial
inline EllipticCover elliptic_cover(std::uint32_t q, const Curve& e, int d, int pick, int D) {
  auto f = sticklab::FiniteField::make(q);
  EllipticCover out;
  out.E = rational_group(f, e);
  auto pts = closed_points(f, e, D);
  auto c = sticklab::CoverDescription::make(f->characteristic(), 1, out.E.group, sticklab::AbelianGroup());
  c.degree_bound = D;
  std::optional<std::size_t> chosen;
  int seen = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i].degree == d && out.E.index.at(key(pts[i].trace)) != 0 && seen++ == pick) chosen = i;
  if (!chosen) throw sticklab::ValidationError("no closed point of the requested degree");
  out.frob_p = out.E.index.at(key(pts[*chosen].trace));
  auto elem = [&](std::uint32_t i) { return c.H->element(i); };
  sticklab::SPlace pv{"p", d, {}, {}, elem(out.frob_p), {}, true};
  sticklab::SPlace inf{"inf", 1, {}, {}, elem(0), {}, false};
  c.S = {pv, inf};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i == *chosen) continue;
    const auto& P = pts[i];
    std::string label = "deg" + std::to_string(P.degree) + ":" + std::to_string(P.rep.x) + "," + std::to_string(P.rep.y);
    c.places.push_back({P.degree, elem(out.E.index.at(key(P.trace))), {}, label});
  }
  c.provider = {{"kind", "elliptic"},
                {"q", q},
                {"curve", {e.a2, e.a4, e.a6}},
                {"p_degree", d},
                {"p_point", {pts[*chosen].rep.x, pts[*chosen].rep.y}}};
  c.validate();
  out.cover = std::move(c);
  return out;
}

}  // namespace fixtures
