#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <unistd.h>

#include "CLI11.hpp"
#include "acceptance/criteria.hpp"
#include "sticklab/cache.hpp"
#include "sticklab/carlitz_oracle.hpp"
#include "sticklab/errors.hpp"
#include "sticklab/fitting.hpp"
#include "sticklab/goss_zeta.hpp"

using namespace sticklab;
using nlohmann::json;

namespace {

struct JobConfig {
  std::string command;
  std::uint32_t q = 0;
  std::string prime;
  int level = 1;
  int degree = -1;  // -1: command default
  int M = 6;
  std::int64_t P = 12;
  std::string cover_file;
  std::string out;
  int workers = 1;
  std::string cache_dir;
  bool no_cache = false;
  bool quick = false;
  std::int64_t y = 1;
  int y_mod = 0;  // > 0: y is a residue mod p^y_mod
  std::string x = "t";
  int j_max = 6;
};

// bound on q^D for anything that walks all monics of degree <= D
constexpr std::uint64_t kMaxMonics = std::uint64_t(1) << 24;

FieldPtr field_for(std::uint32_t q) {
  if (q < 2) throw ValidationError("--q must be a prime power >= 2");
  std::uint32_t p = 0;
  for (std::uint32_t c = 2; c <= q; ++c)
    if (q % c == 0) {
      p = c;
      break;
    }
  std::uint32_t r = 0, x = q;
  while (x % p == 0) {
    x /= p;
    ++r;
  }
  if (x != 1) throw ValidationError("--q " + std::to_string(q) + " is not a prime power");
  return FiniteField::make(p, r);
}

void guard_degree(std::uint32_t q, int D) {
  std::uint64_t n = 1;
  for (int i = 0; i < D; ++i) {
    n *= q;
    if (n > kMaxMonics)
      throw GuardrailError("q^D = " + std::to_string(q) + "^" + std::to_string(D) + " exceeds 2^24 monics");
  }
}

FqPoly parse_prime(const FieldPtr& f, const std::string& text) {
  FqPoly p = [&] {
    try {
      return FqPoly::parse(f, text);
    } catch (const std::exception& e) {
      throw ValidationError(std::string(e.what()) +
                            "; expected terms like t^2+t+1 or 1+2*t^3 with coefficients in F_q");
    }
  }();
  if (!p.is_monic() || p.degree() < 1 || !is_irreducible(p))
    throw ValidationError("--prime " + p.to_string() + " is not a monic irreducible of positive degree");
  return p;
}

struct Context {
  std::shared_ptr<CarlitzProvider> prov;  // null for a file cover
  CoverDescription cover;
  int D = 0;
  json input;
};

std::vector<FqPoly> cached_irreducibles(Cache& cache, const FieldPtr& f, int d) {
  json key{{"q", f->size()}, {"degree", d}};
  if (auto hit = cache.get("irreducibles", key)) {
    std::vector<FqPoly> out;
    for (auto& s : *hit) out.push_back(FqPoly::parse(f, s.get<std::string>()));
    return out;
  }
  auto list = enumerate_monic_irreducibles(f, d);
  json payload = json::array();
  for (auto& p : list) payload.push_back(p.to_string());
  cache.put("irreducibles", key, payload);
  return list;
}

Context carlitz_context(const JobConfig& cfg, Cache& cache, int D, int level) {
  if (cfg.q == 0 || cfg.prime.empty()) throw ValidationError("a Carlitz cover needs --q and --prime");
  auto f = field_for(cfg.q);
  guard_degree(cfg.q, D);
  Context c;
  c.prov = std::make_shared<CarlitzProvider>(f, parse_prime(f, cfg.prime), level);
  c.cover = c.prov->describe(D, [&](int d) { return cached_irreducibles(cache, f, d); });
  c.D = D;
  c.input = {{"q", cfg.q}, {"prime", c.prov->prime().to_string()}, {"level", level}, {"degree", D}};
  return c;
}

Context load_context(const JobConfig& cfg, Cache& cache, int default_degree) {
  const bool carlitz = cfg.q != 0 || !cfg.prime.empty();
  if (carlitz == !cfg.cover_file.empty())
    throw ValidationError("give either --q/--prime/--level or --cover-file, not both and not neither");
  int D = cfg.degree >= 0 ? cfg.degree : (cfg.quick ? std::min(4, default_degree) : default_degree);
  if (carlitz) return carlitz_context(cfg, cache, D, cfg.level);
  Context c;
  c.cover = load_cover(cfg.cover_file);
  if (cfg.degree < 0) D = c.cover.degree_bound;
  if (D > c.cover.degree_bound)
    throw ValidationError("--degree " + std::to_string(D) + " exceeds the cover's degree bound " +
                          std::to_string(c.cover.degree_bound));
  c.D = D;
  c.input = {{"cover_file", cfg.cover_file}, {"cover_hash", cover_hash(c.cover)}, {"degree", D}};
  return c;
}

json zelem_json(const ZElem& x) {
  json out = json::array();
  for (auto& [idx, v] : x.terms()) out.push_back({idx, v});
  return out;
}

ThetaSeries zelem_series(const GroupPtr& g, std::int64_t q, int D, const std::string& method, const json& payload) {
  ThetaSeries th{g, q, D, {}, method};
  for (auto& c : payload) {
    ZElem e(g);
    for (auto& t : c) e.add_term(t[0].get<std::uint32_t>(), t[1].get<std::int64_t>());
    th.coeffs.push_back(e);
  }
  return th;
}

// theta by either method, read through the cache; the key pins the cover content
ThetaSeries cached_theta(Cache& cache, const Context& ctx, const std::string& method, int workers) {
  json key{{"cover", cover_hash(ctx.cover)}, {"degree", ctx.D}, {"method", method}};
  if (auto hit = cache.get("theta", key)) return zelem_series(ctx.cover.Gamma, ctx.cover.q(), ctx.D, method, *hit);
  ThetaSeries th = method == "dirichlet" ? theta_dirichlet(*ctx.prov, ctx.D, workers) : theta_euler(ctx.cover, ctx.D, workers);
  json payload = json::array();
  for (auto& c : th.coeffs) payload.push_back(zelem_json(c));
  cache.put("theta", key, payload);
  return th;
}

json group_json(const AbelianGroup& g) { return {{"orders", g.orders()}, {"order", g.order()}}; }

json character_json(const CharacterData& d) {
  return {{"chi", d.chi.descriptor()},        {"type", static_cast<int>(d.type)},
          {"type_name", type_name(d.type)},   {"frob_p_exp", d.frob_p_exp},
          {"frob_p_trivial", d.frob_p_trivial}, {"S_chi", d.S_chi},
          {"S1_chi", d.S1_chi}};
}

json stab_json(const Stabilization& s) {
  return {{"D0", s.D0}, {"declared", s.declared}, {"verified", s.verified}, {"note", s.note}};
}

json fitting_json(const FittingGenerators& f, int M) {
  json gens = json::array(), audit = json::array();
  for (auto& g : f.gens) gens.push_back(g.to_string());
  for (auto& a : f.audit)
    audit.push_back({{"what", a.what}, {"divisor", a.divisor}, {"p_integral", a.p_integral}, {"note", a.note}});
  json out{{"tag", f.tag},
           {"generators", gens},
           {"division_exact", f.division_exact},
           {"p_integral", f.p_integral},
           {"fractional", f.fractional},
           {"audit", audit},
           {"diagnostics", f.diagnostics}};
  if (!f.chi.empty()) out["chi"] = f.chi;
  if (f.trivial_zero_order >= 0) out["trivial_zero_order"] = f.trivial_zero_order;
  out["colength"] = f.ideal(M).colength();
  out["truncation_m"] = M;
  return out;
}

std::vector<std::uint32_t> all_of(const GroupPtr& g) {
  std::vector<std::uint32_t> v(g->order());
  for (std::uint32_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

// ---- commands

json cmd_structure(const JobConfig& cfg, Cache& cache) {
  Context ctx = load_context(cfg, cache, 4);
  const auto& c = ctx.cover;
  json S = json::array(), chars = json::array();
  for (auto& v : c.S)
    S.push_back({{"label", v.label},
                 {"degree", v.degree},
                 {"inertia_order", c.inertia(v).size()},
                 {"totally_ramified", v.totally_ramified}});
  for (auto& chi : all_characters(*c.H)) chars.push_back(character_json(character_data(c, chi)));
  return {{"input", ctx.input},
          {"p", c.p},
          {"q", c.q()},
          {"H", group_json(*c.H)},
          {"G", group_json(*c.G)},
          {"Gamma_order", c.Gamma->order()},
          {"S", S},
          {"places_listed", c.places.size()},
          {"characters", chars}};
}

json cmd_theta(const JobConfig& cfg, Cache& cache) {
  Context ctx = load_context(cfg, cache, 8);
  auto e = cached_theta(cache, ctx, "euler", cfg.workers);
  json out{{"input", ctx.input}, {"Gamma_order", ctx.cover.Gamma->order()}};
  json ce = json::array();
  for (auto& c : e.coeffs) ce.push_back(zelem_json(c));
  out["euler"] = ce;
  if (ctx.prov) {
    auto d = cached_theta(cache, ctx, "dirichlet", cfg.workers);
    out["euler_equals_dirichlet"] = theta_equal(e, d);
  } else {
    out["euler_equals_dirichlet"] = nullptr;
    out["note"] = "the Dirichlet side needs a Carlitz cover";
  }
  return out;
}

json cmd_chi_theta(const JobConfig& cfg, Cache& cache) {
  Context ctx = load_context(cfg, cache, 8);
  auto th = cached_theta(cache, ctx, "euler", cfg.workers);
  json rows = json::array();
  for (auto& chi : all_characters(*ctx.cover.H)) {
    auto ct = chi_theta(ctx.cover, th, chi);
    json series = json::array();
    for (auto& s : ct.series) series.push_back(s.to_string());
    json row{{"character", character_json(ct.data)},
             {"theta", ct.theta.to_string()},
             {"stabilization", stab_json(ct.stab)},
             {"series", series}};
    if (!chi.is_trivial()) row["vanishing_order_at_one"] = ct.theta.vanishing_order_at_one();
    rows.push_back(row);
  }
  return {{"input", ctx.input}, {"characters", rows}};
}

json cmd_fitting(const JobConfig& cfg, Cache& cache) {
  Context ctx = load_context(cfg, cache, 8);
  auto th = cached_theta(cache, ctx, "euler", cfg.workers);
  json rows = json::array();
  for (auto& chi : all_characters(*ctx.cover.H)) {
    auto ct = chi_theta(ctx.cover, th, chi);
    auto cd = fitting_class_dual(ctx.cover, ct);
    auto general = fitting_chi_tate_dual(ctx.cover, ct).at_one();
    json row = fitting_json(cd, cfg.M);
    row["character"] = character_json(ct.data);
    row["case"] = class_dual_case(ct.data);
    row["equals_chi_part_at_one"] = general.ideal(cfg.M) == cd.ideal(cfg.M);
    rows.push_back(row);
  }
  return {{"input", ctx.input}, {"truncation_m", cfg.M}, {"characters", rows}};
}

// a section whose hypotheses the cover does not meet is reported as skipped
template <class F>
json section(F&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    return {{"skipped", e.what()}};
  }
}

json cmd_fitting_general(const JobConfig& cfg, Cache& cache) {
  Context ctx = load_context(cfg, cache, 8);
  const auto& c = ctx.cover;
  auto th = cached_theta(cache, ctx, "euler", cfg.workers);
  auto rt = rationalize(c, th);
  json out{{"input", ctx.input}, {"theta", rt.theta.to_string()}, {"stabilization", stab_json(rt.stab)}};
  std::optional<FittingGenerators> tot;
  std::optional<SubsetForm> sub;
  out["tate_dual"] = section([&] {
    tot = fitting_tate_dual_totram(c, rt);
    return fitting_json(*tot, cfg.M);
  });
  out["subset_form"] = section([&] {
    sub = fitting_subset_form(c, ctx.D, cfg.workers);
    json parts = json::array();
    for (std::size_t i = 0; i < sub->parts.size(); ++i) {
      auto& p = sub->parts[i];
      parts.push_back({{"W", p.W},
                       {"g_W", p.g_W},
                       {"D0", p.D0},
                       {"value", p.value.to_string()},
                       {"euler_relation", euler_relation_holds(c, rt, p.W, sub->corestricted[i])}});
    }
    json j = fitting_json(sub->fitt, cfg.M);
    j["parts"] = parts;
    return j;
  });
  if (tot && sub) {
    auto app = tot->at_one().ideal(cfg.M), subI = sub->fitt.ideal(cfg.M);
    out["subset_equals_appfitt_at_one"] = app == subI;
    out["subset_inside_appfitt_at_one"] = subI.is_subset_of(app);
  }
  // chi-parts, lifted back to W[Gamma] with the idempotents
  std::vector<GammaPoly> assembled;
  int m = 1;
  out["chi_parts"] = section([&] {
    json rows = json::array();
    for (auto& chi : all_characters(*c.H)) {
      m = chi.m;
      auto ct = chi_theta(c, th, chi);
      auto f = fitting_chi_tate_dual(c, ct);
      json row = fitting_json(f, cfg.M);
      row["character"] = character_json(ct.data);
      rows.push_back(row);
      WElem e = idempotent(c, chi);
      for (auto& g : f.gens) {
        std::vector<WElem> num;
        for (auto& a : g.num()) num.push_back(e * lift_from_G(c, a));
        assembled.push_back(GammaPoly::from_coeffs(c.Gamma, g.m(), g.q(), num, g.denom_power()));
      }
    }
    return rows;
  });
  if (tot && out["chi_parts"].is_array()) {
    RingSpec spec{c.Gamma, m, static_cast<std::int64_t>(c.p), cfg.M, 1};
    out["chi_parts_assemble"] = IdealHandle(spec, tot->gens) == IdealHandle(spec, assembled);
  }
  return out;
}

json cmd_pro_fitting(const JobConfig& cfg, Cache& cache) {
  if (!cfg.cover_file.empty()) throw ValidationError("pro-fitting walks Carlitz levels; --cover-file is not accepted");
  if (cfg.level < 2) throw ValidationError("pro-fitting needs --level >= 2");
  const int D = cfg.degree >= 0 ? cfg.degree : (cfg.quick ? 4 : 6);
  std::vector<Context> ctx;
  std::vector<ThetaSeries> th;
  for (int n = 1; n <= cfg.level; ++n) {
    ctx.push_back(carlitz_context(cfg, cache, D, n));
    th.push_back(cached_theta(cache, ctx.back(), "euler", cfg.workers));
  }
  json theta_proj = json::array();
  std::vector<std::vector<std::uint32_t>> maps{{}};
  for (int n = 1; n < cfg.level; ++n) {
    maps.push_back(ctx[n].prov->projection_to(*ctx[n - 1].prov));
    theta_proj.push_back(projection_compatible(th[n], th[n - 1], maps.back()));
  }
  json rows = json::array();
  for (auto& chi : all_characters(*ctx[0].cover.H)) {
    std::vector<ProFittingLevel> levels;
    for (int n = 0; n < cfg.level; ++n)
      levels.push_back({ctx[n].cover, fitting_class_dual(ctx[n].cover, chi_theta(ctx[n].cover, th[n], chi)), maps[n]});
    auto rep = pro_fitting_report(levels, cfg.M);
    json steps = json::array();
    for (auto& s : rep.steps)
      steps.push_back({{"level", s.level},
                       {"contained", s.contained},
                       {"equal", s.equal},
                       {"equality_expected", s.equality_expected},
                       {"norm_projection_ok", s.norm_projection_ok},
                       {"norm_factor", s.norm_factor}});
    rows.push_back({{"chi", rep.chi},
                    {"case", rep.case_tag},
                    {"limit_is_zero", rep.limit_is_zero},
                    {"colengths", rep.colengths},
                    {"steps", steps},
                    {"ok", rep.ok}});
  }
  return {{"input", {{"q", cfg.q}, {"prime", ctx[0].prov->prime().to_string()}, {"levels", cfg.level}, {"degree", D}}},
          {"truncation_m", cfg.M},
          {"theta_projection_compatible", theta_proj},
          {"characters", rows}};
}

YExp y_of(const JobConfig& cfg) { return cfg.y_mod > 0 ? YExp::mod(cfg.y, cfg.y_mod) : YExp::integer(cfg.y); }

json cmd_goss(const JobConfig& cfg, Cache&) {
  if (cfg.q == 0) throw ValidationError("goss needs --q");
  auto f = field_for(cfg.q);
  const int D = cfg.degree >= 0 ? cfg.degree : (cfg.quick ? 4 : 6);
  guard_degree(cfg.q, D);
  FqPoly xp = FqPoly::parse(f, cfg.x);
  if (xp.degree() < 1) throw ValidationError("--x must have positive degree so that |x| > 1");
  SPoint s{LaurentNum::from_poly(xp), y_of(cfg)};
  auto part = zeta_partial(f, s, D, cfg.P, cfg.workers);
  json neg = json::array();
  for (int j = 1; j <= cfg.j_max; ++j) {
    auto z = zeta_at_negative_int(f, j, cfg.workers);
    neg.push_back({{"j", j}, {"value", z.value.to_string()}, {"stopped_at", z.stopped_at}, {"certificate", z.certificate}});
  }
  return {{"input", {{"q", cfg.q}, {"x", xp.to_string()}, {"y", s.y.describe()}, {"degree", D}, {"laurent_prec", cfg.P}}},
          {"partial_value", part.value.to_string()},
          {"tail_valuation", part.tail_valuation},
          {"negative_integers", neg}};
}

json cmd_interpolate(const JobConfig& cfg, Cache&) {
  if (cfg.q == 0 || cfg.prime.empty()) throw ValidationError("interpolate needs --q and --prime");
  auto f = field_for(cfg.q);
  const int D = cfg.degree >= 0 ? cfg.degree : (cfg.quick ? 4 : 5);
  guard_degree(cfg.q, D);
  auto rep = interpolation_check(parse_prime(f, cfg.prime), y_of(cfg), D, cfg.P, cfg.workers);
  json rows = json::array();
  for (auto& r : rep.rows)
    rows.push_back({{"d", r.d},
                    {"euler", r.euler.to_string()},
                    {"zeta_side", r.zeta_side.to_string()},
                    {"restricted", r.restricted.to_string()},
                    {"match", r.match}});
  return {{"input", {{"q", cfg.q}, {"prime", rep.prime}, {"y", rep.y.describe()}, {"degree", D}, {"laurent_prec", cfg.P}}},
          {"rows", rows},
          {"ok", rep.ok}};
}

json cmd_oracle(const JobConfig& cfg, Cache& cache) {
  if (!cfg.cover_file.empty()) throw ValidationError("the oracle only covers Carlitz fields; file covers are trusted input");
  const int max_deg = cfg.degree >= 0 ? cfg.degree : (cfg.quick ? 3 : 4);
  Context ctx = carlitz_context(cfg, cache, 1, cfg.level);
  auto rows = reciprocity_report(*ctx.prov, max_deg, cfg.workers);
  json rec = json::array();
  bool all_ok = true;
  for (auto& r : rows) {
    all_ok = all_ok && r.ok;
    rec.push_back({{"place", r.place}, {"degree", r.degree}, {"f_factored", r.f_factored}, {"f_predicted", r.f_predicted}, {"ok", r.ok}});
  }
  auto z = zeta_from_census(ctx.prov->prime(), cfg.level, cfg.workers);
  json P = json::array();
  for (auto& c : z.P) P.push_back(c.get_str());
  return {{"input", {{"q", cfg.q}, {"prime", ctx.prov->prime().to_string()}, {"level", cfg.level}, {"max_place_degree", max_deg}}},
          {"reciprocity", rec},
          {"reciprocity_ok", all_ok},
          {"zeta",
           {{"genus", z.genus},
            {"genus_formula", z.genus_formula},
            {"numerator", P},
            {"N", z.N},
            {"h", z.h.get_str()},
            {"v_p_h", z.v_p_h},
            {"overdetermined_checks", z.overdetermined_checks},
            {"functional_equation", z.functional_equation},
            {"weil_bounds", z.weil_bounds},
            {"diagnostics", z.diagnostics}}}};
}

void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

void emit(const JobConfig& cfg, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.out.empty())
    std::cout << text;
  else
    write_atomic(cfg.out, text);
}

void add_common(CLI::App* sub, JobConfig& cfg) {
  sub->add_option("--q", cfg.q, "field size (prime power)");
  sub->add_option("--prime", cfg.prime, "monic irreducible p, e.g. t^2+t+1");
  sub->add_option("--level", cfg.level, "exponent n of p^n")->check(CLI::Range(1, 12));
  sub->add_option("--degree", cfg.degree, "degree bound D")->check(CLI::Range(0, 40));
  sub->add_option("--truncation-m", cfg.M, "ideals are compared modulo p^M")->check(CLI::Range(1, 40));
  sub->add_option("--laurent-prec", cfg.P, "Laurent precision in 1/t")->check(CLI::Range(1, 4096));
  sub->add_option("--cover-file", cfg.cover_file, "cover description (JSON) instead of Carlitz parameters");
  sub->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
  sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1, 256));
  sub->add_option("--cache-dir", cfg.cache_dir, "cache directory (default $STICKLAB_CACHE)");
  sub->add_flag("--no-cache", cfg.no_cache, "disable the enumeration cache");
  sub->add_flag("--quick", cfg.quick, "small default degrees (D <= 4)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sticklab: Stickelberger series and Fitting ideals for function field covers"};
  app.require_subcommand(1);
  JobConfig cfg;
  struct Cmd {
    const char* name;
    const char* help;
    json (*fn)(const JobConfig&, Cache&);
  };
  const Cmd cmds[] = {
      {"structure", "group data and character table with types", cmd_structure},
      {"theta", "Stickelberger series by both methods", cmd_theta},
      {"chi-theta", "character parts and their rational forms", cmd_chi_theta},
      {"fitting", "per-character class-dual Fitting ideals", cmd_fitting},
      {"fitting-general", "Fitting ideals of the Tate-module dual for a file or Carlitz cover", cmd_fitting_general},
      {"pro-fitting", "compatibility of the Fitting ideals along levels 1..n", cmd_pro_fitting},
      {"goss", "partial values of the Goss zeta function and its values at negative integers", cmd_goss},
      {"interpolate", "per-degree check of the v-adic interpolation identity", cmd_interpolate},
      {"oracle", "reciprocity and zeta numerator from torsion polynomials", cmd_oracle},
  };
  std::vector<std::pair<CLI::App*, const Cmd*>> subs;
  for (auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, cfg);
    subs.push_back({sub, &c});
  }
  for (auto& [sub, c] : subs) {
    if (std::string(c->name) == "goss") {
      sub->add_option("--x", cfg.x, "x as a polynomial in t (|x| > 1)");
      sub->add_option("--j-max", cfg.j_max, "largest j for zeta(-j)")->check(CLI::Range(1, 20));
    }
    if (std::string(c->name) == "goss" || std::string(c->name) == "interpolate") {
      sub->add_option("--y", cfg.y, "p-adic exponent y (an integer)");
      sub->add_option("--y-mod", cfg.y_mod, "treat y as a residue mod p^k")->check(CLI::Range(1, 40));
    }
  }
  auto* self = app.add_subcommand("selftest", "run every acceptance criterion");
  self->add_flag("--quick", cfg.quick, "D <= 4");
  self->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1, 256));
  self->add_option("--out", cfg.out, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (self->parsed()) {
      acceptance::Options opt{cfg.quick, cfg.workers};
      json results = json::array();
      int failed = 0;
      for (int id = 1; id <= acceptance::kCriteria; ++id) {
        auto r = acceptance::run_one(id, opt);
        std::cerr << acceptance::format_line(r) << std::endl;
        failed += r.pass ? 0 : 1;
        results.push_back(acceptance::to_json(r));
      }
      json out{{"command", "selftest"},
               {"quick", cfg.quick},
               {"passed", acceptance::kCriteria - failed},
               {"failed", failed},
               {"criteria", results}};
      out["meta"] = {{"workers", cfg.workers},
                     {"elapsed_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
      emit(cfg, out);
      return failed ? 4 : 0;
    }
    for (auto& [sub, c] : subs) {
      if (!sub->parsed()) continue;
      cfg.command = c->name;
      Cache cache = cfg.no_cache ? Cache() : Cache(cfg.cache_dir.empty() ? Cache::default_dir() : cfg.cache_dir);
      json out = c->fn(cfg, cache);
      out["command"] = cfg.command;
      // everything nondeterministic lives here
      out["meta"] = {{"workers", cfg.workers},
                     {"cache", cache.stats()},
                     {"elapsed_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
      emit(cfg, out);
    }
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << json{{"error", "validation"}, {"command", cfg.command}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const TheoremViolation& e) {
    std::cerr << json{{"error", "theorem-violation"}, {"command", cfg.command}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const GuardrailError& e) {
    std::cerr << json{{"error", "guardrail"}, {"command", cfg.command}, {"message", e.what()}}.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"command", cfg.command}, {"message", e.what()}}.dump() << "\n";
    return 5;
  }
}
