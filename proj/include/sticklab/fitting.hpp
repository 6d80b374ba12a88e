#pragma once
#include <string>
#include <vector>

#include "sticklab/cover.hpp"
#include "sticklab/ideal.hpp"
#include "sticklab/stickelberger.hpp"

namespace sticklab {

// one exact scalar or polynomial division performed while building generators
struct AuditEntry {
  std::string what;
  std::string divisor;
  bool p_integral = true;
  std::string note;
};

struct FittingGenerators {
  std::string tag;  // which formula produced the generators
  std::string chi;  // character descriptor, empty for integral forms
  GroupPtr group;
  int m = 1;
  std::int64_t p = 2;
  std::vector<GammaPoly> gens;  // constants once gamma has been set to 1
  std::vector<AuditEntry> audit;
  int trivial_zero_order = -1;  // -1: not computed
  bool division_exact = true;
  bool p_integral = true;
  bool fractional = false;  // a generator could not be divided by d_p (p | d_p)
  std::vector<std::string> diagnostics;

  IdealHandle ideal(int M, int K = 1) const;
  // generators specialized at gamma = 1
  FittingGenerators at_one() const;
};

// exact ring-level product of two-generator factors (a_i, b_i / c_i), applied to
// theta / base_divisor: every choice multiplies its numerators first and then
// divides once, so fractional factors only appear where the product is integral
struct TwoGenFactor {
  std::string label;
  GammaPoly num;  // b_i
  GammaPoly den;  // c_i (monomial-unit leading coefficient)
};
FittingGenerators expand_factors(const GammaPoly& theta, const GammaPoly& base_divisor,
                                 const std::vector<TwoGenFactor>& factors, const std::string& tag, std::int64_t p);

// Fitt of T_p(Jac)^* over Z_p[Gamma][[G_F]] for a cover whose v1 has full inertia
FittingGenerators fitting_tate_dual_totram(const CoverDescription& c, const RationalTheta& th);

// corestriction Z[Gamma/I] -> Z[Gamma]: a coset goes to the sum of its lifts
WElem corestrict(const WElem& x, const GroupPtr& big, const std::vector<std::uint32_t>& image);
GammaPoly corestrict(const GammaPoly& x, const GroupPtr& big, const std::vector<std::uint32_t>& image);

// one generator g_W cor(Theta_{K^W/F,S-W}(1)) per subset W of S - {v1}
struct SubsetGenerator {
  std::vector<std::string> W;
  std::int64_t g_W = 1;
  int D0 = 0;
  WElem value;
};
struct SubsetForm {
  FittingGenerators fitt;
  std::vector<SubsetGenerator> parts;
  // Theta_{K^W,S-W}(g) corestricted, before setting g = 1 (for the Euler relations)
  std::vector<GammaPoly> corestricted;
};
SubsetForm fitting_subset_form(const CoverDescription& c, int D, int workers = 1);
// |I_v1| * ... / |I_v1 ... I_vk|
std::int64_t g_T(const CoverDescription& c, const std::vector<std::string>& T);

// Euler relation check: prod_{v in T} n(I_v) Theta = g_T prod e_v cor(Theta_{K^T,S-T})
bool euler_relation_holds(const CoverDescription& c, const RationalTheta& th, const std::vector<std::string>& T,
                          const GammaPoly& corestricted);

// chi-parts over W[G][[G_F]]: the chi != chi_0 and chi_0 formulas
FittingGenerators fitting_chi_tate_dual(const CoverDescription& c, const ChiTheta& ct);
// Fitt of C_n(chi)^dual over W[G_n] for a cyclotomic-type cover (S = {p, inf})
FittingGenerators fitting_class_dual(const CoverDescription& c, const ChiTheta& ct);
std::string class_dual_case(const CharacterData& d);

// Fitting ideal of a finitely presented module from its maximal minors
struct PresentedModule {
  RingSpec spec;
  int generators = 1;
  std::vector<std::vector<GammaPoly>> relations;  // each row has `generators` entries
};
IdealHandle generic_fitting(const PresentedModule& pm);

// compatibility of the class-dual ideals along a tower of levels
struct ProFittingLevel {
  CoverDescription cover;
  FittingGenerators fitt;
  std::vector<std::uint32_t> gamma_to_prev;  // Gamma_n -> Gamma_{n-1}; empty at the first level
};
struct ProFittingStep {
  int level = 0;
  bool contained = false;
  bool equal = false;
  bool equality_expected = false;
  bool norm_projection_ok = false;  // pi(n(G_n)) = [F_n : F_{n-1}] n(G_{n-1})
  std::int64_t norm_factor = 0;
};
struct ProFittingReport {
  std::string chi;
  std::string case_tag;
  bool limit_is_zero = false;
  std::vector<ProFittingStep> steps;
  std::vector<int> colengths;
  bool ok = true;
};
ProFittingReport pro_fitting_report(const std::vector<ProFittingLevel>& levels, int M);
// G_n -> G_{n-1} induced by a Gamma map
std::vector<std::uint32_t> g_projection(const CoverDescription& hi, const CoverDescription& lo,
                                        const std::vector<std::uint32_t>& gamma_map);

}  // namespace sticklab
