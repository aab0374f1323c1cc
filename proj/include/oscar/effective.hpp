// effective.hpp — closed-form effective parameters and the orchestrated symbolic derivation
#pragma once

#include <oscar/averaging.hpp>
#include <oscar/builders.hpp>
#include <oscar/render.hpp>
#include <oscar/system_spec.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace oscar {

enum class Branch { nonresonant, resonant };

inline const char* branch_name(Branch b) {
  return b == Branch::nonresonant ? "nonresonant" : "resonant";
}

inline constexpr double kEpsRes = 1e-3;  // branch threshold, relative to ω_c

// Decide the interaction branch from the detuning. The band between ε·ω_c and
// 10ε·ω_c is ambiguous: neither expansion is trustworthy, the caller must pick.
inline Branch classify(const SystemSpec& spec, double eps_res = kEpsRes) {
  spec.validate();
  const double d = std::abs(spec.omega_c - spec.omega_r);
  if (d < eps_res * spec.omega_c) return Branch::resonant;
  if (d < 10.0 * eps_res * spec.omega_c)
    throw NearResonanceError("classify: detuning " + std::to_string(d) +
                             " falls in the ambiguous band; choose a branch explicitly");
  return Branch::nonresonant;
}

struct Shifts {
  Branch branch = Branch::nonresonant;
  double pi_c = 0.0;
  double pi_r = 0.0;
};

// Closed-form frequency shifts for an explicitly chosen branch. Nonresonant:
// the two-denominator pair; resonant: the single shared shift g²/(2ħω_c).
inline Shifts compute_shifts(const SystemSpec& spec, Branch branch) {
  spec.validate();
  const double g2h = spec.g * spec.g / spec.hbar;
  if (branch == Branch::resonant) {
    const double pi = g2h / (2.0 * spec.omega_c);
    return {branch, pi, pi};
  }
  const double inv_sum = 1.0 / (spec.omega_c + spec.omega_r);
  const double inv_diff = 1.0 / (spec.omega_c - spec.omega_r);
  return {branch, g2h * (inv_sum + inv_diff), g2h * (inv_sum - inv_diff)};
}

// Branch chosen from the detuning; throws in the ambiguous band.
inline Shifts compute_shifts(const SystemSpec& spec, double eps_res = kEpsRes) {
  return compute_shifts(spec, classify(spec, eps_res));
}

struct Rates {
  double gamma_c = 0.0;
  double gamma_r = 0.0;
  double nbar_c = 0.0;
  double nbar_r = 0.0;
};

// Dimensionless decay rates and occupations in scaled time t̄ = ω_c·t. The
// convention factor multiplies both rates; it documents any bath-coupling
// renormalization used for oracle calibration without touching the formulas.
inline Rates compute_rates(const SystemSpec& spec, double convention = 1.0) {
  spec.validate();
  const double pi = std::numbers::pi;
  Rates out;
  out.gamma_c = convention * 2.0 * pi * spec.gamma_c * spec.gamma_c /
                (spec.hbar * spec.omega_c * spec.omega_c);
  out.gamma_r = convention * pi * spec.g * spec.g * spec.gamma_c * spec.gamma_c /
                (2.0 * spec.hbar * spec.hbar * std::pow(spec.omega_c, 4));
  out.nbar_c = spec.n_at(spec.omega_c) / spec.omega_c;
  out.nbar_r = spec.n_at(spec.omega_r) / spec.omega_c;  // normalized by ω_c by convention
  return out;
}

struct EffectiveParams {
  Branch branch = Branch::nonresonant;
  double pi_c = 0.0, pi_r = 0.0;
  double omega_c_eff = 0.0, omega_r_eff = 0.0;
  double gamma_c = 0.0, gamma_r = 0.0;
  double nbar_c = 0.0, nbar_r = 0.0;
};

inline EffectiveParams effective_params(const SystemSpec& spec, Branch branch,
                                        double convention = 1.0) {
  const Shifts s = compute_shifts(spec, branch);
  const Rates r = compute_rates(spec, convention);
  EffectiveParams p;
  p.branch = s.branch;
  p.pi_c = s.pi_c;
  p.pi_r = s.pi_r;
  p.omega_c_eff = spec.omega_c - s.pi_c;
  p.omega_r_eff = spec.omega_r - s.pi_r;
  p.gamma_c = r.gamma_c;
  p.gamma_r = r.gamma_r;
  p.nbar_c = r.nbar_c;
  p.nbar_r = r.nbar_r;
  return p;
}

inline EffectiveParams effective_params(const SystemSpec& spec, double eps_res = kEpsRes,
                                        double convention = 1.0) {
  return effective_params(spec, classify(spec, eps_res), convention);
}

// One thermal decay channel: annihilation operator of `mode`, dimensionless
// rate, and bath occupation seen by that mode.
struct LindbladChannel {
  algebra::ModeId mode;
  double rate = 0.0;
  double occupation = 0.0;
};

// The two channels of the effective master equation (nonresonant branch only).
inline std::array<LindbladChannel, 2> build_channels(const SystemSpec& spec,
                                                     double eps_res = kEpsRes,
                                                     double convention = 1.0) {
  if (classify(spec, eps_res) != Branch::nonresonant)
    throw NearResonanceError("build_channels: channels are defined on the nonresonant branch");
  const Rates r = compute_rates(spec, convention);
  return {LindbladChannel{algebra::mode_c(), r.gamma_c, r.nbar_c},
          LindbladChannel{algebra::mode_r(), r.gamma_r, r.nbar_r}};
}

// One engine-vs-closed-form comparison entry, evaluated at the spec's numbers.
struct ComparisonRow {
  std::string quantity;
  double engine = 0.0;
  double closed_form = 0.0;
  double ratio = 0.0;
};

// Ratio of engine to closed-form r-bath amplitude at one grid node.
struct AmplitudeRatioCell {
  double wr_over_wc = 0.0;
  double w_over_wr = 0.0;
  double ratio = 0.0;
};

struct DerivationReport {
  Branch branch = Branch::nonresonant;
  algebra::OperatorPoly s10;    // first-order generator of the mode-mode coupling
  algebra::OperatorPoly s01;    // first-order generator of the bath coupling
  algebra::OperatorPoly v1_cr;  // retained first-order mode-mode part (resonant branch)
  algebra::OperatorPoly v2_cr;  // second-order mode-mode shift operator
  algebra::OperatorPoly vc1;    // retained c-bath coupling, region (ω_c)
  algebra::OperatorPoly vr2;    // interference-induced r-bath coupling, region (ω_r)
  EffectiveParams params;
  std::vector<ComparisonRow> comparison;
  std::vector<AmplitudeRatioCell> amplitude_ratio_grid;
  std::vector<std::string> notes;

  nlohmann::ordered_json to_json() const;
};

namespace report_detail {

inline algebra::EvalPoint eval_point(const SystemSpec& spec, double w = 0.0) {
  algebra::EvalPoint p;
  p.g = spec.g;
  p.gamma_c = spec.gamma_c;
  p.hbar = spec.hbar;
  p.wc = spec.omega_c;
  p.wr = spec.omega_r;
  p.w = w;
  return p;
}

inline double real_coeff(const algebra::OperatorPoly& p, const std::vector<algebra::LadderOp>& ops,
                         const algebra::FreqExpr& phase, const algebra::EvalPoint& at,
                         const std::optional<algebra::RegionTag>& region = std::nullopt) {
  const algebra::CoeffSum* c = algebra::find_coeff(p, ops, phase, region);
  return c ? c->eval(at).real() : 0.0;
}

inline std::vector<std::string> rendered_terms(const algebra::OperatorPoly& p) {
  std::vector<std::string> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) out.push_back(algebra::render(t));
  return out;
}

}  // namespace report_detail

// Run the full symbolic chain for the given declaration and tabulate the
// engine's numeric coefficients against the closed-form parameter formulas.
inline DerivationReport derive_effective(const SystemSpec& spec, const algebra::ResonanceDecl& decl) {
  using namespace algebra;
  spec.validate();

  const OperatorPoly vcr = spec.g != 0.0 ? two_oscillator_coupling() : OperatorPoly::zero();
  const OperatorPoly vc = spec.gamma_c != 0.0 ? oscillator_bath_coupling() : OperatorPoly::zero();

  DerivationReport rep;
  rep.branch = decl.declares(FreqSym::mode_c, FreqSym::mode_r) ? Branch::resonant
                                                               : Branch::nonresonant;
  rep.v1_cr = average(vcr, decl);
  rep.s10 = integrate_phase(vcr - rep.v1_cr, decl);
  rep.vc1 = average(vc, decl);
  rep.s01 = integrate_phase(vc - rep.vc1, decl);
  rep.v2_cr = second_order(vcr, rep.s10, rep.v1_cr, decl).first;
  rep.vr2 = interference(rep.s10, rep.s01, vc, vcr, rep.vc1, rep.v1_cr, decl);
  rep.params = effective_params(spec, rep.branch);

  const ModeId mc = mode_c(), mr = mode_r(), ma = mode_bath();
  const EvalPoint at = report_detail::eval_point(spec, spec.omega_r);  // r-bath entries on shell
  const double g2h = spec.g * spec.g / spec.hbar;
  const double inv_sum = 1.0 / (spec.omega_c + spec.omega_r);
  const double inv_diff = rep.branch == Branch::nonresonant
                              ? 1.0 / (spec.omega_c - spec.omega_r)
                              : 0.0;

  auto push = [&rep](std::string name, double engine, double closed) {
    rep.comparison.push_back(
        {std::move(name), engine, closed, closed != 0.0 ? engine / closed : 0.0});
  };

  if (rep.branch == Branch::nonresonant) {
    push("scalar_energy", report_detail::real_coeff(rep.v2_cr, {}, FreqExpr::zero(), at),
         -g2h * inv_sum);
    push("shift_energy_cc",
         report_detail::real_coeff(rep.v2_cr, {create(mc), annihilate(mc)}, FreqExpr::zero(), at),
         -g2h * (inv_sum + inv_diff));
    push("shift_energy_rr",
         report_detail::real_coeff(rep.v2_cr, {create(mr), annihilate(mr)}, FreqExpr::zero(), at),
         -g2h * (inv_sum - inv_diff));
    push("c_bath_amplitude",
         report_detail::real_coeff(rep.vc1, {create(mc), annihilate(ma)}, kOmegaC - kOmegaBath, at,
                            region_in(kOmegaC)),
         spec.gamma_c);
    push("r_bath_amplitude_on_shell",
         report_detail::real_coeff(rep.vr2, {create(mr), annihilate(ma)}, kOmegaR - kOmegaBath, at,
                            region_in(kOmegaR)),
         -spec.g * spec.gamma_c / (2.0 * spec.hbar * spec.omega_c));

    // Engine/closed-form amplitude ratio for the induced r-bath coupling over a
    // grid of detunings and in-region bath frequencies.
    const CoeffSum* amp = find_coeff(rep.vr2, {create(mr), annihilate(ma)}, kOmegaR - kOmegaBath,
                                     region_in(kOmegaR));
    if (amp) {
      const double closed = -spec.g * spec.gamma_c / (2.0 * spec.hbar * spec.omega_c);
      for (const double fr : {0.1, 0.25, 0.5, 0.75, 0.9})
        for (const double fw : {0.8, 0.9, 1.0, 1.1, 1.2}) {
          EvalPoint q = at;
          q.wr = fr * spec.omega_c;
          q.w = fw * q.wr;
          rep.amplitude_ratio_grid.push_back({fr, fw, amp->eval(q).real() / closed});
        }
    }
  } else {
    push("scalar_energy", report_detail::real_coeff(rep.v2_cr, {}, FreqExpr::zero(), at),
         -g2h * inv_sum);
    push("shift_energy_cc",
         report_detail::real_coeff(rep.v2_cr, {create(mc), annihilate(mc)}, FreqExpr::zero(), at),
         -g2h / (2.0 * spec.omega_c));
    push("shift_energy_rr",
         report_detail::real_coeff(rep.v2_cr, {create(mr), annihilate(mr)}, FreqExpr::zero(), at),
         -g2h / (2.0 * spec.omega_c));
  }

  rep.notes.push_back(
      "engine shift assignment: ct c carries (1/(wc+wr) - 1/(wc-wr)) and rt r carries "
      "(1/(wc+wr) + 1/(wc-wr)); the closed-form parameter set attaches these the other way "
      "around; the engine assignment matches the exact normal-mode expansion");
  rep.notes.push_back(
      "the closed-form r-bath amplitude -g*gc/(2*hbar*wc) is the deep-dispersive limit of the "
      "engine coefficient; on shell the engine/closed-form ratio is 4*wc^2/(wc^2-wr^2)");
  rep.notes.push_back(
      "nbar_r is normalized by wc, not wr, following the closed-form convention");
  return rep;
}

// Branch-driven declaration: resonant specs declare the (c, r) pair close.
inline DerivationReport derive_effective(const SystemSpec& spec, double eps_res = kEpsRes) {
  const Branch b = classify(spec, eps_res);
  return derive_effective(spec, b == Branch::resonant
                                    ? algebra::ResonanceDecl::close(algebra::FreqSym::mode_c,
                                                                    algebra::FreqSym::mode_r)
                                    : algebra::ResonanceDecl::none());
}

inline nlohmann::ordered_json DerivationReport::to_json() const {
  nlohmann::ordered_json j;
  j["branch"] = branch_name(branch);
  nlohmann::ordered_json ops;
  ops["s10"] = report_detail::rendered_terms(s10);
  ops["s01"] = report_detail::rendered_terms(s01);
  ops["v1_cr"] = report_detail::rendered_terms(v1_cr);
  ops["v2_cr"] = report_detail::rendered_terms(v2_cr);
  ops["vc1"] = report_detail::rendered_terms(vc1);
  ops["vr2"] = report_detail::rendered_terms(vr2);
  j["operators"] = std::move(ops);
  nlohmann::ordered_json pj;
  pj["pi_c"] = params.pi_c;
  pj["pi_r"] = params.pi_r;
  pj["omega_c_eff"] = params.omega_c_eff;
  pj["omega_r_eff"] = params.omega_r_eff;
  pj["gamma_bar_c"] = params.gamma_c;
  pj["gamma_bar_r"] = params.gamma_r;
  pj["nbar_c"] = params.nbar_c;
  pj["nbar_r"] = params.nbar_r;
  j["params"] = std::move(pj);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : comparison) {
    nlohmann::ordered_json row;
    row["quantity"] = r.quantity;
    row["engine"] = r.engine;
    row["closed_form"] = r.closed_form;
    row["ratio"] = r.ratio;
    rows.push_back(std::move(row));
  }
  j["comparison"] = std::move(rows);
  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  for (const auto& c : amplitude_ratio_grid) {
    nlohmann::ordered_json cell;
    cell["wr_over_wc"] = c.wr_over_wc;
    cell["w_over_wr"] = c.w_over_wr;
    cell["ratio"] = c.ratio;
    grid.push_back(std::move(cell));
  }
  j["amplitude_ratio_grid"] = std::move(grid);
  j["notes"] = notes;
  return j;
}

}  // namespace oscar
