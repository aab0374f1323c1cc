// averaging.hpp — secular averaging, phase antiderivatives, and the perturbative combinators
#pragma once

#include <oscar/errors.hpp>
#include <oscar/poly.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace oscar::algebra {

// Declares which frequency-symbol pairs count as close ("slow difference"), and
// whether the bath rule (slow phases of the form ±(w − ω_x)) is active.
struct ResonanceDecl {
  std::vector<std::pair<FreqSym, FreqSym>> close_pairs;
  bool bath_rule = true;

  static ResonanceDecl none() { return {}; }
  static ResonanceDecl close(FreqSym a, FreqSym b) { return {{{a, b}}, true}; }

  bool declares(FreqSym a, FreqSym b) const {
    for (const auto& [x, y] : close_pairs)
      if ((x == a && y == b) || (x == b && y == a)) return true;
    return false;
  }
};

enum class PhaseClass { stationary, declared_slow, bath_slow, fast };

struct PhaseInfo {
  PhaseClass cls = PhaseClass::fast;
  FreqExpr region;  // meaningful only for bath_slow: the system frequency ω_x
};

// Classify one term's phase under the declaration, honouring an existing
// spectral-region tag: a phase ±(w − ω_x) is only bath-slow where the term's
// bath support actually covers the region around ω_x. A term tagged in(R)
// with R ≠ ω_x, or out(ω_x), has no support there and is fast.
inline PhaseInfo classify_term(const FreqExpr& phase, const std::optional<RegionTag>& region,
                               const ResonanceDecl& decl) {
  if (phase.is_zero()) return {PhaseClass::stationary, {}};
  const int cw = phase.coeff(FreqSym::bath);
  if (cw == 0) {
    for (const auto& [a, b] : decl.close_pairs) {
      const FreqExpr diff = FreqExpr::sym(a) - FreqExpr::sym(b);
      if (phase == diff || phase == -diff) return {PhaseClass::declared_slow, {}};
    }
    return {PhaseClass::fast, {}};
  }
  if (decl.bath_rule && (cw == 1 || cw == -1)) {
    // phase = cw (w − ω_x)  ⇒  ω_x = −cw · (system part of phase)
    const int oxc = -cw * phase.coeff(FreqSym::mode_c);
    const int oxr = -cw * phase.coeff(FreqSym::mode_r);
    if (oxc >= 0 && oxr >= 0 && (oxc > 0 || oxr > 0)) {
      FreqExpr ox = FreqExpr::sym(FreqSym::mode_c, oxc) + FreqExpr::sym(FreqSym::mode_r, oxr);
      if (region && region->complement == (region->freq == ox)) return {PhaseClass::fast, {}};
      return {PhaseClass::bath_slow, ox};
    }
  }
  return {PhaseClass::fast, {}};
}

// Keep exactly the slow terms: stationary phases, declared-close differences,
// and bath-resonant phases ±(w − ω_x), the latter tagged with their region.
inline OperatorPoly average(const OperatorPoly& a, const ResonanceDecl& decl = ResonanceDecl::none(),
                            EvalContext& ctx = default_eval_context()) {
  detail::TermMap acc;
  for (const auto& t : a.terms()) {
    const PhaseInfo info = classify_term(t.phase, t.region, decl);
    if (info.cls == PhaseClass::fast) continue;
    NormalTerm kept = t;
    if (info.cls == PhaseClass::bath_slow) kept.region = region_in(info.region);
    detail::normal_order_into(acc, std::move(kept));
  }
  return OperatorPoly::from_map(acc).pruned(ctx);
}

// Antiderivative of an oscillating polynomial: v·O·e^{iΩt} ↦ −v·O·e^{iΩt}/(iħΩ),
// so that ħ·dS/dt = −A term-by-term. Every term must be fast under decl.
inline OperatorPoly integrate_phase(const OperatorPoly& a,
                                    const ResonanceDecl& decl = ResonanceDecl::none(),
                                    EvalContext& ctx = default_eval_context()) {
  detail::TermMap acc;
  for (const auto& t : a.terms()) {
    const PhaseInfo info = classify_term(t.phase, t.region, decl);
    if (info.cls != PhaseClass::fast)
      throw SecularTermError("integrate_phase: slow term with phase " + t.phase.str() +
                             " (average it away first)");
    NormalTerm out = t;
    // −1/(iħΩ) = +i/(ħΩ)
    out.coeff = (out.coeff * CoeffSum::unit_i() * CoeffSum::symbol(CoupSym::hbar, -1))
                    .times_freq_factor(t.phase, -1);
    detail::normal_order_into(acc, std::move(out));
  }
  return OperatorPoly::from_map(acc).pruned(ctx);
}

// Formal d/dt: each term picks up i·phase; stationary terms vanish.
inline OperatorPoly phase_derivative(const OperatorPoly& a) {
  detail::TermMap acc;
  for (const auto& t : a.terms()) {
    if (t.phase.is_zero()) continue;
    NormalTerm out = t;
    out.coeff = (out.coeff * CoeffSum::unit_i()).times_freq_factor(t.phase, 1);
    detail::normal_order_into(acc, std::move(out));
  }
  return OperatorPoly::from_map(acc);
}

// Second-order step of the averaging scheme.
// pre: V1 = average(V, decl) and S1 = integrate_phase(V − V1, decl).
// C := −(i/2)[S1, V1] − (i/2)[S1, V]; returns (V2, S2) = (average of C, antiderivative of the rest).
inline std::pair<OperatorPoly, OperatorPoly> second_order(const OperatorPoly& v,
                                                          const OperatorPoly& s1,
                                                          const OperatorPoly& v1,
                                                          const ResonanceDecl& decl,
                                                          EvalContext& ctx = default_eval_context()) {
  const CoeffSum minus_half_i = CoeffSum(GaussianRational{Rational(0), Rational(-1, 2)});
  const OperatorPoly c =
      (commutator(s1, v1, ctx) + commutator(s1, v, ctx)).scaled(minus_half_i).pruned(ctx);
  OperatorPoly v2 = average(c, decl, ctx);
  OperatorPoly s2 = integrate_phase(c - v2, decl, ctx);
  return {std::move(v2), std::move(s2)};
}

// Cross second-order term between the two couplings: the slow part of
// −(i/2)([S10,Vc] + [S10,V01] + [S01,Vcr] + [S01,V10]).
// pre: S10, S01 are the first-order generators of the oscillator–oscillator and
// oscillator–bath couplings; V01 = average(Vc), V10 = average(Vcr).
inline OperatorPoly interference(const OperatorPoly& s10, const OperatorPoly& s01,
                                 const OperatorPoly& vc, const OperatorPoly& vcr,
                                 const OperatorPoly& v01, const OperatorPoly& v10,
                                 const ResonanceDecl& decl,
                                 EvalContext& ctx = default_eval_context()) {
  const CoeffSum minus_half_i = CoeffSum(GaussianRational{Rational(0), Rational(-1, 2)});
  const OperatorPoly c = (commutator(s10, vc, ctx) + commutator(s10, v01, ctx) +
                          commutator(s01, vcr, ctx) + commutator(s01, v10, ctx))
                             .scaled(minus_half_i)
                             .pruned(ctx);
  return average(c, decl, ctx);
}

}  // namespace oscar::algebra
