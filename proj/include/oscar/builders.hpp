// builders.hpp — the interaction-picture coupling polynomials of the model
#pragma once

#include <oscar/poly.hpp>

namespace oscar::algebra {

namespace detail {
inline OperatorPoly rotating_pair(const ModeId& m, const FreqExpr& freq) {
  return OperatorPoly::from_term(CoeffSum(Rational(1)), {annihilate(m)}, -freq) +
         OperatorPoly::from_term(CoeffSum(Rational(1)), {create(m)}, freq);
}
}  // namespace detail

// g (c e^{-i wc t} + c⁺ e^{i wc t}) (r e^{-i wr t} + r⁺ e^{i wr t})
inline OperatorPoly two_oscillator_coupling() {
  return multiply(detail::rotating_pair(mode_c(), kOmegaC),
                  detail::rotating_pair(mode_r(), kOmegaR))
      .scaled(CoeffSum::symbol(CoupSym::g));
}

// γ_c (c e^{-i wc t} + c⁺ e^{i wc t}) (a_w e^{-i w t} + a_w⁺ e^{i w t});
// the bath family a_w is carried by one symbolic boson with free frequency w.
inline OperatorPoly oscillator_bath_coupling() {
  return multiply(detail::rotating_pair(mode_c(), kOmegaC),
                  detail::rotating_pair(mode_bath(), kOmegaBath))
      .scaled(CoeffSum::symbol(CoupSym::gamma_c));
}

}  // namespace oscar::algebra
