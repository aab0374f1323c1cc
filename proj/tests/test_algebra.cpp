// test_algebra.cpp — exact scalars, frequency expressions, coefficients, and normal ordering
#include <catch2/catch_amalgamated.hpp>

#include <oscar/coeff.hpp>
#include <oscar/freq.hpp>
#include <oscar/modes.hpp>
#include <oscar/poly.hpp>
#include <oscar/rational.hpp>

#include <complex>
#include <random>

using namespace oscar;
using namespace oscar::algebra;

namespace {

const ModeId kC = mode_c();
const ModeId kR = mode_r();
const ModeId kA = mode_bath();

OperatorPoly single(std::vector<LadderOp> ops, FreqExpr phase = FreqExpr::zero()) {
  return OperatorPoly::from_term(CoeffSum(Rational(1)), std::move(ops), phase);
}

// Random polynomial with <= 3 operators per term, small exact coefficients.
OperatorPoly random_poly(std::mt19937& rng, int nterms) {
  std::uniform_int_distribution<int> nops(0, 3), mode(0, 2), coin(0, 1);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), ph(-2, 2);
  OperatorPoly p;
  for (int t = 0; t < nterms; ++t) {
    std::vector<LadderOp> ops;
    const int n = nops(rng);
    for (int k = 0; k < n; ++k) {
      const ModeId m = mode(rng) == 0 ? kC : (mode(rng) % 2 ? kR : kA);
      ops.push_back({m, coin(rng) == 1});
    }
    GaussianRational s{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
    if (s.is_zero()) s = GaussianRational(Rational(1));
    FreqExpr phase{{ph(rng), ph(rng), ph(rng)}};
    p = p + OperatorPoly::from_term(CoeffSum(s), std::move(ops), phase);
  }
  return p;
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical", "[rational]") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) - Rational(1, 3) == Rational(0));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(1, 2) / Rational(3, 4) == Rational(2, 3));
  CHECK(Rational(-2, 3).inverse() == Rational(-3, 2));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK(Rational(-3, 2).str() == "-3/2");
  CHECK(Rational(5).str() == "5/1");
  CHECK_THROWS_AS(Rational(1, 0), NumericError);
  CHECK_THROWS_AS(Rational(0).inverse(), NumericError);
}

TEST_CASE("gaussian rationals multiply and conjugate exactly", "[rational]") {
  const GaussianRational i = GaussianRational::unit_i();
  CHECK(i * i == GaussianRational(Rational(-1)));
  const GaussianRational z{Rational(1, 2), Rational(-3, 4)};
  CHECK(z * z.conj() == GaussianRational(Rational(13, 16)));
  CHECK(z * z.inverse() == GaussianRational(Rational(1)));
  CHECK((z + (-z)).is_zero());
  CHECK(GaussianRational(Rational(1, 2)).str() == "(1/2)");
  CHECK(i.str() == "(1/1*i)");
  CHECK(z.str() == "(1/2-3/4*i)");
  CHECK(GaussianRational{Rational(-1), Rational(1, 3)}.str() == "(-1/1+1/3*i)");
}

TEST_CASE("frequency expressions form an abelian group with canonical text", "[freq]") {
  const FreqExpr sum = kOmegaC + kOmegaR;
  const FreqExpr diff = kOmegaC - kOmegaR;
  CHECK(sum.str() == "wc+wr");
  CHECK(diff.str() == "wc-wr");
  CHECK((-diff).str() == "-wc+wr");
  CHECK((kOmegaBath - kOmegaR).str() == "-wr+w");
  CHECK((2 * kOmegaC).str() == "2*wc");
  CHECK(FreqExpr::zero().str() == "0");
  CHECK((sum - sum).is_zero());
  CHECK(sum.eval(1.0, 0.5, 0.0) == 1.5);

  SECTION("canonicalization extracts content and sign") {
    const CanonicalFreq a = canonicalize(-(kOmegaC + kOmegaR));
    CHECK(a.primitive == kOmegaC + kOmegaR);
    CHECK(a.content == Rational(-1));
    const CanonicalFreq b = canonicalize(2 * (kOmegaC - kOmegaR));
    CHECK(b.primitive == kOmegaC - kOmegaR);
    CHECK(b.content == Rational(2));
    const CanonicalFreq c = canonicalize(FreqExpr{{0, -2, 2}});
    CHECK(c.primitive == kOmegaR - kOmegaBath);
    CHECK(c.content == Rational(-2));
  }
}

TEST_CASE("coefficient sums stay exact through factor arithmetic", "[coeff]") {
  const CoeffSum g = CoeffSum::symbol(CoupSym::g);
  const CoeffSum hbar = CoeffSum::symbol(CoupSym::hbar);
  const FreqExpr sum = kOmegaC + kOmegaR;
  const FreqExpr diff = kOmegaC - kOmegaR;

  SECTION("inverse factors fold content into the scalar") {
    // 1/(-(wc+wr)) == -(wc+wr)^-1
    const CoeffSum a = CoeffSum(Rational(1)).times_freq_factor(-(sum), -1);
    const CoeffSum b = CoeffSum(Rational(-1)).times_freq_factor(sum, -1);
    CHECK(a.equals(b));
    CHECK(a.str() == "(-1/1)*(wc+wr)^-1");
  }

  SECTION("randomized equality certifies nontrivial identities") {
    // 1/(wc+wr) + 1/(wc-wr) == 2*wc / ((wc+wr)*(wc-wr))
    const CoeffSum lhs = CoeffSum(Rational(1)).times_freq_factor(sum, -1) +
                         CoeffSum(Rational(1)).times_freq_factor(diff, -1);
    const CoeffSum rhs = CoeffSum(Rational(2))
                             .times_freq_factor(kOmegaC, 1)
                             .times_freq_factor(sum, -1)
                             .times_freq_factor(diff, -1);
    CHECK(lhs.equals(rhs));
    CHECK_FALSE(lhs.equals(rhs + CoeffSum(Rational(1, 1000000))));
  }

  SECTION("zero combinations are detected and removed") {
    const CoeffSum z = g * hbar - hbar * g;
    CHECK(z.structurally_zero());
    const CoeffSum nz = g - g * CoeffSum(Rational(1, 2));
    CHECK_FALSE(nz.is_zero());
    CHECK((nz - nz).is_zero());
  }

  SECTION("conjugation flips the imaginary part only") {
    const CoeffSum c = CoeffSum::unit_i() * g.times_freq_factor(sum, -1);
    CHECK((c + c.conj()).is_zero());
    CHECK_FALSE(c.is_zero());
  }

  SECTION("evaluation honours symbol powers") {
    EvalPoint p;
    p.g = 2.0;
    p.hbar = 4.0;
    p.wc = 1.0;
    p.wr = 0.5;
    const CoeffSum c =
        CoeffSum::symbol(CoupSym::g, 2) * CoeffSum::symbol(CoupSym::hbar, -1);
    CHECK(c.eval(p) == std::complex<double>(1.0, 0.0));
    const CoeffSum d = c.times_freq_factor(sum, -1);
    CHECK(std::abs(d.eval(p) - std::complex<double>(2.0 / 3.0, 0.0)) < 1e-15);
  }
}

TEST_CASE("normal ordering applies Bose commutation", "[poly]") {
  SECTION("c c+ becomes c+c + 1") {
    const OperatorPoly p = single({annihilate(kC), create(kC)});
    const OperatorPoly want =
        single({create(kC), annihilate(kC)}) + OperatorPoly::scalar(CoeffSum(Rational(1)));
    CHECK(poly_equal(p, want));
    CHECK(p.terms().size() == 2);
  }
  SECTION("distinct modes commute into global order") {
    const OperatorPoly p = single({annihilate(kR), annihilate(kC)});
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].ops == std::vector<LadderOp>{annihilate(kC), annihilate(kR)});
    CHECK(p.terms()[0].coeff.equals(CoeffSum(Rational(1))));
  }
  SECTION("c c+ c+ becomes c+c+c + 2c+") {
    const OperatorPoly p = single({annihilate(kC), create(kC), create(kC)});
    const OperatorPoly want =
        single({create(kC), create(kC), annihilate(kC)}) +
        single({create(kC)}).scaled(CoeffSum(Rational(2)));
    CHECK(poly_equal(p, want));
  }
  SECTION("idempotence on random polys") {
    std::mt19937 rng(7);
    for (int it = 0; it < 20; ++it) {
      const OperatorPoly p = random_poly(rng, 4);
      OperatorPoly q;
      for (const auto& t : p.terms()) q = q + normal_order(t);
      CHECK(poly_equal(p, q));
    }
  }
}

TEST_CASE("multiplication distributes and adds phases", "[poly]") {
  SECTION("(c) x (c+) = c+c + 1") {
    const OperatorPoly p = multiply(single({annihilate(kC)}), single({create(kC)}));
    const OperatorPoly want =
        single({create(kC), annihilate(kC)}) + OperatorPoly::scalar(CoeffSum(Rational(1)));
    CHECK(poly_equal(p, want));
  }
  SECTION("phase additivity") {
    const OperatorPoly p =
        multiply(single({annihilate(kC)}, -kOmegaC), single({annihilate(kR)}, -kOmegaR));
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].phase == -(kOmegaC + kOmegaR));
  }
  SECTION("(c+c)^2 = c+c+cc + c+c") {
    const OperatorPoly n = single({create(kC), annihilate(kC)});
    const OperatorPoly want =
        single({create(kC), create(kC), annihilate(kC), annihilate(kC)}) +
        single({create(kC), annihilate(kC)});
    CHECK(poly_equal(multiply(n, n), want));
  }
  SECTION("associativity on random polys") {
    std::mt19937 rng(11);
    for (int it = 0; it < 8; ++it) {
      const OperatorPoly a = random_poly(rng, 2);
      const OperatorPoly b = random_poly(rng, 2);
      const OperatorPoly c = random_poly(rng, 2);
      CHECK(poly_equal(multiply(multiply(a, b), c), multiply(a, multiply(b, c))));
    }
  }
}

TEST_CASE("commutators follow the ladder algebra", "[poly]") {
  SECTION("[c, c+] = 1") {
    const OperatorPoly p = commutator(single({annihilate(kC)}), single({create(kC)}));
    CHECK(poly_equal(p, OperatorPoly::scalar(CoeffSum(Rational(1)))));
  }
  SECTION("[c+c, c+] = c+") {
    const OperatorPoly p =
        commutator(single({create(kC), annihilate(kC)}), single({create(kC)}));
    CHECK(poly_equal(p, single({create(kC)})));
  }
  SECTION("[c r+, c+ r] = r+r - c+c") {
    const OperatorPoly p = commutator(single({annihilate(kC), create(kR)}),
                                      single({create(kC), annihilate(kR)}));
    const OperatorPoly want = single({create(kR), annihilate(kR)}) -
                              single({create(kC), annihilate(kC)});
    CHECK(poly_equal(p, want));
  }
  SECTION("antisymmetry and Jacobi on random polys") {
    std::mt19937 rng(13);
    for (int it = 0; it < 5; ++it) {
      const OperatorPoly a = random_poly(rng, 2);
      const OperatorPoly b = random_poly(rng, 2);
      const OperatorPoly c = random_poly(rng, 2);
      CHECK(poly_equal(commutator(a, b), commutator(b, a).scaled(CoeffSum(Rational(-1)))));
      const OperatorPoly jacobi = commutator(a, commutator(b, c)) +
                                  commutator(b, commutator(c, a)) +
                                  commutator(c, commutator(a, b));
      CHECK(jacobi.pruned().empty());
    }
  }
}

TEST_CASE("adjoint reverses, daggers, conjugates, and negates phases", "[poly]") {
  SECTION("c with phase -wc maps to c+ with phase +wc") {
    const OperatorPoly p = adjoint(single({annihilate(kC)}, -kOmegaC));
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].ops == std::vector<LadderOp>{create(kC)});
    CHECK(p.terms()[0].phase == kOmegaC);
  }
  SECTION("i c+c is anti-Hermitian") {
    const OperatorPoly p =
        single({create(kC), annihilate(kC)}).scaled(CoeffSum::unit_i());
    CHECK(poly_equal(adjoint(p), p.scaled(CoeffSum(Rational(-1)))));
    CHECK_FALSE(is_hermitian(p));
  }
  SECTION("involution on random polys") {
    std::mt19937 rng(17);
    for (int it = 0; it < 10; ++it) {
      const OperatorPoly p = random_poly(rng, 4);
      CHECK(poly_equal(adjoint(adjoint(p)), p));
    }
  }
}
