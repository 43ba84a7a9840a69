#include <qmock/mockeis.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace qmock;

TEST_CASE("alpha registry holds exactly the attested entries", "[mockeis]") {
    const auto& reg = AlphaRegistry::instance();
    auto chi12 = reg.lookup(DirichletCharacter::kronecker(12));
    REQUIRE(chi12.has_value());
    CHECK(chi12->alpha == Rational(1, 6));
    CHECK(chi12->rescale == 24);

    auto chi24 = reg.lookup(DirichletCharacter::kronecker(24));
    REQUIRE(chi24.has_value());
    CHECK(chi24->alpha == Rational(-1, 24));
    CHECK(chi24->rescale == 24);

    auto chi2 = reg.lookup(DirichletCharacter::kronecker(8));
    REQUIRE(chi2.has_value());
    CHECK(chi2->alpha == Rational(1, 16));
    CHECK(chi2->rescale == 8);

    auto chim4 = reg.lookup(DirichletCharacter::kronecker(-4));
    REQUIRE(chim4.has_value());
    CHECK(chim4->alpha == Rational(1, 12));
    CHECK(chim4->rescale == 8);

    CHECK_FALSE(reg.lookup(DirichletCharacter::kronecker(5)).has_value());
    CHECK_FALSE(reg.lookup(DirichletCharacter::kronecker(-8)).has_value());
}

TEST_CASE("numerator series", "[mockeis]") {
    DirichletCharacter chi12 = DirichletCharacter::kronecker(12);
    NumeratorSeries n12 = numerator_series(chi12, 100);
    REQUIRE(n12.alpha_known);
    CHECK(n12.series.coeff_at_integer(0) == Scalar(Rational(1, 6)));
    // q^24: (1/6)(-24) + sigma^sm(24) = -4 - 2 = -6
    CHECK(n12.series.coeff_at_integer(24) == Scalar(Rational(-6)));

    DirichletCharacter chi2 = DirichletCharacter::kronecker(8);
    NumeratorSeries n2 = numerator_series(chi2, 100);
    REQUIRE(n2.alpha_known);
    CHECK(n2.series.coeff_at_integer(0) == Scalar(Rational(1, 16)));
    CHECK(n2.series.coeff_at_integer(8) == Scalar(Rational(-7, 2)));  // -3/2 - 2

    // no registry entry: sigma^sm part only, flagged
    DirichletCharacter chi5 = DirichletCharacter::kronecker(5);
    NumeratorSeries n5 = numerator_series(chi5, 100);
    CHECK_FALSE(n5.alpha_known);
    CHECK(series_equal(n5.series, sigma_sm_series(chi5, 100)));
}

TEST_CASE("numerator support stays on the rescale progression", "[mockeis]") {
    // sigma^sm support is contained in {m^2 - r^2 : psi(mr) != 0}
    DirichletCharacter chi12 = DirichletCharacter::kronecker(12);
    FracSeries s12 = sigma_sm_series(chi12, 600);
    for (std::int64_t n = 1; n < 600; ++n)
        if (n % 24 != 0) CHECK(s12.coeff_at_integer(n).is_zero());

    DirichletCharacter chi2 = DirichletCharacter::kronecker(8);
    FracSeries s2 = sigma_sm_series(chi2, 600);
    for (std::int64_t n = 1; n < 600; ++n)
        if (n % 8 != 0) CHECK(s2.coeff_at_integer(n).is_zero());
}

TEST_CASE("mock eisenstein series", "[mockeis]") {
    DirichletCharacter chi12 = DirichletCharacter::kronecker(12);
    FracSeries eplus = mock_eisenstein_plus(chi12, 400);
    CHECK(eplus.lead() == -1);
    CHECK(eplus.coeff_at_integer(-1) == Scalar(Rational(1, 6)));

    // division round-trip: theta * E+ reproduces the numerator
    FracSeries back = mul(theta_psi(chi12, 400), eplus);
    CHECK(series_equal(back, numerator_series(chi12, 400).series));

    CHECK_THROWS_AS(mock_eisenstein_plus(DirichletCharacter::kronecker(5), 50), std::domain_error);
}

TEST_CASE("pi_hol cancellation across characters", "[mockeis]") {
    // registry characters and non-registry ones alike, including a
    // cyclotomic-valued character: the cancellation is character-independent
    for (const auto* spec : {"chi12", "chi24", "chi2", "chi-4", "chi-3", "chi-8",
                             "kronecker:5", "kronecker:-7", "mod:7:2"}) {
        DirichletCharacter psi = DirichletCharacter::parse(spec);
        IdentityReport rep = verify_pihol_vanishing(psi, 800);
        INFO(rep.identity << " first mismatch at " << rep.mismatch_index);
        CHECK(rep.equal);
        CHECK(rep.hi - rep.lo >= 798);
    }
}

TEST_CASE("corrupted input is detected with the first mismatch", "[mockeis]") {
    DirichletCharacter chi12 = DirichletCharacter::kronecker(12);
    FracSeries lhs = sigma_sm_series(chi12, 300, SigmaSmRoute::divisor_definition);
    lhs.set_coeff(96, lhs.coeff_at_integer(96) + Scalar(Rational(1)));
    IdentityReport rep =
        IdentityReport::from_comparison("corrupted", compare_series(lhs, holproj_correction(chi12, 300)));
    REQUIRE_FALSE(rep.equal);
    CHECK(rep.mismatch_index == 96);
    CHECK(Scalar::parse(rep.lhs) == Scalar::parse(rep.rhs) + Scalar(Rational(1)));
}

TEST_CASE("spt identity", "[mockeis]") {
    IdentityReport rep = verify_spt_identity(SptVariant::chi12, 600);
    INFO("mismatch at " << rep.mismatch_index << ": " << rep.lhs << " vs " << rep.rhs);
    CHECK(rep.equal);

    IdentityReport rep24 = verify_spt_identity(SptVariant::chi24, 600);
    INFO("mismatch at " << rep24.mismatch_index << ": " << rep24.lhs << " vs " << rep24.rhs);
    CHECK(rep24.equal);

    // worked coefficients: q^24 gives -2 = -2 spt(1); q^48 gives -4 = -2(spt(2) - spt(1))
    DirichletCharacter chi12 = DirichletCharacter::kronecker(12);
    FracSeries lhs = sigma_sm_series(chi12, 60);
    CHECK(lhs.coeff_at_integer(24) == Scalar(Rational(-2)));
    CHECK(lhs.coeff_at_integer(48) == Scalar(Rational(-4)));
}

TEST_CASE("cpt identity", "[mockeis]") {
    IdentityReport rep = verify_cpt_identity(600);
    INFO("mismatch at " << rep.mismatch_index << ": " << rep.lhs << " vs " << rep.rhs);
    CHECK(rep.equal);

    DirichletCharacter chi2 = DirichletCharacter::kronecker(8);
    FracSeries lhs = sigma_sm_series(chi2, 30);
    CHECK(lhs.coeff_at_integer(8) == Scalar(Rational(-2)));    // 2 (-1)^1 cpt(1)
    CHECK(lhs.coeff_at_integer(24) == Scalar(Rational(-6)));   // 2 (-1)^3 cpt(3)
}

TEST_CASE("f22 double sum", "[mockeis]") {
    FracSeries f = f22_series(40);
    auto at_q = [&](std::int64_t e) { return f.coeff(2 * e); };
    CHECK(at_q(1) == Scalar(Rational(1)));
    CHECK(at_q(2) == Scalar(Rational(1)));
    CHECK(at_q(3) == Scalar(Rational(-1)));
    CHECK(at_q(4) == Scalar(Rational(1)));
    CHECK(at_q(5) == Scalar(Rational(-1)));
    CHECK(at_q(6) == Scalar(Rational(4)));
    // supported on exponents rs/2 with r-s odd: always integral, so every
    // genuine half-integer slot is empty
    for (std::int64_t i = 3; i < 40; i += 2) CHECK(f.coeff(i).is_zero());
}

TEST_CASE("f22 identity through the mock Eisenstein pipeline", "[mockeis]") {
    IdentityReport rep = verify_f22_identity(120);
    INFO("mismatch at " << rep.mismatch_index << "/" << rep.den << ": " << rep.lhs << " vs "
                        << rep.rhs);
    CHECK(rep.equal);
    CHECK(rep.hi * 1 >= 120 * rep.den);  // window reaches exponent 120
}

TEST_CASE("h2 series and the chi_-4 alpha confirmation", "[mockeis]") {
    FracSeries h2 = h2_series(60);
    // -q^{-1/8} (1 + ...) with the Mathieu-side coefficients
    CHECK(h2.den() == 24);
    CHECK(h2.coeff(-3) == Scalar(Rational(-1)));
    CHECK(h2.coeff(-3 + 24) == Scalar(Rational(45)));
    CHECK(h2.coeff(-3 + 48) == Scalar(Rational(231)));
    CHECK(h2.coeff(-3 + 72) == Scalar(Rational(770)));

    // defining relation round-trip: eta^3 h2 + E2 = 24 F2^(2)
    FracSeries eta3 = eta_expansion(EtaQuotient{{{1, 3}}}, 24 * 60);
    FracSeries lhs = add(mul(eta3, h2), eisenstein_e2(60));
    CHECK(series_equal(lhs, f22_series(120).scaled(Rational(24))));

    // the registry's alpha_{chi_-4} = 1/12 is pinned by
    //   -12 E+_{chi_-4}(tau/8) = h^(2)
    FracSeries eplus = mock_eisenstein_plus(DirichletCharacter::kronecker(-4), 8 * 60);
    FracSeries lhs2 = v_rescale(eplus, 1, 8).scaled(Rational(-12));
    CHECK(series_equal(lhs2, h2));
}
