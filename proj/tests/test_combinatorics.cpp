#include <qmock/combinatorics.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace qmock;

TEST_CASE("divisor power sums", "[combinatorics]") {
    CHECK(sigma_v(6, 1) == 12);
    CHECK(sigma_v(4, 3) == 73);
    CHECK(sigma_v(1, 5) == 1);
    CHECK(sigma_v(5, 1) == 6);

    DirichletCharacter chi = DirichletCharacter::kronecker(-4);
    CHECK(sigma_v_chi(5, 1, chi) == Scalar(Rational(6)));  // chi(1)*1 + chi(5)*5
    CHECK(sigma_v_chi(2, 1, chi) == Scalar(Rational(1)));  // chi(2) = 0
}

TEST_CASE("complementary divisor sums swap under d -> n/d", "[combinatorics]") {
    DirichletCharacter chi = DirichletCharacter::kronecker(12);
    DirichletCharacter cubic = DirichletCharacter::from_generator_images(7, {2});
    for (std::int64_t n = 1; n <= 120; ++n) {
        for (unsigned v : {1u, 2u, 3u}) {
            Scalar direct = sigma_v_chi_comp(n, v, chi);
            Scalar swapped;
            for (std::int64_t d = 1; d <= n; ++d) {
                if (n % d != 0) continue;
                mpz_class t;
                mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(n / d), v);
                swapped = swapped + chi(d) * Scalar(Rational(t));
            }
            CHECK(direct == swapped);
            CHECK(sigma_v_chi_comp(n, v, cubic) ==
                  [&] {
                      Scalar s;
                      for (std::int64_t d = 1; d <= n; ++d)
                          if (n % d == 0) {
                              mpz_class t;
                              mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(n / d), v);
                              s = s + cubic(d) * Scalar(Rational(t));
                          }
                      return s;
                  }());
        }
    }
}

TEST_CASE("small divisor sets", "[combinatorics]") {
    auto d12 = small_divisors(12);
    REQUIRE(d12.size() == 1);
    CHECK(d12[0].d == 2);
    CHECK(d12[0].codivisor == 6);
    CHECK(d12[0].twist_arg == 8);

    auto d9 = small_divisors(9);
    REQUIRE(d9.size() == 2);
    CHECK(d9[0].d == 1);
    CHECK(d9[1].d == 3);

    CHECK(small_divisors(2).empty());

    for (std::int64_t n = 1; n <= 400; ++n) {
        for (const auto& t : small_divisors(n)) {
            CHECK(t.d * t.codivisor == n);
            CHECK(t.d <= t.codivisor);
            CHECK((t.d & 1) == (t.codivisor & 1));
            CHECK(t.twist_arg >= 0);
            CHECK((t.codivisor * t.codivisor - t.d * t.d) % 4 == 0);
        }
    }
}

TEST_CASE("sigma_sm worked values", "[combinatorics]") {
    DirichletCharacter chi12 = DirichletCharacter::kronecker(12);
    DirichletCharacter chi2 = DirichletCharacter::kronecker(8);
    CHECK(sigma_sm(chi12, 24) == Scalar(Rational(-2)));
    CHECK(sigma_sm(chi12, 48) == Scalar(Rational(-4)));
    CHECK(sigma_sm(chi2, 24) == Scalar(Rational(-6)));
    CHECK(sigma_sm(chi12, 2).is_zero());
    CHECK(sigma_sm(chi2, 1).is_zero());
}

TEST_CASE("sigma_sm bijection: divisor route equals (m,r) sieve", "[combinatorics]") {
    for (const auto* spec : {"chi12", "chi24", "chi2", "chi-4", "chi-3", "mod:7:2"}) {
        DirichletCharacter psi = DirichletCharacter::parse(spec);
        FracSeries by_def = sigma_sm_series(psi, 400, SigmaSmRoute::divisor_definition);
        FracSeries by_sieve = sigma_sm_series(psi, 400, SigmaSmRoute::mr_sieve);
        auto cmp = compare_series(by_def, by_sieve);
        INFO("character " << spec << " first mismatch at "
                          << (cmp.equal ? -1 : cmp.mismatch_index));
        CHECK(cmp.equal);
    }
}

TEST_CASE("spt values", "[combinatorics]") {
    CHECK(spt_enumeration(1) == 1);
    CHECK(spt_enumeration(2) == 3);
    CHECK(spt_enumeration(3) == 5);
    CHECK(spt_enumeration(4) == 10);
    CHECK(spt_enumeration(5) == 14);
    CHECK(spt_enumeration(6) == 26);
    CHECK(spt_enumeration(4) % 5 == 0);  // Andrews spt(5n+4) at n=0

    auto vals = spt_values(60);
    for (int n = 1; n <= 60; ++n) {
        INFO("n = " << n);
        REQUIRE(vals[static_cast<std::size_t>(n)] == spt_enumeration(n));
    }

    CHECK_THROWS_AS(spt_enumeration(config::spt_enumeration_cap() + 1), std::domain_error);
}

TEST_CASE("cpt values", "[combinatorics]") {
    CHECK(cpt_enumeration(1) == 1);
    CHECK(cpt_enumeration(2) == 1);
    CHECK(cpt_enumeration(3) == 3);
    CHECK(cpt_enumeration(9) == 6);

    auto vals = cpt_values(200);
    for (std::int64_t n = 1; n <= 200; ++n) {
        INFO("n = " << n);
        REQUIRE(vals[static_cast<std::size_t>(n)] == cpt_enumeration(n));
    }
}
