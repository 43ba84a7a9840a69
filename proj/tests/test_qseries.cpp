#include <qmock/qseries.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace qmock;
using testsupport::Rng;

namespace {

FracSeries from_terms(std::int64_t den, std::int64_t lead, std::int64_t prec,
                      std::initializer_list<std::pair<std::int64_t, long>> terms) {
    FracSeries f(den, lead, prec);
    for (auto [i, c] : terms) f.set_coeff(i, Rational(c));
    return f;
}

}  // namespace

TEST_CASE("add tracks the minimum precision", "[qseries]") {
    FracSeries f = from_terms(1, 1, 10, {{1, 1}, {4, 1}});   // q + q^4, prec 10
    FracSeries g = from_terms(1, 1, 6, {{1, -1}});           // -q, prec 6
    FracSeries s = add(f, g);
    CHECK(s.prec() == 6);
    CHECK(s.coeff_at_integer(1).is_zero());
    CHECK(s.coeff_at_integer(4) == Scalar(Rational(1)));
}

TEST_CASE("mul precision contract", "[qseries]") {
    // q^-1 (1 + q) times q (1 - q): product is 1 - q^2 but only [0, 2) is valid
    FracSeries f = from_terms(1, -1, 1, {{-1, 1}, {0, 1}});
    FracSeries g = from_terms(1, 1, 3, {{1, 1}, {2, -1}});
    FracSeries p = mul(f, g);
    CHECK(p.lead() == 0);
    CHECK(p.prec() == 2);
    CHECK(p.coeff_at_integer(0) == Scalar(Rational(1)));
    CHECK(p.coeff_at_integer(1).is_zero());
    CHECK_THROWS_AS(p.coeff_at_integer(2), std::out_of_range);

    // with longer inputs the q^2 coefficient becomes visible
    FracSeries f2 = from_terms(1, -1, 5, {{-1, 1}, {0, 1}});
    FracSeries g2 = from_terms(1, 1, 7, {{1, 1}, {2, -1}});
    FracSeries p2 = mul(f2, g2);
    CHECK(p2.coeff_at_integer(2) == Scalar(Rational(-1)));
}

TEST_CASE("lattice unification uses the lcm", "[qseries]") {
    FracSeries f = FracSeries::monomial(Rational(1), 1, 2, 8);   // q^{1/2}
    FracSeries g = FracSeries::monomial(Rational(1), 1, 3, 9);   // q^{1/3}
    FracSeries p = mul(f, g);
    CHECK(p.den() == 6);
    CHECK(p.coeff(5) == Scalar(Rational(1)));  // q^{5/6}
}

TEST_CASE("division by a theta-like sparse series", "[qseries]") {
    // g = q - q^25 - q^49 + q^121 + q^169, the start of an eta(24tau)-style
    // expansion; 1/g = q^-1 + q^23 + 2 q^47 + ...
    FracSeries g = from_terms(1, 1, 200, {{1, 1}, {25, -1}, {49, -1}, {121, 1}, {169, 1}});
    FracSeries one = FracSeries::constant(Rational(1), 200);
    FracSeries r = div(one, g);
    CHECK(r.lead() == -1);
    CHECK(r.prec() == 198);
    CHECK(r.coeff_at_integer(-1) == Scalar(Rational(1)));
    CHECK(r.coeff_at_integer(23) == Scalar(Rational(1)));
    CHECK(r.coeff_at_integer(47) == Scalar(Rational(2)));
    for (std::int64_t i : {0, 1, 2, 10, 22, 24, 46})
        CHECK(r.coeff_at_integer(i).is_zero());

    // mul round-trip agrees with the dividend on the overlap
    CHECK(series_equal(mul(r, g), one));
}

TEST_CASE("div identities", "[qseries]") {
    Rng rng(424242);
    FracSeries f = testsupport::rand_series(rng, 1, -3, 2, 40);
    if (!f.order()) f.set_coeff(0, Rational(1));
    FracSeries q = div(f, f);
    CHECK(q.coeff_at_integer(0) == Scalar(Rational(1)));
    for (std::int64_t i = q.lead(); i < q.prec(); ++i)
        if (i != 0) CHECK(q.coeff(i).is_zero());

    FracSeries q3 = from_terms(1, 3, 10, {{3, 1}});
    FracSeries q1 = from_terms(1, 1, 10, {{1, 1}});
    FracSeries r = div(q3, q1);
    CHECK(r.coeff_at_integer(2) == Scalar(Rational(1)));

    FracSeries z(1, 0, 5);
    CHECK_THROWS_AS(div(q3, z), division_error);
}

TEST_CASE("u operator", "[qseries]") {
    FracSeries f = from_terms(1, 1, 30, {{1, 1}, {5, 1}, {25, 1}});
    FracSeries u = u_operator(f, 5);
    CHECK(u.prec() == 6);
    CHECK(u.coeff_at_integer(1) == Scalar(Rational(1)));
    CHECK(u.coeff_at_integer(5) == Scalar(Rational(1)));
    CHECK(u.coeff_at_integer(2).is_zero());

    CHECK(series_equal(u_operator(f, 1), f));

    // E2-style series built from a divisor-sum oracle: q^1 coefficient of
    // E2 | U(5) is -24 sigma_1(5) = -144
    FracSeries e2(1, 0, 40);
    e2.set_coeff(0, Rational(1));
    for (std::int64_t n = 1; n < 40; ++n) {
        long s = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) s += d;
        e2.set_coeff(n, Rational(-24 * s));
    }
    CHECK(u_operator(e2, 5).coeff_at_integer(1) == Scalar(Rational(-144)));

    FracSeries frac = FracSeries::monomial(Rational(1), 1, 2, 8);
    CHECK_THROWS_AS(u_operator(frac, 2), lattice_error);
}

TEST_CASE("u operator composition", "[qseries]") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t p = (trial % 2) ? 3 : 5;
        FracSeries f = testsupport::rand_series(rng, 1, -4, 3, 220);
        CHECK(series_equal(u_operator(u_operator(f, p), p), u_operator(f, p * p)));
    }
}

TEST_CASE("v rescale", "[qseries]") {
    FracSeries f = from_terms(1, 0, 2, {{0, 1}, {1, -24}});  // 1 - 24q
    FracSeries r = v_rescale(f, 24);
    CHECK(r.den() == 1);
    CHECK(r.coeff_at_integer(0) == Scalar(Rational(1)));
    CHECK(r.coeff_at_integer(24) == Scalar(Rational(-24)));
    CHECK(r.prec() == 48);

    FracSeries q = from_terms(1, 1, 5, {{1, 1}});
    FracSeries e = v_rescale(q, 1, 8);
    CHECK(e.den() == 8);
    CHECK(e.coeff(1) == Scalar(Rational(1)));  // q^{1/8}

    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        FracSeries g = testsupport::rand_series(rng, 2, -3, 3, 30);
        CHECK(series_equal(v_rescale(v_rescale(g, 8), 1, 8), g));
    }
}

TEST_CASE("v rescale then U recovers integral series", "[qseries]") {
    Rng rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t n = 2 + (trial % 5);
        FracSeries f = testsupport::rand_series(rng, 1, 0, 2, 40);
        CHECK(series_equal(u_operator(v_rescale(f, n), n), f));
    }
}

TEST_CASE("series reduction mod p^k", "[qseries]") {
    FracSeries f = from_terms(1, 1, 5, {{1, -24}});
    FracSeries r = reduce_series_mod(f, 5, 1);
    CHECK(r.coeff_at_integer(1) == Scalar(Rational(1)));

    FracSeries bad(1, 0, 4);
    bad.set_coeff(1, Rational(1, 6));
    try {
        reduce_series_mod(bad, 2, 1);
        FAIL("expected series_non_integral_error");
    } catch (const series_non_integral_error& e) {
        CHECK(e.index == 1);
        CHECK(e.den == 1);
    }
}

TEST_CASE("precision contract under doubled inputs", "[qseries][properties]") {
    Rng rng(20250101);
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t prec = 24;
        FracSeries f = testsupport::rand_series(rng, 1, -2, 2, prec);
        FracSeries g = testsupport::rand_series(rng, 1, -2, 2, prec);
        FracSeries f2 = testsupport::extend_series(rng, f, 2 * prec);
        FracSeries g2 = testsupport::extend_series(rng, g, 2 * prec);

        CHECK(series_equal(add(f, g), add(f2, g2).truncated(add(f, g).prec())));
        FracSeries m = mul(f, g);
        CHECK(series_equal(m, mul(f2, g2).truncated(m.prec())));

        if (auto v = g.order()) {
            FracSeries d = div(f, g);
            FracSeries d2 = div(f2, g2);
            if (*v == *g2.order()) CHECK(series_equal(d, d2.truncated(d.prec())));
        }
    }
}

TEST_CASE("div then mul round-trip on random unit-order divisors", "[qseries][properties]") {
    Rng rng(31415);
    for (int trial = 0; trial < 100; ++trial) {
        FracSeries f = testsupport::rand_series(rng, 1, -3, 3, 40);
        FracSeries g = testsupport::rand_series(rng, 1, -2, 2, 40);
        g.set_coeff(g.lead(), Rational(testsupport::rand_int(rng, 1, 9)));  // unit order
        FracSeries quotient = div(f, g);
        FracSeries back = mul(quotient, g);
        std::int64_t hi = std::min(back.prec(), f.prec());
        CHECK(series_equal(back.truncated(hi), f.truncated(hi)));
    }
}

TEST_CASE("multiplication is deterministic across worker counts", "[qseries][properties]") {
    Rng rng(606);
    FracSeries f = testsupport::rand_series(rng, 1, 0, 1, 5000, 0.9);
    FracSeries g = testsupport::rand_series(rng, 1, 0, 1, 5000, 0.9);
    config::set_worker_threads(1);
    FracSeries p1 = mul(f, g);
    config::set_worker_threads(4);
    FracSeries p4 = mul(f, g);
    config::set_worker_threads(1);
    REQUIRE(p1.prec() == p4.prec());
    for (std::int64_t i = p1.lead(); i < p1.prec(); ++i) {
        if (!(p1.coeff(i) == p4.coeff(i))) {
            FAIL("worker-count mismatch at index " << i);
        }
    }
    SUCCEED("bit-identical across worker counts");
}

TEST_CASE("karatsuba path agrees with schoolbook", "[qseries][properties]") {
    Rng rng(808);
    FracSeries f = testsupport::rand_series(rng, 1, 0, 1, 700, 0.95);
    FracSeries g = testsupport::rand_series(rng, 1, 0, 1, 700, 0.95);
    std::size_t saved = config::karatsuba_threshold();
    config::set_karatsuba_threshold(1u << 30);
    FracSeries school = mul(f, g);
    config::set_karatsuba_threshold(64);
    FracSeries kara = mul(f, g);
    config::set_karatsuba_threshold(saved);
    CHECK(series_equal(school, kara));
}
