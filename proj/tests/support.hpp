#pragma once

#include <qmock/qseries.hpp>
#include <qmock/scalar.hpp>

#include <cstdint>
#include <random>

// Deterministic generators and small independent oracles shared by the test
// suites. Everything here is intentionally separate from the library code
// paths it checks.
namespace testsupport {

using qmock::Cyclotomic;
using qmock::Rational;
using qmock::Scalar;

using Rng = std::mt19937_64;

inline long rand_int(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rational rand_rational(Rng& rng, long num_bound = 50, long den_bound = 20) {
    long n = rand_int(rng, -num_bound, num_bound);
    long d = rand_int(rng, 1, den_bound);
    return Rational(n, d);
}

inline Rational rand_nonzero_rational(Rng& rng) {
    for (;;) {
        Rational r = rand_rational(rng);
        if (!r.is_zero()) return r;
    }
}

inline Cyclotomic rand_cyclotomic(Rng& rng, unsigned order) {
    std::vector<Rational> coords(qmock::detail::euler_phi(order));
    for (auto& c : coords) c = rand_rational(rng, 9, 5);
    return Cyclotomic(order, std::move(coords));
}

inline Scalar rand_scalar(Rng& rng, unsigned order = 0) {
    if (order < 3) return Scalar(rand_rational(rng));
    return Scalar(rand_cyclotomic(rng, order));
}

inline qmock::FracSeries rand_series(Rng& rng, std::int64_t den, std::int64_t lead_lo,
                                     std::int64_t lead_hi, std::int64_t prec,
                                     double density = 0.7) {
    std::int64_t lead = rand_int(rng, lead_lo, lead_hi);
    qmock::FracSeries f(den, lead, prec);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::int64_t i = lead; i < prec; ++i)
        if (coin(rng) < density) f.set_coeff(i, Rational(rand_int(rng, -20, 20), rand_int(rng, 1, 6)));
    return f;
}

// Same lead/content but a longer validity window, for precision-contract
// checks: extended coefficients are freshly random.
inline qmock::FracSeries extend_series(Rng& rng, const qmock::FracSeries& f, std::int64_t new_prec) {
    qmock::FracSeries g(f.den(), f.lead(), new_prec);
    for (std::int64_t i = f.lead(); i < f.prec(); ++i) g.set_coeff(i, f.coeff(i));
    for (std::int64_t i = f.prec(); i < new_prec; ++i)
        g.set_coeff(i, Rational(rand_int(rng, -20, 20), rand_int(rng, 1, 6)));
    return g;
}

// Extended-Euclid oracle: multiplicative inverse of a mod m, independent of
// the GMP-backed path in the library.
inline std::int64_t inverse_mod_oracle(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = a % m, r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    std::int64_t inv = old_s % m;
    if (inv < 0) inv += m;
    return inv;
}

}  // namespace testsupport
