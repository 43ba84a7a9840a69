#pragma once

#include <qmock/characters.hpp>
#include <qmock/config.hpp>
#include <qmock/qseries.hpp>
#include <qmock/scalar.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

// Divisor sums, the small-divisor set D_n and its twisted summatory function,
// and the partition statistics spt / cpt, each with an independent
// enumeration oracle next to the production series path.
namespace qmock {

// sigma_v(n) = sum of d^v over divisors d of n
inline mpz_class sigma_v(std::int64_t n, unsigned v) {
    if (n < 1) throw std::domain_error("sigma_v: n must be positive");
    mpz_class total = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), v);
        total += t;
        std::int64_t e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(e), v);
            total += t;
        }
    }
    return total;
}

// sigma_{v,chi}(n) = sum chi(d) d^v
inline Scalar sigma_v_chi(std::int64_t n, unsigned v, const DirichletCharacter& chi) {
    if (n < 1) throw std::domain_error("sigma_v_chi: n must be positive");
    Scalar total;
    for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        const Scalar& c = chi(d);
        if (c.is_zero()) continue;
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), v);
        total = total + c * Scalar(Rational(t));
    }
    return total;
}

// sigma'_{v,chi}(n) = sum chi(n/d) d^v
inline Scalar sigma_v_chi_comp(std::int64_t n, unsigned v, const DirichletCharacter& chi) {
    if (n < 1) throw std::domain_error("sigma_v_chi_comp: n must be positive");
    Scalar total;
    for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        const Scalar& c = chi(n / d);
        if (c.is_zero()) continue;
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), v);
        total = total + c * Scalar(Rational(t));
    }
    return total;
}

// One element of D_n: d | n with d <= n/d and d = n/d (mod 2), together with
// the twist argument ((n/d)^2 - d^2)/4.
struct SmallDivisorTerm {
    std::int64_t d;
    std::int64_t codivisor;
    std::int64_t twist_arg;
};

inline std::vector<SmallDivisorTerm> small_divisors(std::int64_t n) {
    if (n < 1) throw std::domain_error("small_divisors: n must be positive");
    std::vector<SmallDivisorTerm> out;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        std::int64_t e = n / d;
        if ((d & 1) != (e & 1)) continue;
        out.push_back({d, e, (e * e - d * d) / 4});
    }
    return out;
}

// sigma^sm_psi(n) over the small-divisor set (the defining route).
inline Scalar sigma_sm(const DirichletCharacter& psi, std::int64_t n) {
    Scalar total;
    for (const auto& t : small_divisors(n)) {
        const Scalar& c = psi(t.twist_arg);
        if (c.is_zero()) continue;
        total = total + c * Scalar(Rational(t.d));
    }
    return total;
}

enum class SigmaSmRoute {
    divisor_definition,  // per-n scan of D_n
    mr_sieve,            // enumerate m > r >= 1 with m^2 - r^2 <= bound
};

// Generating-series prefix sum_{1 <= n < prec} sigma^sm_psi(n) q^n. The sieve
// route is the production path (near-linear in prec); the divisor route fills
// the same prefix straight from the definition and exists so identity checks
// can compare genuinely independent pipelines.
inline FracSeries sigma_sm_series(const DirichletCharacter& psi, std::int64_t prec,
                                  SigmaSmRoute route = SigmaSmRoute::mr_sieve) {
    if (prec < 2) throw std::invalid_argument("sigma_sm_series: prec must exceed 1");
    FracSeries out(1, 1, prec);
    if (route == SigmaSmRoute::divisor_definition) {
        for (std::int64_t n = 1; n < prec; ++n) {
            Scalar s = sigma_sm(psi, n);
            if (!s.is_zero()) out.set_coeff(n, std::move(s));
        }
        return out;
    }
    for (std::int64_t m = 2; 2 * m - 1 < prec; ++m) {
        for (std::int64_t r = m - 1; r >= 1; --r) {
            std::int64_t n = m * m - r * r;
            if (n >= prec) break;
            const Scalar& c = psi(m * r);
            if (c.is_zero()) continue;
            out.add_to_coeff(n, c * Scalar(Rational(m - r)));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// spt: total number of smallest parts over all partitions of n.
// ---------------------------------------------------------------------------

namespace detail {
inline long long spt_walk(int remaining, int prev, long long run) {
    if (remaining == 0) return run;
    long long total = 0;
    int top = remaining < prev ? remaining : prev;
    for (int p = top; p >= 1; --p)
        total += spt_walk(remaining - p, p, p == prev ? run + 1 : 1);
    return total;
}
}  // namespace detail

// Enumeration oracle: walks every partition. Exponential-ish, capped by
// config::spt_enumeration_cap().
inline mpz_class spt_enumeration(int n) {
    if (n < 1) throw std::domain_error("spt: n must be positive");
    if (n > config::spt_enumeration_cap())
        throw std::domain_error("spt enumeration oracle capped at n = " +
                                std::to_string(config::spt_enumeration_cap()));
    return mpz_class(static_cast<long>(detail::spt_walk(n, n + 1, 0)));
}

// Series path: sum_{n>=1} q^n / ((1-q^n)^2 (q^{n+1}; q)_inf), accumulated
// with exact integers. Returns spt(0..upto) with spt(0) = 0.
inline std::vector<mpz_class> spt_values(std::int64_t upto) {
    if (upto < 0) throw std::domain_error("spt_values: bound must be nonnegative");
    const std::size_t P = static_cast<std::size_t>(upto);
    std::vector<mpz_class> spt(P + 1), R(P + 1), T(P + 1);
    R[0] = 1;  // 1/(q^{n+1}; q)_inf == 1 mod q^{P+1} at n = P
    for (std::size_t n = P; n >= 1; --n) {
        // T = q^n * R / (1 - q^n)^2
        for (std::size_t i = 0; i <= P; ++i) T[i] = i >= n ? R[i - n] : 0;
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = n; i <= P; ++i) T[i] += T[i - n];
        for (std::size_t i = n; i <= P; ++i) spt[i] += T[i];
        // advance R to 1/(q^n; q)_inf
        for (std::size_t i = n; i <= P; ++i) R[i] += R[i - n];
    }
    return spt;
}

inline FracSeries spt_generating_series(std::int64_t prec) {
    auto vals = spt_values(prec - 1);
    FracSeries out(1, 1, prec);
    for (std::int64_t n = 1; n < prec; ++n) out.set_coeff(n, Rational(vals[static_cast<std::size_t>(n)]));
    return out;
}

// ---------------------------------------------------------------------------
// cpt: total number of parts over all partitions of n into consecutive runs.
// ---------------------------------------------------------------------------

// Run enumeration: a + (a+1) + ... + b = n contributes b - a + 1.
inline mpz_class cpt_enumeration(std::int64_t n) {
    if (n < 1) throw std::domain_error("cpt: n must be positive");
    long long total = 0;
    for (std::int64_t L = 1; L * (L + 1) / 2 <= n; ++L) {
        std::int64_t rest = n - L * (L - 1) / 2;
        if (rest % L == 0 && rest / L >= 1) total += L;
    }
    return mpz_class(static_cast<long>(total));
}

// Series path: sum_{k>=1} k q^{k(k+1)/2} / (1 - q^k), expanded as arithmetic
// progressions. Returns cpt(0..upto) with cpt(0) = 0.
inline std::vector<mpz_class> cpt_values(std::int64_t upto) {
    if (upto < 0) throw std::domain_error("cpt_values: bound must be nonnegative");
    std::vector<mpz_class> cpt(static_cast<std::size_t>(upto) + 1);
    for (std::int64_t k = 1; k * (k + 1) / 2 <= upto; ++k) {
        for (std::int64_t e = k * (k + 1) / 2; e <= upto; e += k)
            cpt[static_cast<std::size_t>(e)] += k;
    }
    return cpt;
}

inline FracSeries cpt_generating_series(std::int64_t prec) {
    auto vals = cpt_values(prec - 1);
    FracSeries out(1, 1, prec);
    for (std::int64_t n = 1; n < prec; ++n) out.set_coeff(n, Rational(vals[static_cast<std::size_t>(n)]));
    return out;
}

}  // namespace qmock
