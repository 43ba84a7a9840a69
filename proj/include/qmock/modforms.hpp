#pragma once

#include <qmock/characters.hpp>
#include <qmock/combinatorics.hpp>
#include <qmock/qseries.hpp>
#include <qmock/scalar.hpp>

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

// q-expansions of the classical cast: Dedekind eta quotients with a
// match-and-verify identifier, Shimura theta functions, E2, G_k and the
// twisted Eisenstein series with generalized-Bernoulli constant terms.
namespace qmock {

// ---------------------------------------------------------------------------
// Eta quotients prod eta(d tau)^{r_d}.
// ---------------------------------------------------------------------------
struct EtaQuotient {
    // (d, r_d) with distinct ascending d and nonzero r_d; empty means 1
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;

    Rational weight() const {
        std::int64_t s = 0;
        for (auto [d, r] : terms) s += r;
        return Rational(s, 2);
    }
    Rational order_at_infinity() const {
        std::int64_t s = 0;
        for (auto [d, r] : terms) s += d * r;
        return Rational(s, 24);
    }
    std::string to_string() const {
        if (terms.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i) out += " * ";
            out += "eta(" + std::to_string(terms[i].first) + ")^" + std::to_string(terms[i].second);
        }
        return out;
    }
};

namespace detail {

// prod_{n>=1} (1 - q^{dn}) as a sparse pentagonal series on the 1/24 lattice,
// valid below `prec` lattice units.
inline FracSeries pentagonal_factor(std::int64_t d, std::int64_t prec) {
    FracSeries out(24, 0, prec);
    out.set_coeff(0, Rational(1));
    for (std::int64_t k = 1;; ++k) {
        std::int64_t g1 = k * (3 * k - 1) / 2;  // pentagonal numbers
        std::int64_t g2 = k * (3 * k + 1) / 2;
        std::int64_t u1 = 24 * d * g1, u2 = 24 * d * g2;
        if (u1 >= prec && u2 >= prec) break;
        Scalar sign{Rational(k % 2 ? -1 : 1)};
        if (u1 < prec) out.set_coeff(u1, sign);
        if (u2 < prec) out.set_coeff(u2, sign);
    }
    return out;
}

}  // namespace detail

// Expansion of an eta quotient, exact below `prec` lattice units on the 1/24
// lattice. Each factor is Euler's pentagonal series; inverse factors are
// realized by series division (which is the pentagonal recurrence).
inline FracSeries eta_expansion(const EtaQuotient& e, std::int64_t prec) {
    std::int64_t shift = 0;
    for (auto [d, r] : e.terms) shift += d * r;  // lattice units of q^{sum d r / 24}
    std::int64_t unit_prec = prec - shift;
    if (unit_prec < 1)
        throw std::invalid_argument("eta_expansion: precision does not reach the leading term");

    FracSeries num(24, 0, unit_prec);
    num.set_coeff(0, Rational(1));
    FracSeries den = num;
    bool have_den = false;
    for (auto [d, r] : e.terms) {
        if (d < 1) throw std::domain_error("eta_expansion: eta arguments must be positive");
        FracSeries factor = detail::pentagonal_factor(d, unit_prec);
        for (std::int64_t i = 0; i < (r < 0 ? -r : r); ++i) {
            if (r > 0) num = mul(num, factor);
            else { den = mul(den, factor); have_den = true; }
        }
    }
    FracSeries unit = have_den ? div(num, den) : num;
    return unit.shifted(shift);
}

// ---------------------------------------------------------------------------
// Shimura theta functions.
// ---------------------------------------------------------------------------
struct ThetaSpec {
    DirichletCharacter character;
    Rational weight;        // 1/2 (even psi) or 3/2 (odd psi)
    std::int64_t level;     // 4 f^2
    std::string nebentypus; // psi, or psi * chi_-4 in the odd case
};

inline ThetaSpec theta_spec(const DirichletCharacter& psi) {
    if (!psi.is_primitive() || psi.modulus() <= 1)
        throw std::domain_error("theta: character must be primitive with conductor > 1");
    std::int64_t f = psi.modulus();
    return ThetaSpec{
        psi,
        psi.parity() == 0 ? Rational(1, 2) : Rational(3, 2),
        4 * f * f,
        psi.parity() == 0 ? psi.label() : psi.label() + " * chi_-4",
    };
}

// theta_psi = sum psi(n) q^{n^2} (even psi) or sum psi(n) n q^{n^2} (odd psi).
inline FracSeries theta_psi(const DirichletCharacter& psi, std::int64_t prec) {
    if (!psi.is_primitive() || psi.modulus() <= 1)
        throw std::domain_error("theta: character must be primitive with conductor > 1");
    if (prec < 2) throw std::invalid_argument("theta: prec must exceed 1");
    FracSeries out(1, 1, prec);
    for (std::int64_t n = 1; n * n < prec; ++n) {
        const Scalar& c = psi(n);
        if (c.is_zero()) continue;
        out.set_coeff(n * n, psi.parity() == 0 ? c : c * Scalar(Rational(n)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bernoulli machinery for Eisenstein constant terms.
// ---------------------------------------------------------------------------

// B_n in the even-index convention (B_1 = -1/2), memoized.
inline Rational bernoulli_number(unsigned n) {
    static std::vector<Rational> cache{Rational(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        unsigned m = static_cast<unsigned>(cache.size());
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rational acc;
        for (unsigned j = 0; j < m; ++j) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
            acc += Rational(binom) * cache[j];
        }
        cache.push_back(-acc / Rational(mpz_class(m + 1)));
    }
    return cache[n];
}

inline Rational bernoulli_polynomial_at(unsigned k, const Rational& x) {
    Rational acc;
    for (unsigned j = 0; j <= k; ++j) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), k, j);
        acc += Rational(binom) * bernoulli_number(j) * x.pow(static_cast<long>(k - j));
    }
    return acc;
}

// B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f)
inline Scalar generalized_bernoulli(unsigned k, const DirichletCharacter& chi) {
    std::int64_t f = chi.modulus();
    Scalar acc;
    for (std::int64_t a = 1; a <= f; ++a) {
        const Scalar& c = chi(a);
        if (c.is_zero()) continue;
        acc = acc + c * Scalar(bernoulli_polynomial_at(k, Rational(a, f)));
    }
    return acc * Scalar(Rational(mpz_class(f)).pow(static_cast<long>(k) - 1));
}

// ---------------------------------------------------------------------------
// Eisenstein series.
// ---------------------------------------------------------------------------

// E2 = 1 - 24 sum sigma_1(n) q^n
inline FracSeries eisenstein_e2(std::int64_t prec) {
    if (prec < 1) throw std::invalid_argument("eisenstein_e2: prec must be positive");
    std::vector<mpz_class> s1(static_cast<std::size_t>(prec));
    for (std::int64_t d = 1; d < prec; ++d)
        for (std::int64_t m = d; m < prec; m += d) s1[static_cast<std::size_t>(m)] += d;
    FracSeries out(1, 0, prec);
    out.set_coeff(0, Rational(1));
    for (std::int64_t n = 1; n < prec; ++n)
        out.set_coeff(n, Rational(mpz_class(mpz_class(-24) * s1[static_cast<std::size_t>(n)])));
    return out;
}

// G_k = (1/2) zeta(1-k) + sum sigma_{k-1}(n) q^n, k >= 2 even
inline FracSeries eisenstein_gk(unsigned k, std::int64_t prec) {
    if (k < 2 || k % 2 != 0) throw std::domain_error("G_k: k must be even and at least 2");
    if (prec < 1) throw std::invalid_argument("G_k: prec must be positive");
    FracSeries out(1, 0, prec);
    // (1/2) zeta(1-k) = -B_k / (2k)
    out.set_coeff(0, -bernoulli_number(k) / Rational(2 * static_cast<long>(k)));
    std::vector<mpz_class> sums(static_cast<std::size_t>(prec));
    for (std::int64_t d = 1; d < prec; ++d) {
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), k - 1);
        for (std::int64_t m = d; m < prec; m += d) sums[static_cast<std::size_t>(m)] += dk;
    }
    for (std::int64_t n = 1; n < prec; ++n)
        out.set_coeff(n, Rational(sums[static_cast<std::size_t>(n)]));
    return out;
}

enum class EisensteinTwist {
    divisor,    // G_{k,chi}: sum chi(d) d^{k-1}, constant (1/2) L(1-k, chi)
    codivisor,  // G-hat_{k,chi}: sum chi(n/d) d^{k-1}, no constant term
};

inline FracSeries eisenstein_gk_chi(unsigned k, const DirichletCharacter& chi, EisensteinTwist variant,
                                    std::int64_t prec) {
    if (k <= 2) throw std::domain_error("twisted Eisenstein series require k > 2");
    bool k_even = k % 2 == 0;
    bool chi_even = chi.parity() == 0;
    if (k_even != chi_even)
        throw std::domain_error("twisted Eisenstein series require (-1)^k = chi(-1)");
    if (prec < 1) throw std::invalid_argument("G_k_chi: prec must be positive");

    FracSeries out(1, 0, prec);
    if (variant == EisensteinTwist::divisor) {
        // (1/2) L(1-k, chi) = -B_{k,chi} / (2k)
        Scalar l = generalized_bernoulli(k, chi) * Scalar(Rational(-1, 2 * static_cast<long>(k)));
        if (!l.is_zero()) out.set_coeff(0, std::move(l));
    }
    for (std::int64_t d = 1; d < prec; ++d) {
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), k - 1);
        Scalar dpow{Rational(dk)};
        for (std::int64_t m = 1; d * m < prec; ++m) {
            const Scalar& c = variant == EisensteinTwist::divisor ? chi(d) : chi(m);
            if (c.is_zero()) continue;
            out.add_to_coeff(d * m, c * dpow);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Eta-quotient matcher: match-and-verify, not a proof. Peels the Euler
// exponents e_m of the target (target = q^{e*} prod (1-q^m)^{e_m}), inverts
// over the divisors of the level to a unique candidate exponent vector, and
// then verifies the candidate's full expansion coefficientwise.
// ---------------------------------------------------------------------------
struct EtaMatchResult {
    bool found = false;
    EtaQuotient quotient;                  // meaningful when found
    std::int64_t verified_coefficients = 0;  // target-lattice coefficients compared
    std::string note;
};

// The default exponent bound is 10: the largest exponent among the six
// theta-function quotients is 9, at eta(16) in the discriminant -8 case.
inline EtaMatchResult eta_match(const FracSeries& target, std::int64_t level, const Rational& weight,
                                std::int64_t bound = 10, std::int64_t check_terms = 500) {
    auto fail = [](std::string why) {
        EtaMatchResult r;
        r.note = std::move(why);
        return r;
    };
    if (level < 1) throw std::domain_error("eta_match: level must be positive");

    auto v_opt = target.order();
    if (!v_opt) return fail("target vanishes to its precision");
    const std::int64_t v = *v_opt;
    if (!target.coeff(v).is_one()) return fail("leading coefficient is not 1");

    const std::int64_t step = target.den();  // lattice units per integer q-power
    const std::int64_t avail = target.prec() - v;
    for (std::int64_t i = 1; i < avail; ++i) {
        if (i % step != 0 && !target.coeff(v + i).is_zero())
            return fail("support is off the integer q-lattice above the leading term");
    }
    const std::int64_t max_steps = (avail - 1) / step;
    if (max_steps < 1) return fail("not enough coefficients to peel");

    std::vector<std::int64_t> divisors;
    for (std::int64_t d = 1; d <= level; ++d)
        if (level % d == 0) divisors.push_back(d);
    const std::int64_t cap = bound * static_cast<std::int64_t>(divisors.size());

    // u[j] = coefficient of q^{e* + j}
    std::vector<Scalar> u(static_cast<std::size_t>(max_steps) + 1);
    for (std::int64_t j = 0; j <= max_steps; ++j) u[static_cast<std::size_t>(j)] = target.coeff(v + j * step);

    std::map<std::int64_t, std::int64_t> euler;
    for (std::int64_t m = 1; m <= max_steps; ++m) {
        const Scalar& a = u[static_cast<std::size_t>(m)];
        if (a.is_zero()) continue;
        if (!a.is_rational() || !a.rational().is_integer())
            return fail("nonintegral Euler exponent at q^" + std::to_string(m));
        mpz_class e_z = -a.rational().num();
        if (mpz_cmpabs_ui(e_z.get_mpz_t(), static_cast<unsigned long>(cap)) > 0)
            return fail("Euler exponent exceeds the search cap at q^" + std::to_string(m));
        std::int64_t e = mpz_get_si(e_z.get_mpz_t());
        euler[m] = e;
        // strip (1 - q^m)^e from u
        for (std::int64_t t = 0; t < (e < 0 ? -e : e); ++t) {
            if (e > 0) {
                for (std::int64_t j = m; j <= max_steps; ++j)
                    u[static_cast<std::size_t>(j)] =
                        u[static_cast<std::size_t>(j)] + u[static_cast<std::size_t>(j - m)];
            } else {
                for (std::int64_t j = max_steps; j >= m; --j)
                    u[static_cast<std::size_t>(j)] =
                        u[static_cast<std::size_t>(j)] - u[static_cast<std::size_t>(j - m)];
            }
        }
    }

    // invert e_d = sum_{c | d} r_c over the level's divisors; divisors beyond
    // the peel reach carry no information, so the candidate takes r_d = 0
    // there and the final verification has the last word
    std::map<std::int64_t, std::int64_t> r;
    EtaQuotient candidate;
    for (std::int64_t d : divisors) {
        if (d > max_steps) {
            r[d] = 0;
            continue;
        }
        auto it = euler.find(d);
        std::int64_t e_d = it == euler.end() ? 0 : it->second;
        std::int64_t r_d = e_d;
        for (std::int64_t c : divisors) {
            if (c >= d) break;
            if (d % c == 0) r_d -= r[c];
        }
        r[d] = r_d;
        if (r_d == 0) continue;
        if (r_d > bound || r_d < -bound)
            return fail("candidate exponent " + std::to_string(r_d) + " at eta(" + std::to_string(d) +
                        ") exceeds the bound");
        candidate.terms.emplace_back(d, r_d);
    }

    if (candidate.weight() != weight) return fail("candidate weight " + candidate.weight().to_string() +
                                                  " does not match " + weight.to_string());
    if (candidate.order_at_infinity() != Rational(v, target.den()))
        return fail("candidate order at infinity does not match the leading exponent");

    // full verification against every available coefficient up to check_terms
    std::int64_t common = std::lcm<std::int64_t>(24, target.den());
    std::int64_t target_prec_common = target.prec() * (common / target.den());
    std::int64_t want_prec_common = (v + (check_terms + 1) * step) * (common / target.den());
    std::int64_t prec24 = std::min(target_prec_common, want_prec_common) / (common / 24);
    FracSeries expansion = eta_expansion(candidate, std::max<std::int64_t>(prec24, 2));
    SeriesComparison cmp = compare_series(expansion, target);
    EtaMatchResult result;
    result.quotient = candidate;
    if (!cmp.equal) {
        result.found = false;
        result.note = "candidate expansion mismatches target at lattice index " +
                      std::to_string(cmp.mismatch_index) + "/" + std::to_string(cmp.den);
        return result;
    }
    result.found = true;
    result.verified_coefficients = (cmp.hi - cmp.lo) * target.den() / cmp.den;
    result.note = "verified " + std::to_string(result.verified_coefficients) + " coefficients";
    return result;
}

}  // namespace qmock
