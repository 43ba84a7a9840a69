#pragma once

#include <qmock/characters.hpp>
#include <qmock/combinatorics.hpp>
#include <qmock/mockeis.hpp>
#include <qmock/modforms.hpp>
#include <qmock/qseries.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// The U(p^b) congruence machinery: the p-power-spaced correction sum in its
// two equivalent forms, the divisor-forcing congruence, the E2 level-raising
// holomorphization, and the coefficientwise certificate for the product
// congruence (theta_psi(p^{2a} tau) E+_psi(tau)) | U(p^b) mod p^{min(a,b)}.
namespace qmock {

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace detail {
inline std::int64_t ipow(std::int64_t base, std::int64_t e) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < e; ++i) {
        if (r > (1LL << 40) / base) throw std::overflow_error("prime power too large");
        r *= base;
    }
    return r;
}
}  // namespace detail

// Structured verdict of a coefficientwise congruence check mod p^k.
struct CongruenceReport {
    std::string check;
    std::int64_t p = 0;
    std::int64_t a = 0, b = 0;
    mpz_class modulus;
    std::int64_t lo = 0, hi = 0;  // checked exponent range [lo, hi), integer lattice
    bool holds = false;
    std::int64_t failing_exponent = 0;  // meaningful when !holds
    std::string residue;                // offending residue (scalar string)
    std::string note;
};

enum class CorrectionForm {
    difference,  // enumerate (p^a m)^2 - n^2 = r directly
    divisor,     // rewrite as a sum over small divisors of r
};

// sum_{r>=1} ( sum_{(p^a m)^2 - n^2 = r, m,n >= 0} psi(mn) (p^a m - n) ) q^r.
// The divisor form runs over d | r with d <= r/d, d + r/d = 0 (mod 2 p^a),
// d - r/d even, with twist psi(((r/d)^2 - d^2)/(4 p^a)); the two forms agree
// (a tested invariant).
inline FracSeries correction_sum_p(const DirichletCharacter& psi, std::int64_t p, std::int64_t a,
                                   std::int64_t prec, CorrectionForm form = CorrectionForm::difference) {
    if (!is_prime(p)) throw std::domain_error("correction_sum_p: p must be prime");
    if (a < 1) throw std::domain_error("correction_sum_p: a must be at least 1");
    if (prec < 2) throw std::invalid_argument("correction_sum_p: prec must exceed 1");
    const std::int64_t pa = detail::ipow(p, a);
    FracSeries out(1, 1, prec);
    if (form == CorrectionForm::difference) {
        for (std::int64_t m = 1; 2 * pa * m - 1 < prec; ++m) {
            for (std::int64_t n = pa * m - 1; n >= 0; --n) {
                std::int64_t r = pa * m * pa * m - n * n;
                if (r >= prec) break;
                const Scalar& c = psi(m * n);
                if (c.is_zero()) continue;
                out.add_to_coeff(r, c * Scalar(Rational(pa * m - n)));
            }
        }
        return out;
    }
    for (std::int64_t r = 1; r < prec; ++r) {
        for (std::int64_t d = 1; d * d <= r; ++d) {
            if (r % d != 0) continue;
            std::int64_t e = r / d;
            if ((d + e) % (2 * pa) != 0) continue;
            if ((e - d) % 2 != 0) continue;
            const Scalar& c = psi((e * e - d * d) / (4 * pa));
            if (c.is_zero()) continue;
            out.add_to_coeff(r, c * Scalar(Rational(d)));
        }
    }
    return out;
}

namespace detail {

// First exponent in [lo, hi) whose coefficient does not reduce to zero mod
// p^k, if any.
inline std::optional<std::int64_t> first_nonzero_residue(const FracSeries& f, std::int64_t p, unsigned k,
                                                         Scalar* residue_out) {
    FracSeries red = reduce_series_mod(f, p, k);
    if (auto idx = red.order()) {
        if (residue_out) *residue_out = red.coeff(*idx);
        return idx;
    }
    return std::nullopt;
}

}  // namespace detail

// Divisor forcing: the coefficients of correction_sum_p | U(p^b) are all
// divisible by p^{min(a,b)} because d + p^b r/d = 0 (mod 2 p^a) forces
// d = 0 (mod p^{min(a,b)}).
inline CongruenceReport check_divisor_forcing(const DirichletCharacter& psi, std::int64_t p,
                                              std::int64_t a, std::int64_t b, std::int64_t prec) {
    if (!is_prime(p) || p <= 3) throw std::domain_error("check_divisor_forcing: p must be a prime > 3");
    if (a < 1 || b < 1) throw std::domain_error("check_divisor_forcing: a and b must be at least 1");
    const std::int64_t pb = detail::ipow(p, b);
    const unsigned t = static_cast<unsigned>(a < b ? a : b);

    FracSeries c = correction_sum_p(psi, p, a, pb * prec + 1);
    FracSeries cu = u_operator(c, pb);

    CongruenceReport rep;
    rep.check = "divisor-forcing[" + psi.label() + "]";
    rep.p = p;
    rep.a = a;
    rep.b = b;
    mpz_pow_ui(rep.modulus.get_mpz_t(), mpz_class(p).get_mpz_t(), t);
    rep.lo = cu.lead();
    rep.hi = cu.prec();
    Scalar residue;
    if (auto bad = detail::first_nonzero_residue(cu, p, t, &residue)) {
        rep.holds = false;
        rep.failing_exponent = *bad;
        rep.residue = residue.to_string();
    } else {
        rep.holds = true;
        rep.note = "every coefficient of the U(p^b) image vanishes mod p^min(a,b)";
    }
    return rep;
}

// Negative control: smallest exponent where the U(p^b) image fails mod
// p^{min(a,b)+1}, if one exists below prec.
inline std::optional<std::int64_t> find_forcing_witness(const DirichletCharacter& psi, std::int64_t p,
                                                        std::int64_t a, std::int64_t b,
                                                        std::int64_t prec) {
    const std::int64_t pb = detail::ipow(p, b);
    const unsigned t = static_cast<unsigned>(a < b ? a : b);
    FracSeries cu = u_operator(correction_sum_p(psi, p, a, pb * prec + 1), pb);
    return detail::first_nonzero_residue(cu, p, t + 1, nullptr);
}

// E2(tau) - N E2(N tau): holomorphic of weight 2 on Gamma_0(N), and congruent
// to E2 mod N when N is a prime power.
inline FracSeries e2_holomorphized(std::int64_t N, std::int64_t prec) {
    if (N <= 1) throw std::domain_error("e2_holomorphized: N must exceed 1");
    FracSeries base = eisenstein_e2(prec);
    FracSeries rescaled = v_rescale(eisenstein_e2(prec / N + 2), N).scaled(Rational(N));
    return sub(base, rescaled).truncated(prec);
}

// Coefficientwise certificate for the Theorem-1.4-style congruence. With
//   P = theta_psi(p^{2a} tau) * E+_psi(tau)
//   C = correction_sum_p(psi, p, a)
//   Q = P + C                       (the holomorphic-projection image)
//   F = Q - alpha p^t R E2(N p^t tau),  R = theta(p^{2a} tau)/theta(tau)
// the check verifies (P|U + C|U = Q|U exactly) and then that
// P|U(p^b) - F|U(p^b) vanishes mod p^t, t = min(a,b). F is the stand-in for
// the weight-2 modular form of the theorem: its E2 content is holomorphized
// via E2 - p^t E2(p^t .), so the report certifies the congruence between
// computable series and says nothing about modularity.
inline CongruenceReport check_theorem_congruence(const DirichletCharacter& psi, std::int64_t p,
                                                 std::int64_t a, std::int64_t b, std::int64_t prec) {
    if (!is_prime(p) || p <= 3)
        throw std::domain_error("check_theorem_congruence: p must be a prime > 3");
    if (a < 1 || b < 1) throw std::domain_error("check_theorem_congruence: a and b must be at least 1");
    auto entry = AlphaRegistry::instance().lookup(psi);
    if (!entry)
        throw std::domain_error("check_theorem_congruence: no attested alpha for " + psi.label());

    CongruenceReport rep;
    rep.check = "theorem-congruence[" + psi.label() + "]";
    rep.p = p;
    rep.a = a;
    rep.b = b;
    const unsigned t = static_cast<unsigned>(a < b ? a : b);
    mpz_pow_ui(rep.modulus.get_mpz_t(), mpz_class(p).get_mpz_t(), t);

    if (entry->rescale % p == 0) {
        rep.holds = false;
        rep.note = "prime divides the lattice rescale";
        return rep;
    }
    const std::int64_t pb = detail::ipow(p, b);
    const std::int64_t p2a = detail::ipow(p, 2 * a);
    const std::int64_t pt = detail::ipow(p, t);
    const std::int64_t S = pb * prec + p2a + 4;

    FracSeries theta = theta_psi(psi, S);
    FracSeries theta_r = v_rescale(theta_psi(psi, S / p2a + 2), p2a);
    FracSeries eplus = mock_eisenstein_plus(psi, S);
    FracSeries product = mul(theta_r, eplus);
    FracSeries corr = correction_sum_p(psi, p, a, S);
    FracSeries quasi = add(product, corr);

    FracSeries pu = u_operator(product, pb);
    FracSeries cu = u_operator(corr, pb);
    FracSeries qu = u_operator(quasi, pb);
    if (!series_equal(add(pu, cu), qu))
        throw std::logic_error("U-operator failed linearity on the projection identity");

    // holomorphized stand-in for the theorem's modular form
    FracSeries ratio = div(theta_r, theta);
    std::int64_t tail_step = entry->rescale * pt;
    FracSeries e2_tail = v_rescale(eisenstein_e2(S / tail_step + 2), tail_step);
    Scalar coefficient = Scalar(entry->alpha * Rational(pt));
    FracSeries f_standin = sub(quasi, mul(ratio, e2_tail).scaled(coefficient));
    FracSeries fu = u_operator(f_standin, pb);

    FracSeries difference = sub(pu, fu);
    if (difference.prec() > prec) difference = difference.truncated(prec);
    rep.lo = difference.lead();
    rep.hi = difference.prec();
    try {
        Scalar residue;
        if (auto bad = detail::first_nonzero_residue(difference, p, t, &residue)) {
            rep.holds = false;
            rep.failing_exponent = *bad;
            rep.residue = residue.to_string();
        } else {
            rep.holds = true;
            rep.note = "product U(p^b)-image agrees with the holomorphized quasimodular image mod p^min(a,b)";
        }
    } catch (const series_non_integral_error& e) {
        rep.holds = false;
        rep.failing_exponent = e.index;
        rep.note = std::string("nonintegral coefficient for p = ") + std::to_string(p) + ": " + e.what();
    }
    return rep;
}

// Andrews' congruences spt(5n+4) = 0 (5), spt(7n+5) = 0 (7),
// spt(13n+6) = 0 (13), checked for all arguments up to the bound.
struct AndrewsReport {
    std::vector<CongruenceReport> progressions;
    bool all_hold = false;
};

inline AndrewsReport check_andrews_congruences(std::int64_t upto) {
    if (upto < 6) throw std::invalid_argument("check_andrews_congruences: bound too small");
    auto spt = spt_values(upto);
    const std::int64_t cases[3][2] = {{5, 4}, {7, 5}, {13, 6}};
    AndrewsReport report;
    report.all_hold = true;
    for (auto [p, r] : cases) {
        CongruenceReport rep;
        rep.check = "andrews[spt(" + std::to_string(p) + "n+" + std::to_string(r) + ")]";
        rep.p = p;
        rep.a = rep.b = 1;
        rep.modulus = p;
        rep.lo = r;
        rep.hi = upto + 1;
        rep.holds = true;
        for (std::int64_t n = r; n <= upto; n += p) {
            if (spt[static_cast<std::size_t>(n)] % p != 0) {
                rep.holds = false;
                rep.failing_exponent = n;
                rep.residue = mpz_class(spt[static_cast<std::size_t>(n)] % p).get_str();
                break;
            }
        }
        report.all_hold = report.all_hold && rep.holds;
        report.progressions.push_back(std::move(rep));
    }
    return report;
}

}  // namespace qmock
