#pragma once

#include <qmock/config.hpp>
#include <qmock/scalar.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

// Truncated Laurent q-series on the exponent lattice (1/den)*Z with an
// explicit validity bound. All operations track precision pessimistically
// (min rule) and never read a coefficient at or beyond it.
namespace qmock {

class lattice_error : public std::invalid_argument {
public:
    explicit lattice_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Nonintegral coefficient hit during a mod-p^k reduction; carries the lattice
// position of the offender.
class series_non_integral_error : public non_integral_error {
public:
    series_non_integral_error(const std::string& msg, std::int64_t index, std::int64_t den)
        : non_integral_error(msg), index(index), den(den) {}
    std::int64_t index;  // lattice index of the offending exponent
    std::int64_t den;    // its lattice denominator
};

namespace detail {
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }
}  // namespace detail

class FracSeries {
public:
    // Zero-filled window [lead, prec) on the lattice (1/den)*Z.
    FracSeries(std::int64_t den, std::int64_t lead, std::int64_t prec)
        : den_(den), lead_(lead), prec_(prec), coeffs_(check_window(den, lead, prec)) {}

    FracSeries(std::int64_t den, std::int64_t lead, std::int64_t prec, std::vector<Scalar> coeffs)
        : den_(den), lead_(lead), prec_(prec), coeffs_(std::move(coeffs)) {
        check_window(den, lead, prec);
        if (coeffs_.size() != static_cast<std::size_t>(prec_ - lead_))
            throw std::invalid_argument("FracSeries: coefficient count must equal prec - lead");
    }

    static FracSeries zero(std::int64_t prec, std::int64_t den = 1) {
        return FracSeries(den, std::min<std::int64_t>(0, prec - 1), prec);
    }
    static FracSeries constant(const Scalar& c, std::int64_t prec) {
        FracSeries f(1, 0, prec);
        f.coeffs_[0] = c;
        return f;
    }
    // c * q^(num/den), valid below prec lattice units
    static FracSeries monomial(const Scalar& c, std::int64_t num, std::int64_t den, std::int64_t prec) {
        FracSeries f(den, num, prec);
        f.coeffs_[0] = c;
        return f;
    }

    std::int64_t den() const { return den_; }
    std::int64_t lead() const { return lead_; }
    std::int64_t prec() const { return prec_; }

    // Coefficient at lattice index i: implicit zero below lead, never read at
    // or beyond prec.
    const Scalar& coeff(std::int64_t i) const {
        if (i >= prec_) throw std::out_of_range("FracSeries: coefficient read beyond precision");
        if (i < lead_) return zero_scalar();
        return coeffs_[static_cast<std::size_t>(i - lead_)];
    }
    // Coefficient of q^e for integer e.
    const Scalar& coeff_at_integer(std::int64_t e) const { return coeff(e * den_); }

    void set_coeff(std::int64_t i, Scalar c) {
        if (i < lead_ || i >= prec_) throw std::out_of_range("FracSeries: coefficient write outside window");
        coeffs_[static_cast<std::size_t>(i - lead_)] = std::move(c);
    }
    void add_to_coeff(std::int64_t i, const Scalar& c) {
        if (i < lead_ || i >= prec_) throw std::out_of_range("FracSeries: coefficient write outside window");
        auto& slot = coeffs_[static_cast<std::size_t>(i - lead_)];
        slot = slot + c;
    }

    Rational exponent_of(std::int64_t i) const { return Rational(i, den_); }

    // First nonzero stored index, if any.
    std::optional<std::int64_t> order() const {
        for (std::int64_t i = lead_; i < prec_; ++i)
            if (!coeff(i).is_zero()) return i;
        return std::nullopt;
    }

    bool is_zero_to_precision() const { return !order().has_value(); }

    std::vector<std::int64_t> nonzero_indices() const {
        std::vector<std::int64_t> out;
        for (std::int64_t i = lead_; i < prec_; ++i)
            if (!coeff(i).is_zero()) out.push_back(i);
        return out;
    }

    // Refine the lattice to a multiple of the current denominator.
    FracSeries to_lattice(std::int64_t new_den) const {
        if (new_den % den_ != 0) throw lattice_error("to_lattice: target must refine the current lattice");
        std::int64_t s = new_den / den_;
        if (s == 1) return *this;
        FracSeries out(new_den, lead_ * s, prec_ * s);
        for (std::int64_t i = lead_; i < prec_; ++i) {
            if (!coeff(i).is_zero()) out.coeffs_[static_cast<std::size_t>((i - lead_) * s)] = coeff(i);
        }
        return out;
    }

    // Shift by q^(delta/den): adds delta to every lattice index. The validity
    // bound moves with the content.
    FracSeries shifted(std::int64_t delta) const {
        FracSeries out = *this;
        out.lead_ += delta;
        out.prec_ += delta;
        return out;
    }

    FracSeries scaled(const Scalar& c) const {
        FracSeries out = *this;
        for (auto& x : out.coeffs_)
            if (!x.is_zero()) x = x * c;
        return out;
    }

    FracSeries truncated(std::int64_t new_prec) const {
        if (new_prec > prec_) throw std::invalid_argument("truncated: cannot extend precision");
        if (new_prec <= lead_) throw std::invalid_argument("truncated: empty window");
        FracSeries out(den_, lead_, new_prec);
        std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::size_t>(new_prec - lead_),
                  out.coeffs_.begin());
        return out;
    }

    FracSeries operator-() const {
        FracSeries out = *this;
        for (auto& x : out.coeffs_)
            if (!x.is_zero()) x = -x;
        return out;
    }

private:
    static std::size_t check_window(std::int64_t den, std::int64_t lead, std::int64_t prec) {
        if (den < 1) throw lattice_error("FracSeries: den must be positive");
        if (lead >= prec) throw std::invalid_argument("FracSeries: lead must be below prec");
        return static_cast<std::size_t>(prec - lead);
    }
    static const Scalar& zero_scalar() {
        static const Scalar z{};
        return z;
    }

    std::int64_t den_;
    std::int64_t lead_;
    std::int64_t prec_;
    std::vector<Scalar> coeffs_;
};

namespace detail {

inline std::pair<FracSeries, FracSeries> unify_lattice(const FracSeries& a, const FracSeries& b) {
    std::int64_t d = std::lcm(a.den(), b.den());
    return {a.to_lattice(d), b.to_lattice(d)};
}

// Full convolution of dense coefficient vectors by splitting at the middle;
// exact, used above the schoolbook threshold.
inline std::vector<Scalar> karatsuba_full(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    const std::size_t na = a.size(), nb = b.size();
    if (na == 0 || nb == 0) return {};
    if (std::min(na, nb) <= 32) {
        std::vector<Scalar> out(na + nb - 1);
        for (std::size_t i = 0; i < na; ++i) {
            if (a[i].is_zero()) continue;
            for (std::size_t j = 0; j < nb; ++j) {
                if (b[j].is_zero()) continue;
                addmul(out[i + j], a[i], b[j]);
            }
        }
        return out;
    }
    const std::size_t h = std::max(na, nb) / 2;
    auto lo = [&](const std::vector<Scalar>& v) {
        return std::vector<Scalar>(v.begin(), v.begin() + std::min(h, v.size()));
    };
    auto hi = [&](const std::vector<Scalar>& v) {
        return v.size() > h ? std::vector<Scalar>(v.begin() + h, v.end()) : std::vector<Scalar>{};
    };
    std::vector<Scalar> a0 = lo(a), a1 = hi(a), b0 = lo(b), b1 = hi(b);
    std::vector<Scalar> z0 = karatsuba_full(a0, b0);
    std::vector<Scalar> z2 = karatsuba_full(a1, b1);
    auto plus = [](std::vector<Scalar> x, const std::vector<Scalar>& y) {
        if (x.size() < y.size()) x.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) x[i] = x[i] + y[i];
        return x;
    };
    std::vector<Scalar> z1 = karatsuba_full(plus(a0, a1), plus(b0, b1));
    // z1 -= z0 + z2
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = z1[i] - z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = z1[i] - z2[i];
    std::vector<Scalar> out(na + nb - 1);
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = out[i] + z0[i];
    for (std::size_t i = 0; i < z1.size(); ++i) out[i + h] = out[i + h] + z1[i];
    for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * h] = out[i + 2 * h] + z2[i];
    return out;
}

}  // namespace detail

inline FracSeries add(const FracSeries& fa, const FracSeries& fb) {
    auto [a, b] = detail::unify_lattice(fa, fb);
    std::int64_t lead = std::min(a.lead(), b.lead());
    std::int64_t prec = std::min(a.prec(), b.prec());
    if (lead >= prec) throw std::invalid_argument("add: result window is empty");
    FracSeries out(a.den(), lead, prec);
    for (std::int64_t i = lead; i < prec; ++i) {
        const Scalar& x = a.coeff(i);
        const Scalar& y = b.coeff(i);
        if (x.is_zero() && y.is_zero()) continue;
        out.set_coeff(i, x + y);
    }
    return out;
}

inline FracSeries sub(const FracSeries& a, const FracSeries& b) { return add(a, -b); }

inline FracSeries mul(const FracSeries& fa, const FracSeries& fb) {
    auto [a, b] = detail::unify_lattice(fa, fb);
    const std::int64_t lead = a.lead() + b.lead();
    const std::int64_t prec = std::min(a.prec() + b.lead(), b.prec() + a.lead());
    if (lead >= prec) throw std::invalid_argument("mul: result window is empty");
    FracSeries out(a.den(), lead, prec);

    auto nnz_a = a.nonzero_indices();
    auto nnz_b = b.nonzero_indices();
    // iterate over the sparser factor in the inner loop
    const FracSeries& base = nnz_a.size() <= nnz_b.size() ? a : b;
    const FracSeries& other = nnz_a.size() <= nnz_b.size() ? b : a;
    const auto& nnz = nnz_a.size() <= nnz_b.size() ? nnz_a : nnz_b;

    const std::size_t len_a = static_cast<std::size_t>(a.prec() - a.lead());
    const std::size_t len_b = static_cast<std::size_t>(b.prec() - b.lead());
    const bool dense = nnz.size() * 4 > std::min(len_a, len_b);
    if (dense && std::min(len_a, len_b) > config::karatsuba_threshold()) {
        std::vector<Scalar> ca(len_a), cb(len_b);
        for (std::size_t i = 0; i < len_a; ++i) ca[i] = a.coeff(a.lead() + static_cast<std::int64_t>(i));
        for (std::size_t i = 0; i < len_b; ++i) cb[i] = b.coeff(b.lead() + static_cast<std::int64_t>(i));
        std::vector<Scalar> full = detail::karatsuba_full(ca, cb);
        for (std::int64_t k = lead; k < prec; ++k)
            out.set_coeff(k, full[static_cast<std::size_t>(k - lead)]);
        return out;
    }

    auto convolve_range = [&](std::int64_t k0, std::int64_t k1) {
        for (std::int64_t k = k0; k < k1; ++k) {
            // i must stay inside base's window, k-i inside other's
            std::int64_t ilo = std::max(base.lead(), k - other.prec() + 1);
            std::int64_t ihi = std::min(base.prec() - 1, k - other.lead());
            auto it = std::lower_bound(nnz.begin(), nnz.end(), ilo);
            Scalar acc;
            for (; it != nnz.end() && *it <= ihi; ++it) {
                const Scalar& y = other.coeff(k - *it);
                if (y.is_zero()) continue;
                addmul(acc, base.coeff(*it), y);
            }
            if (!acc.is_zero()) out.set_coeff(k, std::move(acc));
        }
    };

    const int workers = config::worker_threads();
    const std::int64_t len_out = prec - lead;
    if (workers > 1 && len_out >= 4096) {
        std::vector<std::thread> pool;
        std::int64_t chunk = (len_out + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            std::int64_t k0 = lead + w * chunk;
            std::int64_t k1 = std::min(prec, k0 + chunk);
            if (k0 >= k1) break;
            pool.emplace_back(convolve_range, k0, k1);
        }
        for (auto& t : pool) t.join();
    } else {
        convolve_range(lead, prec);
    }
    return out;
}

// Laurent quotient. The divisor must be nonzero within its precision and its
// first nonzero coefficient invertible (always true over a field).
//
// The result window stops at min(prec_f, prec_g + lead_f - v) - v: past that
// point quotient coefficients would depend on divisor coefficients beyond
// prec_g. The bound coincides with min(prec_f, prec_g) - v whenever
// lead_f >= v, which covers every series the engine divides in practice.
inline FracSeries div(const FracSeries& fa, const FracSeries& fb) {
    auto [a, b] = detail::unify_lattice(fa, fb);
    auto v_opt = b.order();
    if (!v_opt) throw division_error("div: divisor is zero to its precision");
    const std::int64_t v = *v_opt;
    const std::int64_t lead = a.lead() - v;
    const std::int64_t prec = std::min(a.prec(), b.prec() + a.lead() - v) - v;
    if (lead >= prec) throw std::invalid_argument("div: result window is empty");

    const Scalar g0_inv = b.coeff(v).inv();
    // nonzero divisor offsets j >= 1 with b[v + j] != 0
    std::vector<std::int64_t> offsets;
    for (std::int64_t j = v + 1; j < b.prec(); ++j)
        if (!b.coeff(j).is_zero()) offsets.push_back(j - v);

    FracSeries out(a.den(), lead, prec);
    for (std::int64_t k = lead; k < prec; ++k) {
        Scalar acc = a.coeff(k + v);
        for (std::int64_t j : offsets) {
            if (j > k - lead) break;
            const Scalar& r = out.coeff(k - j);
            if (r.is_zero()) continue;
            acc = acc - b.coeff(v + j) * r;
        }
        if (!acc.is_zero()) out.set_coeff(k, acc * g0_inv);
    }
    return out;
}

// (sum a(n) q^n) | U(t) = sum a(tn) q^n. Only defined on the integer lattice.
inline FracSeries u_operator(const FracSeries& f, std::int64_t t) {
    if (t < 1) throw std::invalid_argument("u_operator: t must be positive");
    if (f.den() != 1) throw lattice_error("u_operator: series must live on the integer lattice");
    if (t == 1) return f;
    std::int64_t lead = detail::ceil_div(f.lead(), t);
    std::int64_t prec = detail::floor_div(f.prec(), t);
    if (lead >= prec) throw std::invalid_argument("u_operator: output window is empty");
    FracSeries out(1, lead, prec);
    for (std::int64_t n = lead; n < prec; ++n) {
        const Scalar& c = f.coeff(n * t);
        if (!c.is_zero()) out.set_coeff(n, c);
    }
    return out;
}

// Substitute q -> q^N for positive rational N = num/den.
inline FracSeries v_rescale(const FracSeries& f, std::int64_t num, std::int64_t den = 1) {
    if (num < 1 || den < 1) throw std::invalid_argument("v_rescale: N must be a positive rational");
    std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    std::int64_t new_den = f.den() * den;
    std::int64_t reduce = std::gcd(new_den, num);
    // indices scale by num; pull the common factor into the lattice
    std::int64_t scale = num / reduce;
    new_den /= reduce;
    FracSeries out(new_den, f.lead() * scale, f.prec() * scale);
    for (std::int64_t i = f.lead(); i < f.prec(); ++i) {
        const Scalar& c = f.coeff(i);
        if (!c.is_zero()) out.set_coeff(i * scale, c);
    }
    return out;
}

// Coefficientwise canonical residues mod p^k. A nonintegral coefficient
// aborts with the offending exponent attached.
inline FracSeries reduce_series_mod(const FracSeries& f, const mpz_class& p, unsigned k) {
    FracSeries out(f.den(), f.lead(), f.prec());
    for (std::int64_t i = f.lead(); i < f.prec(); ++i) {
        const Scalar& c = f.coeff(i);
        if (c.is_zero()) continue;
        try {
            Scalar r = c.reduce_mod_prime_power(p, k);
            if (!r.is_zero()) out.set_coeff(i, std::move(r));
        } catch (const non_integral_error&) {
            throw series_non_integral_error(
                "reduce_series_mod: nonintegral coefficient at exponent " +
                    Rational(i, f.den()).to_string(),
                i, f.den());
        }
    }
    return out;
}

// Outcome of comparing two series over the overlap of their validity ranges
// after lattice unification.
struct SeriesComparison {
    std::int64_t den = 1;             // unified lattice
    std::int64_t lo = 0, hi = 0;      // compared window [lo, hi) in lattice units
    bool equal = false;
    std::int64_t mismatch_index = 0;  // meaningful only when !equal
    Scalar lhs, rhs;                  // coefficients at the first mismatch
};

inline SeriesComparison compare_series(const FracSeries& fa, const FracSeries& fb) {
    auto [a, b] = detail::unify_lattice(fa, fb);
    SeriesComparison r;
    r.den = a.den();
    r.lo = std::min(a.lead(), b.lead());
    r.hi = std::min(a.prec(), b.prec());
    if (r.lo >= r.hi) throw std::invalid_argument("compare_series: validity ranges do not overlap");
    r.equal = true;
    for (std::int64_t i = r.lo; i < r.hi; ++i) {
        const Scalar& x = a.coeff(i);
        const Scalar& y = b.coeff(i);
        if (x == y) continue;
        r.equal = false;
        r.mismatch_index = i;
        r.lhs = x;
        r.rhs = y;
        break;
    }
    return r;
}

inline bool series_equal(const FracSeries& a, const FracSeries& b) {
    return compare_series(a, b).equal;
}

}  // namespace qmock
