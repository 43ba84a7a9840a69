#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

// Exact coefficient arithmetic: arbitrary-precision rationals and elements of
// cyclotomic fields Q(zeta_m), plus reduction modulo prime powers. Every
// series coefficient in the engine is one of these; there is no floating
// point anywhere.
namespace qmock {

// Reduction mod p^k was asked of a value whose denominator p divides.
class non_integral_error : public std::domain_error {
public:
    explicit non_integral_error(const std::string& msg) : std::domain_error(msg) {}
};

class division_error : public std::domain_error {
public:
    explicit division_error(const std::string& msg) : std::domain_error(msg) {}
};

// ---------------------------------------------------------------------------
// Rational: canonical fraction, lowest terms, denominator > 0.
// ---------------------------------------------------------------------------
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}  // NOLINT: implicit by design, mirrors integer literals
    explicit Rational(const mpz_class& n) : q_(n) {}
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(mpz_class(s));
        return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    }

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return mpq_sgn(q_.get_mpq_t()) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return mpq_sgn(q_.get_mpq_t()); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw division_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    Rational inv() const {
        if (is_zero()) throw division_error("Rational: inverse of zero");
        return Rational(mpq_class(1) / q_);
    }

    Rational pow(long e) const {
        if (e < 0) return inv().pow(-e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), q_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), q_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
        return Rational(n, d);
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

    // "n" when integral, "p/q" otherwise.
    std::string to_string() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    // Canonical residue of this value mod p^k, in [0, p^k). Requires p not to
    // divide the denominator.
    mpz_class residue_mod(const mpz_class& p, unsigned k) const {
        mpz_class pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
        if (mpz_divisible_p(q_.get_den().get_mpz_t(), p.get_mpz_t()))
            throw non_integral_error("denominator divisible by " + p.get_str());
        mpz_class dinv;
        if (mpz_invert(dinv.get_mpz_t(), q_.get_den().get_mpz_t(), pk.get_mpz_t()) == 0)
            throw non_integral_error("denominator not invertible mod " + pk.get_str());
        mpz_class r = q_.get_num() * dinv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pk.get_mpz_t());
        return r;
    }

private:
    mpq_class q_;
};

namespace detail {

inline unsigned euler_phi(unsigned m) {
    unsigned result = m, n = m;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// Cyclotomic polynomial Phi_m as a monic integer polynomial (ascending
// coefficients), computed as (x^m - 1) / prod_{d|m, d<m} Phi_d and memoized.
inline const std::vector<mpz_class>& cyclotomic_polynomial(unsigned m) {
    static std::map<unsigned, std::vector<mpz_class>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);

    auto compute = [](auto&& self, unsigned mm) -> const std::vector<mpz_class>& {
        auto it = cache.find(mm);
        if (it != cache.end()) return it->second;
        std::vector<mpz_class> poly(mm + 1);
        poly[0] = -1;
        poly[mm] = 1;
        for (unsigned d = 1; d < mm; ++d) {
            if (mm % d != 0) continue;
            const auto& phid = self(self, d);
            // exact long division by the monic phid
            std::vector<mpz_class> quot(poly.size() - phid.size() + 1);
            for (std::size_t i = quot.size(); i-- > 0;) {
                quot[i] = poly[i + phid.size() - 1];
                if (quot[i] == 0) continue;
                for (std::size_t j = 0; j < phid.size(); ++j)
                    poly[i + j] -= quot[i] * phid[j];
            }
            poly = std::move(quot);
        }
        return cache.emplace(mm, std::move(poly)).first->second;
    };
    return compute(compute, m);
}

using QPoly = std::vector<Rational>;  // ascending coefficients

inline void qpoly_trim(QPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Remainder of p mod Phi_m (monic integer polynomial), in place.
inline void qpoly_mod_cyclotomic(QPoly& p, unsigned m) {
    const auto& phi = cyclotomic_polynomial(m);
    const std::size_t deg = phi.size() - 1;
    while (p.size() > deg) {
        Rational lead = p.back();
        std::size_t shift = p.size() - 1 - deg;
        if (!lead.is_zero()) {
            for (std::size_t j = 0; j < deg; ++j)
                p[shift + j] -= lead * Rational(phi[j]);
        }
        p.pop_back();
    }
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// Extended Euclid over Q[x]: returns s with s*a == gcd (mod b), where the
// returned pair is (gcd, s). Used for inversion mod the irreducible Phi_m.
inline std::pair<QPoly, QPoly> qpoly_half_xgcd(QPoly a, QPoly b) {
    QPoly s0{Rational(1)}, s1{};
    qpoly_trim(a);
    qpoly_trim(b);
    while (!b.empty()) {
        // divide a by b
        QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
        QPoly r = a;
        Rational lead_inv = b.back().inv();
        for (std::size_t i = q.size(); i-- > 0;) {
            if (r.size() < b.size() + i) continue;
            Rational c = r[b.size() - 1 + i] * lead_inv;
            q[i] = c;
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] -= c * b[j];
        }
        qpoly_trim(r);
        // (s0, s1) <- (s1, s0 - q*s1)
        QPoly qs1 = qpoly_mul(q, s1);
        QPoly s2 = s0;
        if (s2.size() < qs1.size()) s2.resize(qs1.size());
        for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
        qpoly_trim(s2);
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return {a, s0};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cyclotomic: element of Q(zeta_m) in the power basis 1, zeta, ...,
// zeta^{phi(m)-1} modulo Phi_m. Orders 1 and 2 are canonically Rational and
// never appear here.
// ---------------------------------------------------------------------------
class Cyclotomic {
public:
    Cyclotomic(unsigned order, std::vector<Rational> coords) : order_(order), coords_(std::move(coords)) {
        if (order_ < 3) throw std::domain_error("Cyclotomic: order <= 2 is canonically Rational");
        if (coords_.size() != detail::euler_phi(order_))
            throw std::domain_error("Cyclotomic: coordinate count must equal phi(order)");
    }

    static Cyclotomic from_rational(unsigned order, const Rational& r) {
        std::vector<Rational> c(detail::euler_phi(order));
        c[0] = r;
        return Cyclotomic(order, std::move(c));
    }

    // zeta_m^k
    static Cyclotomic zeta_power(unsigned order, std::uint64_t k) {
        k %= order;
        detail::QPoly p(static_cast<std::size_t>(k) + 1);
        p[static_cast<std::size_t>(k)] = Rational(1);
        detail::qpoly_mod_cyclotomic(p, order);
        return from_poly(order, std::move(p));
    }

    unsigned order() const { return order_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (!c.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < coords_.size(); ++i)
            if (!coords_[i].is_zero()) return false;
        return true;
    }
    Rational to_rational() const {
        if (!is_rational()) throw std::domain_error("Cyclotomic: value not rational");
        return coords_[0];
    }

    Cyclotomic operator-() const {
        auto c = coords_;
        for (auto& x : c) x = -x;
        return Cyclotomic(order_, std::move(c));
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        require_same_order(a, b);
        auto c = a.coords_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
        return Cyclotomic(a.order_, std::move(c));
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        require_same_order(a, b);
        detail::QPoly p = detail::qpoly_mul(a.coords_, b.coords_);
        detail::qpoly_mod_cyclotomic(p, a.order_);
        return from_poly(a.order_, std::move(p));
    }

    Cyclotomic inv() const {
        if (is_zero()) throw division_error("Cyclotomic: inverse of zero");
        const auto& phi = detail::cyclotomic_polynomial(order_);
        detail::QPoly phi_q(phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i) phi_q[i] = Rational(phi[i]);
        auto [gcd, s] = detail::qpoly_half_xgcd(detail::QPoly(coords_), phi_q);
        // Phi_m is irreducible, so the gcd is a nonzero constant.
        Rational scale = gcd[0].inv();
        for (auto& c : s) c *= scale;
        detail::qpoly_mod_cyclotomic(s, order_);
        return from_poly(order_, std::move(s));
    }

    // zeta -> zeta^{-1}
    Cyclotomic conjugate() const { return substitute_power(order_ - 1); }

    // Image under zeta_m -> zeta_M^{M/m}; requires order | M.
    Cyclotomic embed(unsigned M) const {
        if (M % order_ != 0) throw std::domain_error("Cyclotomic: embed target must be a multiple of the order");
        if (M == order_) return *this;
        unsigned step = M / order_;
        detail::QPoly p(static_cast<std::size_t>(coords_.size() - 1) * step + 1);
        for (std::size_t i = 0; i < coords_.size(); ++i) p[i * step] = coords_[i];
        detail::qpoly_mod_cyclotomic(p, M);
        return from_poly(M, std::move(p));
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ != b.order_) {
            unsigned M = static_cast<unsigned>(std::lcm(a.order_, b.order_));
            return a.embed(M) == b.embed(M);
        }
        return a.coords_ == b.coords_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // "[m; c0, c1, ...]"
    std::string to_string() const {
        std::string out = "[" + std::to_string(order_) + ";";
        for (std::size_t i = 0; i < coords_.size(); ++i)
            out += (i == 0 ? " " : ", ") + coords_[i].to_string();
        return out + "]";
    }

private:
    static Cyclotomic from_poly(unsigned order, detail::QPoly p) {
        p.resize(detail::euler_phi(order));
        return Cyclotomic(order, std::move(p));
    }
    static void require_same_order(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ != b.order_)
            throw std::logic_error("Cyclotomic: operands must be promoted to a common order first");
    }
    // zeta -> zeta^k, by Horner evaluation at zeta^k
    Cyclotomic substitute_power(unsigned k) const {
        Cyclotomic zk = zeta_power(order_, k);
        Cyclotomic acc = from_rational(order_, Rational(0));
        for (std::size_t i = coords_.size(); i-- > 0;) {
            acc = acc * zk;
            acc.coords_[0] += coords_[i];
        }
        return acc;
    }

    unsigned order_;
    std::vector<Rational> coords_;
};

// ---------------------------------------------------------------------------
// Scalar: a Rational or a Cyclotomic; mixed operands promote to the common
// field (lcm of orders). Values are immutable in spirit: every operation
// returns a fresh value.
// ---------------------------------------------------------------------------
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(long n) : v_(Rational(n)) {}  // NOLINT
    Scalar(Rational r) : v_(std::move(r)) {}  // NOLINT
    Scalar(Cyclotomic c) : v_(std::move(c)) {}  // NOLINT

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    const Cyclotomic& cyclotomic() const { return std::get<Cyclotomic>(v_); }

    bool is_zero() const {
        return is_rational() ? rational().is_zero() : cyclotomic().is_zero();
    }
    bool is_one() const {
        if (is_rational()) return rational().is_one();
        return cyclotomic().is_rational() && cyclotomic().to_rational().is_one();
    }

    // Demotion direction of the promotion round-trip; exact inverse of
    // promoting a Rational into any Q(zeta_m).
    Rational to_rational() const {
        return is_rational() ? rational() : cyclotomic().to_rational();
    }

    Scalar operator-() const {
        if (is_rational()) return Scalar(-rational());
        return Scalar(-cyclotomic());
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_rational() && b.is_rational()) return Scalar(a.rational() + b.rational());
        auto [x, y] = promote(a, b);
        return Scalar(x + y);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_rational() && b.is_rational()) return Scalar(a.rational() * b.rational());
        // rational-by-cyclotomic products stay in the same field
        if (a.is_rational()) return scale(b.cyclotomic(), a.rational());
        if (b.is_rational()) return scale(a.cyclotomic(), b.rational());
        auto [x, y] = promote(a, b);
        return Scalar(x * y);
    }

    Scalar inv() const {
        if (is_rational()) return Scalar(rational().inv());
        return Scalar(cyclotomic().inv());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

    Scalar conjugate() const {
        if (is_rational()) return *this;
        return Scalar(cyclotomic().conjugate());
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.is_rational() && b.is_rational()) return a.rational() == b.rational();
        auto [x, y] = promote(a, b);
        return x == y;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string to_string() const {
        return is_rational() ? rational().to_string() : cyclotomic().to_string();
    }

    static Scalar parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("Scalar: empty string");
        if (s.front() != '[') return Scalar(Rational::parse(s));
        auto semi = s.find(';');
        if (semi == std::string::npos || s.back() != ']')
            throw std::invalid_argument("Scalar: malformed cyclotomic literal " + s);
        unsigned order = static_cast<unsigned>(std::stoul(s.substr(1, semi - 1)));
        std::vector<Rational> coords;
        std::string body = s.substr(semi + 1, s.size() - semi - 2);
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto b = tok.find_first_not_of(' ');
            auto e = tok.find_last_not_of(' ');
            coords.push_back(Rational::parse(tok.substr(b, e - b + 1)));
        }
        return Scalar(Cyclotomic(order, std::move(coords)));
    }

    // Coordinatewise canonical residues mod p^k, reported in the zeta-power
    // basis (an integral basis of Z[zeta_m] whenever p does not divide m).
    Scalar reduce_mod_prime_power(const mpz_class& p, unsigned k) const {
        if (is_rational()) return Scalar(Rational(rational().residue_mod(p, k)));
        const Cyclotomic& c = cyclotomic();
        if (mpz_class(c.order()) % p == 0)
            throw std::domain_error("reduce_mod_prime_power: p must be coprime to the cyclotomic order");
        std::vector<Rational> coords;
        coords.reserve(c.coords().size());
        for (const auto& x : c.coords()) coords.emplace_back(x.residue_mod(p, k));
        return Scalar(Cyclotomic(c.order(), std::move(coords)));
    }

private:
    static Scalar scale(const Cyclotomic& c, const Rational& r) {
        auto coords = c.coords();
        for (auto& x : coords) x *= r;
        return Scalar(Cyclotomic(c.order(), std::move(coords)));
    }
    static std::pair<Cyclotomic, Cyclotomic> promote(const Scalar& a, const Scalar& b) {
        unsigned ma = a.is_rational() ? 1 : a.cyclotomic().order();
        unsigned mb = b.is_rational() ? 1 : b.cyclotomic().order();
        unsigned M = static_cast<unsigned>(std::lcm(ma, mb));
        if (M < 3) M = 3;  // both rational: only hit via the == fallback
        auto up = [M](const Scalar& s) {
            return s.is_rational() ? Cyclotomic::from_rational(M, s.rational())
                                   : s.cyclotomic().embed(M);
        };
        return {up(a), up(b)};
    }

    std::variant<Rational, Cyclotomic> v_;
};

// Fused accumulate for convolution inner loops.
inline void addmul(Scalar& acc, const Scalar& a, const Scalar& b) {
    acc = acc + a * b;
}

}  // namespace qmock
