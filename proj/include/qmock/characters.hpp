#pragma once

#include <qmock/scalar.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Primitive Dirichlet characters with exact values: the Kronecker characters
// chi_D for fundamental discriminants D, and general characters built from
// generator images on (Z/f)^*. Tables are stored in full; every modulus in
// play is small.
namespace qmock {

// Complete Kronecker symbol (a|n), defined for all integers.
inline int kronecker_symbol(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int s = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) s = -s;
    }
    auto sym2 = [](std::int64_t x) {  // (x|2) for odd x
        std::int64_t r = ((x % 8) + 8) % 8;
        return (r == 1 || r == 7) ? 1 : -1;
    };
    while (n % 2 == 0) {
        n /= 2;
        s *= sym2(a);
    }
    // now n odd and positive: Jacobi with reciprocity
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t r = n % 8;
            if (r == 3 || r == 5) s = -s;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) s = -s;
        a %= n;
    }
    return n == 1 ? s : 0;
}

inline bool is_squarefree(std::int64_t n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

inline bool is_fundamental_discriminant(std::int64_t D) {
    if (D == 0 || D == 1) return false;
    std::int64_t r = ((D % 4) + 4) % 4;
    if (r == 1) return is_squarefree(D);
    if (r == 0) {
        std::int64_t m = D / 4;
        std::int64_t rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && is_squarefree(m);
    }
    return false;
}

namespace detail {

struct UnitGenerator {
    std::int64_t g;      // generator residue mod f
    std::int64_t order;  // its multiplicative order
};

inline std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> ps;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline std::int64_t primitive_root_prime_power(std::int64_t p, unsigned k) {
    std::int64_t pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p;
    std::int64_t phi_p = p - 1;
    auto qs = prime_factors(phi_p);
    std::int64_t g = 0;
    for (std::int64_t c = 2; c < p; ++c) {
        bool ok = true;
        for (std::int64_t q : qs)
            if (pow_mod(c, phi_p / q, p) == 1) { ok = false; break; }
        if (ok) { g = c; break; }
    }
    if (k == 1) return g;
    // lift: g stays primitive mod p^k unless g^(p-1) = 1 mod p^2
    if (pow_mod(g, p - 1, p * p) == 1) g += p;
    return g % pk;
}

// Canonical generators of (Z/f)^* via CRT over the prime-power factorization.
inline std::vector<UnitGenerator> unit_group_generators(std::int64_t f) {
    std::int64_t n = f;
    std::vector<std::pair<std::int64_t, unsigned>> factors;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            unsigned k = 0;
            while (n % p == 0) { n /= p; ++k; }
            factors.emplace_back(p, k);
        }
    }
    if (n > 1) factors.emplace_back(n, 1);

    struct Local { std::int64_t q, g, order; };
    std::vector<Local> locals;
    for (auto [p, k] : factors) {
        std::int64_t q = 1;
        for (unsigned i = 0; i < k; ++i) q *= p;
        if (p == 2) {
            if (k == 1) continue;  // trivial group
            if (k == 2) {
                locals.push_back({q, 3, 2});
            } else {
                locals.push_back({q, q - 1, 2});
                std::int64_t ord = q / 4;  // order of 5 mod 2^k
                locals.push_back({q, 5, ord});
            }
        } else {
            std::int64_t g = primitive_root_prime_power(p, k);
            std::int64_t phi = (q / p) * (p - 1);
            locals.push_back({q, g, phi});
        }
    }

    std::vector<UnitGenerator> gens;
    for (const auto& loc : locals) {
        // residue g mod q, 1 mod f/q
        std::int64_t other = f / loc.q;
        std::int64_t g = 0;
        if (other == 1) {
            g = loc.g % f;
        } else {
            for (std::int64_t x = 1; x < f; ++x) {
                if (x % loc.q == loc.g % loc.q && x % other == 1) { g = x; break; }
            }
        }
        gens.push_back({g, loc.order});
    }
    return gens;
}

}  // namespace detail

class DirichletCharacter {
public:
    // Kronecker character chi_D = (D|.) of modulus |D|; D must be a
    // fundamental discriminant with |D| > 1.
    static DirichletCharacter kronecker(std::int64_t D) {
        if (!is_fundamental_discriminant(D))
            throw std::domain_error("kronecker character: " + std::to_string(D) +
                                    " is not a fundamental discriminant");
        std::int64_t f = D < 0 ? -D : D;
        std::vector<Scalar> values(static_cast<std::size_t>(f));
        for (std::int64_t n = 0; n < f; ++n)
            values[static_cast<std::size_t>(n)] = Scalar(Rational(kronecker_symbol(D, n)));
        DirichletCharacter chi(f, std::move(values), "kronecker:" + std::to_string(D));
        chi.kronecker_disc_ = D;
        return chi;
    }

    // General character from images on the canonical generators of (Z/f)^*.
    // Image e_i sends generator g_i (of order n_i) to zeta_{n_i}^{e_i}.
    static DirichletCharacter from_generator_images(std::int64_t f, const std::vector<std::int64_t>& images) {
        if (f < 1) throw std::domain_error("character modulus must be positive");
        auto gens = detail::unit_group_generators(f);
        if (images.size() != gens.size())
            throw std::domain_error("character: expected " + std::to_string(gens.size()) +
                                    " generator images for modulus " + std::to_string(f));
        // character order: lcm of the orders of the individual images
        std::int64_t m = 1;
        std::vector<std::int64_t> num(gens.size());  // image of g_i is zeta_m^(num_i * m / den_i)
        std::vector<std::int64_t> den(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i) {
            std::int64_t e = ((images[i] % gens[i].order) + gens[i].order) % gens[i].order;
            std::int64_t g = std::gcd(e, gens[i].order);
            num[i] = e / g;
            den[i] = gens[i].order / g;
            m = std::lcm(m, den[i]);
        }

        std::vector<Scalar> values(static_cast<std::size_t>(f));  // zeros off the units
        // enumerate the full group as products of generator powers
        std::vector<std::int64_t> t(gens.size(), 0);
        for (;;) {
            std::int64_t u = 1, j = 0;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                u = (u * detail::pow_mod(gens[i].g, t[i], f)) % f;
                j = (j + t[i] * num[i] % m * (m / den[i])) % m;
            }
            values[static_cast<std::size_t>(u)] = root_of_unity(static_cast<unsigned>(m), j);
            std::size_t pos = 0;
            while (pos < gens.size()) {
                if (++t[pos] < gens[pos].order) break;
                t[pos] = 0;
                ++pos;
            }
            if (pos == gens.size()) break;
        }
        std::string label = "mod:" + std::to_string(f) + ":";
        for (std::size_t i = 0; i < images.size(); ++i)
            label += (i ? "," : "") + std::to_string(images[i]);
        return DirichletCharacter(f, std::move(values), std::move(label));
    }

    // CLI syntax: "kronecker:D", a Theorem-1.2 alias (chi12, chi24, chi2,
    // chi-3, chi-4, chi-8; chi2 is the paper's name for the discriminant of
    // Q(sqrt 2), modulus 8), or "mod:f:e1,e2,...".
    static DirichletCharacter parse(const std::string& spec) {
        static const std::vector<std::pair<std::string, std::int64_t>> aliases = {
            {"chi12", 12}, {"chi24", 24}, {"chi2", 8}, {"chi8", 8},
            {"chi-3", -3}, {"chi-4", -4}, {"chi-8", -8},
        };
        for (const auto& [name, D] : aliases)
            if (spec == name) return kronecker(D);
        if (spec.rfind("kronecker:", 0) == 0)
            return kronecker(std::stoll(spec.substr(10)));
        if (spec.rfind("mod:", 0) == 0) {
            auto rest = spec.substr(4);
            auto colon = rest.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("character spec needs mod:f:e1,e2,...");
            std::int64_t f = std::stoll(rest.substr(0, colon));
            std::vector<std::int64_t> images;
            std::string body = rest.substr(colon + 1);
            std::size_t pos = 0;
            while (pos <= body.size() && !body.empty()) {
                auto comma = body.find(',', pos);
                images.push_back(std::stoll(body.substr(pos, comma - pos)));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            return from_generator_images(f, images);
        }
        throw std::invalid_argument("unrecognized character spec: " + spec);
    }

    std::int64_t modulus() const { return modulus_; }
    int parity() const { return parity_; }          // lambda: 0 even, 1 odd
    unsigned order() const { return order_; }
    bool is_primitive() const { return primitive_; }
    std::int64_t conductor() const { return conductor_; }
    bool is_real() const { return order_ <= 2; }
    const std::string& label() const { return label_; }
    std::optional<std::int64_t> kronecker_discriminant() const { return kronecker_disc_; }

    const Scalar& evaluate(std::int64_t n) const {
        std::int64_t r = n % modulus_;
        if (r < 0) r += modulus_;
        return values_[static_cast<std::size_t>(r)];
    }
    const Scalar& operator()(std::int64_t n) const { return evaluate(n); }

    DirichletCharacter conjugate() const {
        std::vector<Scalar> vals;
        vals.reserve(values_.size());
        for (const auto& v : values_) vals.push_back(v.conjugate());
        DirichletCharacter chi(modulus_, std::move(vals), "conj(" + label_ + ")");
        chi.kronecker_disc_ = kronecker_disc_;
        if (is_real()) chi.label_ = label_;
        return chi;
    }

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus_ == b.modulus_ && a.values_ == b.values_;
    }
    friend bool operator!=(const DirichletCharacter& a, const DirichletCharacter& b) { return !(a == b); }

private:
    DirichletCharacter(std::int64_t modulus, std::vector<Scalar> values, std::string label)
        : modulus_(modulus), values_(std::move(values)), label_(std::move(label)) {
        // parity is computed, never supplied
        const Scalar& at_minus_one = evaluate(-1);
        if (at_minus_one == Scalar(Rational(1))) parity_ = 0;
        else if (at_minus_one == Scalar(Rational(-1))) parity_ = 1;
        else throw std::domain_error("character: chi(-1) must be +-1");
        order_ = compute_order();
        conductor_ = compute_conductor();
        primitive_ = conductor_ == modulus_;
    }

    static Scalar root_of_unity(unsigned m, std::int64_t j) {
        j = ((j % m) + m) % m;
        if (m == 1) return Scalar(Rational(1));
        if (m == 2) return Scalar(Rational(j == 0 ? 1 : -1));
        return Scalar(Cyclotomic::zeta_power(m, static_cast<std::uint64_t>(j)));
    }

    unsigned compute_order() const {
        unsigned ord = 1;
        for (std::int64_t n = 0; n < modulus_; ++n) {
            const Scalar& v = values_[static_cast<std::size_t>(n)];
            if (v.is_zero()) continue;
            Scalar acc = v;
            unsigned k = 1;
            while (!acc.is_one()) {
                acc = acc * v;
                ++k;
                if (k > 2 * static_cast<unsigned>(modulus_))
                    throw std::logic_error("character value is not a root of unity");
            }
            ord = static_cast<unsigned>(std::lcm<unsigned>(ord, k));
        }
        return ord;
    }

    // Smallest modulus the character is induced from: chi is induced from
    // d | f iff chi(a) = 1 for every unit a = 1 (mod d).
    std::int64_t compute_conductor() const {
        for (std::int64_t d = 1; d <= modulus_; ++d) {
            if (modulus_ % d != 0) continue;
            bool induced = true;
            for (std::int64_t a = 1; a < modulus_ && induced; ++a) {
                if (std::gcd(a, modulus_) != 1) continue;
                if (a % d == 1 % d && !evaluate(a).is_one()) induced = false;
            }
            if (induced) return d;
        }
        return modulus_;
    }

    std::int64_t modulus_;
    std::vector<Scalar> values_;
    std::string label_;
    int parity_ = 0;
    unsigned order_ = 1;
    std::int64_t conductor_ = 1;
    bool primitive_ = false;
    std::optional<std::int64_t> kronecker_disc_;
};

}  // namespace qmock
