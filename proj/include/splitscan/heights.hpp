#pragma once

// Rational parameters of the pencil and their reductions. The height of a
// reduced fraction a/b is max(|a|, b); p = 2 is globally excluded from
// residue reduction because the curve machinery needs odd characteristic.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "primes.hpp"

namespace splitscan {

struct Rational {
    long long num = 0;
    long long den = 1; // > 0, gcd(|num|, den) == 1

    Rational() = default;
    Rational(long long n, long long d) {
        if (d == 0) throw precondition_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num = n;
        den = d;
    }
    explicit Rational(long long n) : num(n), den(1) {}

    bool operator==(const Rational& o) const = default;
};

inline long long height(const Rational& r) {
    long long a = r.num < 0 ? -r.num : r.num;
    return a > r.den ? a : r.den;
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        long long n = std::stoll(s.substr(0, slash));
        long long d = std::stoll(s.substr(slash + 1));
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        throw precondition_error("unparsable rational: " + s);
    } catch (const std::out_of_range&) {
        throw precondition_error("rational out of range: " + s);
    }
}

inline std::string to_string(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

// A point of P^1(F_p): a residue in [0, p) or the point at infinity.
struct ResidueClass {
    uint64_t p = 0;
    bool infinite = false;
    uint64_t value = 0; // meaningful iff !infinite

    bool operator==(const ResidueClass& o) const = default;
};

inline std::string to_string(const ResidueClass& c) {
    return c.infinite ? std::string("inf") : std::to_string(c.value);
}

// Reduction mod an odd prime; infinity iff p divides the denominator.
inline ResidueClass reduce_mod(const Rational& r, uint64_t p) {
    if (p == 2) throw precondition_error("p = 2 is excluded from reduction");
    if (!is_prime_u64(p)) throw precondition_error("reduction modulus must be prime");
    ResidueClass out;
    out.p = p;
    if (r.den % static_cast<long long>(p) == 0) {
        out.infinite = true;
        return out;
    }
    auto powmod = [p](uint64_t a, uint64_t e) {
        uint64_t acc = 1;
        a %= p;
        while (e) {
            if (e & 1ull) acc = (acc * a) % p;
            a = (a * a) % p;
            e >>= 1ull;
        }
        return acc;
    };
    long long nm = r.num % static_cast<long long>(p);
    uint64_t n = static_cast<uint64_t>(nm < 0 ? nm + static_cast<long long>(p) : nm);
    uint64_t d = static_cast<uint64_t>(r.den % static_cast<long long>(p));
    out.value = (n * powmod(d, p - 2)) % p;
    return out;
}

// All reduced a/b with max(|a|, b) <= B, ordered by (height, numerator,
// denominator). Deterministic; the order is part of the external contract.
struct HeightBall {
    long long bound = 0;
    std::vector<Rational> elements;
};

inline HeightBall enumerate_height_ball(long long B) {
    if (B < 1) throw precondition_error("height bound must be >= 1");
    HeightBall ball;
    ball.bound = B;
    for (long long h = 1; h <= B; ++h) {
        // Exactly the elements of height h, in numerator-then-denominator order:
        // |a| = h with b <= h coprime, or b = h with |a| < h coprime.
        for (long long a = -h; a <= h; ++a) {
            long long absa = a < 0 ? -a : a;
            if (absa == h) {
                for (long long b = 1; b <= h; ++b)
                    if (std::gcd(absa, b) == 1) ball.elements.emplace_back(Rational{a, b});
            } else if (std::gcd(absa, h) == 1) {
                ball.elements.emplace_back(Rational{a, h});
            }
        }
    }
    return ball;
}

} // namespace splitscan
