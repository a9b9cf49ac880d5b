#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace splitscan {

// Primes <= limit, ascending (plain Eratosthenes; desk-scale limits only).
inline std::vector<uint64_t> primes_up_to(uint64_t limit) {
    std::vector<uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (uint64_t i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (uint64_t j = i * i; j <= limit; j += i)
            comp[j] = true;
    }
    return out;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this base set.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    auto mulmod = [](uint64_t a, uint64_t b, uint64_t m) -> uint64_t {
        return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
    };
    auto powmod = [&](uint64_t a, uint64_t e, uint64_t m) -> uint64_t {
        uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1ull) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1ull;
        }
        return r;
    };
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1ull) == 0) { d >>= 1ull; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline std::vector<uint64_t> factor_u64(uint64_t n) {
    std::vector<uint64_t> fs;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            fs.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

inline uint64_t euler_phi(uint64_t n) {
    uint64_t r = n;
    for (uint64_t p : factor_u64(n)) r -= r / p;
    return r;
}

// Largest n with phi(n) <= bound. phi(n) > sqrt(n/2) gives a finite search window.
inline uint64_t max_n_with_phi_at_most(uint64_t bound) {
    if (bound == 0) throw precondition_error("phi bound must be positive");
    uint64_t window = 2 * bound * bound + 2;
    uint64_t best = 1;
    for (uint64_t n = 1; n <= window; ++n)
        if (euler_phi(n) <= bound) best = n;
    return best;
}

} // namespace splitscan
