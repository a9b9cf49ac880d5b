#pragma once

// F_{p^d} arithmetic sized for point counting: machine-word coefficient
// vectors, a quadratic-character table filled by one generator walk, and a
// deterministic modulus choice (least monic irreducible in lexicographic
// coefficient order), so every run of every width sees the same field.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "primes.hpp"

namespace splitscan {

inline constexpr uint32_t kMaxExtensionDegree = 8;

struct FieldElement {
    std::array<uint32_t, kMaxExtensionDegree> c{}; // coefficients of 1, t, t^2, ...

    bool operator==(const FieldElement& o) const = default;
};

struct FieldDescriptor {
    uint32_t p = 0;
    uint32_t d = 1;
    uint64_t q = 0;
    std::vector<uint32_t> modulus;               // monic, ascending, length d+1
    std::array<std::array<uint32_t, kMaxExtensionDegree>, kMaxExtensionDegree> red{}; // t^(d+j) reduced
    std::vector<int8_t> chi;                     // chi[index(u)]; chi[0] = 0

    uint64_t index_of(const FieldElement& u) const {
        uint64_t ix = 0;
        for (uint32_t i = d; i-- > 0;) ix = ix * p + u.c[i];
        return ix;
    }
    FieldElement element_at(uint64_t ix) const {
        FieldElement u;
        for (uint32_t i = 0; i < d; ++i) { u.c[i] = static_cast<uint32_t>(ix % p); ix /= p; }
        return u;
    }
    FieldElement zero() const { return FieldElement{}; }
    FieldElement one() const { FieldElement u; u.c[0] = 1; return u; }
    FieldElement from_base(uint64_t r) const { FieldElement u; u.c[0] = static_cast<uint32_t>(r % p); return u; }
    bool is_zero(const FieldElement& u) const {
        for (uint32_t i = 0; i < d; ++i) if (u.c[i]) return false;
        return true;
    }

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        FieldElement r;
        for (uint32_t i = 0; i < d; ++i) { uint32_t s = a.c[i] + b.c[i]; r.c[i] = s >= p ? s - p : s; }
        return r;
    }
    FieldElement sub(const FieldElement& a, const FieldElement& b) const {
        FieldElement r;
        for (uint32_t i = 0; i < d; ++i) { uint32_t s = a.c[i] + p - b.c[i]; r.c[i] = s >= p ? s - p : s; }
        return r;
    }
    FieldElement neg(const FieldElement& a) const { return sub(zero(), a); }

    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        uint64_t acc[2 * kMaxExtensionDegree - 1] = {};
        for (uint32_t i = 0; i < d; ++i) {
            if (!a.c[i]) continue;
            uint64_t ai = a.c[i];
            for (uint32_t j = 0; j < d; ++j) acc[i + j] += ai * b.c[j];
        }
        for (uint32_t k = 2 * d - 2; k >= d && k < 2 * kMaxExtensionDegree; --k) {
            uint64_t t = acc[k] % p;
            if (t) {
                const auto& row = red[k - d];
                for (uint32_t i = 0; i < d; ++i) acc[i] += t * row[i];
            }
            if (k == d) break;
        }
        FieldElement r;
        for (uint32_t i = 0; i < d; ++i) r.c[i] = static_cast<uint32_t>(acc[i] % p);
        return r;
    }

    // Base-field scalar times element: the hot path of table-driven evaluation.
    FieldElement scalar_mul(uint32_t s, const FieldElement& a) const {
        FieldElement r;
        for (uint32_t i = 0; i < d; ++i) r.c[i] = static_cast<uint32_t>((static_cast<uint64_t>(s) * a.c[i]) % p);
        return r;
    }

    FieldElement pow(FieldElement a, uint64_t e) const {
        FieldElement r = one();
        while (e) {
            if (e & 1ull) r = mul(r, a);
            a = mul(a, a);
            e >>= 1ull;
        }
        return r;
    }

    FieldElement inv(const FieldElement& a) const {
        if (is_zero(a)) throw precondition_error("inverse of zero field element");
        return pow(a, q - 2);
    }
};

// chi(u) = u^((q-1)/2) read as {-1, 0, +1}.
inline int quadratic_character(const FieldDescriptor& fd, const FieldElement& u) {
    return fd.chi[fd.index_of(u)];
}

namespace detail {

// Dense F_p[x] arithmetic, machine words, used only to pick the field modulus.
inline std::vector<uint32_t> fp_poly_mulmod(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                                            const std::vector<uint32_t>& m, uint32_t p) {
    std::vector<uint64_t> acc(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<uint64_t>(a[i]) * b[j] % p;
    }
    size_t dm = m.size() - 1;
    for (size_t k = acc.size(); k-- > dm;) {
        uint64_t t = acc[k] % p;
        if (!t) continue;
        acc[k] = 0;
        for (size_t i = 0; i < dm; ++i)
            acc[k - dm + i] = (acc[k - dm + i] + t * (p - m[i])) % p;
    }
    std::vector<uint32_t> r(dm, 0);
    for (size_t i = 0; i < dm; ++i) r[i] = static_cast<uint32_t>(acc[i] % p);
    return r;
}

inline std::vector<uint32_t> fp_poly_powmod_x(uint64_t e, const std::vector<uint32_t>& m, uint32_t p) {
    size_t dm = m.size() - 1;
    std::vector<uint32_t> r(dm, 0), x(dm, 0);
    r[0] = 1;
    if (dm == 1) x[0] = (p - m[0]) % p; // x reduces immediately
    else x[1] = 1;
    while (e) {
        if (e & 1ull) r = fp_poly_mulmod(r, x, m, p);
        x = fp_poly_mulmod(x, x, m, p);
        e >>= 1ull;
    }
    return r;
}

inline std::vector<uint32_t> fp_poly_gcd(std::vector<uint32_t> a, std::vector<uint32_t> b, uint32_t p) {
    auto deg = [](const std::vector<uint32_t>& v) {
        for (size_t i = v.size(); i-- > 0;) if (v[i]) return static_cast<long>(i);
        return -1L;
    };
    auto powmod = [p](uint64_t x, uint64_t e) {
        uint64_t r = 1; x %= p;
        while (e) { if (e & 1ull) r = r * x % p; x = x * x % p; e >>= 1ull; }
        return r;
    };
    while (deg(b) >= 0) {
        long da = deg(a), db = deg(b);
        if (da < db) { std::swap(a, b); continue; }
        uint64_t f = static_cast<uint64_t>(a[da]) * powmod(b[db], p - 2) % p;
        for (long i = 0; i <= db; ++i) {
            uint64_t s = static_cast<uint64_t>(a[da - db + i]) + p * p - f * b[i] % p;
            a[da - db + i] = static_cast<uint32_t>(s % p);
        }
        // degree of a strictly dropped at index da
    }
    a.resize(deg(a) + 1);
    return a;
}

inline bool fp_poly_irreducible(const std::vector<uint32_t>& m, uint32_t p) {
    size_t dm = m.size() - 1;
    if (dm == 1) return true;
    // x^(p^d) == x mod m  and  gcd(x^(p^(d/r)) - x, m) == 1 for prime r | d.
    auto xq = [&](uint64_t e) { return fp_poly_powmod_x(e, m, p); };
    uint64_t pd = 1;
    for (size_t i = 0; i < dm; ++i) pd *= p;
    auto top = xq(pd);
    std::vector<uint32_t> xpoly(dm, 0);
    if (dm >= 2) xpoly[1] = 1; // dm >= 2 here
    if (top != xpoly) return false;
    for (uint64_t r : factor_u64(dm)) {
        uint64_t e = 1;
        for (size_t i = 0; i < dm / r; ++i) e *= p;
        auto sub = xq(e);
        // sub - x
        std::vector<uint32_t> diff = sub;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        std::vector<uint32_t> mm = m;
        auto g = fp_poly_gcd(mm, diff, p);
        if (g.size() > 1) return false;
    }
    return true;
}

} // namespace detail

// Least monic irreducible modulus in lexicographic order of (c_0, ..., c_{d-1}).
inline std::vector<uint32_t> least_irreducible_modulus(uint32_t p, uint32_t d) {
    if (d == 1) return {0, 1}; // the prime field needs no modulus choice
    uint64_t total = 1;
    for (uint32_t i = 0; i < d; ++i) total *= p;
    for (uint64_t n = 0; n < total; ++n) {
        std::vector<uint32_t> m(d + 1, 0);
        m[d] = 1;
        uint64_t rest = n;
        for (uint32_t i = 0; i < d; ++i) { // c_0 is the most significant lex digit
            uint64_t digit = rest;
            for (uint32_t j = i + 1; j < d; ++j) digit /= p;
            m[i] = static_cast<uint32_t>(digit % p);
        }
        if (detail::fp_poly_irreducible(m, p)) return m;
    }
    throw internal_error("no irreducible modulus found"); // unreachable
}

inline uint64_t default_field_table_cap() { return 10'000'000ull; }

// Builds the descriptor, including the full character table (one generator walk).
inline std::shared_ptr<const FieldDescriptor> build_extension(uint32_t p, uint32_t d,
                                                              uint32_t max_degree = kMaxExtensionDegree,
                                                              uint64_t table_cap = default_field_table_cap()) {
    if (p == 2 || !is_prime_u64(p)) throw precondition_error("field characteristic must be an odd prime");
    if (d < 1 || d > max_degree || d > kMaxExtensionDegree)
        throw precondition_error("extension degree out of range [1, " + std::to_string(max_degree) + "]");
    auto fd = std::make_shared<FieldDescriptor>();
    fd->p = p;
    fd->d = d;
    uint64_t q = 1;
    for (uint32_t i = 0; i < d; ++i) {
        q *= p;
        if (q > table_cap) throw resource_error("field size " + std::to_string(p) + "^" + std::to_string(d) + " exceeds table cap");
    }
    fd->q = q;
    fd->modulus = least_irreducible_modulus(p, d);

    // Reduction rows: t^(d+j) mod modulus for j = 0..d-2, iteratively from
    // t^d = -(m_0 + m_1 t + ... + m_{d-1} t^{d-1}).
    if (d >= 2) {
        std::array<uint32_t, kMaxExtensionDegree> cur{};
        for (uint32_t i = 0; i < d; ++i) cur[i] = (p - fd->modulus[i] % p) % p;
        for (uint32_t j = 0;; ++j) {
            fd->red[j] = cur;
            if (j == d - 2) break;
            std::array<uint32_t, kMaxExtensionDegree> nxt{};
            uint32_t carry = cur[d - 1];
            for (uint32_t i = d; i-- > 1;) nxt[i] = cur[i - 1];
            if (carry) {
                for (uint32_t i = 0; i < d; ++i) {
                    uint64_t s = nxt[i] + static_cast<uint64_t>(carry) * ((p - fd->modulus[i] % p) % p);
                    nxt[i] = static_cast<uint32_t>(s % p);
                }
            }
            cur = nxt;
        }
    }

    // Character table via a multiplicative generator: chi(g^k) = (-1)^k.
    fd->chi.assign(q, 0);
    std::vector<uint64_t> prime_factors = factor_u64(q - 1);
    FieldElement gen;
    bool found = false;
    for (uint64_t ix = 1; ix < q && !found; ++ix) {
        FieldElement cand = fd->element_at(ix);
        bool ok = true;
        for (uint64_t r : prime_factors) {
            if (fd->is_zero(fd->sub(fd->pow(cand, (q - 1) / r), fd->one()))) { ok = false; break; }
        }
        if (ok) { gen = cand; found = true; }
    }
    if (!found) throw internal_error("no multiplicative generator found");
    FieldElement cur_el = fd->one();
    int8_t sign = 1;
    for (uint64_t k = 0; k < q - 1; ++k) {
        fd->chi[fd->index_of(cur_el)] = sign;
        cur_el = fd->mul(cur_el, gen);
        sign = -sign;
    }
    return fd;
}

// Registry so repeated scans over the same (p, d) reuse tables.
inline std::shared_ptr<const FieldDescriptor> field_cache(uint32_t p, uint32_t d,
                                                          uint64_t table_cap = default_field_table_cap()) {
    static std::mutex mu;
    static std::map<std::pair<uint32_t, uint32_t>, std::shared_ptr<const FieldDescriptor>> reg;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p, d);
    auto it = reg.find(key);
    if (it != reg.end()) return it->second;
    auto fd = build_extension(p, d, kMaxExtensionDegree, table_cap);
    reg.emplace(key, fd);
    return fd;
}

// --- Polynomials over F_q ---------------------------------------------------

struct FqPoly {
    std::shared_ptr<const FieldDescriptor> fd;
    std::vector<FieldElement> c; // ascending, normalized (no zero leading term)

    void normalize() {
        while (!c.empty() && fd->is_zero(c.back())) c.pop_back();
    }
    long degree() const { return static_cast<long>(c.size()) - 1; }
};

inline FqPoly fq_poly_from_base(std::shared_ptr<const FieldDescriptor> fd, const std::vector<long long>& coeffs) {
    FqPoly f;
    f.fd = fd;
    f.c.reserve(coeffs.size());
    uint32_t p = fd->p;
    for (long long v : coeffs) {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        f.c.push_back(fd->from_base(static_cast<uint64_t>(r)));
    }
    f.normalize();
    return f;
}

inline FieldElement fq_poly_eval(const FqPoly& f, const FieldElement& x) {
    const auto& fd = *f.fd;
    FieldElement acc = fd.zero();
    for (size_t i = f.c.size(); i-- > 0;) acc = fd.add(fd.mul(acc, x), f.c[i]);
    return acc;
}

inline FqPoly fq_poly_derivative(const FqPoly& f) {
    FqPoly g;
    g.fd = f.fd;
    const auto& fd = *f.fd;
    for (size_t i = 1; i < f.c.size(); ++i)
        g.c.push_back(fd.scalar_mul(static_cast<uint32_t>(i % fd.p), f.c[i]));
    g.normalize();
    return g;
}

inline FqPoly fq_poly_gcd(FqPoly a, FqPoly b) {
    const auto& fd = *a.fd;
    a.normalize();
    b.normalize();
    while (b.degree() >= 0) {
        // reduce a by b in place (monic-ized steps), then swap
        FieldElement lead_inv = fd.inv(b.c.back());
        while (a.degree() >= b.degree() && a.degree() >= 0) {
            FieldElement f = fd.mul(a.c.back(), lead_inv);
            size_t shift = a.c.size() - b.c.size();
            for (size_t i = 0; i < b.c.size(); ++i)
                a.c[shift + i] = fd.sub(a.c[shift + i], fd.mul(f, b.c[i]));
            a.normalize();
        }
        std::swap(a, b);
    }
    a.normalize();
    return a;
}

// gcd(h, h') trivial <=> squarefree. Degree-0 polynomials count as squarefree.
inline bool is_squarefree(const FqPoly& h) {
    FqPoly g = fq_poly_gcd(h, fq_poly_derivative(h));
    return g.degree() <= 0;
}

} // namespace splitscan
