#pragma once

// Exact integer-polynomial arithmetic and factorization over Z. Degrees stay
// tiny (<= 2g <= 8) but coefficients grow like q^(g*m), so the factor search
// is classic Zassenhaus: factor mod a small prime, Hensel-lift past the
// Mignotte bound, then recombine subsets with exact trial division.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace splitscan {
namespace zpoly {

using Poly = std::vector<Int>; // ascending coefficients; empty = zero; back() != 0

inline void normalize(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long degree(const Poly& a) { return static_cast<long>(a.size()) - 1; }
inline bool is_zero(const Poly& a) { return a.empty(); }
inline bool is_monic(const Poly& a) { return !a.empty() && a.back() == 1; }

inline Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    normalize(r);
    return r;
}

inline Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    normalize(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    normalize(r);
    return r;
}

inline Poly scalar_mul(const Int& s, const Poly& a) {
    if (s == 0) return {};
    Poly r = a;
    for (auto& c : r) c *= s;
    return r;
}

inline Poly derivative(const Poly& a) {
    Poly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long>(i));
    normalize(r);
    return r;
}

inline Int eval(const Poly& a, const Int& x) {
    Int acc = 0;
    for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

// Division when it is known to be exact (monic divisor or genuine factor).
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (is_zero(b)) throw precondition_error("division by zero polynomial");
    Poly rem = a, quot;
    long db = degree(b);
    if (degree(a) >= db) quot.assign(degree(a) - db + 1, 0);
    while (degree(rem) >= db) {
        long k = degree(rem) - db;
        Int q = rem.back() / b.back();
        if (q * b.back() != rem.back()) return {Poly{}, a}; // not exactly divisible at this step
        quot[k] = q;
        for (long i = 0; i <= db; ++i) rem[k + i] -= q * b[i];
        normalize(rem);
    }
    normalize(quot);
    return {quot, rem};
}

inline Poly div_exact(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!is_zero(r)) throw internal_error("expected exact polynomial division");
    return q;
}

inline Int content(const Poly& a) {
    Int g = 0;
    for (const auto& c : a) g = boost::multiprecision::gcd(g, c);
    return g;
}

inline Poly primitive_part(const Poly& a) {
    if (a.empty()) return {};
    Int g = content(a);
    if (a.back() < 0) g = -g;
    Poly r = a;
    for (auto& c : r) c /= g;
    return r;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
inline Poly pseudo_rem(Poly a, const Poly& b) {
    long db = degree(b);
    if (db < 0) throw precondition_error("pseudo remainder by zero");
    const Int& lb = b.back();
    while (degree(a) >= db && !is_zero(a)) {
        long k = degree(a) - db;
        Int la = a.back();
        for (auto& c : a) c *= lb;
        for (long i = 0; i <= db; ++i) a[k + i] -= la * b[i];
        normalize(a);
    }
    return a;
}

// Primitive PRS gcd, normalized primitive with positive leading coefficient.
inline Poly gcd(Poly a, Poly b) {
    normalize(a);
    normalize(b);
    if (is_zero(a)) return primitive_part(b);
    if (is_zero(b)) return primitive_part(a);
    a = primitive_part(a);
    b = primitive_part(b);
    if (degree(a) < degree(b)) std::swap(a, b);
    while (!is_zero(b)) {
        Poly r = pseudo_rem(a, b);
        a = std::move(b);
        b = is_zero(r) ? Poly{} : primitive_part(r);
    }
    return primitive_part(a);
}

inline bool squarefree_over_z(const Poly& a) {
    if (degree(a) <= 0) return true;
    return degree(gcd(a, derivative(a))) == 0;
}

// Fraction-free (Bareiss) determinant of the Sylvester matrix.
inline Int resultant(const Poly& a, const Poly& b) {
    long da = degree(a), db = degree(b);
    if (da < 0 || db < 0) return 0;
    if (da == 0) return int_pow(a[0], static_cast<unsigned>(db));
    if (db == 0) return int_pow(b[0], static_cast<unsigned>(da));
    long n = da + db;
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
    for (long r = 0; r < db; ++r)
        for (long i = 0; i <= da; ++i) m[r][r + i] = a[da - i];
    for (long r = 0; r < da; ++r)
        for (long i = 0; i <= db; ++i) m[db + r][r + i] = b[db - i];
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            long piv = -1;
            for (long r = k + 1; r < n; ++r)
                if (m[r][k] != 0) { piv = r; break; }
            if (piv < 0) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (long r = k + 1; r < n; ++r) {
            for (long c = k + 1; c < n; ++c) {
                Int v = m[r][c] * m[k][k] - m[r][k] * m[k][c];
                m[r][c] = v / prev; // exact by Bareiss
            }
            m[r][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

inline Int discriminant_monic(const Poly& a) {
    long n = degree(a);
    if (n < 1) throw precondition_error("discriminant needs degree >= 1");
    if (!is_monic(a)) throw precondition_error("discriminant helper expects a monic polynomial");
    Int res = resultant(a, derivative(a));
    return ((n * (n - 1) / 2) % 2 == 0) ? res : Int(-res);
}

// Yun's squarefree decomposition of a monic polynomial: a = prod a_i^i.
inline std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& a) {
    std::vector<std::pair<Poly, int>> out;
    if (degree(a) <= 0) return out;
    Poly da = derivative(a);
    Poly g = gcd(a, da);
    if (degree(g) == 0) {
        out.emplace_back(a, 1);
        return out;
    }
    Poly c = div_exact(a, g);
    Poly d = sub(div_exact(da, g), derivative(c));
    int i = 1;
    while (degree(c) > 0) {
        Poly p = gcd(c, d);
        if (degree(p) > 0) out.emplace_back(p, i);
        c = div_exact(c, p);
        d = sub(div_exact(d, p), derivative(c));
        ++i;
    }
    return out;
}

// --- F_pi[x] machinery (pi a machine-word prime) ----------------------------

namespace modp {

using MPoly = std::vector<uint32_t>; // ascending, normalized

inline void normalize(MPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline long degree(const MPoly& a) { return static_cast<long>(a.size()) - 1; }

inline uint64_t powmod_u(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1ull) r = r * a % p;
        a = a * a % p;
        e >>= 1ull;
    }
    return r;
}
inline uint32_t inv_mod(uint32_t a, uint32_t p) { return static_cast<uint32_t>(powmod_u(a, p - 2, p)); }

inline MPoly reduce_from_z(const Poly& a, uint32_t p) {
    MPoly r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        Int v = a[i] % p;
        if (v < 0) v += p;
        r[i] = v.convert_to<uint32_t>();
    }
    normalize(r);
    return r;
}

inline MPoly mul(const MPoly& a, const MPoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p;
    }
    MPoly r(acc.begin(), acc.end());
    normalize(r);
    return r;
}

// Remainder of a by monic-normalized b.
inline MPoly rem(MPoly a, const MPoly& b, uint32_t p) {
    long db = degree(b);
    if (db < 0) throw precondition_error("mod-p remainder by zero");
    uint32_t linv = inv_mod(b.back(), p);
    while (degree(a) >= db) {
        long k = degree(a) - db;
        uint64_t f = static_cast<uint64_t>(a.back()) * linv % p;
        if (f) {
            for (long i = 0; i <= db; ++i) {
                uint64_t s = a[k + i] + static_cast<uint64_t>(p) * p - f * b[i] % p;
                a[k + i] = static_cast<uint32_t>(s % p);
            }
        }
        a.pop_back();
        normalize(a);
    }
    return a;
}

inline MPoly gcd(MPoly a, MPoly b, uint32_t p) {
    normalize(a);
    normalize(b);
    while (!b.empty()) {
        MPoly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        uint32_t f = inv_mod(a.back(), p);
        for (auto& c : a) c = static_cast<uint32_t>(static_cast<uint64_t>(c) * f % p);
    }
    return a;
}

inline MPoly derivative(const MPoly& a, uint32_t p) {
    MPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(static_cast<uint32_t>(static_cast<uint64_t>(a[i]) * (i % p) % p));
    normalize(r);
    return r;
}

inline bool squarefree(const MPoly& a, uint32_t p) {
    if (degree(a) <= 0) return true;
    return degree(gcd(a, derivative(a, p), p)) <= 0;
}

inline MPoly powmod_x(uint64_t e, const MPoly& m, uint32_t p) {
    MPoly r{1}, x{0, 1};
    x = rem(x, m, p);
    while (e) {
        if (e & 1ull) r = rem(mul(r, x, p), m, p);
        x = rem(mul(x, x, p), m, p);
        e >>= 1ull;
    }
    return r;
}

// Irreducibility of a monic squarefree polynomial of degree n over F_p:
// x^(p^n) == x mod f, and gcd(x^(p^(n/r)) - x, f) = 1 for each prime r | n.
inline bool irreducible(const MPoly& f, uint32_t p) {
    long n = degree(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    auto x_to = [&](long k) {
        uint64_t e = 1;
        for (long i = 0; i < k; ++i) e *= p;
        return powmod_x(e, f, p);
    };
    MPoly xp = x_to(n);
    MPoly xpoly = rem(MPoly{0, 1}, f, p);
    if (xp != xpoly) return false;
    long nn = n;
    for (long r = 2; r <= nn; ++r) {
        if (nn % r) continue;
        while (nn % r == 0) nn /= r;
        MPoly diff = x_to(n / r);
        // diff - x
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        normalize(diff);
        if (degree(gcd(f, diff, p)) > 0) return false;
    }
    return true;
}

// Deterministic Berlekamp factorization of a monic squarefree polynomial.
inline std::vector<MPoly> berlekamp(const MPoly& f, uint32_t p) {
    long n = degree(f);
    if (n <= 1) return {f};
    // Columns of M: x^(i*p) mod f.
    std::vector<MPoly> frob(n);
    MPoly xp = powmod_x(p, f, p);
    frob[0] = MPoly{1};
    for (long i = 1; i < n; ++i) frob[i] = rem(mul(frob[i - 1], xp, p), f, p);
    // Null space of (M - I)^T via row reduction on rows = equations.
    std::vector<std::vector<uint32_t>> m(n, std::vector<uint32_t>(n, 0));
    for (long col = 0; col < n; ++col) {
        const MPoly& v = frob[col];
        for (long row = 0; row < n; ++row) {
            uint32_t val = row < static_cast<long>(v.size()) ? v[row] : 0;
            if (row == col) val = (val + p - 1) % p;
            m[row][col] = val;
        }
    }
    // Gaussian elimination; record pivot columns.
    std::vector<long> pivot_of_row(n, -1);
    long rank = 0;
    for (long col = 0; col < n && rank < n; ++col) {
        long piv = -1;
        for (long r = rank; r < n; ++r)
            if (m[r][col]) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        uint32_t inv = inv_mod(m[rank][col], p);
        for (long c = 0; c < n; ++c) m[rank][c] = static_cast<uint32_t>(static_cast<uint64_t>(m[rank][c]) * inv % p);
        for (long r = 0; r < n; ++r) {
            if (r == rank || !m[r][col]) continue;
            uint64_t f2 = m[r][col];
            for (long c = 0; c < n; ++c) {
                uint64_t s = m[r][c] + static_cast<uint64_t>(p) * p - f2 * m[rank][c] % p;
                m[r][c] = static_cast<uint32_t>(s % p);
            }
        }
        pivot_of_row[rank] = col;
        ++rank;
    }
    long r_factors = n - rank;
    if (r_factors <= 1) return {f};
    // Null-space basis: one vector per free column.
    std::vector<bool> is_pivot(n, false);
    for (long r = 0; r < rank; ++r) is_pivot[pivot_of_row[r]] = true;
    std::vector<MPoly> basis;
    for (long col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        MPoly v(n, 0);
        v[col] = 1;
        for (long r = 0; r < rank; ++r) {
            uint32_t val = m[r][col];
            if (val) v[pivot_of_row[r]] = (p - val) % p;
        }
        normalize(v);
        basis.push_back(v);
    }
    // Refine the factor list with gcd(F, b - c) for every basis vector.
    std::vector<MPoly> factors{f};
    for (const MPoly& b : basis) {
        if (static_cast<long>(factors.size()) >= r_factors) break;
        std::vector<MPoly> next;
        for (const MPoly& w : factors) {
            if (degree(w) == 1) { next.push_back(w); continue; }
            MPoly remaining = w;
            for (uint32_t c = 0; c < p && degree(remaining) > 0; ++c) {
                MPoly shifted = b;
                if (shifted.empty()) shifted.resize(1, 0);
                shifted[0] = (shifted[0] + p - c % p) % p;
                normalize(shifted);
                MPoly g = gcd(remaining, shifted, p);
                if (degree(g) > 0 && degree(g) < degree(remaining)) {
                    next.push_back(g);
                    // remaining /= g
                    MPoly q;
                    {
                        // exact division via repeated elimination
                        MPoly num = remaining;
                        long dg = degree(g);
                        q.assign(degree(num) - dg + 1, 0);
                        uint32_t linv = inv_mod(g.back(), p);
                        while (degree(num) >= dg) {
                            long k = degree(num) - dg;
                            uint64_t fq = static_cast<uint64_t>(num.back()) * linv % p;
                            q[k] = static_cast<uint32_t>(fq);
                            for (long i = 0; i <= dg; ++i) {
                                uint64_t s = num[k + i] + static_cast<uint64_t>(p) * p - fq * g[i] % p;
                                num[k + i] = static_cast<uint32_t>(s % p);
                            }
                            normalize(num);
                        }
                    }
                    remaining = q;
                }
            }
            if (degree(remaining) > 0) next.push_back(remaining);
        }
        factors = std::move(next);
    }
    // Make all factors monic and deterministically ordered.
    for (auto& w : factors) {
        if (!w.empty() && w.back() != 1) {
            uint32_t inv = inv_mod(w.back(), p);
            for (auto& c : w) c = static_cast<uint32_t>(static_cast<uint64_t>(c) * inv % p);
        }
    }
    std::sort(factors.begin(), factors.end(), [](const MPoly& a, const MPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return factors;
}

// Extended gcd over F_p[x]: returns (s, t) with s*a + t*b = 1 for coprime a, b.
inline std::pair<MPoly, MPoly> xgcd_coprime(const MPoly& a, const MPoly& b, uint32_t p) {
    MPoly r0 = a, r1 = b;
    MPoly s0{1}, s1{}, t0{}, t1{1};
    auto madd = [p](const MPoly& x, const MPoly& y, const MPoly& qq) {
        // x - qq*y
        MPoly prod = mul(qq, y, p);
        MPoly r(std::max(x.size(), prod.size()), 0);
        for (size_t i = 0; i < x.size(); ++i) r[i] = x[i];
        for (size_t i = 0; i < prod.size(); ++i) r[i] = static_cast<uint32_t>((r[i] + static_cast<uint64_t>(p) - prod[i]) % p);
        normalize(r);
        return r;
    };
    while (!r1.empty()) {
        // quotient of r0 by r1
        MPoly q;
        {
            MPoly num = r0;
            long dg = degree(r1);
            if (degree(num) >= dg) q.assign(degree(num) - dg + 1, 0);
            uint32_t linv = inv_mod(r1.back(), p);
            while (degree(num) >= dg) {
                long k = degree(num) - dg;
                uint64_t fq = static_cast<uint64_t>(num.back()) * linv % p;
                q[k] = static_cast<uint32_t>(fq);
                for (long i = 0; i <= dg; ++i) {
                    uint64_t s = num[k + i] + static_cast<uint64_t>(p) * p - fq * r1[i] % p;
                    num[k + i] = static_cast<uint32_t>(s % p);
                }
                normalize(num);
            }
            normalize(q);
        }
        MPoly r2 = madd(r0, r1, q);
        MPoly s2 = madd(s0, s1, q);
        MPoly t2 = madd(t0, t1, q);
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (degree(r0) != 0) throw internal_error("xgcd of non-coprime polynomials");
    uint32_t inv = inv_mod(r0[0], p);
    for (auto& c : s0) c = static_cast<uint32_t>(static_cast<uint64_t>(c) * inv % p);
    for (auto& c : t0) c = static_cast<uint32_t>(static_cast<uint64_t>(c) * inv % p);
    return {s0, t0};
}

} // namespace modp

// --- Hensel lifting ----------------------------------------------------------

namespace hensel {

inline Poly from_mod(const modp::MPoly& a) {
    Poly r;
    r.reserve(a.size());
    for (uint32_t c : a) r.push_back(Int(c));
    return r;
}

inline Poly mod_reduce(const Poly& a, const Int& m) {
    Poly r = a;
    for (auto& c : r) {
        c %= m;
        if (c < 0) c += m;
    }
    normalize(r);
    return r;
}

inline Poly sym_reduce(const Poly& a, const Int& m) {
    Poly r = a;
    Int half = m / 2;
    for (auto& c : r) {
        c %= m;
        if (c < 0) c += m;
        if (c > half) c -= m;
    }
    normalize(r);
    return r;
}

inline Poly mulm(const Poly& a, const Poly& b, const Int& m) { return mod_reduce(mul(a, b), m); }

// Division by a monic polynomial with coefficients mod m.
inline std::pair<Poly, Poly> divmod_monic_mod(const Poly& a, const Poly& b, const Int& m) {
    if (!is_monic(b)) throw internal_error("hensel division expects monic divisor");
    Poly rem = a, quot;
    long db = degree(b);
    if (degree(a) >= db) quot.assign(degree(a) - db + 1, 0);
    while (degree(rem) >= db) {
        long k = degree(rem) - db;
        Int q = rem.back();
        quot[k] = q;
        for (long i = 0; i <= db; ++i) rem[k + i] -= q * b[i];
        rem = mod_reduce(rem, m);
    }
    normalize(quot);
    return {mod_reduce(quot, m), rem};
}

struct PairLift {
    Poly g, h, s, t;
};

// One quadratic step: from (g, h, s, t) valid mod m to valid mod m^2.
inline PairLift hensel_step(const Poly& f, const PairLift& in, const Int& m) {
    Int m2 = m * m;
    Poly e = mod_reduce(sub(f, mul(in.g, in.h)), m2);
    auto [q, r] = divmod_monic_mod(mulm(in.s, e, m2), in.h, m2);
    Poly g2 = mod_reduce(add(add(in.g, mulm(in.t, e, m2)), mulm(q, in.g, m2)), m2);
    Poly h2 = mod_reduce(add(in.h, r), m2);
    Poly b = mod_reduce(sub(add(mulm(in.s, g2, m2), mulm(in.t, h2, m2)), Poly{1}), m2);
    auto [c, d] = divmod_monic_mod(mulm(in.s, b, m2), h2, m2);
    Poly s2 = mod_reduce(sub(in.s, d), m2);
    Poly t2 = mod_reduce(sub(sub(in.t, mulm(in.t, b, m2)), mulm(c, g2, m2)), m2);
    if (!is_monic(g2) || !is_monic(h2)) throw internal_error("hensel step lost monicity");
    return {g2, h2, s2, t2};
}

// Lift f == prod(factors) from mod p to mod p^k with p^k >= target.
inline std::vector<Poly> lift_tree(const Poly& f, const std::vector<modp::MPoly>& factors,
                                   uint32_t p, const Int& target, Int& modulus_out) {
    Int m = p;
    while (m < target) m *= m; // final modulus: p^(2^j)
    modulus_out = m;
    // Recursive splitter.
    struct Rec {
        uint32_t p;
        const Int& target;
        std::vector<Poly> out;
        void run(const Poly& fcur, const std::vector<modp::MPoly>& fs) {
            if (fs.size() == 1) {
                out.push_back(fcur);
                return;
            }
            size_t halfn = fs.size() / 2;
            std::vector<modp::MPoly> left(fs.begin(), fs.begin() + halfn);
            std::vector<modp::MPoly> right(fs.begin() + halfn, fs.end());
            modp::MPoly g0{1}, h0{1};
            for (const auto& w : left) g0 = modp::mul(g0, w, p);
            for (const auto& w : right) h0 = modp::mul(h0, w, p);
            auto [s0, t0] = modp::xgcd_coprime(g0, h0, p);
            PairLift cur{from_mod(g0), from_mod(h0), from_mod(s0), from_mod(t0)};
            Int m = p;
            while (m < target) {
                cur = hensel_step(fcur, cur, m);
                m *= m;
            }
            run(cur.g, left);
            run(cur.h, right);
        }
    } rec{p, target, {}};
    rec.run(f, factors);
    return rec.out;
}

} // namespace hensel

// --- Zassenhaus --------------------------------------------------------------

// Mignotte-style coefficient bound for monic divisors of monic f.
inline Int divisor_coeff_bound(const Poly& f) {
    Int norm2_sq = 0;
    for (const auto& c : f) norm2_sq += c * c;
    Int norm2 = isqrt_floor(norm2_sq) + 1;
    return (Int(1) << static_cast<unsigned>(degree(f))) * norm2 + 1;
}

// Factor a monic squarefree polynomial over Z into monic irreducibles,
// deterministically ordered.
inline std::vector<Poly> factor_monic_squarefree(const Poly& f) {
    long n = degree(f);
    if (n <= 0) return {};
    if (n == 1) return {f};
    if (!is_monic(f)) throw precondition_error("factor_monic_squarefree expects monic input");

    // Choose a prime keeping f squarefree mod p, preferring few modular factors.
    static const uint32_t candidates[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59};
    uint32_t best_p = 0;
    std::vector<modp::MPoly> best_factors;
    int tried = 0;
    for (uint32_t p : candidates) {
        modp::MPoly fp = modp::reduce_from_z(f, p);
        if (modp::degree(fp) != n) continue; // cannot happen for monic f, kept for safety
        if (!modp::squarefree(fp, p)) continue;
        auto fs = modp::berlekamp(fp, p);
        if (fs.size() == 1) return {f}; // irreducible certificate
        if (best_p == 0 || fs.size() < best_factors.size()) {
            best_p = p;
            best_factors = std::move(fs);
        }
        if (++tried >= 4 || best_factors.size() == 2) break;
    }
    if (best_p == 0) throw internal_error("no usable prime for factorization (squarefree input expected)");

    Int bound = divisor_coeff_bound(f);
    Int target = 2 * bound + 1;
    Int modulus;
    std::vector<Poly> lifted = hensel::lift_tree(f, best_factors, best_p, target, modulus);

    // Subset recombination with exact trial division.
    std::vector<Poly> result;
    std::vector<int> active(lifted.size());
    for (size_t i = 0; i < lifted.size(); ++i) active[i] = static_cast<int>(i);
    Poly fcur = f;
    bool progress = true;
    while (progress && active.size() > 1) {
        progress = false;
        size_t r = active.size();
        for (size_t s = 1; s <= r / 2 && !progress; ++s) {
            // lexicographic combinations of size s over active positions
            std::vector<size_t> idx(s);
            for (size_t i = 0; i < s; ++i) idx[i] = i;
            for (;;) {
                Poly cand{1};
                for (size_t i : idx) cand = hensel::mod_reduce(mul(cand, lifted[active[i]]), modulus);
                cand = hensel::sym_reduce(cand, modulus);
                bool within = true;
                for (const auto& c : cand)
                    if (abs(c) > bound) { within = false; break; }
                if (within && is_monic(cand)) {
                    auto [q, rm] = divmod(fcur, cand);
                    if (is_zero(rm) && !is_zero(q)) {
                        result.push_back(cand);
                        fcur = q;
                        std::vector<int> remain;
                        for (size_t i = 0, j = 0; i < active.size(); ++i) {
                            if (j < s && idx[j] == i) { ++j; continue; }
                            remain.push_back(active[i]);
                        }
                        active = std::move(remain);
                        progress = true;
                        break;
                    }
                }
                // next combination
                long pos = static_cast<long>(s) - 1;
                while (pos >= 0 && idx[pos] == r - s + pos) --pos;
                if (pos < 0) break;
                ++idx[pos];
                for (size_t i = pos + 1; i < s; ++i) idx[i] = idx[i - 1] + 1;
            }
        }
    }
    if (degree(fcur) >= 1) result.push_back(fcur);
    std::sort(result.begin(), result.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return result;
}

// Complete factorization of a monic polynomial: list of (irreducible, multiplicity),
// deterministically ordered by (degree, coefficients) of the factor.
inline std::vector<std::pair<Poly, int>> factor_monic(const Poly& f) {
    if (degree(f) <= 0) return {};
    if (!is_monic(f)) throw precondition_error("factor_monic expects monic input");
    std::vector<std::pair<Poly, int>> out;
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        for (const auto& irr : factor_monic_squarefree(part))
            out.emplace_back(irr, mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        const Poly& a = x.first;
        const Poly& b = y.first;
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return x.second < y.second;
    });
    return out;
}

} // namespace zpoly
} // namespace splitscan
