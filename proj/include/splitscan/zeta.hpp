#pragma once

// Zeta-function data for odd-degree hyperelliptic curves y^2 = h(x) over F_p.
// Point counts over F_{p^d} for d <= g determine the numerator L(T) of the
// zeta function exactly (Newton identities + functional equation); predicted
// counts for d > g and base-change transforms then follow from L alone.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "finite_field.hpp"
#include "intpoly.hpp"

namespace splitscan {

// Numerator of the zeta function: L(T) = sum_i c[i] T^i, degree 2g, c[0] = 1,
// over the field with q elements.
struct LPolynomial {
    Int q;
    unsigned g = 0;
    std::vector<Int> c; // size 2g + 1
};

inline std::vector<uint32_t> reduce_coeffs_mod(const std::vector<long long>& h, uint32_t p) {
    std::vector<uint32_t> r(h.size(), 0);
    for (size_t i = 0; i < h.size(); ++i) {
        long long v = h[i] % static_cast<long long>(p);
        if (v < 0) v += p;
        r[i] = static_cast<uint32_t>(v);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// A curve fiber has good reduction at p when the defining polynomial keeps its
// degree and stays squarefree mod p.
inline bool good_reduction(const std::vector<long long>& h, uint32_t p) {
    size_t deg_z = h.size();
    while (deg_z > 0 && h[deg_z - 1] == 0) --deg_z;
    if (deg_z == 0) return false;
    auto hbar = reduce_coeffs_mod(h, p);
    if (hbar.size() != deg_z) return false;
    zpoly::modp::MPoly m(hbar.begin(), hbar.end());
    return zpoly::modp::squarefree(m, p);
}

// One-shot projective point count of y^2 = h(x) over F_{p^d}; h must have odd
// degree mod p (one point at infinity).
inline uint64_t count_points(const std::vector<long long>& h, uint32_t p, uint32_t d) {
    auto fd = field_cache(p, d);
    auto hbar = reduce_coeffs_mod(h, p);
    if (hbar.empty() || hbar.size() % 2 != 0) // size = degree + 1
        throw precondition_error("point count requires odd degree mod p");
    std::vector<FieldElement> coeff(hbar.size());
    for (size_t i = 0; i < hbar.size(); ++i) coeff[i] = fd->from_base(hbar[i]);
    uint64_t n = 1; // point at infinity
    for (uint64_t i = 0; i < fd->q; ++i) {
        FieldElement x = fd->element_at(i);
        FieldElement acc = coeff.back();
        for (size_t j = coeff.size() - 1; j-- > 0;) {
            acc = fd->mul(acc, x);
            acc = fd->add(acc, coeff[j]);
        }
        n += static_cast<uint64_t>(1 + fd->chi[fd->index_of(acc)]);
    }
    return n;
}

// Reusable counter for sweeping many polynomials over the same field: a table
// of powers x^j turns each evaluation into base-scalar multiplies only.
struct ExhaustiveCounter {
    std::shared_ptr<const FieldDescriptor> fd;
    unsigned max_deg;
    std::vector<FieldElement> pow; // pow[i * (max_deg+1) + j] = (element i)^j

    ExhaustiveCounter(uint32_t p, uint32_t d, unsigned max_degree)
        : fd(field_cache(p, d)), max_deg(max_degree) {
        pow.resize(static_cast<size_t>(fd->q) * (max_deg + 1));
        for (uint64_t i = 0; i < fd->q; ++i) {
            FieldElement x = fd->element_at(i);
            FieldElement acc = fd->one();
            size_t base = static_cast<size_t>(i) * (max_deg + 1);
            for (unsigned j = 0; j <= max_deg; ++j) {
                pow[base + j] = acc;
                if (j < max_deg) acc = fd->mul(acc, x);
            }
        }
    }

    // h: coefficients reduced mod p, ascending, odd degree <= max_deg.
    uint64_t count(const std::vector<uint32_t>& h) const {
        if (h.empty() || h.back() == 0 || h.size() % 2 != 0 || h.size() - 1 > max_deg)
            throw precondition_error("counter expects odd degree within table range");
        uint64_t n = 1;
        const unsigned stride = max_deg + 1;
        for (uint64_t i = 0; i < fd->q; ++i) {
            const FieldElement* row = &pow[static_cast<size_t>(i) * stride];
            FieldElement acc = fd->zero();
            for (size_t j = 0; j < h.size(); ++j) {
                if (!h[j]) continue;
                acc = fd->add(acc, fd->scalar_mul(h[j], row[j]));
            }
            n += static_cast<uint64_t>(1 + fd->chi[fd->index_of(acc)]);
        }
        return n;
    }
};

// Power sums s_n of the inverse roots of L, for n = 1..n_max (1-based result:
// out[n-1] = s_n). Newton identities below degree, linear recurrence above.
inline std::vector<Int> power_sums(const LPolynomial& L, unsigned n_max) {
    unsigned twog = 2 * L.g;
    std::vector<Int> s(n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
        Int acc = 0;
        if (n <= twog) {
            for (unsigned j = 1; j < n; ++j) acc += L.c[j] * s[n - j - 1];
            s[n - 1] = -Int(n) * L.c[n] - acc;
        } else {
            for (unsigned j = 1; j <= twog; ++j) acc += L.c[j] * s[n - j - 1];
            s[n - 1] = -acc;
        }
    }
    return s;
}

// Point count over F_{q^d} predicted by L: N_d = q^d + 1 - s_d.
inline Int predicted_point_count(const LPolynomial& L, unsigned d) {
    if (d == 0) throw precondition_error("degree must be positive");
    auto s = power_sums(L, d);
    return int_pow(L.q, d) + 1 - s[d - 1];
}

namespace detail {

// Rebuild coefficients from power sums via Newton; divisions must be exact.
inline std::vector<Int> coeffs_from_power_sums(const std::vector<Int>& s, unsigned twog) {
    std::vector<Int> c(twog + 1);
    c[0] = 1;
    for (unsigned i = 1; i <= twog; ++i) {
        Int acc = 0;
        for (unsigned j = 1; j <= i; ++j) acc += s[j - 1] * c[i - j];
        Int num = -acc;
        if (num % i != 0) throw internal_error("power-sum reconstruction not integral");
        c[i] = num / i;
    }
    return c;
}

} // namespace detail

// L-polynomial of the same abelian variety after base change to F_{q^m}:
// inverse roots are raised to the m-th power.
inline LPolynomial power_transform(const LPolynomial& L, unsigned m) {
    if (m == 0) throw precondition_error("power transform needs m >= 1");
    if (m == 1) return L;
    unsigned twog = 2 * L.g;
    auto s = power_sums(L, twog * m);
    std::vector<Int> sm(twog);
    for (unsigned j = 1; j <= twog; ++j) sm[j - 1] = s[j * m - 1];
    LPolynomial out;
    out.q = int_pow(L.q, m);
    out.g = L.g;
    out.c = detail::coeffs_from_power_sums(sm, twog);
    return out;
}

// Exact coefficient bound satisfied by every genuine Weil polynomial:
// |c_i| <= binom(2g, i) * q^(i/2), checked without floating point.
inline void check_weil_coefficient_bounds(const LPolynomial& L) {
    unsigned twog = 2 * L.g;
    for (unsigned i = 0; i <= twog; ++i) {
        Int lhs = L.c[i] * L.c[i];
        Int b = binomial(twog, i);
        Int rhs = b * b * int_pow(L.q, i);
        if (lhs > rhs) throw internal_error("coefficient exceeds Weil bound");
    }
    if (L.c[0] != 1) throw internal_error("L-polynomial must have constant term 1");
}

// Numeric check that all inverse roots have absolute value sqrt(q): finds the
// roots of the scaled polynomial via Durand-Kerner and tests |root| == 1.
inline bool verify_weil(const LPolynomial& L, double tol = 1e-8) {
    unsigned n = 2 * L.g;
    if (n == 0) return true;
    // The simultaneous iteration below stalls on repeated roots, so run it on
    // the squarefree part of the monic reversal: same root set (multiplicities
    // dropped), same modulus test, but simple roots and fast convergence.
    zpoly::Poly rev(n + 1);
    for (unsigned k = 0; k <= n; ++k) rev[k] = L.c[n - k];
    zpoly::Poly sq = rev;
    {
        zpoly::Poly common = zpoly::gcd(rev, zpoly::derivative(rev));
        if (common.size() > 1) sq = zpoly::div_exact(rev, common);
    }
    unsigned m = static_cast<unsigned>(sq.size() - 1);
    // Scaled monic polynomial B(y) = sum_i b_i y^(m-i), b_i = s_i / q^(i/2),
    // where s_i is the coefficient of x^(m-i) in the squarefree part.
    std::vector<double> b(m + 1);
    for (unsigned i = 0; i <= m; ++i) b[i] = scaled_to_double(sq[m - i], L.q, i);
    using C = std::complex<double>;
    auto eval = [&](C y) {
        C acc(0.0, 0.0);
        for (unsigned i = 0; i <= m; ++i) acc = acc * y + C(b[i], 0.0);
        return acc;
    };
    std::vector<C> z(m);
    C seed(0.4, 0.9);
    C cur = seed;
    for (unsigned k = 0; k < m; ++k) {
        z[k] = cur;
        cur *= seed;
    }
    bool converged = false;
    for (int iter = 0; iter < 400 && !converged; ++iter) {
        double max_delta = 0.0;
        for (unsigned k = 0; k < m; ++k) {
            C denom(1.0, 0.0);
            for (unsigned j = 0; j < m; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            C delta = eval(z[k]) / denom;
            z[k] -= delta;
            max_delta = std::max(max_delta, std::abs(delta));
        }
        if (max_delta < 1e-12) converged = true;
    }
    if (!converged) throw numeric_error("root finder did not converge");
    for (unsigned k = 0; k < m; ++k)
        if (std::abs(std::abs(z[k]) - 1.0) > tol) return false;
    return true;
}

// L-polynomial of y^2 = h(x) over F_p from exact point counts over F_{p^d},
// d = 1..g. Throws bad_reduction_error unless h keeps odd degree and stays
// squarefree mod p.
inline LPolynomial l_polynomial(const std::vector<long long>& h, uint32_t p) {
    size_t deg_z = h.size();
    while (deg_z > 0 && h[deg_z - 1] == 0) --deg_z;
    if (deg_z < 4 || deg_z % 2 != 0) // size = degree + 1; need odd degree >= 3
        throw precondition_error("defining polynomial must have odd degree >= 3");
    auto hbar = reduce_coeffs_mod(h, p);
    if (hbar.size() != deg_z)
        throw bad_reduction_error("degree drops mod p");
    {
        zpoly::modp::MPoly m(hbar.begin(), hbar.end());
        if (!zpoly::modp::squarefree(m, p)) throw bad_reduction_error("not squarefree mod p");
    }
    unsigned g = static_cast<unsigned>((deg_z - 2) / 2);
    LPolynomial L;
    L.q = p;
    L.g = g;
    L.c.assign(2 * g + 1, 0);
    L.c[0] = 1;
    // Newton identities from measured counts.
    std::vector<Int> s(g);
    for (unsigned d = 1; d <= g; ++d) {
        uint64_t nd = count_points(h, p, d);
        s[d - 1] = int_pow(Int(p), d) + 1 - Int(nd);
    }
    for (unsigned i = 1; i <= g; ++i) {
        Int acc = 0;
        for (unsigned j = 1; j <= i; ++j) acc += s[j - 1] * L.c[i - j];
        Int num = -acc;
        if (num % i != 0) throw internal_error("Newton reconstruction not integral");
        L.c[i] = num / i;
    }
    // Functional equation fills the upper half.
    for (unsigned k = g + 1; k <= 2 * g; ++k) L.c[k] = int_pow(Int(p), k - g) * L.c[2 * g - k];
    check_weil_coefficient_bounds(L);
    return L;
}

} // namespace splitscan
