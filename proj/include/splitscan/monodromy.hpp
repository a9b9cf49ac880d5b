#pragma once

// Symplectic-group laboratory over F_ell: transvection generation testing
// (span + pairing-graph connectivity), exhaustive verification that proper
// subgroups carry fewer than ell^(2g-1) transvections, and exact evaluators
// for the degeneration threshold, conjugacy ratio, Riemann-Hurwitz genus
// bound, and the Minkowski-style order bound. All formula arithmetic is
// exact; no floating point in this module.

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "primes.hpp"

namespace splitscan {

struct SymplecticContext {
    uint32_t ell = 3;
    unsigned g = 1;
    unsigned dim = 2; // 2g
};

inline SymplecticContext make_symplectic_context(uint32_t ell, unsigned g) {
    if (ell < 3 || !is_prime_u64(ell) || ell % 2 == 0)
        throw precondition_error("ell must be an odd prime >= 3");
    if (g < 1 || g > 4) throw precondition_error("genus must lie in [1, 4]");
    return SymplecticContext{ell, g, 2 * g};
}

using SpVec = std::vector<uint8_t>;
using SpMat = std::vector<uint8_t>; // row-major dim x dim

// Standard alternating form on basis pairs (e_{2i-1}, e_{2i}):
// <u, v> = sum_i (u_{2i-1} v_{2i} - u_{2i} v_{2i-1})   (1-based pairs).
inline uint32_t pairing(const SymplecticContext& ctx, const SpVec& u, const SpVec& v) {
    uint64_t acc = 0;
    for (unsigned i = 0; i + 1 < ctx.dim; i += 2) {
        acc += static_cast<uint64_t>(u[i]) * v[i + 1] % ctx.ell;
        acc += static_cast<uint64_t>(ctx.ell) - static_cast<uint64_t>(u[i + 1]) * v[i] % ctx.ell;
    }
    return static_cast<uint32_t>(acc % ctx.ell);
}

inline SpVec normalize_line(const SymplecticContext& ctx, const SpVec& v) {
    if (v.size() != ctx.dim) throw precondition_error("vector has wrong dimension");
    unsigned lead = ctx.dim;
    for (unsigned i = 0; i < ctx.dim; ++i)
        if (v[i] % ctx.ell != 0) { lead = i; break; }
    if (lead == ctx.dim) throw precondition_error("zero vector does not span a line");
    uint64_t inv = 1, a = v[lead] % ctx.ell, e = ctx.ell - 2;
    while (e) { // a^(ell-2) mod ell
        if (e & 1ull) inv = inv * a % ctx.ell;
        a = a * a % ctx.ell;
        e >>= 1ull;
    }
    SpVec r(ctx.dim);
    for (unsigned i = 0; i < ctx.dim; ++i)
        r[i] = static_cast<uint8_t>(v[i] % ctx.ell * inv % ctx.ell);
    return r;
}

// All lines of F_ell^(2g), one normalized representative each (first nonzero
// coordinate 1), in lexicographic order of the representative.
inline std::vector<SpVec> all_lines(const SymplecticContext& ctx) {
    std::vector<SpVec> lines;
    SpVec v(ctx.dim, 0);
    uint64_t total = 1;
    for (unsigned i = 0; i < ctx.dim; ++i) total *= ctx.ell;
    for (uint64_t code = 1; code < total; ++code) {
        uint64_t c = code;
        for (unsigned i = ctx.dim; i-- > 0;) {
            v[i] = static_cast<uint8_t>(c % ctx.ell);
            c /= ctx.ell;
        }
        unsigned lead = 0;
        while (lead < ctx.dim && v[lead] == 0) ++lead;
        if (v[lead] == 1) lines.push_back(v); // normalized representative
    }
    return lines;
}

inline SpMat identity_matrix(const SymplecticContext& ctx) {
    SpMat m(ctx.dim * ctx.dim, 0);
    for (unsigned i = 0; i < ctx.dim; ++i) m[i * ctx.dim + i] = 1;
    return m;
}

// Transvection T_{v,c}(x) = x + c <x, v> v, as a matrix (columns = images of e_j).
inline SpMat transvection_matrix(const SymplecticContext& ctx, const SpVec& v, uint32_t c = 1) {
    SpMat m = identity_matrix(ctx);
    SpVec ej(ctx.dim, 0);
    for (unsigned j = 0; j < ctx.dim; ++j) {
        ej.assign(ctx.dim, 0);
        ej[j] = 1;
        uint32_t w = static_cast<uint32_t>(static_cast<uint64_t>(pairing(ctx, ej, v)) * c % ctx.ell);
        if (!w) continue;
        for (unsigned i = 0; i < ctx.dim; ++i)
            m[i * ctx.dim + j] =
                static_cast<uint8_t>((m[i * ctx.dim + j] + static_cast<uint64_t>(w) * v[i]) % ctx.ell);
    }
    return m;
}

inline SpMat mat_mul(const SymplecticContext& ctx, const SpMat& a, const SpMat& b) {
    unsigned n = ctx.dim;
    SpMat r(n * n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            uint32_t acc = 0;
            for (unsigned k = 0; k < n; ++k) acc += static_cast<uint32_t>(a[i * n + k]) * b[k * n + j];
            r[i * n + j] = static_cast<uint8_t>(acc % ctx.ell);
        }
    return r;
}

// Positional base-ell key; fits uint64 for every group under the element cap.
inline uint64_t mat_key(const SymplecticContext& ctx, const SpMat& m) {
    uint64_t k = 0;
    for (uint8_t e : m) k = k * ctx.ell + e;
    return k;
}

inline unsigned fl_rank(const SymplecticContext& ctx, std::vector<uint32_t> m, unsigned rows,
                        unsigned cols) {
    unsigned rank = 0;
    for (unsigned col = 0; col < cols && rank < rows; ++col) {
        unsigned piv = rank;
        while (piv < rows && m[piv * cols + col] % ctx.ell == 0) ++piv;
        if (piv == rows) continue;
        for (unsigned c = 0; c < cols; ++c) std::swap(m[rank * cols + c], m[piv * cols + c]);
        uint64_t lead = m[rank * cols + col] % ctx.ell, inv = 1, e = ctx.ell - 2;
        while (e) {
            if (e & 1ull) inv = inv * lead % ctx.ell;
            lead = lead * lead % ctx.ell;
            e >>= 1ull;
        }
        for (unsigned c = 0; c < cols; ++c)
            m[rank * cols + c] = static_cast<uint32_t>(m[rank * cols + c] % ctx.ell * inv % ctx.ell);
        for (unsigned r2 = 0; r2 < rows; ++r2) {
            if (r2 == rank) continue;
            uint32_t f = m[r2 * cols + col] % ctx.ell;
            if (!f) continue;
            for (unsigned c = 0; c < cols; ++c) {
                uint64_t s = m[r2 * cols + c] + static_cast<uint64_t>(ctx.ell) * ctx.ell -
                             static_cast<uint64_t>(f) * m[rank * cols + c] % ctx.ell;
                m[r2 * cols + c] = static_cast<uint32_t>(s % ctx.ell);
            }
        }
        ++rank;
    }
    return rank;
}

// A symplectic matrix is a transvection iff M != I and rank(M - I) = 1.
inline bool is_transvection(const SymplecticContext& ctx, const SpMat& m) {
    unsigned n = ctx.dim;
    std::vector<uint32_t> d(n * n);
    bool nonzero = false;
    for (unsigned i = 0; i < n * n; ++i) {
        uint32_t delta = (i % (n + 1) == 0) ? 1u : 0u; // diagonal positions
        d[i] = (m[i] + ctx.ell - delta) % ctx.ell;
        nonzero = nonzero || d[i] != 0;
    }
    if (!nonzero) return false;
    return fl_rank(ctx, d, n, n) == 1;
}

struct TransvectionSet {
    SymplecticContext ctx;
    std::vector<SpVec> lines; // normalized, distinct
};

inline TransvectionSet make_transvection_set(const SymplecticContext& ctx,
                                             const std::vector<SpVec>& raw) {
    if (raw.empty()) throw precondition_error("transvection set must be non-empty");
    TransvectionSet s{ctx, {}};
    for (const auto& v : raw) {
        SpVec n = normalize_line(ctx, v);
        for (const auto& seen : s.lines)
            if (seen == n) throw precondition_error("lines must be distinct");
        s.lines.push_back(std::move(n));
    }
    return s;
}

// Generation criterion: the transvections on the given lines generate the
// full symplectic group iff the lines span F_ell^(2g) and the graph whose
// edges join non-orthogonal lines is connected.
inline bool brown_humphries_generates(const TransvectionSet& s) {
    const auto& ctx = s.ctx;
    size_t n = s.lines.size();
    // Span test.
    std::vector<uint32_t> m(n * ctx.dim);
    for (size_t i = 0; i < n; ++i)
        for (unsigned j = 0; j < ctx.dim; ++j) m[i * ctx.dim + j] = s.lines[i][j];
    if (fl_rank(ctx, m, static_cast<unsigned>(n), ctx.dim) != ctx.dim) return false;
    // Connectivity of the pairing graph.
    std::vector<int> comp(n, -1);
    std::deque<size_t> queue{0};
    comp[0] = 0;
    while (!queue.empty()) {
        size_t i = queue.front();
        queue.pop_front();
        for (size_t j = 0; j < n; ++j) {
            if (comp[j] >= 0 || j == i) continue;
            if (pairing(ctx, s.lines[i], s.lines[j]) != 0) {
                comp[j] = 0;
                queue.push_back(j);
            }
        }
    }
    for (size_t i = 0; i < n; ++i)
        if (comp[i] < 0) return false;
    return true;
}

// |Sp(2g, F_ell)| = ell^(g^2) * prod_{i=1..g} (ell^(2i) - 1).
inline Int sp_order(uint32_t ell, unsigned g) {
    Int r = int_pow(Int(ell), g * g);
    for (unsigned i = 1; i <= g; ++i) r *= int_pow(Int(ell), 2 * i) - 1;
    return r;
}

// Explicit element enumeration of the subgroup generated by `gens`.
inline std::vector<SpMat> group_closure(const SymplecticContext& ctx, const std::vector<SpMat>& gens,
                                        uint64_t cap = 1000000ull) {
    std::vector<SpMat> elems;
    std::unordered_set<uint64_t> seen;
    std::deque<size_t> work;
    elems.push_back(identity_matrix(ctx));
    seen.insert(mat_key(ctx, elems[0]));
    work.push_back(0);
    while (!work.empty()) {
        size_t i = work.front();
        work.pop_front();
        for (const auto& gmat : gens) {
            SpMat prod = mat_mul(ctx, elems[i], gmat);
            uint64_t k = mat_key(ctx, prod);
            if (seen.insert(k).second) {
                if (elems.size() + 1 > cap)
                    throw resource_error("group closure exceeded element cap " + std::to_string(cap));
                elems.push_back(std::move(prod));
                work.push_back(elems.size() - 1);
            }
        }
    }
    return elems;
}

// --- Exhaustive verification of the transvection-count lemma -------------------

struct TransvectionLemmaReport {
    uint32_t ell = 0;
    unsigned g = 0;
    Int group_order;
    uint64_t threshold = 0;                // ell^(2g-1)
    uint64_t max_proper_transvections = 0; // over all proper subgroups
    bool verified = false;                 // max <= threshold - 1
    uint64_t proper_masks = 0;             // distinct transvection-generated proper subgroups
    uint64_t closures_computed = 0;
};

namespace detail_monodromy {

// Closure over group elements; returns false (full group) as soon as the
// element count passes half the group order (index < 2 forces equality).
// On success fills `mask_out` with the set of lines whose transvections lie
// in the subgroup.
inline bool closure_line_mask(const SymplecticContext& ctx, const std::vector<SpMat>& taus,
                              const std::vector<uint64_t>& tau_keys,
                              const std::vector<uint8_t>& gen_lines, uint64_t half_order,
                              uint64_t& mask_out, uint64_t& elems_seen) {
    std::vector<SpMat> gens;
    for (uint8_t i : gen_lines) gens.push_back(taus[i]);
    std::vector<SpMat> elems;
    std::unordered_set<uint64_t> seen;
    seen.reserve(4096);
    std::deque<size_t> work;
    elems.push_back(identity_matrix(ctx));
    seen.insert(mat_key(ctx, elems[0]));
    work.push_back(0);
    while (!work.empty()) {
        size_t i = work.front();
        work.pop_front();
        for (const auto& gmat : gens) {
            SpMat prod = mat_mul(ctx, elems[i], gmat);
            uint64_t k = mat_key(ctx, prod);
            if (seen.insert(k).second) {
                elems.push_back(std::move(prod));
                work.push_back(elems.size() - 1);
                if (elems.size() > half_order) {
                    elems_seen = elems.size();
                    return false; // proper subgroups have index >= 2
                }
            }
        }
    }
    elems_seen = elems.size();
    uint64_t mask = 0;
    for (size_t i = 0; i < tau_keys.size(); ++i)
        if (seen.count(tau_keys[i])) mask |= 1ull << i;
    mask_out = mask;
    return true;
}

} // namespace detail_monodromy

// Enumerate every subgroup generated by a set of transvections (breadth-first
// over closed line-sets: start from single lines, extend a closed set by one
// line at a time, deduplicate by the resulting closed set). The maximum over
// all proper subgroups of the number of transvections they contain equals the
// maximum over these, because the transvections of any subgroup generate a
// subgroup containing exactly the same transvections.
inline TransvectionLemmaReport verify_transvection_lemma(uint32_t ell, unsigned g,
                                                         uint64_t cap = 1000000ull) {
    SymplecticContext ctx = make_symplectic_context(ell, g);
    TransvectionLemmaReport rep;
    rep.ell = ell;
    rep.g = g;
    rep.group_order = sp_order(ell, g);
    rep.threshold = 1;
    for (unsigned i = 0; i + 1 < 2 * g; ++i) rep.threshold *= ell;
    if (rep.group_order > cap)
        throw resource_error("group order " + rep.group_order.str() + " exceeds enumeration cap " +
                             std::to_string(cap));
    std::vector<SpVec> lines = all_lines(ctx);
    if (lines.size() > 63) throw resource_error("too many lines for mask-based enumeration");
    uint64_t half_order = (rep.group_order / 2).convert_to<uint64_t>();

    std::vector<SpMat> taus;
    std::vector<uint64_t> tau_keys;
    for (const auto& v : lines) {
        taus.push_back(transvection_matrix(ctx, v, 1));
        tau_keys.push_back(mat_key(ctx, taus.back()));
    }

    std::unordered_map<uint64_t, bool> tried; // union mask of (closed set, added line) -> proper?
    std::unordered_set<uint64_t> known_masks; // closed proper masks
    // Frontier entries carry a short generator chain producing the same
    // subgroup as the full closed line set; closures run over the chain.
    std::deque<std::pair<uint64_t, std::vector<uint8_t>>> frontier;
    uint64_t max_lines = 0;

    auto consider = [&](uint64_t genmask, const std::vector<uint8_t>& gen_lines) {
        auto it = tried.find(genmask);
        if (it != tried.end()) return;
        uint64_t closed = 0, seen_count = 0;
        ++rep.closures_computed;
        bool proper = detail_monodromy::closure_line_mask(ctx, taus, tau_keys, gen_lines, half_order,
                                                          closed, seen_count);
        tried.emplace(genmask, proper);
        if (!proper) return;
        tried.emplace(closed, true); // identical subgroup; avoid recomputation
        if (known_masks.insert(closed).second) {
            frontier.emplace_back(closed, gen_lines);
            uint64_t cnt = 0;
            for (uint64_t m = closed; m; m &= m - 1) ++cnt;
            if (cnt > max_lines) max_lines = cnt;
        }
    };

    for (size_t i = 0; i < lines.size(); ++i) consider(1ull << i, {static_cast<uint8_t>(i)});
    while (!frontier.empty()) {
        auto [t, chain] = frontier.front();
        frontier.pop_front();
        std::vector<uint8_t> extended = chain;
        extended.push_back(0);
        for (size_t w = 0; w < lines.size(); ++w) {
            if (t >> w & 1ull) continue;
            extended.back() = static_cast<uint8_t>(w);
            consider(t | (1ull << w), extended);
        }
    }

    rep.proper_masks = known_masks.size();
    rep.max_proper_transvections = max_lines * (ell - 1);
    rep.verified = rep.max_proper_transvections <= rep.threshold - 1;
    return rep;
}

// --- Closed-form calculators ----------------------------------------------------

struct ExactFraction {
    Int num, den; // reduced, den > 0

    ExactFraction(Int n, Int d) : num(std::move(n)), den(std::move(d)) {
        if (den == 0) throw precondition_error("zero denominator");
        if (den < 0) { num = -num; den = -den; }
        Int g = boost::multiprecision::gcd(num < 0 ? Int(-num) : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    std::string str() const { return den == 1 ? num.str() : num.str() + "/" + den.str(); }
};

// Maximum number of lines contained in a proper subspace of F_ell^(2g).
inline Int nonspanning_line_cap(uint32_t ell, unsigned g) {
    if (ell < 3 || !is_prime_u64(ell)) throw precondition_error("ell must be an odd prime >= 3");
    if (g < 1) throw precondition_error("genus must be positive");
    return (int_pow(Int(ell), 2 * g - 1) - 1) / (ell - 1);
}

// A subgroup containing this many transvections is the whole group.
inline Int transvection_threshold(uint32_t ell, unsigned g) {
    if (ell < 3 || !is_prime_u64(ell)) throw precondition_error("ell must be an odd prime >= 3");
    if (g < 1) throw precondition_error("genus must be positive");
    return int_pow(Int(ell), 2 * g - 1);
}

// ceil(2(ell^2g - 1) / (ell^g - ell^(g-1))^2): this many simply-degenerate
// places force the genus growth in the tower.
inline Int simple_degeneration_threshold(uint32_t ell, unsigned g) {
    if (ell < 3 || !is_prime_u64(ell)) throw precondition_error("ell must be an odd prime >= 3");
    if (g < 1) throw precondition_error("genus must be positive");
    Int num = 2 * (int_pow(Int(ell), 2 * g) - 1);
    Int d = int_pow(Int(ell), g) - int_pow(Int(ell), g - 1);
    Int den = d * d;
    return (num + den - 1) / den; // ceiling
}

// |tau^G ∩ H| / |tau^G| <= (ell^(2g-1) - 1)/(ell^2g - 1), exactly.
inline ExactFraction conjugacy_ratio_bound(uint32_t ell, unsigned g) {
    if (ell < 3 || !is_prime_u64(ell)) throw precondition_error("ell must be an odd prime >= 3");
    if (g < 1) throw precondition_error("genus must be positive");
    return ExactFraction(int_pow(Int(ell), 2 * g - 1) - 1, int_pow(Int(ell), 2 * g) - 1);
}

struct GenusBoundResult {
    ExactFraction bound;    // lower bound on the covering-curve genus
    bool positivity = false; // m (ell^g - ell^(g-1))^2 > 2 (ell^2g - 1)
};

// Riemann-Hurwitz lower bound for the genus of a degree-`index` cover with m
// simply-degenerate places over a base of genus base_genus:
// (index * (m * ell^(2g-2) (ell-1)^2 / (ell^2g - 1) + 2 base_genus - 2) + 2) / 2.
inline GenusBoundResult genus_lower_bound(uint32_t ell, unsigned g, uint64_t m, uint64_t index,
                                          uint64_t base_genus) {
    if (ell < 3 || !is_prime_u64(ell)) throw precondition_error("ell must be an odd prime >= 3");
    if (g < 1) throw precondition_error("genus must be positive");
    if (index < 1) throw precondition_error("group index must be >= 1");
    Int D = int_pow(Int(ell), 2 * g) - 1;
    Int ram = Int(m) * int_pow(Int(ell), 2 * g - 2) * (ell - 1) * (ell - 1);
    Int num = Int(index) * (ram + (2 * Int(base_genus) - 2) * D) + 2 * D;
    GenusBoundResult out{ExactFraction(num, 2 * D), false};
    Int lhs = Int(m) * (int_pow(Int(ell), g) - int_pow(Int(ell), g - 1)) *
              (int_pow(Int(ell), g) - int_pow(Int(ell), g - 1));
    out.positivity = lhs > 2 * D;
    return out;
}

// max over n <= 2g of |GL(n, Z/3)|: the order bound behind "a finite group of
// matrices injects into GL(n, Z/3)".
inline Int minkowski_order_bound(unsigned g) {
    if (g < 1) throw precondition_error("genus must be positive");
    Int best = 0;
    for (unsigned n = 1; n <= 2 * g; ++n) {
        Int order = 1;
        Int p3n = int_pow(Int(3), n);
        for (unsigned i = 0; i < n; ++i) order *= p3n - int_pow(Int(3), i);
        if (order > best) best = order;
    }
    return best;
}

} // namespace splitscan
