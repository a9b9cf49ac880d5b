#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>

#include "splitscan/intpoly.hpp"

using namespace splitscan;
using zpoly::Poly;

namespace {

Poly product(const std::vector<std::pair<Poly, int>>& factors) {
    Poly acc{1};
    for (const auto& [f, m] : factors)
        for (int i = 0; i < m; ++i) acc = zpoly::mul(acc, f);
    return acc;
}

} // namespace

TEST_CASE("division with remainder and exact division") {
    Poly a{2, -3, 0, 1};  // x^3 - 3x + 2 = (x-1)^2 (x+2)
    Poly b{-1, 1};        // x - 1
    auto [q, r] = zpoly::divmod(a, b);
    CHECK(r.empty());
    CHECK(q == Poly{-2, 1, 1});
    CHECK(zpoly::div_exact(a, b) == q);

    Poly c{1, 0, 0, 1};   // x^3 + 1
    Poly d{0, 0, 1};      // x^2
    auto [q2, r2] = zpoly::divmod(c, d);
    CHECK(q2 == Poly{0, 1});
    CHECK(r2 == Poly{1});
    CHECK(zpoly::add(zpoly::mul(q2, d), r2) == c);
}

TEST_CASE("content and primitive part") {
    CHECK(zpoly::content(Poly{6, -9, 12}) == 3);
    CHECK(zpoly::primitive_part(Poly{6, -9, 12}) == Poly{2, -3, 4});
    // Sign is normalized onto a positive leading coefficient.
    CHECK(zpoly::primitive_part(Poly{2, -4}) == Poly{-1, 2});
}

TEST_CASE("integer gcd of polynomials") {
    Poly a{-1, 0, 1};     // x^2 - 1
    Poly b{1, -2, 1};     // (x - 1)^2
    CHECK(zpoly::gcd(a, b) == Poly{-1, 1});
    CHECK(zpoly::gcd(a, Poly{}) == a);
    // Coprime inputs give a constant gcd.
    CHECK(zpoly::degree(zpoly::gcd(Poly{1, 1}, Poly{2, 1})) == 0);
    // Content does not leak into the gcd: 2(x-1) vs 3(x-1).
    CHECK(zpoly::gcd(Poly{-2, 2}, Poly{-3, 3}) == Poly{-1, 1});
}

TEST_CASE("squarefree detection and decomposition") {
    CHECK(zpoly::squarefree_over_z(Poly{1, -3, 0, 1}));       // x^3 - 3x + 1
    CHECK_FALSE(zpoly::squarefree_over_z(Poly{2, -3, 0, 1})); // (x-1)^2 (x+2)

    auto parts = zpoly::squarefree_decomposition(Poly{2, -3, 0, 1});
    REQUIRE(parts.size() == 2);
    for (const auto& [f, m] : parts) {
        if (m == 1) CHECK(f == Poly{2, 1});
        else {
            CHECK(m == 2);
            CHECK(f == Poly{-1, 1});
        }
    }
    CHECK(product(parts) == Poly{2, -3, 0, 1});
}

TEST_CASE("resultants of linear factors") {
    Poly a{-2, 1}; // x - 2
    Poly b{-5, 1}; // x - 5
    CHECK(zpoly::resultant(a, b) == -3); // value of b at the root of a
    CHECK(zpoly::resultant(b, a) == 3);  // swap flips sign for odd degree product
    CHECK(zpoly::resultant(a, a) == 0);
    // res(f, c) = c^deg f for constants.
    CHECK(zpoly::resultant(Poly{-1, 0, 1}, Poly{3}) == 9);
}

TEST_CASE("monic discriminants") {
    CHECK(zpoly::discriminant_monic(Poly{-4, 1, 1}) == 17);   // b^2 - 4c
    CHECK(zpoly::discriminant_monic(Poly{1, -3, 0, 1}) == 81); // square: cyclic cubic field
    // Depressed cubic x^3 + px + q has discriminant -4p^3 - 27q^2.
    for (long long p = -3; p <= 3; ++p)
        for (long long q = -3; q <= 3; ++q) {
            Poly f{q, p, 0, 1};
            CHECK(zpoly::discriminant_monic(f) == Int(-4 * p * p * p - 27 * q * q));
        }
    CHECK_THROWS_AS(zpoly::discriminant_monic(Poly{1, 2}), precondition_error);
}

TEST_CASE("factorization of cyclotomic-style products") {
    auto f1 = zpoly::factor_monic(Poly{-1, 0, 0, 0, 1}); // x^4 - 1
    REQUIRE(f1.size() == 3);
    CHECK(f1[0].first == Poly{-1, 1});
    CHECK(f1[1].first == Poly{1, 1});
    CHECK(f1[2].first == Poly{1, 0, 1});
    for (const auto& [f, m] : f1) CHECK(m == 1);

    // x^4 + 1 factors modulo every prime yet is irreducible over the integers.
    auto f2 = zpoly::factor_monic(Poly{1, 0, 0, 0, 1});
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].first == Poly{1, 0, 0, 0, 1});
    CHECK(f2[0].second == 1);

    auto f3 = zpoly::factor_monic(Poly{-1, 0, 0, 0, 0, 0, 1}); // x^6 - 1
    REQUIRE(f3.size() == 4);
    CHECK(f3[0].first == Poly{-1, 1});
    CHECK(f3[1].first == Poly{1, 1});
    CHECK(f3[2].first == Poly{1, -1, 1});
    CHECK(f3[3].first == Poly{1, 1, 1});

    // Repeated factor carries its multiplicity: (x^2 + x + 1)^2.
    auto f4 = zpoly::factor_monic(Poly{1, 2, 3, 2, 1});
    REQUIRE(f4.size() == 1);
    CHECK(f4[0].first == Poly{1, 1, 1});
    CHECK(f4[0].second == 2);
}

TEST_CASE("factorization round-trips on random products of known irreducibles") {
    const std::vector<Poly> pool = {
        {0, 1},          // x
        {1, 1},          // x + 1
        {-1, 1},         // x - 1
        {2, 1},          // x + 2
        {1, 0, 1},       // x^2 + 1
        {1, 1, 1},       // x^2 + x + 1
        {-2, 0, 1},      // x^2 - 2
        {1, 1, 0, 1},    // x^3 + x + 1 (no rational roots)
    };
    std::mt19937 rng(20260822u);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
    std::uniform_int_distribution<int> mult(1, 2);
    for (int trial = 0; trial < 20; ++trial) {
        std::map<int, int> chosen; // pool index -> multiplicity
        int n = 2 + trial % 3;
        while (static_cast<int>(chosen.size()) < n) chosen[pick(rng)] = mult(rng);
        std::vector<std::pair<Poly, int>> built;
        for (auto [idx, m] : chosen) built.emplace_back(pool[idx], m);
        Poly f = product(built);

        auto factors = zpoly::factor_monic(f);
        CHECK(product(factors) == f);
        REQUIRE(factors.size() == chosen.size());
        // Unique factorization: the result must be exactly the multiset we built.
        std::sort(built.begin(), built.end(), [](const auto& x, const auto& y) {
            if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
            for (size_t i = x.first.size(); i-- > 0;)
                if (x.first[i] != y.first[i]) return x.first[i] < y.first[i];
            return x.second < y.second;
        });
        CHECK(factors == built);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(7u);
    std::uniform_int_distribution<long long> coeff(-9, 9);
    for (int trial = 0; trial < 30; ++trial) {
        Poly a, b;
        for (int i = 0; i < 4; ++i) a.push_back(coeff(rng));
        for (int i = 0; i < 3; ++i) b.push_back(coeff(rng));
        zpoly::normalize(a);
        zpoly::normalize(b);
        Int x = coeff(rng);
        CHECK(zpoly::eval(zpoly::mul(a, b), x) == zpoly::eval(a, x) * zpoly::eval(b, x));
        CHECK(zpoly::eval(zpoly::add(a, b), x) == zpoly::eval(a, x) + zpoly::eval(b, x));
    }
}
