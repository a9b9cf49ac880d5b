#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "splitscan/monodromy.hpp"

using namespace splitscan;

namespace {

SpVec basis_vec(const SymplecticContext& ctx, unsigned i) {
    SpVec v(ctx.dim, 0);
    v[i] = 1;
    return v;
}

uint64_t count_transvections(const SymplecticContext& ctx, const std::vector<SpMat>& elems) {
    uint64_t n = 0;
    for (const auto& m : elems)
        if (is_transvection(ctx, m)) ++n;
    return n;
}

} // namespace

TEST_CASE("context construction guards") {
    CHECK_NOTHROW(make_symplectic_context(3, 1));
    CHECK_NOTHROW(make_symplectic_context(7, 4));
    CHECK_THROWS_AS(make_symplectic_context(2, 1), precondition_error);
    CHECK_THROWS_AS(make_symplectic_context(4, 1), precondition_error);
    CHECK_THROWS_AS(make_symplectic_context(9, 1), precondition_error);
    CHECK_THROWS_AS(make_symplectic_context(3, 0), precondition_error);
    CHECK_THROWS_AS(make_symplectic_context(3, 5), precondition_error);
}

TEST_CASE("alternating form and line normalization") {
    auto ctx = make_symplectic_context(3, 2);
    SpVec e1 = basis_vec(ctx, 0), e2 = basis_vec(ctx, 1), e3 = basis_vec(ctx, 2);
    CHECK(pairing(ctx, e1, e2) == 1);
    CHECK(pairing(ctx, e2, e1) == 2); // -1 mod 3
    CHECK(pairing(ctx, e1, e3) == 0);
    CHECK(pairing(ctx, e1, e1) == 0);
    // Antisymmetry on arbitrary vectors.
    SpVec u = {1, 2, 0, 1}, v = {2, 1, 1, 1};
    CHECK((pairing(ctx, u, v) + pairing(ctx, v, u)) % 3 == 0);

    CHECK(normalize_line(ctx, {0, 2, 0, 0}) == SpVec{0, 1, 0, 0});
    CHECK(normalize_line(ctx, {2, 1, 0, 0}) == SpVec{1, 2, 0, 0}); // scale by 2 = 1/2 mod 3
    CHECK_THROWS_AS(normalize_line(ctx, {0, 0, 0, 0}), precondition_error);
    CHECK_THROWS_AS(normalize_line(ctx, {1, 0}), precondition_error); // wrong dimension
}

TEST_CASE("line enumeration") {
    auto c1 = make_symplectic_context(3, 1);
    auto lines1 = all_lines(c1);
    CHECK(lines1.size() == 4); // (9-1)/2
    auto c5 = make_symplectic_context(5, 1);
    CHECK(all_lines(c5).size() == 6);
    auto c2 = make_symplectic_context(3, 2);
    auto lines2 = all_lines(c2);
    CHECK(lines2.size() == 40); // (81-1)/2
    // Normalized, distinct, lexicographically increasing.
    for (size_t i = 0; i < lines2.size(); ++i) {
        unsigned lead = 0;
        while (lines2[i][lead] == 0) ++lead;
        CHECK(lines2[i][lead] == 1);
        if (i) CHECK(lines2[i - 1] < lines2[i]);
    }
}

TEST_CASE("transvection matrices") {
    auto ctx = make_symplectic_context(3, 1);
    SpVec e1 = basis_vec(ctx, 0);
    SpMat t = transvection_matrix(ctx, e1);
    CHECK(t != identity_matrix(ctx));
    CHECK(is_transvection(ctx, t));
    CHECK_FALSE(is_transvection(ctx, identity_matrix(ctx)));
    // T^ell = I.
    SpMat acc = t;
    for (uint32_t i = 1; i < ctx.ell; ++i) acc = mat_mul(ctx, acc, t);
    CHECK(acc == identity_matrix(ctx));
    // Nonzero multiplier variants are transvections on the same line.
    CHECK(is_transvection(ctx, transvection_matrix(ctx, e1, 2)));
    // A generic product of transvections on independent lines is not one.
    SpMat prod = mat_mul(ctx, t, transvection_matrix(ctx, basis_vec(ctx, 1)));
    CHECK_FALSE(is_transvection(ctx, prod));
}

TEST_CASE("transvection set construction guards") {
    auto ctx = make_symplectic_context(3, 1);
    CHECK_THROWS_AS(make_transvection_set(ctx, {}), precondition_error);
    CHECK_THROWS_AS(make_transvection_set(ctx, {{0, 0}}), precondition_error);
    // {e1, 2*e1} collapses to one line: duplicates rejected.
    CHECK_THROWS_AS(make_transvection_set(ctx, {{1, 0}, {2, 0}}), precondition_error);
    auto s = make_transvection_set(ctx, {{2, 0}, {0, 1}});
    CHECK(s.lines[0] == SpVec{1, 0});
}

TEST_CASE("generation criterion against explicit closures") {
    // Genus 1: {e1, e2} spans and pairs, so it generates all of Sp(2, F_3).
    auto c1 = make_symplectic_context(3, 1);
    auto pair1 = make_transvection_set(c1, {{1, 0}, {0, 1}});
    CHECK(brown_humphries_generates(pair1));
    auto closure1 = group_closure(
        c1, {transvection_matrix(c1, {1, 0}), transvection_matrix(c1, {0, 1})});
    CHECK(Int(closure1.size()) == sp_order(3, 1));
    CHECK(count_transvections(c1, closure1) == 8); // ell^2g - 1

    // A single line neither spans nor generates: closure is cyclic of order ell.
    auto single = make_transvection_set(c1, {{1, 0}});
    CHECK_FALSE(brown_humphries_generates(single));
    CHECK(group_closure(c1, {transvection_matrix(c1, {1, 0})}).size() == 3);

    // Same picture over F_5.
    auto c5 = make_symplectic_context(5, 1);
    auto pair5 = make_transvection_set(c5, {{1, 0}, {0, 1}});
    CHECK(brown_humphries_generates(pair5));
    auto closure5 = group_closure(
        c5, {transvection_matrix(c5, {1, 0}), transvection_matrix(c5, {0, 1})});
    CHECK(Int(closure5.size()) == sp_order(5, 1));
    CHECK(count_transvections(c5, closure5) == 24);
}

TEST_CASE("spanning but disconnected sets generate a proper product subgroup") {
    auto ctx = make_symplectic_context(3, 2);
    // The four basis lines span, but the pairing graph splits into the two
    // hyperbolic pairs, so generation must fail.
    std::vector<SpVec> basis;
    for (unsigned i = 0; i < 4; ++i) basis.push_back(basis_vec(ctx, i));
    auto s = make_transvection_set(ctx, basis);
    CHECK_FALSE(brown_humphries_generates(s));
    std::vector<SpMat> gens;
    for (const auto& v : basis) gens.push_back(transvection_matrix(ctx, v));
    CHECK(group_closure(ctx, gens).size() == 576); // Sp(2,3) x Sp(2,3)

    // One bridging line connects the graph and restores full generation.
    basis.push_back({0, 1, 1, 0});
    auto s2 = make_transvection_set(ctx, basis);
    CHECK(brown_humphries_generates(s2));
    gens.push_back(transvection_matrix(ctx, {0, 1, 1, 0}));
    CHECK(Int(group_closure(ctx, gens, 100000).size()) == sp_order(3, 2));

    // Non-spanning sets fail even when the graph is connected.
    auto s3 = make_transvection_set(ctx, {{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}});
    CHECK_FALSE(brown_humphries_generates(s3));
}

TEST_CASE("group order formula and closure cap") {
    CHECK(sp_order(3, 1) == 24);
    CHECK(sp_order(5, 1) == 120);
    CHECK(sp_order(3, 2) == 51840);
    CHECK(sp_order(3, 3) == Int("9170703360"));
    auto ctx = make_symplectic_context(3, 1);
    CHECK_THROWS_AS(group_closure(ctx,
                                  {transvection_matrix(ctx, {1, 0}),
                                   transvection_matrix(ctx, {0, 1})},
                                  10),
                    resource_error);
}

TEST_CASE("exhaustive transvection-count verification in rank 2") {
    auto r3 = verify_transvection_lemma(3, 1);
    CHECK(r3.group_order == 24);
    CHECK(r3.threshold == 3);
    CHECK(r3.max_proper_transvections == 2);
    CHECK(r3.verified);
    CHECK(r3.proper_masks == 4);   // the four cyclic line stabilizers
    CHECK(r3.closures_computed == 10);

    auto r5 = verify_transvection_lemma(5, 1);
    CHECK(r5.threshold == 5);
    CHECK(r5.max_proper_transvections == 4);
    CHECK(r5.verified);
    CHECK(r5.proper_masks == 6);
    CHECK(r5.closures_computed == 21);

    auto r7 = verify_transvection_lemma(7, 1);
    CHECK(r7.threshold == 7);
    CHECK(r7.max_proper_transvections == 6);
    CHECK(r7.verified);

    // Report threshold agrees with the closed form.
    CHECK(Int(r3.threshold) == transvection_threshold(3, 1));
    CHECK(Int(r5.threshold) == transvection_threshold(5, 1));
}

TEST_CASE("enumeration refuses oversized groups") {
    CHECK_THROWS_AS(verify_transvection_lemma(3, 3), resource_error);
    CHECK_THROWS_AS(verify_transvection_lemma(5, 2), resource_error);
}

TEST_CASE("closed-form calculator values") {
    CHECK(nonspanning_line_cap(3, 1) == 1);
    CHECK(nonspanning_line_cap(5, 1) == 1);
    CHECK(nonspanning_line_cap(3, 2) == 13);

    CHECK(transvection_threshold(3, 1) == 3);
    CHECK(transvection_threshold(5, 1) == 5);
    CHECK(transvection_threshold(3, 2) == 27);

    CHECK(simple_degeneration_threshold(3, 1) == 4);
    CHECK(simple_degeneration_threshold(3, 2) == 5);
    CHECK(simple_degeneration_threshold(5, 2) == 4);

    CHECK(conjugacy_ratio_bound(3, 1).str() == "1/4");
    CHECK(conjugacy_ratio_bound(3, 2).str() == "13/40");

    CHECK(minkowski_order_bound(1) == 48);
    CHECK(minkowski_order_bound(2) == 24261120);
    CHECK(minkowski_order_bound(2) >= minkowski_order_bound(1)); // monotone by definition

    CHECK_THROWS_AS(nonspanning_line_cap(2, 1), precondition_error);
    CHECK_THROWS_AS(transvection_threshold(3, 0), precondition_error);
    CHECK_THROWS_AS(minkowski_order_bound(0), precondition_error);
}

TEST_CASE("structural inequalities between the calculators") {
    for (uint32_t ell : {3u, 5u, 7u}) {
        for (unsigned g = 1; g <= 3; ++g) {
            // A non-spanning set carries strictly fewer lines than the
            // generation threshold's transvection count requires.
            CHECK(nonspanning_line_cap(ell, g) < transvection_threshold(ell, g));
            auto ratio = conjugacy_ratio_bound(ell, g);
            CHECK(ratio.num < ratio.den); // strictly below 1
        }
    }
}

TEST_CASE("genus lower bound") {
    auto boundary = genus_lower_bound(3, 1, 4, 1, 0);
    CHECK(boundary.bound.str() == "1");
    CHECK_FALSE(boundary.positivity); // exactly at the threshold, not past it

    auto past = genus_lower_bound(3, 1, 5, 1, 0);
    CHECK(past.bound.str() == "5/4");
    CHECK(past.positivity);

    CHECK_THROWS_AS(genus_lower_bound(3, 1, 4, 0, 0), precondition_error);

    // Strictly increasing in the number of degenerate places...
    for (uint64_t m = 1; m < 8; ++m) {
        auto a = genus_lower_bound(3, 2, m, 2, 1);
        auto b = genus_lower_bound(3, 2, m + 1, 2, 1);
        CHECK(a.bound.num * b.bound.den < b.bound.num * a.bound.den);
    }
    // ...and in the index once the ramification term dominates.
    auto i1 = genus_lower_bound(3, 1, 5, 1, 0);
    auto i2 = genus_lower_bound(3, 1, 5, 2, 0);
    CHECK(i1.bound.num * i2.bound.den < i2.bound.num * i1.bound.den);
    CHECK(i2.bound.str() == "3/2");

    // Degeneration threshold is the least m with the positivity flag set.
    for (uint32_t ell : {3u, 5u}) {
        for (unsigned g = 1; g <= 2; ++g) {
            Int thr = simple_degeneration_threshold(ell, g);
            uint64_t t = thr.convert_to<uint64_t>();
            CHECK(genus_lower_bound(ell, g, t, 1, 0).positivity ==
                  (Int(t) * int_pow(Int(ell) - 1, 2) * int_pow(Int(ell), 2 * g - 2) >
                   2 * (int_pow(Int(ell), 2 * g) - 1)));
            if (t >= 1) CHECK_FALSE(genus_lower_bound(ell, g, t - 1, 1, 0).positivity);
        }
    }
}
