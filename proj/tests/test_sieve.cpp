#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "splitscan/sieve.hpp"

using namespace splitscan;
using Catch::Approx;

namespace {

SieveInstance toy_instance() {
    // nu(p) = 1 for every prime up to 17, height bound 10.
    SieveInstance inst;
    inst.B = 10;
    for (uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u}) inst.records.push_back({p, 1});
    return inst;
}

} // namespace

TEST_CASE("two forms of the sieve inequality on the toy instance") {
    auto inst = toy_instance();

    auto weak = larger_sieve_bound(inst, BoundForm::Weak);
    CHECK(weak.finite);
    CHECK(weak.numerator == Approx(13.1432).margin(1e-3));
    CHECK(weak.denominator == Approx(2.5465).margin(1e-3));
    CHECK(weak.bound == 5);

    auto full = larger_sieve_bound(inst, BoundForm::Full);
    CHECK(full.finite);
    CHECK(full.numerator == Approx(7.8448).margin(1e-3));
    CHECK(full.denominator == Approx(5.5423).margin(1e-3));
    CHECK(full.bound == 1);

    // The full form is never weaker when both are finite.
    CHECK(full.bound <= weak.bound);
}

TEST_CASE("no conclusion when every residue class is admissible") {
    SieveInstance inst;
    inst.B = 10;
    for (uint32_t p : {3u, 5u, 7u, 11u}) inst.records.push_back({p, static_cast<uint64_t>(p) + 1});
    CHECK_FALSE(larger_sieve_bound(inst, BoundForm::Weak).finite);
    CHECK_FALSE(larger_sieve_bound(inst, BoundForm::Full).finite);
}

TEST_CASE("instance validation") {
    SieveInstance inst;
    inst.B = 10;
    inst.records = {{5, 0}};
    CHECK_THROWS_AS(validate_instance(inst), precondition_error); // nu too small
    inst.records = {{5, 7}};
    CHECK_THROWS_AS(validate_instance(inst), precondition_error); // nu > p + 1
    inst.records = {{5, 2}, {5, 3}};
    CHECK_THROWS_AS(validate_instance(inst), precondition_error); // duplicate prime
    inst.records = {{4, 2}};
    CHECK_THROWS_AS(validate_instance(inst), precondition_error); // composite modulus
    inst.records = {{5, 2}};
    inst.B = 1;
    CHECK_THROWS_AS(validate_instance(inst), precondition_error); // height bound too small
    inst.B = 2;
    CHECK_NOTHROW(validate_instance(inst));
    inst.records = {{2, 1}, {5, 2}};
    CHECK_NOTHROW(validate_instance(inst)); // p = 2 is a legal sieve modulus
}

TEST_CASE("prime-sum threshold function") {
    CHECK(beta(3.0, 1.0) == 5);   // needs three primes
    CHECK(beta(1.0, 1.0) == 2);
    CHECK(beta(0.0, 1.0) == 2);
    CHECK(beta(1.0, 0.5) == 3);   // 2^-1/2 alone is short of 1
    CHECK_THROWS_AS(beta(1.0, 0.0), precondition_error);
    CHECK_THROWS_AS(beta(1.0, 1.5), precondition_error);
    CHECK_THROWS_AS(beta(-1.0, 1.0), precondition_error);
    // The defining sum grows like t^delta / (delta log t): far out of reach here.
    CHECK_THROWS_AS(beta(29.7, 0.1), resource_error);
    CHECK_THROWS_AS(beta(100.0, 1.0, 50), resource_error); // tight cap
}

TEST_CASE("closed-form corollary evaluation") {
    auto cb = corollary_bound(2.0, 1.0, 1.0);
    CHECK(cb.beta_argument == Approx(6.2383).margin(1e-3));
    CHECK(cb.beta_value == 17);
    CHECK(cb.value == Approx(16.3505).margin(1e-3));
    CHECK(cb.asymptotic_form > 0.0);
    CHECK(cb.explicit_q_form > 0.0);

    CHECK_THROWS_AS(corollary_bound(1.5, 1.0, 1.0), precondition_error);
    CHECK_THROWS_AS(corollary_bound(2.0, 0.0, 1.0), precondition_error);
    CHECK_THROWS_AS(corollary_bound(2.0, 1.0, 0.5), precondition_error);
    // Infeasible threshold should surface as a resource error, not a hang.
    CHECK_THROWS_AS(corollary_bound(2.0, 1.0, 1.0, 3), resource_error);
}

TEST_CASE("sieve exponent and analytic bound forms") {
    CHECK(sieve_exponent(1) == 10);
    CHECK(sieve_exponent(2) == 24);
    CHECK(sieve_exponent(3) == 46);
    CHECK_THROWS_AS(sieve_exponent(0), precondition_error);

    EffectiveBoundInputs in;
    in.g = 2;
    in.B = 10.0;
    auto tb = analytic_theorem_bound(in);
    CHECK(tb.gamma == 24);
    CHECK(tb.theorem_form > 0.0);
    CHECK(tb.intro_form > 0.0);
    CHECK(tb.label == "up to an absolute constant");

    in.B = 2.9;
    CHECK_THROWS_AS(analytic_theorem_bound(in), precondition_error);
    in.B = 10.0;
    in.D = 0.5;
    CHECK_THROWS_AS(analytic_theorem_bound(in), precondition_error);
    in.D = 1.0;
    in.C_abs = 0.0;
    CHECK_THROWS_AS(analytic_theorem_bound(in), precondition_error);
    in.C_abs = 1.0;
    in.g = 0;
    CHECK_THROWS_AS(analytic_theorem_bound(in), precondition_error);
}

TEST_CASE("soundness on planted sets: the bound can never undercount") {
    // Plant a random set A of rationals in a height ball, measure the exact
    // residue classes it occupies mod each prime, and check |A| against the
    // resulting bound. This is the inequality's defining property, so every
    // finite bound must be >= |A|.
    std::mt19937 rng(987654321u);
    std::uniform_int_distribution<unsigned> pick_B(2, 12);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    auto odd_primes = primes_up_to(100);
    odd_primes.erase(odd_primes.begin()); // drop 2: residue measurement needs odd p

    for (int trial = 0; trial < 25; ++trial) {
        unsigned B = pick_B(rng);
        auto ball = enumerate_height_ball(B);
        std::vector<Rational> A;
        double density = 0.05 + 0.3 * coin(rng);
        for (const auto& r : ball.elements)
            if (coin(rng) < density) A.push_back(r);
        if (A.empty()) A.push_back(ball.elements[trial % ball.elements.size()]);

        std::vector<uint32_t> moduli;
        for (uint32_t p : odd_primes)
            if (coin(rng) < 0.35) moduli.push_back(p);
        if (moduli.size() < 3) moduli.assign({3, 5, 7, 11, 13});

        SieveInstance inst;
        inst.B = B;
        for (uint32_t p : moduli) {
            std::set<std::pair<bool, uint64_t>> classes;
            for (const auto& r : A) {
                ResidueClass rc = reduce_mod(r, p);
                classes.emplace(rc.infinite, rc.infinite ? 0 : rc.value);
            }
            inst.records.push_back({p, classes.size()});
        }

        for (BoundForm form : {BoundForm::Full, BoundForm::Weak}) {
            auto b = larger_sieve_bound(inst, form);
            if (b.finite) CHECK(b.bound >= static_cast<long long>(A.size()));
        }
        auto full = larger_sieve_bound(inst, BoundForm::Full);
        auto weak = larger_sieve_bound(inst, BoundForm::Weak);
        if (full.finite && weak.finite) CHECK(full.bound <= weak.bound);
    }
}

TEST_CASE("measured pipeline on a genus 1 pencil") {
    auto res = measured_pipeline({-1, 0, 1}, 2, 20);
    CHECK(res.genus == 1);
    CHECK(res.m_bound == default_extension_bound(1));
    REQUIRE(res.primes.size() == 7); // 3, 5, 7, 11, 13, 17, 19
    for (const auto& rec : res.primes) {
        CHECK_FALSE(rec.skipped);
        CHECK(rec.roots == 2); // +-1 are always distinct roots of x^2 - 1
        CHECK(rec.omega == 0); // genus 1: no defect locus
        CHECK(rec.omega_elems.empty());
        CHECK(rec.nu == 3);
        CHECK(rec.nu_half_ratio == Approx(6.0 / rec.p));
    }
    REQUIRE(res.instance.records.size() == 7);
    CHECK(res.instance.B == 2);

    // Frozen end-to-end numbers for this fully determined instance.
    CHECK(res.weak.finite);
    CHECK(res.weak.bound == 15);
    CHECK(res.full.finite);
    CHECK(res.full.bound == 5);

    // The assembled instance reproduces the reported bounds exactly.
    auto weak2 = larger_sieve_bound(res.instance, BoundForm::Weak);
    CHECK(weak2.numerator == res.weak.numerator);
    CHECK(weak2.denominator == res.weak.denominator);

    // 6/p < 1 exactly for p > 6: five favourable primes out of seven.
    REQUIRE_FALSE(res.diagnostics.empty());
    CHECK(res.diagnostics[0] ==
          "5 of 7 primes have nu(p) < p/2 (favourable regime for this sieve)");
    REQUIRE_FALSE(res.caveats.empty());
    CHECK(res.caveats[0].find("Omega_p contains every non-simple class") != std::string::npos);
}

TEST_CASE("measured pipeline skips bad-reduction primes") {
    // f = x^2 + 3x reduces to x^2 mod 3: the only prime in range is skipped.
    auto res = measured_pipeline({0, 3, 1}, 2, 3);
    REQUIRE(res.primes.size() == 1);
    CHECK(res.primes[0].skipped);
    CHECK(res.primes[0].skip_reason == "f not squarefree mod p");
    CHECK(res.instance.records.empty());
    CHECK_FALSE(res.weak.finite);
    CHECK_FALSE(res.full.finite);
    bool has_all_skipped_note = false;
    for (const auto& d : res.diagnostics)
        if (d.find("all primes skipped") != std::string::npos) has_all_skipped_note = true;
    CHECK(has_all_skipped_note);
}

TEST_CASE("measured pipeline preconditions and determinism") {
    CHECK_THROWS_AS(measured_pipeline({-1, 0, 1}, 1, 20), precondition_error);
    CHECK_THROWS_AS(measured_pipeline({-1, 0, 1}, 2, 2), precondition_error);
    CHECK_THROWS_AS(measured_pipeline({1, 0, -2, 0, 1}, 2, 20), precondition_error);
    CHECK_THROWS_AS(measured_pipeline({0, -1, 0, 1}, 2, 20), precondition_error);

    auto a = measured_pipeline({-1, 0, 0, 0, 1}, 3, 30, 0, 1);
    auto b = measured_pipeline({-1, 0, 0, 0, 1}, 3, 30, 0, 4);
    REQUIRE(a.primes.size() == b.primes.size());
    for (size_t i = 0; i < a.primes.size(); ++i) {
        CHECK(a.primes[i].nu == b.primes[i].nu);
        CHECK(a.primes[i].omega_elems == b.primes[i].omega_elems);
        CHECK(a.primes[i].skipped == b.primes[i].skipped);
    }
    CHECK(a.weak.numerator == b.weak.numerator);
    CHECK(a.weak.denominator == b.weak.denominator);
    CHECK(a.diagnostics == b.diagnostics);
}
