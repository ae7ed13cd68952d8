#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cycov/equiv.hpp"
#include "cycov/errors.hpp"

using namespace cycov;

namespace {

FieldRef f2 = Field::prime(2);
FieldRef f3 = Field::prime(3);
FieldRef f7 = Field::prime(7);

Hypersurface H(const char* text, int nvars, FieldRef f) {
    return Hypersurface(Polynomial::parse(text, nvars, f));
}

Polynomial random_poly(FieldRef f, int nvars, int degree, SplitMix64& rng) {
    auto monos = monomials_of_degree(nvars, degree);
    std::uint64_t q = f->order().get_ui();
    for (;;) {
        Polynomial::TermMap t;
        for (const auto& m : monos) {
            FieldElement c = f->element_at(rng.below(q));
            if (!c.is_zero()) t.emplace(m, c);
        }
        if (!t.empty()) return Polynomial::from_terms(f, nvars, degree, std::move(t));
    }
}

}  // namespace

TEST_CASE("verify_equivalence: worked examples") {
    Hypersurface f = H("x0^3+x1^3+x2^3", 3, f7);
    ProjectiveTransform id(Matrix::identity(f7, 3));
    CHECK(verify_equivalence(f, f, id));
    Hypersurface doubled = H("2*x0^3+2*x1^3+2*x2^3", 3, f7);
    CHECK(verify_equivalence(f, doubled, id));  // scalar canonicalization
    CHECK(verify_equivalence(f, f, transposition(f7, 3, 0, 1)));
    CHECK(!verify_equivalence(f, H("x0^3+x1^3+2*x2^3", 3, f7), id));
    CHECK_THROWS_AS(verify_equivalence(f, H("x0^3+x1^3", 2, f7), id), DimensionMismatch);
}

TEST_CASE("equivalent_bruteforce: all smooth conics over F_3 are equivalent") {
    Hypersurface c1 = H("x0*x1-x2^2", 3, f3);
    Hypersurface c2 = H("x0^2+x1*x2", 3, f3);
    auto w = equivalent_bruteforce(c1, c2, 1u << 20);
    REQUIRE(w.has_value());
    CHECK(verify_equivalence(c1, c2, *w));
}

TEST_CASE("equivalent_bruteforce: smooth vs singular stays inequivalent") {
    // quartics over F_3 (degree coprime to the characteristic)
    Hypersurface smooth = H("x0^4+x1^4+x2^4", 3, f3);
    Hypersurface singular = H("x0^4+x1^4", 3, f3);
    CHECK(!singular_points(smooth, 1).size());
    CHECK(singular_points(singular, 1).size() == 1);
    CHECK(!equivalent_bruteforce(smooth, singular, 1u << 20).has_value());
}

TEST_CASE("equivalent_bruteforce: a planted witness is always found") {
    SplitMix64 rng(1001);
    for (int trial = 0; trial < 5; ++trial) {
        Polynomial fp = random_poly(f3, 3, 4, rng);
        Hypersurface f1(fp);
        Matrix g = random_invertible_matrix(f3, 3, rng);
        Hypersurface f2(fp.apply_linear(g));
        auto w = equivalent_bruteforce(f1, f2, 1u << 20);
        REQUIRE(w.has_value());
        CHECK(verify_equivalence(f1, f2, *w));
    }
}

TEST_CASE("equivalent_bruteforce: cap errors out with the exact order") {
    Hypersurface f = H("x0^3+x1^3+x2^3", 3, f7);
    CHECK_THROWS_AS(equivalent_bruteforce(f, f, 100), CapExceeded);
}

TEST_CASE("equivalent_structured: construction pairs come back equivalent") {
    SplitMix64 rng(555);
    Hypersurface f1 = H("x2^3+x0^3+x1^3", 3, f7);
    Matrix g = random_invertible_matrix(f7, 3, rng);
    Hypersurface f2(f1.equation().apply_linear(g));
    EquivalenceVerdict v = equivalent_structured(f1, f2);
    REQUIRE(v.outcome == EquivalenceOutcome::Equivalent);
    REQUIRE(v.witness.has_value());
    CHECK(verify_equivalence(f1, f2, *v.witness));
}

TEST_CASE("equivalent_structured: identical Fermat inputs") {
    FieldRef f13 = Field::prime(13);
    Hypersurface fermat = H("x0^3+x1^3+x2^3+x3^3", 4, f13);
    EquivalenceVerdict v = equivalent_structured(fermat, fermat);
    REQUIRE(v.outcome == EquivalenceOutcome::Equivalent);
    CHECK(verify_equivalence(fermat, fermat, *v.witness));
}

TEST_CASE("equivalent_structured: Fermat-positive vs single-point instance") {
    // sound inequivalence from an equivariant invariant (a one-off full
    // GL_3(F_7) scan confirmed no witness exists)
    Hypersurface f1 = H("x2^3+x0^3+x1^3", 3, f7);
    Hypersurface f2 = H("x2^3+x0^3+x0^2*x1+x0*x1^2", 3, f7);
    EquivalenceVerdict v = equivalent_structured(f1, f2);
    CHECK(v.outcome == EquivalenceOutcome::Inequivalent);
    CHECK(!v.reason.empty());
}

TEST_CASE("equivalent_structured: inconclusive without Galois structure") {
    SplitMix64 rng(31007);
    // two random smooth cubics over F_7, generically Galois-free
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial a = random_poly(f7, 3, 3, rng);
        Polynomial b = random_poly(f7, 3, 3, rng);
        Hypersurface f1(a), f2(b);
        GaloisReport g1 = enumerate_galois(f1, 1);
        GaloisReport g2 = enumerate_galois(f2, 1);
        if (g1.delta_lower_bound != 0 || g2.delta_lower_bound != 0) continue;
        if (rational_point_count(f1, 1) != rational_point_count(f2, 1)) continue;
        if (rational_point_count(f1, 2) != rational_point_count(f2, 2)) continue;
        if (singular_points(f1, 1).size() != singular_points(f2, 1).size()) continue;
        if (singular_points(f1, 2).size() != singular_points(f2, 2).size()) continue;
        EquivalenceVerdict v = equivalent_structured(f1, f2);
        CHECK(v.outcome == EquivalenceOutcome::Inconclusive);
        return;
    }
}

TEST_CASE("witness symmetry: T inverse witnesses the reverse direction") {
    SplitMix64 rng(64);
    Polynomial fp = random_poly(f7, 3, 3, rng);
    Hypersurface f1(fp);
    Matrix g = random_invertible_matrix(f7, 3, rng);
    Hypersurface f2(fp.apply_linear(g));
    ProjectiveTransform t(g);
    REQUIRE(verify_equivalence(f1, f2, t));
    CHECK(verify_equivalence(f2, f1, t.inverse()));
}

TEST_CASE("rational point counts are exhaustively equivariant over F_2") {
    SplitMix64 rng(2002);
    for (int sample = 0; sample < 3; ++sample) {
        Polynomial fp = random_poly(f2, 3, 3, rng);
        Hypersurface x(fp);
        std::uint64_t expect = rational_point_count(x, 1);
        InvertibleEnumerator en(f2, 3, 1u << 20);
        while (auto m = en.next()) {
            Hypersurface moved(fp.apply_linear(*m));
            CHECK(rational_point_count(moved, 1) == expect);
        }
    }
}

TEST_CASE("structured and brute force agree on planted pairs over F_2") {
    SplitMix64 rng(808);
    for (int trial = 0; trial < 5; ++trial) {
        Polynomial fp = random_poly(f2, 3, 3, rng);
        Hypersurface f1(fp);
        Matrix g = random_invertible_matrix(f2, 3, rng);
        Hypersurface f2h(fp.apply_linear(g));
        auto brute = equivalent_bruteforce(f1, f2h, 1u << 20);
        REQUIRE(brute.has_value());
        EquivalenceVerdict v = equivalent_structured(f1, f2h);
        CHECK(v.outcome != EquivalenceOutcome::Inequivalent);
        if (v.outcome == EquivalenceOutcome::Equivalent)
            CHECK(verify_equivalence(f1, f2h, *v.witness));
    }
}
