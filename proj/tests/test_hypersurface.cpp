#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cycov/errors.hpp"
#include "cycov/hypersurface.hpp"

using namespace cycov;

namespace {

FieldRef f7 = Field::prime(7);

Hypersurface H(const char* text, int nvars, FieldRef f = f7) {
    return Hypersurface(Polynomial::parse(text, nvars, f));
}

}  // namespace

TEST_CASE("construction: canonical storage and degree-char guard") {
    Hypersurface x = H("2*x0^3+2*x1^3+2*x2^3", 3);
    CHECK(x.equation() == Polynomial::parse("x0^3+x1^3+x2^3", 3, f7));
    CHECK(x.ambient_dim() == 2);
    CHECK(x.degree() == 3);

    CHECK_THROWS_AS(H("x0^3+x1^3", 2, Field::prime(3)), CharDividesDegree);
    CHECK_THROWS_AS(Hypersurface(Polynomial(f7, 3, 3)), ZeroPolynomial);
}

TEST_CASE("singular_points: worked examples") {
    // Fermat cubic curve over F_7: smooth, checked over all 57 points
    CHECK(singular_points(H("x0^3+x1^3+x2^3", 3), 1).empty());

    // V(x0^3+x1^3) in P^2: both partials vanish exactly at [0:0:1]
    auto pts = singular_points(H("x0^3+x1^3", 3), 1);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0] == ProjectivePoint::standard(f7, 3, 2));

    CHECK(singular_points(H("x0^2+x1^2+x2^2", 3, Field::prime(5)), 1).empty());

    CHECK_THROWS_AS(singular_points(H("x0^2+x1^2", 2, Field::rationals()), 1), InfiniteField);
}

TEST_CASE("smoothness_certificate aggregates extensions with minimal fields") {
    Hypersurface cusp = H("x0^3+x1^3", 3);
    SmoothnessCertificate cert = smoothness_certificate(cusp, 2, 1u << 20);
    CHECK(cert.k_max == 2);
    REQUIRE(cert.singular.size() == 1);  // [0:0:1] reported once, at k=1
    CHECK(cert.singular[0].first == 1);
    CHECK(!cert.clean());

    Hypersurface fermat13 = H("x0^3+x1^3+x2^3+x3^3", 4, Field::prime(13));
    CHECK(smoothness_certificate(fermat13, 1).clean());
}

TEST_CASE("scaling invariance of the singular locus") {
    auto a = singular_points(H("x0^3+x1^3", 3), 1);
    auto b = singular_points(H("3*x0^3+3*x1^3", 3), 1);
    CHECK(a == b);
}

TEST_CASE("transform equivariance of singular points, exhaustive small fields") {
    for (FieldRef f : {Field::prime(2), Field::prime(5)}) {
        // d=3 needs gcd(char,3)=1: holds for p=2,5
        Polynomial eq = Polynomial::parse("x0^3+x0*x1^2+x1^3", 2, f);
        Hypersurface x(eq);
        InvertibleEnumerator en(f, 2, 1u << 20);
        while (auto m = en.next()) {
            Hypersurface moved(eq.apply_linear(*m));
            auto sm = singular_points(moved, 1);
            auto s = singular_points(x, 1);
            // s' singular for moved iff M s' singular for x
            std::vector<ProjectivePoint> mapped;
            for (const auto& p : sm) mapped.emplace_back(m->apply(p.coords()));
            std::sort(mapped.begin(), mapped.end());
            CHECK(mapped == s);
        }
    }
}

TEST_CASE("Fermat hypersurfaces are smooth whenever gcd(p,d)=1") {
    for (auto [p, d, nv] : {std::tuple<std::uint64_t, int, int>{5, 3, 3},
                            {7, 3, 4},
                            {13, 4, 3},
                            {11, 3, 3}}) {
        FieldRef f = Field::prime(p);
        std::string text;
        for (int i = 0; i < nv; ++i) {
            if (i) text += "+";
            text += "x" + std::to_string(i) + "^" + std::to_string(d);
        }
        CHECK(singular_points(H(text.c_str(), nv, f), 1).empty());
    }
}

TEST_CASE("rational point counts") {
    // smooth conic over F_5 has q+1 = 6 rational points
    CHECK(rational_point_count(H("x0^2+x1^2+x2^2", 3, Field::prime(5)), 1) == 6);
    // Fermat cubic curve over F_7
    CHECK(rational_point_count(H("x0^3+x1^3+x2^3", 3), 1) == 9);
}

TEST_CASE("rational hypersurfaces reduce mod good primes") {
    FieldRef q = Field::rationals();
    Hypersurface x(Polynomial::parse("x0^3+x1^3+x2^3", 3, q));
    auto reports = smoothness_mod_primes(x, 1, 3);
    REQUIRE(reports.size() == 3);
    for (const auto& [p, cert] : reports) {
        CHECK(p % 3 != 0);  // good reduction avoids p | d
        CHECK(cert.clean());
    }
    // a singular rational hypersurface stays singular mod good primes
    Hypersurface sing(Polynomial::parse("x0^3+x1^3", 3, q));
    auto bad = smoothness_mod_primes(sing, 1, 2);
    for (const auto& [p, cert] : bad) CHECK(!cert.clean());
}
