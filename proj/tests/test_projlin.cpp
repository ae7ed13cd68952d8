#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cycov/errors.hpp"
#include "cycov/projlin.hpp"

using namespace cycov;

namespace {

FieldRef f7 = Field::prime(7);
FieldRef f2 = Field::prime(2);
FieldRef f3 = Field::prime(3);

ProjectivePoint pt(FieldRef f, std::initializer_list<int> coords) {
    std::vector<FieldElement> c;
    for (int v : coords) c.push_back(f->from_int(v));
    return ProjectivePoint(std::move(c));
}

}  // namespace

TEST_CASE("points canonicalize to first-nonzero-one") {
    ProjectivePoint p = pt(f7, {0, 3, 6});
    CHECK(p.coords()[1].is_one());
    CHECK(p.coords()[2] == f7->from_int(2));  // 6/3
    CHECK(p == pt(f7, {0, 1, 2}));
    CHECK(p.to_string() == "[0:1:2]");
    CHECK_THROWS_AS(pt(f7, {0, 0, 0}), Error);
}

TEST_CASE("transposition: worked examples") {
    ProjectiveTransform t = transposition(f7, 4, 2, 3);
    CHECK(t.apply(pt(f7, {0, 0, 0, 1})) == pt(f7, {0, 0, 1, 0}));
    CHECK(transposition(f7, 4, 2, 2).is_identity());
    ProjectiveTransform s = transposition(f7, 5, 1, 4);
    CHECK(s.compose(s).is_identity());
    CHECK_THROWS_AS(transposition(f7, 4, 2, 5), IndexOutOfRange);
}

TEST_CASE("basis_completion: worked examples") {
    // single standard point stays put
    ProjectiveTransform t1 = basis_completion({pt(f7, {0, 0, 0, 1})}, 4);
    CHECK(t1.apply(pt(f7, {0, 0, 0, 1})) == pt(f7, {0, 0, 0, 1}));

    // [[1:1:0],[0:1:0]] -> e_2, e_1 over a 3x3 exact solve
    ProjectiveTransform t2 = basis_completion({pt(f7, {1, 1, 0}), pt(f7, {0, 1, 0})}, 3);
    CHECK(t2.apply(pt(f7, {1, 1, 0})) == pt(f7, {0, 0, 1}));
    CHECK(t2.apply(pt(f7, {0, 1, 0})) == pt(f7, {0, 1, 0}));

    CHECK_THROWS_AS(basis_completion({pt(f7, {1, 0, 0}), pt(f7, {1, 0, 0})}, 3),
                    DependentPoints);
    CHECK_THROWS_AS(
        basis_completion({pt(f7, {1, 0, 0}), pt(f7, {0, 1, 0}), pt(f7, {1, 1, 0})}, 3),
        DependentPoints);
}

TEST_CASE("basis_completion sends points[i] to e_{m-1-i} in general position") {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 25; ++trial) {
        Matrix m = random_invertible_matrix(f7, 4, rng);
        std::vector<ProjectivePoint> pts;
        for (int c = 0; c < 3; ++c) {
            std::vector<FieldElement> col;
            for (int r = 0; r < 4; ++r) col.push_back(m.at(r, c));
            pts.emplace_back(std::move(col));
        }
        ProjectiveTransform t = basis_completion(pts, 4);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(t.apply(pts[i]) == ProjectivePoint::standard(f7, 4, 3 - (int)i));
        }
    }
}

TEST_CASE("enumerate_invertible: counts match the group order") {
    // GL_1(F_2) is a single matrix
    InvertibleEnumerator e1(f2, 1, 10);
    auto m1 = e1.next();
    REQUIRE(m1.has_value());
    CHECK(m1->at(0, 0).is_one());
    CHECK(!e1.next().has_value());

    // |GL_3(F_3)| = 26*24*18 = 11232, verified by full enumeration
    CHECK(gl_order(f3, 3) == 11232);
    InvertibleEnumerator e3(f3, 3, 1u << 25);
    std::uint64_t count = 0;
    while (auto m = e3.next()) {
        ++count;
        if (count == 1 || count == 11232) CHECK(!m->det().is_zero());
    }
    CHECK(count == 11232);

    for (auto [q, m, expect] :
         {std::tuple<std::uint64_t, int, long>{2, 2, 6},
          {2, 3, 168},
          {3, 2, 48}}) {
        InvertibleEnumerator en(Field::prime(q), m, 1u << 25);
        long c = 0;
        while (en.next()) ++c;
        CHECK(c == expect);
        CHECK(gl_order(Field::prime(q), m) == expect);
    }
}

TEST_CASE("enumerate_invertible: cap exceeded reports the exact order") {
    try {
        InvertibleEnumerator en(f3, 5, 1u << 25);
        FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
        std::string msg = e.what();
        CHECK(msg.find("475566474240") != std::string::npos);
    }
    CHECK_THROWS_AS(InvertibleEnumerator(Field::rationals(), 2, 100), InfiniteField);
}

TEST_CASE("enumerate_invertible: row-major lexicographic order") {
    InvertibleEnumerator en(f2, 2, 100);
    std::vector<std::vector<std::uint64_t>> seen;
    while (auto m = en.next()) {
        std::vector<std::uint64_t> flat;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) flat.push_back(m->at(i, j).prime_value());
        seen.push_back(flat);
    }
    REQUIRE(seen.size() == 6);
    for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] < seen[i]);
    // lex-first invertible over F_2 is the antidiagonal
    CHECK(seen.front() == std::vector<std::uint64_t>{0, 1, 1, 0});
    CHECK(seen.back() == std::vector<std::uint64_t>{1, 1, 1, 0});
}

TEST_CASE("random_invertible: determinism and validity") {
    CHECK(random_invertible(f3, 4, 12345).matrix() ==
          random_invertible(f3, 4, 12345).matrix());
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        CHECK(!random_invertible(f3, 4, seed).matrix().det().is_zero());
    }
}

TEST_CASE("random_invertible: GL_2(F_2) coverage over many seeds") {
    std::set<std::vector<std::uint64_t>> seen;
    for (std::uint64_t seed = 1; seed <= 10000; ++seed) {
        ProjectiveTransform t = random_invertible(f2, 2, seed);
        std::vector<std::uint64_t> flat;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) flat.push_back(t.matrix().at(i, j).prime_value());
        seen.insert(flat);
        if (seen.size() == 6) break;
    }
    CHECK(seen.size() == 6);
}

TEST_CASE("compose/invert round trip and scalar canonicalization") {
    SplitMix64 rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        ProjectiveTransform t(random_invertible_matrix(f7, 3, rng));
        CHECK(t.compose(t.inverse()).is_identity());
    }
    // transforms equal up to scalar compare equal
    Matrix m = random_invertible_matrix(f7, 3, rng);
    CHECK(ProjectiveTransform(m) == ProjectiveTransform(m.scaled(f7->from_int(4))));
}

TEST_CASE("action compatibility, exhaustive over F_2 in small sizes") {
    for (int m = 2; m <= 3; ++m) {
        std::vector<Matrix> all;
        InvertibleEnumerator en(f2, m, 1u << 25);
        while (auto mat = en.next()) all.push_back(*mat);
        std::vector<ProjectivePoint> pts;
        for_each_projective_point(f2, m - 1, 1u << 20, [&](const ProjectivePoint& p) {
            pts.push_back(p);
            return true;
        });
        for (const auto& a : all) {
            for (const auto& b : all) {
                ProjectiveTransform ta(a), tb(b), tab(a * b);
                for (const auto& p : pts) {
                    CHECK(tab.apply(p) == ta.apply(tb.apply(p)));
                }
            }
        }
    }
}

TEST_CASE("projective point enumeration: canonical order and count") {
    std::vector<ProjectivePoint> pts;
    for_each_projective_point(f3, 2, 1u << 20, [&](const ProjectivePoint& p) {
        pts.push_back(p);
        return true;
    });
    CHECK(pts.size() == 13);  // 9 + 3 + 1
    CHECK(projective_point_count(f3, 2) == 13);
    CHECK(pts.front() == ProjectivePoint::standard(f3, 3, 2));  // [0:0:1] first
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1] < pts[i]);
    CHECK_THROWS_AS(for_each_projective_point(f3, 5, 10, [](const ProjectivePoint&) {
        return true;
    }), EnumerationCapExceeded);
}

TEST_CASE("splitmix64 reference stream") {
    // first outputs for seed 1234567, as published for the reference
    // implementation of splitmix64
    SplitMix64 rng(1234567);
    CHECK(rng.next() == 6457827717110365317ull);
    CHECK(rng.next() == 3203168211198807973ull);
}
