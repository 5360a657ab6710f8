#include <doctest.h>

#include <algorithm>

#include "lct/errors.hpp"
#include "lct/linalg.hpp"
#include "support.hpp"

using namespace lct;

namespace {

UPoly from_roots(const std::vector<Rational>& roots) {
    UPoly p{1};
    for (const auto& r : roots) p = upoly_mul(p, UPoly{-r, 1});
    return p;
}

/// A random invertible matrix: unit lower times unit upper triangular.
Matrix random_invertible(test::Gen& g, std::size_t n) {
    Matrix l = Matrix::identity(n), u = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = g.integer(-2, 2);
            u(j, i) = g.integer(-2, 2);
        }
    return l * u;
}

}  // namespace

TEST_CASE("rank, kernel and solve on a small matrix") {
    Matrix m(2, 3);
    m(0, 0) = 1, m(0, 1) = 2, m(0, 2) = 3;
    m(1, 0) = 2, m(1, 1) = 4, m(1, 2) = 6;
    CHECK(rank(m) == 1);
    const Matrix k = kernel(m);
    CHECK(k.cols() == 2);
    CHECK((m * k).is_zero());
    CHECK(solve(m, Vector{1, 2}).has_value());
    CHECK_FALSE(solve(m, Vector{1, 3}).has_value());
}

TEST_CASE("inverse of a singular matrix throws") {
    Matrix m(2, 2);
    m(0, 0) = 1, m(0, 1) = 1, m(1, 0) = 1, m(1, 1) = 1;
    CHECK_THROWS_AS(inverse(m), PreconditionError);
}

TEST_CASE("property: kernel and rank satisfy rank-nullity") {
    test::Gen g(21);
    for (int it = 0; it < 200; ++it) {
        const std::size_t r = g.integer(1, 6), c = g.integer(1, 6);
        Matrix m = g.matrix(r, c, 2);
        if (g.coin() && r > 1)
            for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2;
        const Matrix k = kernel(m);
        CHECK(rank(m) + k.cols() == c);
        CHECK((m * k).is_zero());
    }
}

TEST_CASE("property: inverse is a two-sided inverse") {
    test::Gen g(22);
    for (int it = 0; it < 100; ++it) {
        const std::size_t n = g.integer(1, 6);
        const Matrix m = random_invertible(g, n);
        const Matrix inv = inverse(m);
        CHECK(m * inv == Matrix::identity(n));
        CHECK(inv * m == Matrix::identity(n));
    }
}

TEST_CASE("property: subspace intersection has the dimension formula") {
    test::Gen g(23);
    for (int it = 0; it < 200; ++it) {
        const std::size_t d = g.integer(1, 7);
        const Matrix a = g.matrix(d, g.integer(0, 4), 1), b = g.matrix(d, g.integer(0, 4), 1);
        const Matrix both = intersect(a, b);
        CHECK(span_dim(both) + span_dim(hstack(a, b)) == span_dim(a) + span_dim(b));
        for (const auto& v : both.columns()) {
            CHECK(in_span(a, v));
            CHECK(in_span(b, v));
        }
    }
}

TEST_CASE("characteristic polynomial of a conjugated diagonal matrix") {
    test::Gen g(24);
    for (int it = 0; it < 60; ++it) {
        const std::size_t n = g.integer(1, 6);
        std::vector<Rational> eig;
        Matrix d(n, n);
        for (std::size_t i = 0; i < n; ++i) d(i, i) = eig.emplace_back(g.rational(4));
        const Matrix p = random_invertible(g, n);
        CHECK(charpoly(p * d * inverse(p)) == from_roots(eig));
    }
}

TEST_CASE("rational roots with multiplicity") {
    bool split = false;
    const auto roots = rational_roots(from_roots({Rational(2, 3), 1, Rational(4, 3), 1, Rational(-7, 10)}), split);
    CHECK(split);
    REQUIRE(roots.size() == 4);
    CHECK(roots[0].value == Rational(-7, 10));
    CHECK(roots[1].value == Rational(2, 3));
    CHECK(roots[2].value == 1);
    CHECK(roots[2].multiplicity == 2);
    CHECK(roots[3].value == Rational(4, 3));
}

TEST_CASE("an irrational factor leaves the factorization incomplete") {
    bool split = true;
    const UPoly p = upoly_mul(UPoly{-2, 0, 1}, UPoly{Rational(-1, 2), 1});
    const auto roots = rational_roots(p, split);
    CHECK_FALSE(split);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].value == Rational(1, 2));
}

TEST_CASE("property: roots of random split polynomials are recovered exactly") {
    test::Gen g(25);
    for (int it = 0; it < 150; ++it) {
        std::vector<Rational> r;
        const int n = g.integer(1, 9);
        for (int i = 0; i < n; ++i) {
            Rational q(g.integer(-30, 30), g.integer(1, 12));
            q.canonicalize();
            r.push_back(q);
        }
        bool split = false;
        const auto roots = rational_roots(from_roots(r), split);
        CHECK(split);
        std::vector<Rational> got;
        for (const auto& x : roots)
            for (int k = 0; k < x.multiplicity; ++k) got.push_back(x.value);
        std::sort(r.begin(), r.end());
        CHECK(got == r);
    }
}

TEST_CASE("generalized eigenspace of a Jordan block") {
    Matrix m(3, 3);
    m(0, 0) = 2, m(0, 1) = 1, m(1, 1) = 2, m(2, 2) = 5;
    CHECK(generalized_eigenspace(m, 2).cols() == 2);
    CHECK(generalized_eigenspace(m, 5).cols() == 1);
    CHECK(generalized_eigenspace(m, 3).cols() == 0);
}
