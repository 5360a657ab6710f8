#include <doctest.h>

#include "lct/errors.hpp"
#include "lct/local_algebra.hpp"
#include "lct/logder.hpp"
#include "support.hpp"

using namespace lct;

namespace {

const std::vector<std::string> kXY{"x", "y"};

Polynomial P(const std::string& s, const std::vector<std::string>& vars = kXY) { return parse_polynomial(s, vars); }

std::vector<Polynomial> F(std::initializer_list<const char*> coeffs, const std::vector<std::string>& vars = kXY) {
    std::vector<Polynomial> out;
    for (const char* c : coeffs) out.push_back(P(c, vars));
    return out;
}

/// True if `field` is a constant multiple of some generator.
bool has_multiple(const DerlogResult& r, const std::vector<Polynomial>& field) {
    for (const auto& g : r.generators) {
        std::optional<Rational> ratio;
        bool ok = true;
        for (std::size_t i = 0; i < field.size() && ok; ++i) {
            if (field[i].is_zero() || g.coeffs[i].is_zero()) {
                ok = field[i].is_zero() && g.coeffs[i].is_zero();
                continue;
            }
            const Monomial m = field[i].terms().begin()->first;
            const Rational q = g.coeffs[i].coefficient(m) / field[i].terms().begin()->second;
            if (sgn(q) == 0 || (ratio && *ratio != q)) ok = false;
            ratio = q;
            ok = ok && g.coeffs[i] == q * field[i];
        }
        if (ok && ratio) return true;
    }
    return false;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace

TEST_CASE("logarithmic fields of a node and of x^2 + y^2") {
    const Polynomial q = P("x^2+y^2");
    const DerlogResult r = derlog_generators(q, default_logder_degree_bound(q));
    CHECK(r.complete);
    CHECK(has_multiple(r, F({"x/2", "y/2"})));
    CHECK(has_multiple(r, F({"y", "-x"})));
    for (const auto& g : r.generators) CHECK(apply_derivation(g.coeffs, q) == g.cofactor * q);

    const Polynomial node = P("x*y");
    const DerlogResult n = derlog_generators(node, default_logder_degree_bound(node));
    CHECK(has_multiple(n, F({"x", "0"})));
    CHECK(has_multiple(n, F({"0", "y"})));
}

TEST_CASE("every logarithmic field of the quintic example vanishes to first order in h") {
    const std::vector<std::string> xyz{"x", "y", "z"};
    const Polynomial f = P("x^5+x^2*y^2+y^5+z^5", xyz);
    const DerlogResult r = derlog_generators(f, default_logder_degree_bound(f));
    CHECK_FALSE(r.generators.empty());
    for (const auto& g : r.generators) {
        CHECK(sgn(g.cofactor.constant_term()) == 0);
        const LinearPart lp = linear_part(g.coeffs);
        CHECK(sgn(lp.trace) == 0);
        CHECK(lp.nilpotent);
        CHECK(sgn(log_residue(g)) == 0);
    }
}

TEST_CASE("logarithmic membership examples") {
    const Polynomial q = P("x^2+y^2");
    const LogarithmicCheck e = is_logarithmic(F({"x/2", "y/2"}), q);
    CHECK(e.logarithmic);
    CHECK(e.unit * apply_derivation(F({"x/2", "y/2"}), q) == e.quotient * q);
    CHECK(e.quotient == e.unit.constant_term() * Polynomial::constant(2, 1));
    CHECK_FALSE(is_logarithmic(F({"1", "0"}), q).logarithmic);
    const LogarithmicCheck rot = is_logarithmic(F({"y", "-x"}), q);
    CHECK(rot.logarithmic);
    CHECK(rot.quotient.is_zero());
}

TEST_CASE("linear parts") {
    const LinearPart euler = linear_part(F({"x/2", "y/2"}));
    CHECK(euler.trace == 1);
    CHECK_FALSE(euler.nilpotent);
    const LinearPart rot = linear_part(F({"y", "-x"}));
    CHECK(rot.trace == 0);
    CHECK_FALSE(rot.nilpotent);
    CHECK(charpoly(rot.matrix) == UPoly{1, 0, 1});
    CHECK(linear_part(F({"y", "0"})).nilpotent);
    CHECK_THROWS_AS(linear_part(F({"1+x", "y"})), NotInMDelta);
}

TEST_CASE("Jordan-Chevalley examples") {
    Matrix nil(2, 2);
    nil(0, 1) = 1;
    const JordanChevalley a = jordan_chevalley(nil);
    CHECK(a.semisimple.is_zero());
    CHECK(a.nilpotent == nil);

    Matrix diag(3, 3);
    diag(0, 0) = 2, diag(1, 1) = -1, diag(2, 2) = Rational(1, 3);
    const JordanChevalley b = jordan_chevalley(diag);
    CHECK(b.semisimple == diag);
    CHECK(b.nilpotent.is_zero());

    Matrix j(2, 2);
    j(0, 0) = 1, j(0, 1) = 1, j(1, 1) = 1;
    const JordanChevalley c = jordan_chevalley(j);
    CHECK(c.semisimple == Matrix::identity(2));
    CHECK(c.nilpotent == nil);
}

TEST_CASE("property: Jordan-Chevalley decomposition") {
    test::Gen g(41);
    for (int it = 0; it < 80; ++it) {
        const std::size_t n = g.integer(1, 5);
        // Conjugate a block-triangular matrix with repeated eigenvalues to get nontrivial nilpotent parts.
        Matrix t(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            t(i, i) = g.integer(-2, 2);
            if (i + 1 < n && g.coin()) t(i, i + 1) = 1;
        }
        Matrix l = Matrix::identity(n), u = Matrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < i; ++k) {
                l(i, k) = g.integer(-1, 1);
                u(k, i) = g.integer(-1, 1);
            }
        const Matrix p = l * u;
        const Matrix m = g.coin() ? p * t * inverse(p) : g.matrix(n, n, 2);
        const JordanChevalley jc = jordan_chevalley(m);
        CHECK(jc.semisimple + jc.nilpotent == m);
        CHECK(jc.semisimple * jc.nilpotent == jc.nilpotent * jc.semisimple);
        Matrix pw = Matrix::identity(n);
        for (std::size_t k = 0; k < n; ++k) pw = pw * jc.nilpotent;
        CHECK(pw.is_zero());
        const UPoly chi = charpoly(m);
        UPoly rem;
        const UPoly sf = upoly_divmod(chi, upoly_gcd(chi, upoly_derivative(chi)), rem);
        CHECK(upoly_eval(sf, jc.semisimple).is_zero());
    }
}

TEST_CASE("residue certificate examples") {
    CHECK(log_residue({F({"x/2", "y/2"}), P("1")}) == 0);
    CHECK(log_residue({F({"y", "-x"}), P("0")}) == 0);
    CHECK(log_residue({F({"x", "0"}), P("1")}) == 0);
    CHECK(log_residue({F({"x", "y"}), P("1")}) == 1);
}

TEST_CASE("Lie bracket examples") {
    CHECK(lie_bracket(F({"x", "0"}), F({"0", "y"})) == F({"0", "0"}));
    CHECK(lie_bracket(F({"0", "x"}), F({"y", "0"})) == F({"x", "-y"}));
}

TEST_CASE("property: linear part is a Lie algebra homomorphism and brackets stay logarithmic") {
    for (const auto& e : test::corpus()) {
        CAPTURE(e.name);
        const Polynomial f = parse_polynomial(e.expr, e.vars);
        if (f.m_adic_order() < 2) continue;
        const DerlogResult r = derlog_generators(f, default_logder_degree_bound(f));
        const std::size_t k = std::min<std::size_t>(r.generators.size(), 4);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b) {
                const auto& d1 = r.generators[a].coeffs;
                const auto& d2 = r.generators[b].coeffs;
                const std::vector<Polynomial> br = lie_bracket(d1, d2);
                CHECK(linear_part(br).matrix == commutator(linear_part(d1).matrix, linear_part(d2).matrix));
                CHECK(is_logarithmic(br, f).logarithmic);
            }
    }
}

TEST_CASE("property: random combinations of generators are logarithmic") {
    test::Gen g(42);
    const Polynomial f = P("x^5+x^2*y^2+y^5");
    const DerlogResult r = derlog_generators(f, default_logder_degree_bound(f));
    for (int it = 0; it < 20; ++it) {
        std::vector<Polynomial> sum(2, Polynomial(2));
        for (const auto& d : r.generators) {
            const Polynomial c = g.polynomial(2, 2, 2);
            for (std::size_t i = 0; i < 2; ++i) sum[i] += c * d.coeffs[i];
        }
        CHECK(is_logarithmic(sum, f).logarithmic);
    }
}
