#include <doctest.h>

#include "lct/errors.hpp"
#include "lct/gauss_manin.hpp"
#include "support.hpp"

using namespace lct;

namespace {

Polynomial P(const std::string& s, const std::vector<std::string>& vars = {"x", "y", "z"}) {
    return parse_polynomial(s, vars);
}

Spectrum S(std::initializer_list<std::pair<Rational, std::size_t>> entries) {
    Spectrum sp;
    for (const auto& [a, m] : entries) sp.push_back({a, m});
    return sp;
}

Rational R(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Spectrum quintic_spectrum() {
    return S({{R(-3, 10), 1}, {R(-1, 10), 3}, {R(1, 10), 5}, {R(1, 5), 1}, {R(3, 10), 7}, {R(2, 5), 1}, {R(1, 2), 8},
              {R(3, 5), 1}, {R(7, 10), 7}, {R(4, 5), 1}, {R(9, 10), 5}, {R(11, 10), 3}, {R(13, 10), 1}});
}

/// A_k = 0 except A_1 = diag(values), in the order of md.basis.
void check_diagonal_t(const BrieskornModel& bm, const std::vector<Rational>& values) {
    const std::size_t mu = values.size();
    for (int k = 0; k <= bm.t_matrix.order(); ++k) {
        const Matrix& a = bm.t_matrix.coeffs[k];
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) {
                const Rational want = k == 1 && i == j ? values[i] : Rational(0);
                CHECK(a(i, j) == want);
            }
    }
}

Spectrum engine(const std::string& f, const std::vector<std::string>& vars) {
    return analyze_spectrum(milnor_data(parse_polynomial(f, vars))).spectrum;
}

bool symmetric(const Spectrum& sp, long n) {
    std::vector<Rational> m;
    for (const auto& e : sp)
        for (std::size_t i = 0; i < e.mult; ++i) m.push_back(Rational(n - 1) - e.alpha);
    return spectrum_from_values(m) == sp;
}

}  // namespace

TEST_CASE("t-matrix by hand reduction") {
    const std::vector<std::string> x{"x"};
    const MilnorData sq = milnor_data(P("x^2", x));
    check_diagonal_t(t_matrix(sq, 3, default_x_degree(sq, 3)), {R(1, 2)});

    const MilnorData a1 = milnor_data(P("x^2+y^2+z^2"));
    check_diagonal_t(t_matrix(a1, 3, default_x_degree(a1, 3)), {R(3, 2)});

    const MilnorData bp = milnor_data(P("x^3+y^3", {"x", "y"}));
    std::vector<Rational> want;
    for (const auto& m : bp.basis) want.push_back(R(m.degree() + 2, 3));
    CHECK(want.front() == R(2, 3));
    CHECK(want.back() == R(4, 3));
    check_diagonal_t(t_matrix(bp, 4, default_x_degree(bp, 4)), want);
}

TEST_CASE("t-matrix rejects bounds that cannot certify the order") {
    const MilnorData bp = milnor_data(P("x^3+y^3", {"x", "y"}));
    CHECK_THROWS_AS(t_matrix(bp, 0, 20), PreconditionError);
    CHECK_THROWS_AS(t_matrix(bp, 4, 3), PreconditionError);
}

TEST_CASE("saturation examples") {
    const MilnorData a1 = milnor_data(P("x^2+y^2+z^2"));
    const SaturatedModel s1 = saturate(t_matrix(a1, 4, default_x_degree(a1, 4)));
    CHECK(s1.steps == 0);
    REQUIRE(s1.residue_eigenvalues.size() == 1);
    CHECK(s1.residue_eigenvalues[0].value == R(3, 2));

    const MilnorData bp = milnor_data(P("x^3+y^3", {"x", "y"}));
    const SaturatedModel s2 = saturate(t_matrix(bp, 4, default_x_degree(bp, 4)));
    CHECK(s2.steps == 0);
    std::vector<std::pair<Rational, int>> eig;
    for (const auto& r : s2.residue_eigenvalues) eig.emplace_back(r.value, r.multiplicity);
    CHECK(eig == std::vector<std::pair<Rational, int>>{{R(2, 3), 1}, {1, 2}, {R(4, 3), 1}});
}

TEST_CASE("closed-form oracles") {
    CHECK(bp_spectrum_oracle({2, 2, 2}) == S({{R(1, 2), 1}}));
    CHECK(bp_spectrum_oracle({3, 3}) == S({{R(-1, 3), 1}, {0, 2}, {R(1, 3), 1}}));
    CHECK(bp_spectrum_oracle({5}) == S({{R(-4, 5), 1}, {R(-3, 5), 1}, {R(-2, 5), 1}, {R(-1, 5), 1}}));

    const Polynomial a1 = P("x^2+y^2+z^2");
    CHECK(qh_spectrum_oracle(milnor_data(a1), *detect_weights(a1)) == S({{R(1, 2), 1}}));
    const Polynomial b = P("x^3+y^3", {"x", "y"});
    CHECK(qh_spectrum_oracle(milnor_data(b), *detect_weights(b)) == S({{R(-1, 3), 1}, {0, 2}, {R(1, 3), 1}}));
    const Polynomial d4 = P("x^2*y+y^3", {"x", "y"});
    CHECK(qh_spectrum_oracle(milnor_data(d4), *detect_weights(d4)) == engine("x^2*y+y^3", {"x", "y"}));
}

TEST_CASE("engine spectra of small germs") {
    CHECK(engine("x^3+y^3", {"x", "y"}) == S({{R(-1, 3), 1}, {0, 2}, {R(1, 3), 1}}));
    CHECK(engine("x^2+y^2+z^2", {"x", "y", "z"}) == S({{R(1, 2), 1}}));
    CHECK(engine("x^5", {"x"}) == bp_spectrum_oracle({5}));
}

TEST_CASE("the quintic example reproduces the published spectrum") {
    const MilnorData md = milnor_data(P("x^5+x^2*y^2+y^5+z^5"));
    const SpectralAnalysis sa = analyze_spectrum(md);
    CHECK(sa.spectrum == quintic_spectrum());
    CHECK(spectrum_size(sa.spectrum) == 44);
    CHECK(sa.saturated.residue_eigenvalues.front().value == R(7, 10));
    const MonodromyInfo mi = monodromy_info(sa.spectrum);
    CHECK_FALSE(mi.has_eigenvalue_one);
    CHECK(mi.alpha1 == R(-3, 10));
    const C0Structure c0 = c0_structure(sa.saturated, sa.model);
    CHECK(c0.dim == 0);
    CHECK(c0.h0.cols() == 0);
    CHECK(c0.n_image.cols() == 0);
    CHECK(c0.s_span.cols() == 0);
}

TEST_CASE("Sebastiani-Thom sum reproduces the published spectrum") {
    const Spectrum curve = engine("x^5+x^2*y^2+y^5", {"x", "y"});
    CHECK(sebastiani_thom(curve, bp_spectrum_oracle({5})) == quintic_spectrum());
}

TEST_CASE("monodromy data") {
    CHECK_FALSE(monodromy_info(quintic_spectrum()).has_eigenvalue_one);
    const MonodromyInfo b = monodromy_info(S({{R(-1, 3), 1}, {0, 2}, {R(1, 3), 1}}));
    CHECK(b.has_eigenvalue_one);
    CHECK(b.alpha1 == R(-1, 3));
    CHECK(b.alpha2 == 0);
    const MonodromyInfo h = monodromy_info(S({{R(-1, 2), 1}}));
    CHECK(h.eigenvalues == S({{R(1, 2), 1}}));
    CHECK(h.alpha2 == h.alpha1);
    CHECK_THROWS_AS(monodromy_info({}), PreconditionError);
}

TEST_CASE("eigenvalue-zero piece examples") {
    const MilnorData a1 = milnor_data(P("x^2+y^2+z^2"));
    const SpectralAnalysis s1 = analyze_spectrum(a1, {0, 0, 24, true});
    REQUIRE(s1.c0);
    CHECK(s1.c0->dim == 0);
    CHECK(s1.c0->d0.empty());

    const MilnorData bp = milnor_data(P("x^3+y^3", {"x", "y"}));
    const SpectralAnalysis s2 = analyze_spectrum(bp, {0, 0, 24, true});
    REQUIRE(s2.c0);
    CHECK(s2.c0->dim == 2);
    CHECK(s2.c0->n_image.cols() == 0);
    for (const auto& v : s2.c0->d0) CHECK(sgn(v) == 0);
    CHECK(s2.c0->shifted_lattice_vanishes);
    // Both pieces of degree 1 are reached by x dx and y dx.
    CHECK(span_dim(s2.c0->s_span) == 2);
}

TEST_CASE("a nonquasihomogeneous eigenvalue-zero piece carries a nilpotent part") {
    // T(4,4,4) has spectral numbers 0 and 1, joined by one Jordan block of the monodromy.
    const SpectralAnalysis sa =
        analyze_spectrum(milnor_data(P("x^4+y^4+z^4+x*y*z")), {0, 0, 24, true});
    REQUIRE(sa.c0);
    CHECK(sa.c0->dim == 2);
    CHECK(sa.c0->n_image.cols() == 1);
    CHECK(sa.c0->shifted_lattice_vanishes);
}

TEST_CASE("membership in the eigenvalue-zero piece") {
    C0Structure empty;
    CHECK(c0_membership(empty, MembershipVariant::C).member);
    CHECK(c0_membership(empty, MembershipVariant::D).member);

    C0Structure z;
    z.dim = 2;
    z.h0 = Matrix(2, 1);
    z.h0(1, 0) = 1;
    z.n_image = Matrix(2, 0);
    z.s_span = Matrix(2, 0);
    z.d0 = Vector{0, 0};
    CHECK(c0_membership(z, MembershipVariant::D).member);

    z.d0 = Vector{1, 0};
    CHECK_FALSE(c0_membership(z, MembershipVariant::D).member);
    CHECK_FALSE(c0_membership(z, MembershipVariant::C).member);
    z.s_span = Matrix(2, 1);
    z.s_span(0, 0) = 3;
    CHECK_FALSE(c0_membership(z, MembershipVariant::D).member);
    CHECK(c0_membership(z, MembershipVariant::C).member);

    z.n_image = z.h0;
    CHECK_FALSE(c0_membership(z, MembershipVariant::D).direct);
}

TEST_CASE("property: spectra of the corpus are symmetric, complete and in range") {
    for (const auto& e : test::corpus()) {
        CAPTURE(e.name);
        const Polynomial f = parse_polynomial(e.expr, e.vars);
        const MilnorData md = milnor_data(f);
        const SpectralAnalysis sa = analyze_spectrum(md);
        const long n = static_cast<long>(f.nvars()) - 1;
        CHECK(spectrum_size(sa.spectrum) == md.mu);
        CHECK(symmetric(sa.spectrum, n));
        for (const auto& x : sa.spectrum) {
            CHECK(x.alpha > -1);
            CHECK(x.alpha < n);
        }
        const MonodromyInfo mi = monodromy_info(sa.spectrum);
        CHECK(sa.saturated.residue_eigenvalues.front().value == mi.alpha1 + 1);
        bool integer = false;
        for (const auto& x : sa.spectrum) integer = integer || x.alpha.get_den() == 1;
        CHECK(mi.has_eigenvalue_one == integer);
        if (const auto w = detect_weights(f)) CHECK(sa.spectrum == qh_spectrum_oracle(md, *w));
    }
}

TEST_CASE("property: shifted lattice projects to zero in the eigenvalue-zero piece") {
    for (const auto& e : test::corpus()) {
        CAPTURE(e.name);
        const SpectralAnalysis sa =
            analyze_spectrum(milnor_data(parse_polynomial(e.expr, e.vars)), {0, 0, 24, true});
        REQUIRE(sa.c0);
        CHECK(sa.c0->shifted_lattice_vanishes);
    }
}

TEST_CASE("property: Sebastiani-Thom with a square keeps the spectrum shifted by one half") {
    for (const auto& [f, v] : {std::pair{"x^5+x^2*y^2+y^5", "x,y"}, {"x^3+y^7+x*y^5", "x,y"}, {"x^2*y+y^4", "x,y"}}) {
        CAPTURE(f);
        const auto vars = parse_variable_list(v);
        const Spectrum base = engine(f, vars);
        const Spectrum susp = engine(std::string(f) + "+z^2", {"x", "y", "z"});
        CHECK(susp == sebastiani_thom(base, bp_spectrum_oracle({2})));
    }
}
