#include "lct/logder.hpp"

#include "lct/errors.hpp"
#include "lct/local_algebra.hpp"

namespace lct {

Polynomial apply_derivation(const std::vector<Polynomial>& coeffs, const Polynomial& f) {
    if (coeffs.size() != f.nvars()) throw PreconditionError("derivation has the wrong number of coefficients");
    Polynomial r(f.nvars());
    for (std::size_t i = 0; i < coeffs.size(); ++i) r += coeffs[i] * f.derivative(i);
    return r;
}

int default_logder_degree_bound(const Polynomial& f) {
    return 2 * f.degree() + static_cast<int>(f.nvars());
}

DerlogResult derlog_generators(const Polynomial& f, int degree_bound) {
    const std::size_t n = f.nvars();
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(f.derivative(i));
    gens.push_back(-f);
    const SyzygyBasis syz = syzygies(gens, degree_bound);
    DerlogResult res;
    res.complete = syz.complete;
    for (const auto& t : syz.generators) {
        Derivation d;
        d.coeffs.assign(t.begin(), t.begin() + n);
        d.cofactor = t[n];
        if (!(apply_derivation(d.coeffs, f) == d.cofactor * f))
            throw ConsistencyFailure("syzygy does not give a logarithmic vector field");
        res.generators.push_back(std::move(d));
    }
    return res;
}

LogarithmicCheck is_logarithmic(const std::vector<Polynomial>& coeffs, const Polynomial& f) {
    if (f.is_zero()) throw PreconditionError("is_logarithmic needs f != 0");
    const StandardBasis sb = standard_basis({f});
    const MembershipResult m = local_membership(apply_derivation(coeffs, f), sb);
    LogarithmicCheck c;
    c.logarithmic = m.member;
    c.unit = m.unit;
    // The standard basis of a principal ideal is f scaled to a monic leading term.
    const Rational scale = sb.generators.front().leading_coefficient(sb.order) / f.leading_coefficient(sb.order);
    c.quotient = m.quotients.front() * scale;
    return c;
}

LinearPart linear_part(const std::vector<Polynomial>& coeffs) {
    const std::size_t n = coeffs.size();
    LinearPart lp;
    lp.matrix = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (sgn(coeffs[j].constant_term()) != 0)
            throw NotInMDelta("coefficient " + std::to_string(j) +
                              " has a nonzero constant term: the divisor splits off a smooth factor");
        for (std::size_t i = 0; i < n; ++i) lp.matrix(i, j) = coeffs[j].coefficient(Monomial::variable(i));
    }
    lp.trace = lp.matrix.trace();
    Matrix p = Matrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) p = p * lp.matrix;
    lp.nilpotent = p.is_zero();
    return lp;
}

JordanChevalley jordan_chevalley(const Matrix& m) {
    if (m.rows() != m.cols()) throw PreconditionError("jordan_chevalley needs a square matrix");
    const UPoly chi = charpoly(m);
    UPoly rem;
    const UPoly sf = upoly_divmod(chi, upoly_gcd(chi, upoly_derivative(chi)), rem);
    const UPoly dsf = upoly_derivative(sf);
    // Newton iteration S <- S - p(S) p'(S)^-1 converges in finitely many exact steps.
    Matrix s = m;
    for (std::size_t it = 0; it <= m.rows() + 1; ++it) {
        const Matrix ps = upoly_eval(sf, s);
        if (ps.is_zero()) return {s, m - s};
        s = s - ps * inverse(upoly_eval(dsf, s));
    }
    throw ConsistencyFailure("Jordan-Chevalley iteration did not terminate");
}

Rational log_residue(const Derivation& delta) {
    Polynomial div(delta.cofactor.nvars());
    for (std::size_t i = 0; i < delta.coeffs.size(); ++i) div += delta.coeffs[i].derivative(i);
    return div.constant_term() - delta.cofactor.constant_term();
}

std::vector<Polynomial> lie_bracket(const std::vector<Polynomial>& d1, const std::vector<Polynomial>& d2) {
    if (d1.size() != d2.size()) throw PreconditionError("lie_bracket of fields with different variable counts");
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < d1.size(); ++i) out.push_back(apply_derivation(d1, d2[i]) - apply_derivation(d2, d1[i]));
    return out;
}

}  // namespace lct
