#pragma once

// Logarithmic vector fields along f = 0 and their linear parts at the origin.

#include <vector>

#include "lct/linalg.hpp"
#include "lct/poly.hpp"

namespace lct {

/// delta = sum_i coeffs[i] d_i with delta(f) = cofactor * f.
struct Derivation {
    std::vector<Polynomial> coeffs;
    Polynomial cofactor;
};

/// delta(f) = sum_i coeffs[i] * d_i f.
Polynomial apply_derivation(const std::vector<Polynomial>& coeffs, const Polynomial& f);

struct DerlogResult {
    std::vector<Derivation> generators;
    bool complete = true;  // false when the syzygy computation hit the degree bound
};

/// Generators from the syzygies of (d_0 f, ..., d_n f, -f). Each one is re-verified exactly.
DerlogResult derlog_generators(const Polynomial& f, int degree_bound);
int default_logder_degree_bound(const Polynomial& f);

struct LogarithmicCheck {
    bool logarithmic = false;
    /// unit * delta(f) = quotient * f in the local ring.
    Polynomial unit;
    Polynomial quotient;
};

LogarithmicCheck is_logarithmic(const std::vector<Polynomial>& coeffs, const Polynomial& f);

struct LinearPart {
    Matrix matrix;  // entry (i, j): coefficient of x_i in coeffs[j]
    Rational trace;
    bool nilpotent = false;
};

/// Throws NotInMDelta when some coefficient has a nonzero constant term.
LinearPart linear_part(const std::vector<Polynomial>& coeffs);

struct JordanChevalley {
    Matrix semisimple;
    Matrix nilpotent;
};

JordanChevalley jordan_chevalley(const Matrix& m);

/// Constant term of sum_i d_i(coeffs[i]) - cofactor, i.e. tr(delta_0) - h(0).
Rational log_residue(const Derivation& delta);

/// [d1, d2]_i = d1(d2_i) - d2(d1_i).
std::vector<Polynomial> lie_bracket(const std::vector<Polynomial>& d1, const std::vector<Polynomial>& d2);

}  // namespace lct
