#pragma once

// Standard bases in the local ring Q[x]_(x) (Mora's tangent cone algorithm), Milnor algebra data,
// local ideal membership and polynomial syzygies.

#include <vector>

#include "lct/poly.hpp"

namespace lct {

struct StandardBasis {
    std::vector<Polynomial> generators;
    MonomialOrder order{OrderKind::LocalDegRevLex};
    std::vector<Monomial> leading;  // leading monomial of each generator

    std::size_t nvars() const { return generators.empty() ? 0 : generators.front().nvars(); }
    /// True if some leading monomial divides m.
    bool reducible(const Monomial& m) const;
};

/// unit * g = sum_i quotients[i] * generators[i] + normal_form.
struct DivisionResult {
    Polynomial normal_form;
    std::vector<Polynomial> quotients;
    Polynomial unit;
};

/// Mora's weak normal form: the leading monomial of the result is not divisible by any leading
/// monomial of `sb`, and normal_form == 0 iff g lies in the ideal of the local ring.
DivisionResult mora_division(const Polynomial& g, const StandardBasis& sb);

/// Standard basis of the ideal generated by `gens` in the local ring (local order required).
StandardBasis standard_basis(const std::vector<Polynomial>& gens,
                             const MonomialOrder& order = MonomialOrder(OrderKind::LocalDegRevLex));

struct MilnorData {
    Polynomial f;
    StandardBasis jacobian_sb;
    std::size_t mu = 0;
    /// Standard monomials, largest first in the local order; basis.front() is 1.
    std::vector<Monomial> basis;
    /// Every monomial of degree >= highest_corner_degree lies in J_f.
    int highest_corner_degree = 0;
};

/// Milnor number and monomial basis of O/J_f. Throws SmoothGermError when f is not in m^2,
/// NonIsolatedError when mu is infinite, PreconditionError when f(0) != 0.
MilnorData milnor_data(const Polynomial& f);

struct MembershipResult {
    bool member = false;
    Polynomial unit;
    std::vector<Polynomial> quotients;
};

MembershipResult local_membership(const Polynomial& g, const StandardBasis& sb);

/// Saito's criterion: f lies in its Jacobian ideal in the local ring.
bool is_quasihomogeneous(const Polynomial& f);
bool is_quasihomogeneous(const MilnorData& md);

struct SyzygyBasis {
    std::vector<std::vector<Polynomial>> generators;
    /// False when S-pairs above the degree bound were skipped.
    bool complete = true;
};

/// Generators of the polynomial syzygy module of `gens`, from a position-over-term Groebner basis
/// of the graph module. Pairs whose (shifted) degree exceeds `degree_bound` are skipped.
SyzygyBasis syzygies(const std::vector<Polynomial>& gens, int degree_bound);

}  // namespace lct
