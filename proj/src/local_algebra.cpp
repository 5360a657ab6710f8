#include "lct/local_algebra.hpp"

#include <algorithm>
#include <functional>

#include "lct/errors.hpp"
#include "terms.hpp"

namespace lct {

using detail::max_degree;
using detail::sub_scaled;
using detail::Term;
using detail::TermList;
using detail::to_terms;

bool StandardBasis::reducible(const Monomial& m) const {
    return std::any_of(leading.begin(), leading.end(), [&](const Monomial& l) { return l.divides(m); });
}

namespace {

// An element usable as a reducer in Mora's normal form: either an input generator or a
// snapshot of an intermediate remainder (which carries its own representation).
struct Reducer {
    TermList poly;
    Monomial lm;
    int ecart = 0;
    int gen_index = -1;
    Polynomial unit;
    std::vector<Polynomial> quotients;
};

Reducer make_reducer(const TermList& t, int gen_index) {
    Reducer r;
    r.poly = t;
    r.lm = t.front().m;
    r.ecart = max_degree(t) - r.lm.degree();
    r.gen_index = gen_index;
    return r;
}

// Mora's normal form algorithm with ecart selection. With `track` the representation
// unit * g = sum q_i gens_i + h is maintained.
DivisionResult nf_mora(const Polynomial& g, const std::vector<TermList>& gens, std::size_t nvars,
                       const MonomialOrder& order, bool track) {
    std::vector<Reducer> T;
    T.reserve(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) T.push_back(make_reducer(gens[i], static_cast<int>(i)));

    TermList h = to_terms(g, order);
    Polynomial unit = Polynomial::constant(nvars, 1);
    std::vector<Polynomial> q(gens.size(), Polynomial(nvars));

    while (!h.empty()) {
        const Monomial lm = h.front().m;
        const Reducer* best = nullptr;
        for (const auto& r : T)
            if (r.lm.divides(lm) && (!best || r.ecart < best->ecart)) best = &r;
        if (!best) break;
        const int ecart_h = max_degree(h) - lm.degree();
        const Reducer chosen = *best;  // T may reallocate below
        if (chosen.ecart > ecart_h) {
            Reducer snap = make_reducer(h, -1);
            if (track) {
                snap.unit = unit;
                snap.quotients = q;
            }
            T.push_back(std::move(snap));
        }
        const Rational c = h.front().c / chosen.poly.front().c;
        const Monomial mult = lm / chosen.lm;
        h = sub_scaled(h, c, mult, chosen.poly, order);
        if (!track) continue;
        if (chosen.gen_index >= 0) {
            q[chosen.gen_index].add_term(mult, c);
        } else {
            unit -= chosen.unit.times_monomial(mult, c);
            for (std::size_t i = 0; i < q.size(); ++i) q[i] -= chosen.quotients[i].times_monomial(mult, c);
        }
    }
    return {detail::from_terms(nvars, h), std::move(q), std::move(unit)};
}

TermList spoly(const TermList& a, const TermList& b, const MonomialOrder& order) {
    const Monomial l = a.front().m.lcm(b.front().m);
    TermList sa = sub_scaled({}, -1 / a.front().c, l / a.front().m, a, order);
    return sub_scaled(sa, 1 / b.front().c, l / b.front().m, b, order);
}

TermList make_monic(TermList t) {
    const Rational inv = 1 / t.front().c;
    for (auto& x : t) x.c *= inv;
    return t;
}

}  // namespace

DivisionResult mora_division(const Polynomial& g, const StandardBasis& sb) {
    if (!sb.order.is_local()) throw PreconditionError("mora_division needs a local order");
    std::vector<TermList> gens;
    for (const auto& p : sb.generators) gens.push_back(to_terms(p, sb.order));
    return nf_mora(g, gens, g.nvars(), sb.order, true);
}

StandardBasis standard_basis(const std::vector<Polynomial>& input, const MonomialOrder& order) {
    if (input.empty()) throw PreconditionError("standard_basis needs generators");
    const std::size_t nvars = input.front().nvars();
    std::vector<TermList> S;
    for (const auto& p : input)
        if (!p.is_zero()) S.push_back(make_monic(to_terms(p, order)));

    struct Pair {
        std::size_t i, j;
        int degree;
    };
    std::vector<Pair> pairs;
    auto add_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            const Monomial a = S[i].front().m, b = S[j].front().m;
            bool coprime = true;
            for (std::size_t v = 0; v < kMaxVars; ++v)
                if (a.e[v] && b.e[v]) coprime = false;
            if (coprime) continue;  // product criterion
            pairs.push_back({i, j, a.lcm(b).degree()});
        }
    };
    for (std::size_t j = 1; j < S.size(); ++j) add_pairs(j);

    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(),
                                   [](const Pair& a, const Pair& b) { return a.degree < b.degree; });
        const Pair p = *it;
        pairs.erase(it);
        const TermList s = spoly(S[p.i], S[p.j], order);
        if (s.empty()) continue;
        const DivisionResult r = nf_mora(detail::from_terms(nvars, s), S, nvars, order, false);
        if (r.normal_form.is_zero()) continue;
        S.push_back(make_monic(to_terms(r.normal_form, order)));
        add_pairs(S.size() - 1);
    }

    // Minimalize: drop elements whose leading monomial is a multiple of another one.
    StandardBasis sb;
    sb.order = order;
    for (std::size_t i = 0; i < S.size(); ++i) {
        const Monomial li = S[i].front().m;
        bool redundant = false;
        for (std::size_t j = 0; j < S.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial lj = S[j].front().m;
            if (lj.divides(li) && (lj != li || j < i)) redundant = true;
        }
        if (redundant) continue;
        sb.generators.push_back(detail::from_terms(nvars, S[i]));
        sb.leading.push_back(li);
    }
    return sb;
}

MilnorData milnor_data(const Polynomial& f) {
    const std::size_t n = f.nvars();
    if (n == 0) throw PreconditionError("polynomial has no variables");
    if (sgn(f.constant_term()) != 0) throw PreconditionError("f(0) != 0: the germ does not pass through 0");
    if (f.is_zero()) throw NonIsolatedError("f = 0 does not define a hypersurface");
    if (f.m_adic_order() < 2) throw SmoothGermError("f is not in m^2: the hypersurface is smooth at 0");

    std::vector<Polynomial> jac;
    for (std::size_t i = 0; i < n; ++i) jac.push_back(f.derivative(i));

    MilnorData md;
    md.f = f;
    md.jacobian_sb = standard_basis(jac);

    std::vector<int> bound(n, -1);
    for (const auto& l : md.jacobian_sb.leading) {
        std::size_t support = 0, var = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (l.e[i]) {
                ++support;
                var = i;
            }
        if (support == 1 && (bound[var] < 0 || l.e[var] < bound[var])) bound[var] = l.e[var];
    }
    for (std::size_t i = 0; i < n; ++i)
        if (bound[i] < 0)
            throw NonIsolatedError("Milnor algebra is infinite dimensional: no pure power of variable " +
                                   std::to_string(i) + " in the leading ideal");

    // All monomials inside the box bound, minus the reducible ones.
    Monomial m;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == n) {
            if (!md.jacobian_sb.reducible(m)) md.basis.push_back(m);
            return;
        }
        for (int e = 0; e < bound[i]; ++e) {
            m.e[i] = static_cast<std::uint16_t>(e);
            walk(i + 1);
        }
        m.e[i] = 0;
    };
    walk(0);
    const MonomialOrder& ord = md.jacobian_sb.order;
    std::sort(md.basis.begin(), md.basis.end(),
              [&](const Monomial& a, const Monomial& b) { return ord.greater(a, b); });
    md.mu = md.basis.size();
    int maxdeg = 0;
    for (const auto& b : md.basis) maxdeg = std::max(maxdeg, b.degree());
    md.highest_corner_degree = maxdeg + 1;
    return md;
}

MembershipResult local_membership(const Polynomial& g, const StandardBasis& sb) {
    DivisionResult r = mora_division(g, sb);
    return {r.normal_form.is_zero(), std::move(r.unit), std::move(r.quotients)};
}

bool is_quasihomogeneous(const MilnorData& md) { return local_membership(md.f, md.jacobian_sb).member; }

bool is_quasihomogeneous(const Polynomial& f) { return is_quasihomogeneous(milnor_data(f)); }

namespace {

struct MTerm {
    std::uint32_t pos;
    Monomial m;
    Rational c;
};
using MVec = std::vector<MTerm>;

const ModuleOrder kPot{};

MVec msub_scaled(const MVec& a, const Rational& c, const Monomial& m, const MVec& b) {
    MVec r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) {
            r.push_back(a[i++]);
            continue;
        }
        const Monomial bm = b[j].m * m;
        if (i == a.size()) {
            r.push_back({b[j].pos, bm, -c * b[j].c});
            ++j;
            continue;
        }
        const auto cmp = kPot.compare(a[i].pos, a[i].m, b[j].pos, bm);
        if (cmp > 0) {
            r.push_back(a[i++]);
        } else if (cmp < 0) {
            r.push_back({b[j].pos, bm, -c * b[j].c});
            ++j;
        } else {
            Rational v = a[i].c - c * b[j].c;
            if (sgn(v) != 0) r.push_back({a[i].pos, bm, std::move(v)});
            ++i;
            ++j;
        }
    }
    return r;
}

void mreduce(MVec& h, const std::vector<MVec>& G) {
    std::size_t k = 0;
    while (k < h.size()) {
        const MVec* red = nullptr;
        for (const auto& g : G)
            if (g.front().pos == h[k].pos && g.front().m.divides(h[k].m)) {
                red = &g;
                break;
            }
        if (!red) {
            ++k;
            continue;
        }
        const Rational c = h[k].c / red->front().c;
        const Monomial mult = h[k].m / red->front().m;
        h = msub_scaled(h, c, mult, *red);
    }
}

}  // namespace

SyzygyBasis syzygies(const std::vector<Polynomial>& gens, int degree_bound) {
    if (gens.empty()) throw PreconditionError("syzygies of an empty tuple");
    const std::size_t nvars = gens.front().nvars();
    const std::size_t k = gens.size();
    std::vector<int> shift(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) shift[i + 1] = std::max(0, gens[i].degree());

    const MonomialOrder& base = kPot.base;
    std::vector<MVec> G;
    for (std::size_t i = 0; i < k; ++i) {
        MVec v;
        for (const auto& t : to_terms(gens[i], base)) v.push_back({0, t.m, t.c});
        v.push_back({static_cast<std::uint32_t>(i + 1), Monomial::one(), Rational(1)});
        std::sort(v.begin(), v.end(),
                  [](const MTerm& a, const MTerm& b) { return kPot.compare(a.pos, a.m, b.pos, b.m) > 0; });
        mreduce(v, G);
        if (!v.empty()) G.push_back(std::move(v));
    }

    SyzygyBasis out;
    struct Pair {
        std::size_t i, j;
        int degree;
    };
    std::vector<Pair> pairs;
    auto add_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (G[i].front().pos != G[j].front().pos) continue;
            const Monomial l = G[i].front().m.lcm(G[j].front().m);
            pairs.push_back({i, j, l.degree() + shift[G[i].front().pos]});
        }
    };
    for (std::size_t j = 1; j < G.size(); ++j) add_pairs(j);
    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(),
                                   [](const Pair& a, const Pair& b) { return a.degree < b.degree; });
        const Pair p = *it;
        pairs.erase(it);
        if (p.degree > degree_bound) {
            out.complete = false;
            continue;
        }
        const MVec& a = G[p.i];
        const MVec& b = G[p.j];
        const Monomial l = a.front().m.lcm(b.front().m);
        MVec s = msub_scaled({}, -1 / a.front().c, l / a.front().m, a);
        s = msub_scaled(s, 1 / b.front().c, l / b.front().m, b);
        mreduce(s, G);
        if (s.empty()) continue;
        G.push_back(std::move(s));
        add_pairs(G.size() - 1);
    }

    for (std::size_t i = 0; i < G.size(); ++i) {
        if (G[i].front().pos == 0) continue;
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j || G[j].front().pos != G[i].front().pos) continue;
            if (G[j].front().m.divides(G[i].front().m) && (G[j].front().m != G[i].front().m || j < i))
                redundant = true;
        }
        if (redundant) continue;
        std::vector<Polynomial> tuple(k, Polynomial(nvars));
        for (const auto& t : G[i]) tuple[t.pos - 1].add_term(t.m, t.c);
        out.generators.push_back(std::move(tuple));
    }
    return out;
}

}  // namespace lct
