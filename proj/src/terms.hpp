#pragma once

// Term lists sorted by a monomial order (largest first). Internal to the standard-basis code.

#include <algorithm>
#include <vector>

#include "lct/poly.hpp"

namespace lct::detail {

struct Term {
    Monomial m;
    Rational c;
};

using TermList = std::vector<Term>;

inline TermList to_terms(const Polynomial& p, const MonomialOrder& order) {
    TermList t;
    t.reserve(p.size());
    for (const auto& [m, c] : p.terms()) t.push_back({m, c});
    std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return order.greater(a.m, b.m); });
    return t;
}

inline Polynomial from_terms(std::size_t nvars, const TermList& t) {
    Polynomial p(nvars);
    for (const auto& x : t) p.add_term(x.m, x.c);
    return p;
}

inline int max_degree(const TermList& t) {
    int d = -1;
    for (const auto& x : t) d = std::max(d, x.m.degree());
    return d;
}

/// a - c * m * b, both sorted in `order`.
inline TermList sub_scaled(const TermList& a, const Rational& c, const Monomial& m, const TermList& b,
                           const MonomialOrder& order) {
    TermList r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) {
            r.push_back(a[i++]);
            continue;
        }
        const Monomial bm = b[j].m * m;
        if (i == a.size()) {
            r.push_back({bm, -c * b[j].c});
            ++j;
            continue;
        }
        const auto cmp = order.compare(a[i].m, bm);
        if (cmp > 0) {
            r.push_back(a[i++]);
        } else if (cmp < 0) {
            r.push_back({bm, -c * b[j].c});
            ++j;
        } else {
            Rational v = a[i].c - c * b[j].c;
            if (sgn(v) != 0) r.push_back({bm, std::move(v)});
            ++i;
            ++j;
        }
    }
    return r;
}

}  // namespace lct::detail
