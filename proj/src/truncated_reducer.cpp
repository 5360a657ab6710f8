#include "truncated_reducer.hpp"

#include <algorithm>
#include <functional>

#include "lct/errors.hpp"

namespace lct::detail {

namespace {

std::vector<std::uint32_t> nonzero_indices(const std::vector<Rational>& v, std::size_t limit) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < limit; ++i)
        if (sgn(v[i]) != 0) out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

}  // namespace

TruncatedReducer::TruncatedReducer(const MilnorData& md, int precision)
    : nvars_(md.f.nvars()), precision_(precision) {
    if (precision <= md.highest_corner_degree)
        throw PreconditionError("truncation degree must exceed the highest corner of the Milnor algebra");
    if (precision > 250) throw TruncationInsufficient("x-degree bound exceeds the supported range", 0);

    rho_ = Polynomial::kInfiniteOrder;
    for (std::size_t l = 0; l < nvars_; ++l) rho_ = std::min(rho_, md.f.derivative(l).m_adic_order());
    cofactor_precision_ = precision_ - rho_;

    // Monomials of degree < precision, largest first in the local order.
    Monomial m;
    std::function<void(std::size_t, int)> walk = [&](std::size_t i, int left) {
        if (i == nvars_) {
            monomials_.push_back(m);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m.e[i] = static_cast<std::uint16_t>(e);
            walk(i + 1, left - e);
        }
        m.e[i] = 0;
    };
    walk(0, precision_ - 1);
    const MonomialOrder ds(OrderKind::LocalDegRevLex);
    std::sort(monomials_.begin(), monomials_.end(),
              [&](const Monomial& a, const Monomial& b) { return ds.greater(a, b); });
    packs_.reserve(monomials_.size());
    degrees_.reserve(monomials_.size());
    index_.reserve(monomials_.size() * 2);
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
        packs_.push_back(monomials_[i].pack());
        degrees_.push_back(monomials_[i].degree());
        index_.emplace(packs_.back(), static_cast<std::uint32_t>(i));
    }

    mu_ = md.basis.size();
    basis_pos_.assign(monomials_.size(), -1);
    for (std::size_t j = 0; j < md.basis.size(); ++j) {
        const long i = lookup(md.basis[j].pack());
        if (i < 0) throw ConsistencyFailure("standard monomial beyond the truncation degree");
        basis_pos_[i] = static_cast<int>(j);
    }

    for (std::size_t l = 0; l < nvars_; ++l) {
        const auto dense = to_dense(md.f.derivative(l), precision_);
        Element e;
        e.generator = static_cast<int>(l);
        for (std::size_t i = 0; i < dense.size(); ++i)
            if (sgn(dense[i]) != 0) {
                e.idx.push_back(static_cast<std::uint32_t>(i));
                e.coef.push_back(dense[i]);
            }
        if (e.idx.empty()) continue;
        // Generators keep their leading coefficient; derived elements are monic.
        elements_.push_back(std::move(e));
    }
    build_standard_basis();

    reducer_.assign(monomials_.size(), -1);
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
        int best = -1;
        for (std::size_t r = 0; r < elements_.size(); ++r) {
            if (!monomials_[elements_[r].idx.front()].divides(monomials_[i])) continue;
            if (best < 0 || elements_[r].idx.size() < elements_[best].idx.size()) best = static_cast<int>(r);
        }
        reducer_[i] = best;
        if ((best < 0) != (basis_pos_[i] >= 0))
            throw ConsistencyFailure("truncated standard basis disagrees with the Milnor algebra basis");
    }
}

std::vector<Rational> TruncatedReducer::to_dense(const Polynomial& p, int bound) const {
    std::vector<Rational> v(monomials_.size());
    for (const auto& [m, c] : p.terms()) {
        if (m.degree() >= bound) continue;
        v[index_.at(m.pack())] = c;
    }
    return v;
}

void TruncatedReducer::build_standard_basis() {
    const std::size_t nmon = monomials_.size();
    struct Pair {
        std::size_t a, b;
        int degree;
    };
    std::vector<Pair> pairs;
    auto add_pairs = [&](std::size_t b) {
        const Monomial lb = monomials_[elements_[b].idx.front()];
        for (std::size_t a = 0; a < b; ++a) {
            const Monomial la = monomials_[elements_[a].idx.front()];
            bool coprime = true;
            for (std::size_t v = 0; v < nvars_; ++v)
                if (la.e[v] && lb.e[v]) coprime = false;
            const int d = la.lcm(lb).degree();
            if (coprime || d >= precision_) continue;  // product criterion / vanishes mod m^D
            pairs.push_back({a, b, d});
        }
    };
    for (std::size_t b = 1; b < elements_.size(); ++b) add_pairs(b);

    std::vector<Rational> h(nmon);
    std::vector<std::vector<Rational>> cof(nvars_, std::vector<Rational>(nmon));

    // h += q * mult * elements_[r], cof likewise.
    auto axpy = [&](const Rational& q, std::uint64_t mpack, int mdeg, std::size_t r) {
        const Element& e = elements_[r];
        for (std::size_t t = 0; t < e.idx.size(); ++t) {
            if (mdeg + degrees_[e.idx[t]] >= precision_) continue;
            h[index_.at(mpack + packs_[e.idx[t]])] += q * e.coef[t];
        }
        if (mdeg >= cofactor_precision_) return;
        if (e.generator >= 0) {
            cof[e.generator][index_.at(mpack)] += q;
            return;
        }
        for (std::size_t l = 0; l < nvars_; ++l)
            for (std::size_t j = 0; j < nmon; ++j) {
                if (sgn(e.cofactors[l][j]) == 0 || mdeg + degrees_[j] >= cofactor_precision_) continue;
                cof[l][index_.at(mpack + packs_[j])] += q * e.cofactors[l][j];
            }
    };

    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(),
                                   [](const Pair& x, const Pair& y) { return x.degree < y.degree; });
        const Pair p = *it;
        pairs.erase(it);
        for (auto& x : h) x = 0;
        for (auto& c : cof)
            for (auto& x : c) x = 0;
        const std::uint32_t la = elements_[p.a].idx.front(), lb = elements_[p.b].idx.front();
        const Monomial l = monomials_[la].lcm(monomials_[lb]);
        const Monomial ma = l / monomials_[la], mb = l / monomials_[lb];
        axpy(1 / elements_[p.a].coef.front(), ma.pack(), ma.degree(), p.a);
        axpy(-1 / elements_[p.b].coef.front(), mb.pack(), mb.degree(), p.b);

        std::size_t i = 0;
        bool irreducible = false;
        for (; i < nmon; ++i) {
            if (sgn(h[i]) == 0) continue;
            int best = -1;
            for (std::size_t r = 0; r < elements_.size(); ++r) {
                if (!monomials_[elements_[r].idx.front()].divides(monomials_[i])) continue;
                if (best < 0 || elements_[r].idx.size() < elements_[best].idx.size()) best = static_cast<int>(r);
            }
            if (best < 0) {
                irreducible = true;
                break;
            }
            const Monomial mult = monomials_[i] / monomials_[elements_[best].idx.front()];
            const Rational q = -h[i] / elements_[best].coef.front();
            axpy(q, mult.pack(), mult.degree(), best);
        }
        if (!irreducible) continue;

        Element e;
        const Rational inv = 1 / h[i];
        for (std::size_t j = i; j < nmon; ++j)
            if (sgn(h[j]) != 0) {
                e.idx.push_back(static_cast<std::uint32_t>(j));
                e.coef.push_back(h[j] * inv);
            }
        e.cofactors = cof;
        for (auto& c : e.cofactors)
            for (auto& x : c) x *= inv;
        elements_.push_back(std::move(e));
        add_pairs(elements_.size() - 1);
    }
}

TruncatedReducer::Result TruncatedReducer::reduce(const Polynomial& g, int precision_in) const {
    if (precision_in > precision_) throw PreconditionError("reduction precision exceeds the table");
    const std::size_t nmon = monomials_.size();
    const int cp = precision_in - rho_;
    std::vector<Rational> h = to_dense(g, precision_in);
    std::vector<std::vector<Rational>> a(nvars_, std::vector<Rational>(nmon));
    std::vector<std::vector<Rational>> mult(elements_.size());

    Result res;
    res.c.assign(mu_, Rational(0));
    for (std::size_t i = 0; i < nmon; ++i) {
        if (degrees_[i] >= precision_in) break;
        if (sgn(h[i]) == 0) continue;
        if (basis_pos_[i] >= 0) {
            res.c[basis_pos_[i]] = h[i];
            continue;
        }
        const int r = reducer_[i];
        const Element& e = elements_[r];
        const std::uint32_t lm = e.idx.front();
        const Rational q = h[i] / e.coef.front();
        const std::uint64_t mpack = packs_[i] - packs_[lm];
        const int mdeg = degrees_[i] - degrees_[lm];
        h[i] = 0;
        for (std::size_t t = 1; t < e.idx.size(); ++t) {
            if (mdeg + degrees_[e.idx[t]] >= precision_in) continue;
            h[index_.at(mpack + packs_[e.idx[t]])] -= q * e.coef[t];
        }
        if (mdeg >= cp) continue;
        const std::uint32_t midx = index_.at(mpack);
        if (e.generator >= 0) {
            a[e.generator][midx] += q;
        } else {
            if (mult[r].empty()) mult[r].assign(nmon, Rational(0));
            mult[r][midx] += q;
        }
    }

    // Fold the multipliers of derived elements into the cofactors of the partials.
    for (std::size_t r = 0; r < elements_.size(); ++r) {
        if (mult[r].empty()) continue;
        const auto mi = nonzero_indices(mult[r], nmon);
        for (std::size_t l = 0; l < nvars_; ++l) {
            const auto ci = nonzero_indices(elements_[r].cofactors[l], nmon);
            for (auto x : mi)
                for (auto y : ci) {
                    if (degrees_[x] + degrees_[y] >= cp) continue;
                    a[l][index_.at(packs_[x] + packs_[y])] += mult[r][x] * elements_[r].cofactors[l][y];
                }
        }
    }

    res.next_precision = cp - 1;
    res.next = Polynomial(nvars_);
    for (std::size_t l = 0; l < nvars_; ++l)
        for (std::size_t i = 0; i < nmon; ++i) {
            if (sgn(a[l][i]) == 0 || monomials_[i].e[l] == 0) continue;
            if (degrees_[i] - 1 >= res.next_precision) continue;
            Monomial m = monomials_[i];
            const Rational c = a[l][i] * m.e[l];
            --m.e[l];
            res.next.add_term(m, c);
        }
    return res;
}

}  // namespace lct::detail
