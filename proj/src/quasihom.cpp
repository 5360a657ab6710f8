#include "lct/quasihom.hpp"

#include <numeric>

#include "lct/errors.hpp"
#include "lct/linalg.hpp"

namespace lct {

namespace {

// Search budget for the weight cone when it has dimension > 1.
constexpr long kMaxConeDegree = 400;
constexpr long kMaxConeEvaluations = 4'000'000;

std::optional<WeightSystem> from_ray(const Vector& v, std::size_t n) {
    Vector x = v;
    if (sgn(x[n]) < 0)
        for (auto& c : x) c = -c;
    for (const auto& c : x)
        if (sgn(c) <= 0) return std::nullopt;
    Integer l = 1;
    for (const auto& c : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> ints;
    Integer g = 0;
    for (const auto& c : x) {
        Integer k = c.get_num() * (l / c.get_den());
        ints.push_back(k);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
    }
    WeightSystem ws;
    for (std::size_t i = 0; i < n; ++i) {
        Integer k = ints[i] / g;
        if (!k.fits_slong_p()) return std::nullopt;
        ws.weights.push_back(k.get_si());
    }
    Integer r = ints[n] / g;
    if (!r.fits_slong_p()) return std::nullopt;
    ws.degree = r.get_si();
    return ws;
}

}  // namespace

long weighted_degree(const Monomial& m, const WeightSystem& ws) {
    long d = 0;
    for (std::size_t i = 0; i < ws.weights.size(); ++i) d += ws.weights[i] * m.e[i];
    return d;
}

bool is_weighted_homogeneous(const Polynomial& f, const WeightSystem& ws) {
    if (ws.weights.size() != f.nvars()) return false;
    for (const auto& [m, c] : f.terms())
        if (weighted_degree(m, ws) != ws.degree) return false;
    return true;
}

std::optional<WeightSystem> detect_weights(const Polynomial& f) {
    if (f.is_zero()) throw PreconditionError("detect_weights of the zero polynomial");
    const std::size_t n = f.nvars();
    Matrix a(f.size(), n + 1);
    std::size_t row = 0;
    for (const auto& [m, c] : f.terms()) {
        for (std::size_t i = 0; i < n; ++i) a(row, i) = m.e[i];
        a(row, n) = -1;
        ++row;
    }
    const Matrix ker = kernel(a);
    if (ker.cols() == 0) return std::nullopt;
    if (ker.cols() == 1) return from_ray(ker.column(0), n);

    // A cone of solutions: w_pivot = r * b - sum R w_free over the RREF of [A | 1].
    Matrix aug(f.size(), n + 1);
    row = 0;
    for (const auto& [m, c] : f.terms()) {
        for (std::size_t i = 0; i < n; ++i) aug(row, i) = m.e[i];
        aug(row, n) = 1;
        ++row;
    }
    const auto pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_vars;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_pivot[i]) free_vars.push_back(i);

    long evaluations = 0;
    for (long r = 1; r <= kMaxConeDegree; ++r) {
        std::optional<std::vector<long>> best;
        std::vector<long> fv(free_vars.size(), 1);
        while (true) {
            if (++evaluations > kMaxConeEvaluations) return std::nullopt;
            std::vector<long> w(n, 0);
            for (std::size_t k = 0; k < free_vars.size(); ++k) w[free_vars[k]] = fv[k];
            bool ok = true;
            for (std::size_t pi = 0; pi < pivots.size() && ok; ++pi) {
                Rational v = aug(pi, n) * r;
                for (std::size_t k = 0; k < free_vars.size(); ++k) v -= aug(pi, free_vars[k]) * fv[k];
                if (v.get_den() != 1 || sgn(v) <= 0 || !v.get_num().fits_slong_p()) ok = false;
                else w[pivots[pi]] = v.get_num().get_si();
            }
            if (ok && (!best || w < *best)) best = w;
            std::size_t k = 0;
            while (k < fv.size() && fv[k] == r) fv[k++] = 1;
            if (k == fv.size()) break;
            ++fv[k];
        }
        if (best) return WeightSystem{*best, r};
    }
    return std::nullopt;
}

GradedDims graded_dims(const MilnorData& md, const WeightSystem& ws) {
    if (!is_weighted_homogeneous(md.f, ws))
        throw PreconditionError("f is not weighted homogeneous for the given weights");
    GradedDims g;
    for (const auto& m : md.basis) ++g[weighted_degree(m, ws)];
    return g;
}

HollandMondResult holland_mond_verdict(const Polynomial& f, const MilnorData& md, const WeightSystem& ws) {
    if (f.nvars() < 2) throw PreconditionError("the Holland-Mond criterion needs at least two variables");
    if (!(md.f == f)) throw PreconditionError("Milnor data belongs to a different polynomial");
    const GradedDims g = graded_dims(md, ws);
    const int n = static_cast<int>(f.nvars()) - 1;
    const long wsum = std::accumulate(ws.weights.begin(), ws.weights.end(), 0L);
    HollandMondResult res;
    res.convention = "all " + std::to_string(n + 1) + " weights summed; i ranges over 1.." + std::to_string(n - 1) +
                     " (n+1 = number of variables)";
    for (int i = 1; i <= n - 1; ++i) {
        const long d = i * ws.degree - wsum;
        const auto it = g.find(d);
        const std::size_t dim = it == g.end() ? 0 : it->second;
        res.checked.push_back({i, d, dim});
        if (dim) res.offending.push_back({i, d, dim});
    }
    res.holds = res.offending.empty();
    return res;
}

}  // namespace lct
