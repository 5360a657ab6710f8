#include "lct/gauss_manin.hpp"

#include <algorithm>

#include "lct/errors.hpp"
#include "truncated_reducer.hpp"

namespace lct {

namespace {

int min_partial_order(const Polynomial& f) {
    int rho = Polynomial::kInfiniteOrder;
    for (std::size_t l = 0; l < f.nvars(); ++l) rho = std::min(rho, f.derivative(l).m_adic_order());
    return rho;
}

}  // namespace

int default_x_degree(const MilnorData& md, int K) {
    const int d = md.f.degree();
    const int rho = min_partial_order(md.f);
    return std::max((K + 2) * d, md.highest_corner_degree + K * (rho + 1));
}

BrieskornModel t_matrix(const MilnorData& md, int K, int Dx) {
    if (K < 1) throw PreconditionError("t_matrix needs an order K >= 1");
    const int rho = min_partial_order(md.f);
    if (Dx - K * (rho + 1) < md.highest_corner_degree)
        throw PreconditionError("x-degree bound " + std::to_string(Dx) + " is too small for order " +
                                std::to_string(K));
    const detail::TruncatedReducer red(md, Dx);
    const std::size_t mu = md.mu;

    BrieskornModel bm;
    bm.milnor = md;
    bm.x_degree_bound = Dx;
    bm.t_matrix.coeffs.assign(K + 1, Matrix(mu, mu));
    for (std::size_t j = 0; j < mu; ++j) {
        Polynomial g = md.f * Polynomial::monomial(md.f.nvars(), md.basis[j]);
        int prec = Dx;
        for (int k = 0; k <= K; ++k) {
            auto r = red.reduce(g, prec);
            for (std::size_t i = 0; i < mu; ++i) bm.t_matrix.coeffs[k](i, j) = r.c[i];
            g = std::move(r.next);
            prec = r.next_precision;
        }
    }
    return bm;
}

}  // namespace lct

namespace lct {

namespace {

// Coefficient vectors of Laurent s-series: block p + lo holds the coefficient of s^p.
Vector block(const Vector& v, std::size_t mu, int b) {
    return Vector(v.begin() + b * mu, v.begin() + (b + 1) * mu);
}

void add_block(Vector& v, std::size_t mu, int b, const Vector& u, const Rational& scale = 1) {
    for (std::size_t j = 0; j < mu; ++j) v[b * mu + j] += scale * u[j];
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

// T = d_t t applied to a series with powers [lo, hi]; the result has powers [lo - 1, out_hi].
// Powers above out_hi are dropped.
Vector apply_t(const SeriesMatrix& a, std::size_t mu, const Vector& v, int lo, int hi, int out_hi) {
    const int out_lo = lo - 1;
    Vector out(mu * (out_hi - out_lo + 1));
    for (int p = lo; p <= hi; ++p) {
        const Vector u = block(v, mu, p - lo);
        if (is_zero(u)) continue;
        if (p <= out_hi) add_block(out, mu, p - out_lo, u, p);
        for (int i = 0; p - 1 + i <= out_hi; ++i) {
            if (i > a.order())
                throw TruncationInsufficient("t-matrix order " + std::to_string(a.order()) + " is too short",
                                             i);
            add_block(out, mu, p - 1 + i - out_lo, a.coeffs[i] * u);
        }
    }
    return out;
}

std::vector<std::size_t> independent_rows(const Matrix& cols) {
    Matrix t = cols.transpose();
    return rref_in_place(t);
}

// L / s^m L as a Q-vector space with the induced action of T.
class FiniteModel {
public:
    FiniteModel(const SaturatedModel& sm, const SeriesMatrix& a, int m) : mu_(sm.mu), J_(sm.depth), m_(m) {
        if (a.order() < m + J_)
            throw TruncationInsufficient("order " + std::to_string(a.order()) + " is below " +
                                             std::to_string(m + J_) + " needed for the lattice model",
                                         m + J_);
        ell_ = sm.negative.size();
        neg_ = Matrix::from_columns(mu_ * J_, sm.negative);
        if (ell_) {
            neg_rows_ = independent_rows(neg_);
            Matrix sub(ell_, ell_);
            for (std::size_t r = 0; r < ell_; ++r)
                for (std::size_t c = 0; c < ell_; ++c) sub(r, c) = neg_(neg_rows_[r], c);
            neg_solve_ = inverse(sub);
        }

        // s^m L modulo s^m H''.
        const std::size_t ncoord = mu_ * m_ + ell_;
        Matrix y(ncoord, ell_);
        for (std::size_t b = 0; b < ell_; ++b) {
            Vector amb(mu_ * (m_ + J_));
            for (int p = -J_; p <= -1; ++p) {
                const int q = p + m_;
                if (q >= m_) continue;
                add_block(amb, mu_, q + J_, block(sm.negative[b], mu_, p + J_));
            }
            const Vector c = coords(amb);
            for (std::size_t i = 0; i < ncoord; ++i) y(i, b) = c[i];
        }
        y_rref_ = y.transpose();
        y_pivots_ = rref_in_place(y_rref_);
        std::vector<bool> piv(ncoord, false);
        for (auto p : y_pivots_) piv[p] = true;
        for (std::size_t i = 0; i < ncoord; ++i)
            if (!piv[i]) free_.push_back(i);

        const std::size_t d = free_.size();
        t_ = Matrix(d, d);
        for (std::size_t q = 0; q < d; ++q) {
            const Vector img = apply_t(a, mu_, lift(free_[q]), -J_, m_ - 1, m_ - 1);
            if (!is_zero(block(img, mu_, 0)))
                throw ConsistencyFailure("T leaves the saturated lattice");
            const Vector col = project_ambient(Vector(img.begin() + mu_, img.end()));
            for (std::size_t i = 0; i < d; ++i) t_(i, q) = col[i];
        }
    }

    std::size_t dim() const { return free_.size(); }
    int m() const { return m_; }
    const Matrix& t() const { return t_; }

    /// Image of s^k e_j (0 <= k).
    Vector image_of(int k, std::size_t j) const {
        Vector c(mu_ * m_ + ell_);
        if (k < m_) c[k * mu_ + j] = 1;
        return project(std::move(c));
    }

private:
    // Ambient powers [-J, m-1] to coordinates (x_+, beta).
    Vector coords(const Vector& amb) const {
        Vector c(mu_ * m_ + ell_);
        for (std::size_t i = 0; i < mu_ * m_; ++i) c[i] = amb[mu_ * J_ + i];
        if (ell_ == 0) {
            for (std::size_t i = 0; i < mu_ * J_; ++i)
                if (sgn(amb[i]) != 0) throw ConsistencyFailure("negative part outside the saturated lattice");
            return c;
        }
        Vector rhs(ell_);
        for (std::size_t r = 0; r < ell_; ++r) rhs[r] = amb[neg_rows_[r]];
        const Vector beta = neg_solve_ * rhs;
        const Vector back = neg_ * beta;
        for (std::size_t i = 0; i < mu_ * J_; ++i)
            if (back[i] != amb[i]) throw ConsistencyFailure("negative part outside the saturated lattice");
        for (std::size_t b = 0; b < ell_; ++b) c[mu_ * m_ + b] = beta[b];
        return c;
    }

    Vector project(Vector c) const {
        for (std::size_t r = 0; r < y_pivots_.size(); ++r) {
            const Rational f = c[y_pivots_[r]];
            if (sgn(f) == 0) continue;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (sgn(y_rref_(r, i)) != 0) c[i] -= f * y_rref_(r, i);
        }
        Vector out(free_.size());
        for (std::size_t i = 0; i < free_.size(); ++i) out[i] = c[free_[i]];
        return out;
    }

    Vector project_ambient(const Vector& amb) const { return project(coords(amb)); }

    // Ambient representative of coordinate vector q.
    Vector lift(std::size_t q) const {
        Vector amb(mu_ * (m_ + J_));
        if (q < mu_ * m_) {
            amb[mu_ * J_ + q] = 1;
        } else {
            const Vector& v = neg_.column(q - mu_ * m_);
            for (std::size_t i = 0; i < mu_ * J_; ++i) amb[i] = v[i];
        }
        return amb;
    }

    std::size_t mu_;
    int J_, m_;
    std::size_t ell_ = 0;
    Matrix neg_, neg_solve_;
    std::vector<std::size_t> neg_rows_;
    Matrix y_rref_;
    std::vector<std::size_t> y_pivots_;
    std::vector<std::size_t> free_;
    Matrix t_;
};

// Generalized eigenspaces of the model's T, ordered by eigenvalue, with the inverse change of basis.
struct EigenSplit {
    std::vector<Rational> gammas;
    std::vector<std::size_t> start;  // block offsets, start.back() == dim
    std::vector<Matrix> spaces;
    Matrix basis_inverse;

    std::size_t block_of(const Rational& g) const {
        for (std::size_t i = 0; i < gammas.size(); ++i)
            if (gammas[i] == g) return i;
        return gammas.size();
    }
    /// Rows of basis_inverse * x for the blocks with eigenvalue < bound.
    Matrix low_rows(const Matrix& x, const Rational& bound) const {
        std::size_t rows = 0;
        for (std::size_t i = 0; i < gammas.size(); ++i)
            if (gammas[i] < bound) rows = start[i + 1];
        const Matrix full = basis_inverse * x;
        Matrix out(rows, x.cols());
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = full(r, c);
        return out;
    }
    Matrix block_rows(const Matrix& x, std::size_t b) const {
        const Matrix full = basis_inverse * x;
        Matrix out(start[b + 1] - start[b], x.cols());
        for (std::size_t r = start[b]; r < start[b + 1]; ++r)
            for (std::size_t c = 0; c < x.cols(); ++c) out(r - start[b], c) = full(r, c);
        return out;
    }
};

EigenSplit split(const FiniteModel& fm, const std::vector<RationalRoot>& residue_roots) {
    EigenSplit es;
    for (const auto& r : residue_roots)
        for (int k = 0; k < fm.m(); ++k) es.gammas.push_back(r.value + k);
    std::sort(es.gammas.begin(), es.gammas.end());
    es.gammas.erase(std::unique(es.gammas.begin(), es.gammas.end()), es.gammas.end());
    std::vector<Vector> cols;
    es.start.push_back(0);
    for (const auto& g : es.gammas) {
        Matrix e = generalized_eigenspace(fm.t(), g);
        for (std::size_t c = 0; c < e.cols(); ++c) cols.push_back(e.column(c));
        es.spaces.push_back(std::move(e));
        es.start.push_back(cols.size());
    }
    if (cols.size() != fm.dim())
        throw ConsistencyFailure("generalized eigenspaces of the lattice model do not fill it: " +
                                 std::to_string(cols.size()) + " of " + std::to_string(fm.dim()));
    es.basis_inverse = inverse(Matrix::from_columns(fm.dim(), cols));
    return es;
}

// Images of s^k e_j for k in [k_lo, m) as columns.
Matrix lattice_image(const FiniteModel& fm, std::size_t mu, int k_lo) {
    std::vector<Vector> cols;
    for (int k = k_lo; k < fm.m(); ++k)
        for (std::size_t j = 0; j < mu; ++j) cols.push_back(fm.image_of(k, j));
    if (cols.empty()) return Matrix(fm.dim(), 0);
    return span_basis(Matrix::from_columns(fm.dim(), cols));
}

// dim (X cap U) where U is the sum of eigenspaces with eigenvalue >= bound; X has independent columns.
std::size_t dim_in_upper(const EigenSplit& es, const Matrix& x, const Rational& bound) {
    return x.cols() - rank(es.low_rows(x, bound));
}

}  // namespace

SaturatedModel saturate(const BrieskornModel& bm) {
    const SeriesMatrix& a = bm.t_matrix;
    const std::size_t mu = bm.milnor.mu;
    const int cap = a.order();

    // Work with powers [-cap, -1]; block b holds s^(b - cap).
    auto shift = [&](const Vector& v) {
        Vector out(mu * cap);
        for (int b = 0; b + 1 < cap; ++b)
            for (std::size_t j = 0; j < mu; ++j) out[(b + 1) * mu + j] = v[b * mu + j];
        return out;
    };
    auto t_mod = [&](const Vector& v) {
        const Vector img = apply_t(a, mu, v, -cap, -1, -1);
        if (!is_zero(block(img, mu, 0)))
            throw TruncationInsufficient("saturation does not close within order " + std::to_string(cap),
                                         2 * cap + 3);
        return Vector(img.begin() + mu, img.end());
    };

    std::vector<Vector> basis;
    Matrix span(mu * cap, 0);
    std::vector<Vector> pending;
    for (std::size_t j = 0; j < mu; ++j) {
        Vector v(mu * cap);
        for (std::size_t i = 0; i < mu; ++i) v[(cap - 1) * mu + i] = a.coeffs[0](i, j);
        pending.push_back(std::move(v));
    }
    SaturatedModel sm;
    sm.mu = mu;
    while (!pending.empty()) {
        std::vector<Vector> fresh;
        for (auto& v : pending) {
            if (is_zero(v) || (span.cols() && in_span(span, v))) continue;
            basis.push_back(v);
            span = Matrix::from_columns(mu * cap, basis);
            fresh.push_back(std::move(v));
        }
        pending.clear();
        if (fresh.empty()) break;
        ++sm.steps;
        for (const auto& v : fresh) {
            pending.push_back(shift(v));
            pending.push_back(t_mod(v));
        }
    }

    int depth = 0;
    for (const auto& v : basis)
        for (int b = 0; b < cap; ++b)
            if (!is_zero(block(v, mu, b))) depth = std::max(depth, cap - b);
    sm.depth = depth;
    for (const auto& v : span_basis(span.cols() ? span : Matrix(mu * cap, 0)).columns())
        sm.negative.emplace_back(v.begin() + (cap - depth) * mu, v.end());

    const FiniteModel residue(sm, a, 1);
    sm.residue = residue.t();
    bool split_ok = false;
    sm.residue_eigenvalues = rational_roots(charpoly(sm.residue), split_ok);
    if (!split_ok) throw IrrationalExponent("residue of the saturated lattice has a non-rational eigenvalue");
    return sm;
}

std::size_t spectrum_size(const Spectrum& sp) {
    std::size_t n = 0;
    for (const auto& e : sp) n += e.mult;
    return n;
}

Spectrum spectrum_from_values(const std::vector<Rational>& values) {
    std::vector<Rational> v = values;
    std::sort(v.begin(), v.end());
    Spectrum sp;
    for (const auto& x : v) {
        if (!sp.empty() && sp.back().alpha == x) ++sp.back().mult;
        else sp.push_back({x, 1});
    }
    return sp;
}

std::string spectrum_to_string(const Spectrum& sp) {
    std::string s;
    for (const auto& e : sp) {
        if (!s.empty()) s += ", ";
        s += rational_to_string(e.alpha) + "(" + std::to_string(e.mult) + ")";
    }
    return "{" + s + "}";
}

Spectrum spectrum(const SaturatedModel& sm, const BrieskornModel& bm) {
    const int J = sm.depth;
    const int m = J + 1;
    const FiniteModel fm(sm, bm.t_matrix, m);
    const EigenSplit es = split(fm, sm.residue_eigenvalues);
    const Matrix w = lattice_image(fm, sm.mu, 0);
    const Matrix sw = lattice_image(fm, sm.mu, 1);
    auto phi = [&](const Rational& gamma) {
        return static_cast<long>(dim_in_upper(es, w, gamma)) - static_cast<long>(dim_in_upper(es, sw, gamma));
    };

    const long nvars = static_cast<long>(bm.milnor.f.nvars());
    Spectrum sp;
    long prev = phi(es.gammas.front());
    for (std::size_t i = 0; i < es.gammas.size(); ++i) {
        const long next = i + 1 < es.gammas.size() ? phi(es.gammas[i + 1]) : 0;
        const long mult = prev - next;
        prev = next;
        if (mult < 0) throw ConsistencyFailure("negative spectral multiplicity");
        if (mult == 0) continue;
        const Rational alpha = es.gammas[i] - 1;
        if (alpha <= -1 || alpha >= nvars - 1)
            throw ConsistencyFailure("spectral number " + rational_to_string(alpha) + " outside (-1, n)");
        sp.push_back({alpha, static_cast<std::size_t>(mult)});
    }
    if (spectrum_size(sp) != sm.mu)
        throw ConsistencyFailure("spectral multiplicities add up to " + std::to_string(spectrum_size(sp)) +
                                 " instead of mu = " + std::to_string(sm.mu));
    return sp;
}

Spectrum bp_spectrum_oracle(const std::vector<int>& exponents) {
    for (int a : exponents)
        if (a < 2) throw PreconditionError("Brieskorn-Pham exponents must be >= 2");
    std::vector<Rational> values;
    std::vector<int> k(exponents.size(), 1);
    while (true) {
        Rational s = -1;
        for (std::size_t i = 0; i < k.size(); ++i) s += Rational(k[i], exponents[i]);
        s.canonicalize();
        values.push_back(s);
        std::size_t i = 0;
        while (i < k.size() && k[i] == exponents[i] - 1) k[i++] = 1;
        if (i == k.size()) break;
        ++k[i];
    }
    return spectrum_from_values(values);
}

Spectrum qh_spectrum_oracle(const MilnorData& md, const WeightSystem& ws) {
    if (!is_weighted_homogeneous(md.f, ws)) throw PreconditionError("f is not weighted homogeneous");
    long wsum = 0;
    for (long w : ws.weights) wsum += w;
    std::vector<Rational> values;
    for (const auto& m : md.basis) {
        Rational a(weighted_degree(m, ws) + wsum, ws.degree);
        a.canonicalize();
        values.push_back(a - 1);
    }
    return spectrum_from_values(values);
}

Spectrum sebastiani_thom(const Spectrum& a, const Spectrum& b) {
    std::vector<Rational> values;
    for (const auto& x : a)
        for (const auto& y : b)
            for (std::size_t i = 0; i < x.mult * y.mult; ++i) values.push_back(x.alpha + y.alpha + 1);
    return spectrum_from_values(values);
}

MonodromyInfo monodromy_info(const Spectrum& sp) {
    if (sp.empty()) throw PreconditionError("empty spectrum");
    MonodromyInfo mi;
    std::vector<Rational> frac;
    for (const auto& e : sp) {
        Rational f = e.alpha;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), f.get_num_mpz_t(), f.get_den_mpz_t());
        f -= fl;
        for (std::size_t i = 0; i < e.mult; ++i) frac.push_back(f);
        if (e.alpha.get_den() == 1) mi.has_eigenvalue_one = true;
    }
    mi.eigenvalues = spectrum_from_values(frac);
    mi.alpha1 = sp.front().alpha;
    mi.alpha2 = sp.front().mult > 1 || sp.size() == 1 ? sp.front().alpha : sp[1].alpha;
    return mi;
}

C0Structure c0_structure(const SaturatedModel& sm, const BrieskornModel& bm) {
    const Spectrum sp = spectrum(sm, bm);
    C0Structure c0;
    for (const auto& e : sp)
        if (e.alpha.get_den() == 1) c0.dim += e.mult;
    if (c0.dim == 0) return c0;

    const int J = sm.depth;
    const std::size_t mu = sm.mu;
    for (int k = 0;; ++k) {
        const int m = std::max({k + 2, k + J, J + 1});
        if (m + J > bm.t_matrix.order())
            throw TruncationInsufficient("order too short for the eigenvalue-zero piece", m + J);
        const FiniteModel fm(sm, bm.t_matrix, m);
        const EigenSplit es = split(fm, sm.residue_eigenvalues);
        const Rational gamma = k + 1;
        const std::size_t b = es.block_of(gamma);
        const std::size_t dim = b < es.gammas.size() ? es.spaces[b].cols() : 0;
        if (dim != c0.dim) continue;

        c0.shift = k;
        const Matrix& e = es.spaces[b];
        Matrix nt = fm.t();
        for (std::size_t i = 0; i < nt.rows(); ++i) nt(i, i) -= gamma;
        c0.n_image = span_basis(es.block_rows(nt * e, b));

        auto component_of_upper = [&](int from) {
            const Matrix x = lattice_image(fm, mu, from);
            if (x.cols() == 0) return Matrix(c0.dim, 0);
            const Matrix ker = kernel(es.low_rows(x, gamma));
            return span_basis(es.block_rows(x * ker, b));
        };
        c0.h0 = component_of_upper(k);
        c0.shifted_lattice_vanishes = component_of_upper(k + 1).cols() == 0;

        std::vector<Vector> s_cols;
        for (std::size_t j = 0; j < mu; ++j) {
            const Vector img = fm.image_of(k, j);
            Matrix col(img.size(), 1);
            for (std::size_t i = 0; i < img.size(); ++i) col(i, 0) = img[i];
            const Vector comp = es.block_rows(col, b).column(0);
            if (j == 0) c0.d0 = comp;
            else s_cols.push_back(comp);
        }
        c0.s_span = span_basis(Matrix::from_columns(c0.dim, s_cols));
        return c0;
    }
}

C0Membership c0_membership(const C0Structure& c0, MembershipVariant variant) {
    C0Membership res;
    if (c0.dim == 0) {
        res.member = true;
        return res;
    }
    const Matrix hn = hstack(c0.h0, c0.n_image);
    res.direct = span_dim(hn) == span_dim(c0.h0) + span_dim(c0.n_image);
    const Matrix gens = variant == MembershipVariant::C ? hstack(hn, c0.s_span) : hn;
    res.member = is_zero(c0.d0) || (gens.cols() > 0 && in_span(gens, c0.d0));
    return res;
}

}  // namespace lct

namespace lct {

namespace {

bool symmetric(const Spectrum& sp, long n) {
    std::vector<Rational> mirrored;
    for (const auto& e : sp)
        for (std::size_t i = 0; i < e.mult; ++i) mirrored.push_back(Rational(n - 1) - e.alpha);
    return spectrum_from_values(mirrored) == sp;
}

bool same_prefix(const SeriesMatrix& a, const SeriesMatrix& b, int order) {
    for (int k = 0; k <= order; ++k)
        if (!(a.coeffs[k] == b.coeffs[k])) return false;
    return true;
}

struct Attempt {
    BrieskornModel model;
    SaturatedModel saturated;
    Spectrum spectrum;
};

}  // namespace

SpectralAnalysis analyze_spectrum(const MilnorData& md, const EngineOptions& opt) {
    const long n = static_cast<long>(md.f.nvars()) - 1;
    int K = opt.order > 0 ? opt.order : static_cast<int>(n) + 2;
    K = std::max(K, 1);
    auto x_degree = [&](int k) {
        const int def = default_x_degree(md, k);
        if (opt.x_degree <= 0) return def;
        // A user bound applies to the requested order and grows with the default step above it.
        return std::max(def, opt.x_degree + (k - K) * md.f.degree());
    };

    SpectralAnalysis out;
    std::optional<BrieskornModel> cached;  // model at order K from the previous round
    std::string last_failure;
    const int K0 = K;
    while (K + 1 <= opt.max_order) {
        try {
            BrieskornModel lo = cached && cached->t_matrix.order() == K ? std::move(*cached)
                                                                         : t_matrix(md, K, x_degree(K));
            cached.reset();
            BrieskornModel hi = t_matrix(md, K + 1, x_degree(K + 1));
            if (!same_prefix(lo.t_matrix, hi.t_matrix, K)) {
                last_failure = "t-matrix changed when the x-degree bound grew at order " + std::to_string(K);
                out.notes.push_back(last_failure);
                cached = std::move(hi);
                ++K;
                continue;
            }
            SaturatedModel sat = saturate(lo);
            Spectrum sp = spectrum(sat, lo);
            const Spectrum sp_hi = spectrum(saturate(hi), hi);
            if (!(sp == sp_hi)) {
                last_failure = "spectrum changed between orders " + std::to_string(K) + " and " +
                               std::to_string(K + 1);
                out.notes.push_back(last_failure);
                cached = std::move(hi);
                ++K;
                continue;
            }
            if (!symmetric(sp, n)) {
                last_failure = "spectrum not symmetric at order " + std::to_string(K);
                out.notes.push_back(last_failure);
                cached = std::move(hi);
                ++K;
                continue;
            }
            std::optional<C0Structure> c0;
            if (opt.want_c0) {
                try {
                    c0 = c0_structure(sat, lo);
                } catch (const TruncationInsufficient& e) {
                    // Longer series are needed for the eigenvalue-zero piece only.
                    const int need = std::max(e.suggested_order(), K + 1);
                    if (need > opt.max_order) throw;
                    BrieskornModel big = t_matrix(md, need, x_degree(need));
                    if (!same_prefix(big.t_matrix, hi.t_matrix, K + 1))
                        throw TruncationInsufficient("t-matrix unstable at order " + std::to_string(need),
                                                     need + 1);
                    SaturatedModel big_sat = saturate(big);
                    if (!(spectrum(big_sat, big) == sp))
                        throw TruncationInsufficient("spectrum unstable at order " + std::to_string(need),
                                                     need + 1);
                    c0 = c0_structure(big_sat, big);
                    out.notes.push_back("eigenvalue-zero piece computed at order " + std::to_string(need));
                }
            }
            out.model = std::move(lo);
            out.saturated = std::move(sat);
            out.spectrum = std::move(sp);
            out.c0 = std::move(c0);
            out.order = K;
            out.x_degree = out.model.x_degree_bound;
            if (K != K0) out.notes.push_back("order raised from " + std::to_string(K0) + " to " + std::to_string(K));
            return out;
        } catch (const TruncationInsufficient& e) {
            last_failure = e.what();
            const int next = std::max(K + 1, e.suggested_order());
            cached.reset();
            if (next + 1 > opt.max_order) break;
            K = next;
        } catch (const ConsistencyFailure& e) {
            // Inconsistent truncated data (count, range, lattice closure) is a truncation symptom first.
            last_failure = e.what();
            cached.reset();
            ++K;
        }
    }
    throw TruncationInsufficient("no stable spectrum up to order " + std::to_string(opt.max_order) + ": " +
                                     last_failure,
                                 opt.max_order + 1);
}

}  // namespace lct
