#include "lct/linalg.hpp"

#include <algorithm>

#include "lct/errors.hpp"

namespace lct {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw PreconditionError("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vector Matrix::column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<Vector> Matrix::columns() const {
    std::vector<Vector> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Rational Matrix::trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(i, k);
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0) r(i, j) += x * b(k, j);
        }
    return r;
}

Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) throw PreconditionError("matrix-vector shape mismatch");
    Vector r(a.rows_);
    for (std::size_t k = 0; k < a.cols_; ++k) {
        if (sgn(v[k]) == 0) continue;
        for (std::size_t i = 0; i < a.rows_; ++i)
            if (sgn(a(i, k)) != 0) r[i] += a(i, k) * v[k];
    }
    return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
    return r;
}

Matrix operator*(const Rational& c, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.a_) x *= c;
    return r;
}

std::vector<std::size_t> rref_in_place(Matrix& m) {
    std::vector<std::size_t> pivots;
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t row = 0;
    Rational f;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        std::size_t p = row;
        while (p < R && sgn(m(p, col)) == 0) ++p;
        if (p == R) continue;
        if (p != row)
            for (std::size_t j = col; j < C; ++j) std::swap(m(p, j), m(row, j));
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < C; ++j)
            if (sgn(m(row, j)) != 0) m(row, j) *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == row || sgn(m(i, col)) == 0) continue;
            f = m(i, col);
            for (std::size_t j = col; j < C; ++j)
                if (sgn(m(row, j)) != 0) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(Matrix m) { return rref_in_place(m).size(); }

Matrix kernel(const Matrix& m) {
    Matrix r = m;
    const auto pivots = rref_in_place(r);
    const std::size_t C = m.cols();
    std::vector<bool> is_pivot(C, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < C; ++free) {
        if (is_pivot[free]) continue;
        Vector v(C);
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
        basis.push_back(std::move(v));
    }
    return Matrix::from_columns(C, basis);
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const auto pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    Vector x(a.cols());
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, a.cols());
    return x;
}

Matrix inverse(const Matrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw PreconditionError("inverse of non-square matrix");
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const auto pivots = rref_in_place(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw PreconditionError("singular matrix");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

Matrix span_basis(const Matrix& gens) {
    Matrix r = gens;
    const auto pivots = rref_in_place(r);
    std::vector<Vector> cols;
    for (auto p : pivots) cols.push_back(gens.column(p));
    return Matrix::from_columns(gens.rows(), cols);
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    const std::size_t rows = a.cols() ? a.rows() : b.rows();
    if (a.cols() && b.cols() && a.rows() != b.rows()) throw PreconditionError("hstack shape mismatch");
    Matrix r(rows, a.cols() + b.cols());
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

std::size_t span_dim(const Matrix& gens) { return gens.cols() == 0 ? 0 : rank(gens); }

Matrix intersect(const Matrix& a, const Matrix& b) {
    const std::size_t d = a.cols() ? a.rows() : b.rows();
    if (a.cols() == 0 || b.cols() == 0) return Matrix(d, 0);
    const Matrix ab = span_basis(a), bb = span_basis(b);
    // x in both iff x = A u = B v; kernel of [A | -B].
    Matrix aug(d, ab.cols() + bb.cols());
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < ab.cols(); ++j) aug(i, j) = ab(i, j);
        for (std::size_t j = 0; j < bb.cols(); ++j) aug(i, ab.cols() + j) = -bb(i, j);
    }
    const Matrix k = kernel(aug);
    std::vector<Vector> cols;
    for (std::size_t c = 0; c < k.cols(); ++c) {
        Vector x(d);
        for (std::size_t j = 0; j < ab.cols(); ++j) {
            if (sgn(k(j, c)) == 0) continue;
            for (std::size_t i = 0; i < d; ++i) x[i] += ab(i, j) * k(j, c);
        }
        cols.push_back(std::move(x));
    }
    return Matrix::from_columns(d, cols);
}

bool in_span(const Matrix& gens, const Vector& v) {
    if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; })) return true;
    if (gens.cols() == 0) return false;
    return solve(gens, v).has_value();
}

Matrix generalized_eigenspace(const Matrix& m, const Rational& lambda) {
    const std::size_t n = m.rows();
    Matrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
    Matrix current = kernel(shifted);
    for (;;) {
        if (current.cols() == 0) return current;
        // next = { x : (m - lambda) x in span(current) }
        Matrix aug = hstack(shifted, current);
        const Matrix k = kernel(aug);
        std::vector<Vector> cols;
        for (std::size_t c = 0; c < k.cols(); ++c) {
            Vector x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = k(i, c);
            cols.push_back(std::move(x));
        }
        Matrix next = span_basis(Matrix::from_columns(n, cols));
        if (next.cols() == current.cols()) return current;
        current = std::move(next);
    }
}

void trim(UPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int upoly_degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly upoly_mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

UPoly upoly_sub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

UPoly upoly_derivative(const UPoly& p) {
    if (p.size() <= 1) return {};
    UPoly r(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<long>(i);
    trim(r);
    return r;
}

UPoly upoly_divmod(const UPoly& a, const UPoly& b, UPoly& rem) {
    if (b.empty()) throw PreconditionError("polynomial division by zero");
    rem = a;
    trim(rem);
    if (rem.size() < b.size()) return {};
    UPoly q(rem.size() - b.size() + 1);
    const Rational lead_inv = 1 / b.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        const Rational c = rem[k + b.size() - 1] * lead_inv;
        q[k] = c;
        if (sgn(c) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] -= c * b[j];
    }
    trim(rem);
    trim(q);
    return q;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r;
        upoly_divmod(a, b, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Rational inv = 1 / a.back();
        for (auto& c : a) c *= inv;
    }
    return a;
}

Rational upoly_eval(const UPoly& p, const Rational& x) {
    Rational r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

Matrix upoly_eval(const UPoly& p, const Matrix& m) {
    const std::size_t n = m.rows();
    Matrix r(n, n);
    for (std::size_t i = p.size(); i-- > 0;) {
        r = r * m;
        for (std::size_t d = 0; d < n; ++d) r(d, d) += p[i];
    }
    return r;
}

UPoly charpoly(const Matrix& input) {
    const std::size_t n = input.rows();
    if (input.cols() != n) throw PreconditionError("charpoly of non-square matrix");
    Matrix h = input;
    // Similarity reduction to upper Hessenberg form.
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t i = m;
        while (i < n && sgn(h(i, m - 1)) == 0) ++i;
        if (i == n) continue;
        if (i != m) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(m, j));
            for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, m));
        }
        const Rational inv = 1 / h(m, m - 1);
        for (std::size_t j = m + 1; j < n; ++j) {
            if (sgn(h(j, m - 1)) == 0) continue;
            const Rational u = h(j, m - 1) * inv;
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(h(m, k)) != 0) h(j, k) -= u * h(m, k);
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(h(k, j)) != 0) h(k, m) += u * h(k, j);
        }
    }
    // p_k = characteristic polynomial of the leading k x k block.
    std::vector<UPoly> p(n + 1);
    p[0] = {Rational(1)};
    for (std::size_t k = 1; k <= n; ++k) {
        p[k] = upoly_mul({-h(k - 1, k - 1), Rational(1)}, p[k - 1]);
        Rational t = 1;
        for (std::size_t i = k - 1; i-- > 0;) {
            t *= h(i + 1, i);
            if (sgn(t) == 0) break;
            const Rational c = h(i, k - 1) * t;
            if (sgn(c) == 0) continue;
            UPoly term = p[i];
            for (auto& x : term) x *= c;
            p[k] = upoly_sub(p[k], term);
        }
    }
    return p[n];
}

namespace {

// Scales p to a primitive integer polynomial (as rationals) to keep Sturm sequences small.
void make_primitive(UPoly& p) {
    Integer l = 1, g = 0;
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    for (auto& c : p) {
        c *= l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    }
    if (g != 0)
        for (auto& c : p) c /= g;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
    std::vector<UPoly> seq{p, upoly_derivative(p)};
    make_primitive(seq[1]);
    while (upoly_degree(seq.back()) > 0) {
        UPoly rem;
        upoly_divmod(seq[seq.size() - 2], seq.back(), rem);
        if (rem.empty()) break;
        for (auto& c : rem) c = -c;
        make_primitive(rem);
        seq.push_back(std::move(rem));
    }
    return seq;
}

int sign_changes(const std::vector<UPoly>& seq, const Rational& x) {
    int changes = 0, last = 0;
    for (const auto& q : seq) {
        const int s = sgn(upoly_eval(q, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// The rational with the smallest denominator in [a, b], a <= b.
Rational simplest_between(Rational a, Rational b) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    if (Rational(fl) == a) return a;
    if (Rational(fl + 1) <= b) return Rational(fl + 1);
    // a and b share the integer part: recurse on reciprocals of the fractional parts.
    const Rational inner = simplest_between(1 / (b - fl), 1 / (a - fl));
    Rational r = Rational(fl) + 1 / inner;
    r.canonicalize();
    return r;
}

// Rational roots of a squarefree polynomial, by exact real root isolation.
void isolate(const UPoly& p, const std::vector<UPoly>& seq, Rational a, Rational b, int count, int depth,
             std::vector<Rational>& out) {
    if (count == 0 || depth > 400) return;
    if (count == 1) {
        // Single root in (a, b]; shrink until the simplest rational in the interval is the root.
        const int sb = sgn(upoly_eval(p, b));
        if (sb == 0) {
            out.push_back(b);
            return;
        }
        for (int it = 0; it < 400; ++it) {
            const Rational c = simplest_between(a, b);
            if (c != a && sgn(upoly_eval(p, c)) == 0) {
                out.push_back(c);
                return;
            }
            Rational mid = (a + b) / 2;
            mid.canonicalize();
            const int sm = sgn(upoly_eval(p, mid));
            if (sm == 0) {
                out.push_back(mid);
                return;
            }
            if (sm == sb) b = mid;
            else a = mid;
        }
        return;  // no rational root found: reported through fully_split
    }
    Rational mid = (a + b) / 2;
    mid.canonicalize();
    const int vm = sign_changes(seq, mid);
    const int left = sign_changes(seq, a) - vm;
    isolate(p, seq, a, mid, left, depth + 1, out);
    isolate(p, seq, mid, b, count - left, depth + 1, out);
}

}  // namespace

std::vector<RationalRoot> rational_roots(const UPoly& input, bool& fully_split) {
    UPoly p = input;
    trim(p);
    if (p.empty()) throw PreconditionError("roots of the zero polynomial");
    const int deg = upoly_degree(p);
    std::vector<RationalRoot> out;
    if (deg == 0) {
        fully_split = true;
        return out;
    }
    UPoly g = upoly_gcd(p, upoly_derivative(p)), rem;
    UPoly sf = upoly_divmod(p, g, rem);
    make_primitive(sf);

    std::vector<Rational> candidates;
    if (upoly_degree(sf) >= 1) {
        Rational bound = 0;
        for (std::size_t i = 0; i + 1 < sf.size(); ++i) {
            Rational r = abs(sf[i] / sf.back());
            if (r > bound) bound = r;
        }
        bound += 1;
        const auto seq = sturm_sequence(sf);
        const int total = sign_changes(seq, -bound) - sign_changes(seq, bound);
        isolate(sf, seq, -bound, bound, total, 0, candidates);
    }
    std::sort(candidates.begin(), candidates.end());
    int total = 0;
    for (const auto& r : candidates) {
        int mult = 0;
        const UPoly lin = {-r, Rational(1)};
        for (;;) {
            UPoly rest;
            UPoly q = upoly_divmod(p, lin, rest);
            if (!rest.empty()) break;
            p = std::move(q);
            ++mult;
        }
        if (mult > 0) {
            out.push_back({r, mult});
            total += mult;
        }
    }
    fully_split = (total == deg);
    return out;
}

}  // namespace lct
