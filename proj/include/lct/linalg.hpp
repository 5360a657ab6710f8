#pragma once

// Dense exact linear algebra over the rationals, and the univariate polynomial helpers
// needed for characteristic polynomials and their rational roots.

#include <cstddef>
#include <optional>
#include <vector>

#include "lct/poly.hpp"

namespace lct {

using Vector = std::vector<Rational>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vector column(std::size_t j) const;
    std::vector<Vector> columns() const;
    Matrix transpose() const;
    bool is_zero() const;
    Rational trace() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Vector operator*(const Matrix& a, const Vector& v);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Rational& c, const Matrix& a);
    bool operator==(const Matrix& o) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref_in_place(Matrix& m);
std::size_t rank(Matrix m);
/// Columns form a basis of the right kernel.
Matrix kernel(const Matrix& m);
std::optional<Vector> solve(const Matrix& a, const Vector& b);
/// Throws PreconditionError if singular.
Matrix inverse(const Matrix& m);

// Subspaces of Q^d are passed around as matrices whose columns span them.

/// A column basis of the span (linearly independent columns).
Matrix span_basis(const Matrix& gens);
Matrix hstack(const Matrix& a, const Matrix& b);
std::size_t span_dim(const Matrix& gens);
Matrix intersect(const Matrix& a, const Matrix& b);
bool in_span(const Matrix& gens, const Vector& v);
/// Basis of the generalized eigenspace ker (m - lambda)^infinity.
Matrix generalized_eigenspace(const Matrix& m, const Rational& lambda);

/// Dense univariate polynomial, coefficient i belongs to x^i; trimmed (no trailing zeros).
using UPoly = std::vector<Rational>;

void trim(UPoly& p);
int upoly_degree(const UPoly& p);
UPoly upoly_mul(const UPoly& a, const UPoly& b);
UPoly upoly_sub(const UPoly& a, const UPoly& b);
UPoly upoly_derivative(const UPoly& p);
/// Returns quotient, sets remainder.
UPoly upoly_divmod(const UPoly& a, const UPoly& b, UPoly& rem);
UPoly upoly_gcd(UPoly a, UPoly b);
Rational upoly_eval(const UPoly& p, const Rational& x);
Matrix upoly_eval(const UPoly& p, const Matrix& m);

/// Characteristic polynomial det(x - m), via Hessenberg reduction.
UPoly charpoly(const Matrix& m);

struct RationalRoot {
    Rational value;
    int multiplicity;
};

/// All rational roots with multiplicity, in increasing order. `fully_split` reports whether
/// the multiplicities add up to the degree.
std::vector<RationalRoot> rational_roots(const UPoly& p, bool& fully_split);

}  // namespace lct
