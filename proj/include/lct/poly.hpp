#pragma once

// Sparse multivariate polynomials over the rationals.

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace lct {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr std::size_t kMaxVars = 8;

/// Exponent vector of a monomial x_0^e_0 ... x_n^e_n.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};

    static Monomial one() { return {}; }
    static Monomial variable(std::size_t i);

    int degree() const {
        int d = 0;
        for (auto v : e) d += v;
        return d;
    }
    bool is_one() const { return degree() == 0; }
    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] > other.e[i]) return false;
        return true;
    }
    Monomial operator*(const Monomial& other) const;
    /// this / other; requires other.divides(*this).
    Monomial operator/(const Monomial& other) const;
    Monomial lcm(const Monomial& other) const;

    /// Packs the exponents into 64 bits (8 bits per variable); requires every exponent < 256.
    std::uint64_t pack() const {
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < kMaxVars; ++i) k |= std::uint64_t(e[i]) << (8 * i);
        return k;
    }

    // Plain lexicographic comparison on exponents; storage order only.
    auto operator<=>(const Monomial&) const = default;
};

enum class OrderKind {
    GlobalDegRevLex,  // dp: a well-order, larger degree is larger
    LocalDegRevLex,   // ds: negative degree order, 1 is the largest monomial
};

/// A monomial order on monomials in `nvars` variables.
class MonomialOrder {
public:
    explicit MonomialOrder(OrderKind kind = OrderKind::LocalDegRevLex) : kind_(kind) {}

    OrderKind kind() const { return kind_; }
    bool is_local() const { return kind_ == OrderKind::LocalDegRevLex; }

    /// Three-way comparison in the order; `greater` means a is the larger monomial.
    std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

private:
    OrderKind kind_;
};

/// Position-over-term extension of a monomial order to free modules.
/// A smaller position index is larger.
struct ModuleOrder {
    MonomialOrder base{OrderKind::GlobalDegRevLex};
    std::strong_ordering compare(std::size_t pa, const Monomial& a, std::size_t pb,
                                 const Monomial& b) const {
        if (pa != pb) return pa < pb ? std::strong_ordering::greater : std::strong_ordering::less;
        return base.compare(a, b);
    }
};

class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars);
    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial monomial(std::size_t nvars, const Monomial& m, const Rational& c = 1);
    static Polynomial variable(std::size_t nvars, std::size_t i);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const;
    Rational constant_term() const { return coefficient(Monomial::one()); }
    /// Adds c*m; drops the term if it cancels.
    void add_term(const Monomial& m, const Rational& c);

    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    /// Minimal total degree of a term (the m-adic order); nullopt-like max() for zero.
    int m_adic_order() const;
    static constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

    /// Drops every term of total degree >= bound.
    Polynomial truncated(int bound) const;
    Polynomial derivative(std::size_t i) const;
    Polynomial operator-() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    Polynomial times_monomial(const Monomial& m, const Rational& c) const;

    /// Leading monomial/coefficient in the given order. Requires a nonzero polynomial.
    Monomial leading_monomial(const MonomialOrder& order) const;
    Rational leading_coefficient(const MonomialOrder& order) const;

    /// Canonical text: terms in decreasing degrevlex order, rationals as p/q.
    std::string to_string(const std::vector<std::string>& vars) const;

    bool operator==(const Polynomial& o) const = default;

private:
    std::size_t nvars_ = 0;
    TermMap terms_;
};

enum class RingOp { Add, Sub, Mul };

/// Exact +,-,* with variable-count checking.
Polynomial ring_arithmetic(const Polynomial& a, const Polynomial& b, RingOp op);

/// Formal partial derivative with respect to x_i.
Polynomial partial_derivative(const Polynomial& p, std::size_t i);

/// Minimal total degree of a term, Polynomial::kInfiniteOrder for zero.
int m_adic_order(const Polynomial& p);

/// Parses `text` over the named variables: integer and rational literals, + - * / ^, parentheses.
/// Division is only allowed by nonzero constants. Throws ParseError.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars);

/// Splits "x,y,z" into names, validating identifiers.
std::vector<std::string> parse_variable_list(std::string_view text);

std::string rational_to_string(const Rational& q);
Rational parse_rational(std::string_view text);

}  // namespace lct
