#pragma once

// Shared test helpers: seeded random generators and the corpus of isolated singularities.

#include <random>
#include <string>
#include <vector>

#include "lct/linalg.hpp"
#include "lct/poly.hpp"

namespace lct::test {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    Rational rational(int span = 5) {
        Rational q(integer(-span, span), integer(1, span));
        q.canonicalize();
        return q;
    }
    Rational nonzero_rational(int span = 5) {
        for (;;) {
            Rational q = rational(span);
            if (sgn(q) != 0) return q;
        }
    }

    Monomial monomial(std::size_t nvars, int max_degree) {
        Monomial m;
        int budget = integer(0, max_degree);
        for (std::size_t i = 0; i < nvars && budget > 0; ++i) {
            const int e = integer(0, budget);
            m.e[i] = static_cast<std::uint16_t>(e);
            budget -= e;
        }
        // Shuffle so later variables are not starved.
        for (std::size_t i = nvars; i > 1; --i) std::swap(m.e[i - 1], m.e[integer(0, static_cast<int>(i) - 1)]);
        return m;
    }

    Polynomial polynomial(std::size_t nvars, int max_terms, int max_degree) {
        Polynomial p(nvars);
        const int terms = integer(0, max_terms);
        for (int t = 0; t < terms; ++t) p += Polynomial::monomial(nvars, monomial(nvars, max_degree), rational());
        return p;
    }

    Matrix matrix(std::size_t rows, std::size_t cols, int span = 3) {
        Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = integer(-span, span);
        return m;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

struct CorpusEntry {
    std::string name;
    std::string expr;
    std::vector<std::string> vars;
};

inline std::vector<std::string> xy() { return {"x", "y"}; }
inline std::vector<std::string> xyz() { return {"x", "y", "z"}; }

/// Isolated singularities in two and three variables: ADE, Brieskorn-Pham, T-family and
/// suspensions, semi-quasihomogeneous deformations and a quasihomogeneous germ in hidden coordinates.
inline std::vector<CorpusEntry> corpus() {
    return {
        {"A1", "x^2+y^2+z^2", xyz()},
        {"A2", "x^3+y^2+z^2", xyz()},
        {"A3", "x^4+y^2+z^2", xyz()},
        {"A4 curve", "x^5+y^2", xy()},
        {"A4 hidden weights", "(x+y^2)^2+y^5", xy()},
        {"D4", "x^2*y+y^3+z^2", xyz()},
        {"D5", "x^2*y+y^4+z^2", xyz()},
        {"D4 curve", "x^2*y+y^3", xy()},
        {"E6", "x^3+y^4+z^2", xyz()},
        {"E7", "x^3+x*y^3+z^2", xyz()},
        {"E8", "x^3+y^5+z^2", xyz()},
        {"BP 3,3", "x^3+y^3", xy()},
        {"BP 4,5", "x^4+y^5", xy()},
        {"BP 3,3,3", "x^3+y^3+z^3", xyz()},
        {"BP 3,4,5", "x^3+y^4+z^5", xyz()},
        {"X9 homogeneous", "x^4+x^2*y^2+y^4", xy()},
        {"T 2,5,5 curve", "x^5+x^2*y^2+y^5", xy()},
        {"T 2,5,5 + z^2", "x^5+x^2*y^2+y^5+z^2", xyz()},
        {"T 2,5,5 + z^3", "x^5+x^2*y^2+y^5+z^3", xyz()},
        {"T 2,5,5 + z^5", "x^5+x^2*y^2+y^5+z^5", xyz()},
        {"T 3,3,4", "x^3+y^3+z^4+x*y*z", xyz()},
        {"T 3,4,4", "x^3+y^4+z^4+x*y*z", xyz()},
        {"T 4,4,4", "x^4+y^4+z^4+x*y*z", xyz()},
        {"W12 deformation", "x^4+y^5+x^2*y^3", xy()},
        {"E12 deformation", "x^3+y^7+x*y^5", xy()},
    };
}

}  // namespace lct::test
