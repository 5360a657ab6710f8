#pragma once

// Decomposition g = sum c_j m_j + sum_l a_l * d_l f in Q[x]/m^D, where the m_j are the standard
// monomials of the Milnor algebra. Internal to the t-matrix computation.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lct/linalg.hpp"
#include "lct/local_algebra.hpp"

namespace lct::detail {

class TruncatedReducer {
public:
    /// Builds a standard basis of J_f + m^precision with cofactors in terms of the partials of f.
    TruncatedReducer(const MilnorData& md, int precision);

    struct Result {
        Vector c;           // coordinates on md.basis
        Polynomial next;    // sum_l d_l a_l, valid modulo m^(precision_in - rho - 1)
        int next_precision;
    };

    /// g is taken modulo m^precision_in (precision_in <= precision()).
    Result reduce(const Polynomial& g, int precision_in) const;

    int precision() const { return precision_; }
    /// Minimal order of the partial derivatives of f.
    int rho() const { return rho_; }
    std::size_t monomial_count() const { return monomials_.size(); }
    std::size_t basis_size() const { return elements_.size(); }

private:
    struct Element {
        std::vector<std::uint32_t> idx;  // term indices, idx[0] is the leading monomial
        std::vector<Rational> coef;      // coef[0] == 1
        int generator = -1;              // index l when the element is d_l f itself
        std::vector<std::vector<Rational>> cofactors;  // dense, only for derived elements
    };

    long lookup(std::uint64_t key) const {
        auto it = index_.find(key);
        return it == index_.end() ? -1 : static_cast<long>(it->second);
    }
    std::vector<Rational> to_dense(const Polynomial& p, int bound) const;
    void build_standard_basis();

    std::size_t nvars_;
    std::size_t mu_ = 0;
    int precision_;
    int rho_;
    int cofactor_precision_;
    std::vector<Monomial> monomials_;
    std::vector<std::uint64_t> packs_;
    std::vector<int> degrees_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
    std::vector<int> basis_pos_;
    std::vector<int> reducer_;
    std::vector<Element> elements_;
};

}  // namespace lct::detail
