#pragma once

// The Brieskorn lattice as a module over series in s = 1/d_t: the t-action matrix, its saturation,
// the V-filtration spectrum, monodromy data and the eigenvalue-zero graded piece used by the
// comparison-theorem obstructions.

#include <optional>
#include <string>
#include <vector>

#include "lct/linalg.hpp"
#include "lct/local_algebra.hpp"
#include "lct/quasihom.hpp"

namespace lct {

/// A(s) = sum_k coeffs[k] s^k, truncated after s^order().
struct SeriesMatrix {
    std::vector<Matrix> coeffs;
    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Basis e_j = [m_j dx] of H''; column j of A(s) is t * e_j.
struct BrieskornModel {
    MilnorData milnor;
    SeriesMatrix t_matrix;
    int x_degree_bound = 0;
};

/// Computes A_0..A_K working modulo m^Dx. Throws PreconditionError for K < 1 or Dx too small to
/// reach s^K.
BrieskornModel t_matrix(const MilnorData& md, int K, int Dx);

/// Default x-degree bound for a given order K.
int default_x_degree(const MilnorData& md, int K);

/// The smallest lattice L containing H'' and stable under T = d_t t.
/// L = H'' + lift(negative), where `negative` spans L/H'' inside s^-depth H''/H''.
struct SaturatedModel {
    std::size_t mu = 0;
    int depth = 0;  // J: L is contained in s^-J H''
    /// Vectors of length mu*depth; block b holds the coefficient of s^(b - depth).
    std::vector<Vector> negative;
    int steps = 0;
    Matrix residue;  // T on L/sL
    std::vector<RationalRoot> residue_eigenvalues;
};

/// Throws TruncationInsufficient when the t-matrix is too short, IrrationalExponent when the
/// residue has a non-rational eigenvalue.
SaturatedModel saturate(const BrieskornModel& bm);

struct SpectrumEntry {
    Rational alpha;
    std::size_t mult = 0;
    bool operator==(const SpectrumEntry&) const = default;
};
/// Sorted by alpha, multiplicities positive.
using Spectrum = std::vector<SpectrumEntry>;

std::size_t spectrum_size(const Spectrum& sp);
/// Builds a sorted spectrum from a list of values.
Spectrum spectrum_from_values(const std::vector<Rational>& values);
std::string spectrum_to_string(const Spectrum& sp);

/// Needs an order K >= 2J+1. Throws TruncationInsufficient otherwise and ConsistencyFailure if
/// the multiplicities do not add up to mu.
Spectrum spectrum(const SaturatedModel& sm, const BrieskornModel& bm);

/// {sum k_i/a_i - 1 : 1 <= k_i <= a_i - 1} for sum x_i^a_i.
Spectrum bp_spectrum_oracle(const std::vector<int>& exponents);
/// {<w, a+1>/r - 1 : x^a in B} for weighted homogeneous f.
Spectrum qh_spectrum_oracle(const MilnorData& md, const WeightSystem& ws);
/// The spectrum of f + g in disjoint variables: {a + b + 1}.
Spectrum sebastiani_thom(const Spectrum& a, const Spectrum& b);

struct MonodromyInfo {
    /// alpha mod 1 in [0, 1) with multiplicity; the eigenvalue is exp(-2 pi i alpha).
    Spectrum eigenvalues;
    bool has_eigenvalue_one = false;
    Rational alpha1, alpha2;
};

MonodromyInfo monodromy_info(const Spectrum& sp);

/// Coordinates in a basis of C^0, the generalized eigenvalue-zero part of t d_t on gr_V.
/// Subspaces are given by spanning columns.
struct C0Structure {
    std::size_t dim = 0;
    int shift = 0;      // C^0 is realized as gr_V^shift through s^shift
    Matrix n_image;     // N(C^0)
    Matrix h0;          // image of H'' cap V^0
    Matrix s_span;      // components of [m_j dx], m_j != 1
    Vector d0;          // component of [dx]
    /// s H'' cap V^0 maps to zero in C^0.
    bool shifted_lattice_vanishes = true;
};

/// Throws TruncationInsufficient with a suggested order when the model is too short.
C0Structure c0_structure(const SaturatedModel& sm, const BrieskornModel& bm);

enum class MembershipVariant { C, D };

struct C0Membership {
    bool member = false;
    /// H_0 cap N(C^0) = 0.
    bool direct = true;
};

/// Variant D: d0 in H_0 + N(C^0). Variant C: d0 in H_0 + N(C^0) + S.
C0Membership c0_membership(const C0Structure& c0, MembershipVariant variant);

struct EngineOptions {
    int order = 0;         // 0 picks n + 2
    int x_degree = 0;      // 0 derives it from the order
    int max_order = 24;
    bool want_c0 = false;
};

/// Spectrum with its stability certificate: the computation is repeated one order higher and
/// must agree, both in the A_k prefix and in the spectrum.
struct SpectralAnalysis {
    BrieskornModel model;
    SaturatedModel saturated;
    Spectrum spectrum;
    std::optional<C0Structure> c0;
    int order = 0;
    int x_degree = 0;
    std::vector<std::string> notes;
};

SpectralAnalysis analyze_spectrum(const MilnorData& md, const EngineOptions& opt = {});

}  // namespace lct
