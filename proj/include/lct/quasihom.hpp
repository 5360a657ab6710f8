#pragma once

// Weights visible in the given coordinates, weighted Milnor-algebra dimensions and the
// Holland-Mond decision for weighted homogeneous germs.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lct/local_algebra.hpp"

namespace lct {

struct WeightSystem {
    std::vector<long> weights;  // one positive weight per variable
    long degree = 0;            // r

    bool operator==(const WeightSystem&) const = default;
};

/// Positive integer weights with <w, a> = r on every exponent a of f, or nullopt. When the
/// solution cone has dimension > 1 the minimal r wins, then the lexicographically smallest w.
std::optional<WeightSystem> detect_weights(const Polynomial& f);

/// True iff every exponent of f has weighted degree ws.degree.
bool is_weighted_homogeneous(const Polynomial& f, const WeightSystem& ws);

long weighted_degree(const Monomial& m, const WeightSystem& ws);

using GradedDims = std::map<long, std::size_t>;

/// dim (O/J_f)_d for every d with a nonzero piece. Throws PreconditionError if f is not
/// weighted homogeneous for ws.
GradedDims graded_dims(const MilnorData& md, const WeightSystem& ws);

struct HollandMondWitness {
    int i;
    long degree;
    std::size_t dim;
};

struct HollandMondResult {
    bool holds = false;
    /// Every i in [1, n-1] whose graded piece is nonzero.
    std::vector<HollandMondWitness> offending;
    /// Every i that was checked, offending or not.
    std::vector<HollandMondWitness> checked;
    std::string convention;
};

/// With n+1 variables: holds iff dim (O/J_f)_{i r - sum w} = 0 for 1 <= i <= n-1.
HollandMondResult holland_mond_verdict(const Polynomial& f, const MilnorData& md, const WeightSystem& ws);

}  // namespace lct
