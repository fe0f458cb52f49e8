#pragma once

// Fuzzy cardinality, Kosko subsethood S(A,B) = M(A n B) / M(A) with minimum
// as the fuzzy intersection, and the induced specificity of a transformed
// possibility distribution: the degree to which it is contained in the
// optimal transform of the same probability distribution.

#include "pptrans/distribution.hpp"
#include "pptrans/transforms.hpp"

namespace pptrans {

/// Specificity degree in (0, 1]; 1 means the measured distribution is fuzzily
/// contained in the optimal transform (maximally informative).
struct SpecificityValue {
    double value;
};

/// Sigma-count cardinality: sum of membership values.
double fuzzy_cardinality(const PossibilityDistribution& pi);

/// Kosko subsethood of a in b. Requires equal lengths and M(a) > 0.
double subsethood(const PossibilityDistribution& a, const PossibilityDistribution& b);

/// S(pi_T, pi_O) where pi_T = apply_transform(p, spec) and pi_O is the
/// optimal transform of the same p. The reference pi_O is recomputed
/// internally so callers cannot pair mismatched distributions.
SpecificityValue specificity_of_transform(const ProbabilityDistribution& p, const TransformSpec& spec);

}  // namespace pptrans
