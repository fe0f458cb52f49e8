#include "pptrans/specificity.hpp"

#include <algorithm>

namespace pptrans {

double fuzzy_cardinality(const PossibilityDistribution& pi) {
    double sum = 0.0;
    for (double v : pi.values()) sum += v;
    return sum;
}

double subsethood(const PossibilityDistribution& a, const PossibilityDistribution& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("subsethood requires distributions over the same outcome set");
    const double card = fuzzy_cardinality(a);
    if (card <= 0.0) throw std::invalid_argument("subsethood is undefined for a fuzzy set of zero cardinality");
    double intersection = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) intersection += std::min(a[i], b[i]);
    return intersection / card;
}

SpecificityValue specificity_of_transform(const ProbabilityDistribution& p, const TransformSpec& spec) {
    const PossibilityDistribution pi_t = apply_transform(p, spec);
    const PossibilityDistribution pi_o = transform_optimal(p);
    return SpecificityValue{subsethood(pi_t, pi_o)};
}

}  // namespace pptrans
