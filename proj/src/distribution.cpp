#include "pptrans/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pptrans {

namespace {

double checked_sum(const std::vector<double>& masses) {
    double sum = 0.0;
    for (double m : masses) {
        if (!std::isfinite(m)) throw std::invalid_argument("probability mass must be finite");
        if (m < 0.0) throw std::invalid_argument("probability mass must be nonnegative, got " + std::to_string(m));
        if (m > 1.0 + kProbabilitySumTolerance)
            throw std::invalid_argument("probability mass must not exceed 1, got " + std::to_string(m));
        sum += m;
    }
    return sum;
}

}  // namespace

ProbabilityDistribution::ProbabilityDistribution(std::vector<double> masses, bool renormalize)
    : masses_(std::move(masses)) {
    if (masses_.empty()) throw std::invalid_argument("probability distribution must have at least one outcome");
    double sum = checked_sum(masses_);
    if (std::abs(sum - 1.0) <= kProbabilitySumTolerance) return;
    if (renormalize && std::abs(sum - 1.0) <= kRenormalizeWindow) {
        for (double& m : masses_) m /= sum;
        return;
    }
    throw std::invalid_argument("probability masses must sum to 1, got " + std::to_string(sum));
}

PossibilityDistribution::PossibilityDistribution(std::vector<double> values, bool normalized)
    : values_(std::move(values)), normalized_(normalized) {
    if (values_.empty()) throw std::invalid_argument("possibility distribution must have at least one outcome");
    double max = 0.0;
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("possibility value must be finite");
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("possibility value must lie in [0,1], got " + std::to_string(v));
        max = std::max(max, v);
    }
    if (normalized_ && std::abs(max - 1.0) > kNormalizedMaxTolerance)
        throw std::invalid_argument("normalized possibility distribution must have max value 1, got max " +
                                    std::to_string(max));
}

OutcomeSubset::OutcomeSubset(std::vector<std::size_t> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
        throw std::invalid_argument("outcome subset must not contain duplicate indices");
}

double possibility_measure(const PossibilityDistribution& pi, const OutcomeSubset& a) {
    if (a.empty()) throw std::invalid_argument("possibility measure of the empty set is undefined");
    double max = 0.0;
    for (std::size_t i : a.members()) {
        if (i >= pi.size()) throw std::invalid_argument("subset index out of range");
        max = std::max(max, pi[i]);
    }
    return max;
}

double probability_measure(const ProbabilityDistribution& p, const OutcomeSubset& a) {
    double sum = 0.0;
    for (std::size_t i : a.members()) {
        if (i >= p.size()) throw std::invalid_argument("subset index out of range");
        sum += p[i];
    }
    return sum;
}

}  // namespace pptrans
