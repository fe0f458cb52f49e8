#pragma once

// Core value types for discrete probability and possibility distributions,
// plus the induced set measures. Outcomes are anonymous 0-based indices;
// labels are an IO-layer concern.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pptrans {

// Thrown when an input document cannot be read at all (malformed syntax,
// non-numeric content). Validation failures of well-formed input use
// std::invalid_argument instead; the CLI maps the two to distinct exit codes.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kProbabilitySumTolerance = 1e-9;
inline constexpr double kRenormalizeWindow = 1e-3;   // renormalize accepts sums in [0.999, 1.001]
inline constexpr double kNormalizedMaxTolerance = 1e-12;

/// Validated vector of nonnegative masses summing to 1.
///
/// The constructor enforces the invariants: every mass in [0,1] and the sum
/// within 1e-9 of 1. With `renormalize`, sums in [0.999, 1.001] are divided
/// through instead (empirical frequency vectors carry rounding noise);
/// anything further off is rejected either way.
class ProbabilityDistribution {
public:
    explicit ProbabilityDistribution(std::vector<double> masses, bool renormalize = false);

    const std::vector<double>& masses() const { return masses_; }
    std::size_t size() const { return masses_.size(); }
    double operator[](std::size_t i) const { return masses_[i]; }

private:
    std::vector<double> masses_;
};

/// Vector of possibility values in [0,1]. When constructed with
/// `normalized = true` the maximum value must be 1 (within 1e-12);
/// transforms always produce normalized distributions.
class PossibilityDistribution {
public:
    explicit PossibilityDistribution(std::vector<double> values, bool normalized = false);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    bool normalized() const { return normalized_; }

private:
    std::vector<double> values_;
    bool normalized_;
};

/// Subset of outcome indices (0-based). Indices must be distinct; range
/// checks happen against a concrete distribution at measure time.
class OutcomeSubset {
public:
    explicit OutcomeSubset(std::vector<std::size_t> members);

    const std::vector<std::size_t>& members() const { return members_; }
    bool empty() const { return members_.empty(); }

private:
    std::vector<std::size_t> members_;  // sorted, unique
};

/// Pi(A) = max of pi over A. A must be nonempty: the measure is defined as a
/// max over a nonempty set, so Pi(empty) is rejected rather than defined as 0.
double possibility_measure(const PossibilityDistribution& pi, const OutcomeSubset& a);

/// P(A) = sum of masses over A. The empty subset yields 0.
double probability_measure(const ProbabilityDistribution& p, const OutcomeSubset& a);

}  // namespace pptrans
