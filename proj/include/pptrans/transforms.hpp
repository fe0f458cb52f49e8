#pragma once

// Discrete probability -> possibility transformations: the symmetric and
// optimal transformations, the weak-order variant, and the parametric
// generalized family
//
//   pi(w_i) = sum_j p(w_j) * min(1, (p(w_i)/p(w_j))^n)
//
// which reproduces the symmetric transformation at n = 1 and tends to the
// optimal one as n -> infinity. An infinite exponent is an exact sentinel:
// it dispatches to the optimal transformation rather than approximating it.
//
// Zero masses: a term with p(w_j) = 0 contributes 0, and (p(w_i)/p(w_j))^n
// with p(w_i) = 0 < p(w_j) is taken as 0. This matches the limit of all
// three transforms and keeps pi(w) = 0 exactly when p(w) = 0 (for M >= 2).

#include <cstddef>
#include <limits>
#include <vector>

#include "pptrans/distribution.hpp"

namespace pptrans {

enum class TransformKind { symmetric, optimal, weak_order, generalized };

/// Which transformation to apply. `exponent_n` is meaningful only for the
/// generalized kind: any positive real, or infinity for the optimal limit.
struct TransformSpec {
    TransformKind kind = TransformKind::symmetric;
    double exponent_n = std::numeric_limits<double>::infinity();

    static TransformSpec symmetric() { return {TransformKind::symmetric, 1.0}; }
    static TransformSpec optimal() { return {TransformKind::optimal, std::numeric_limits<double>::infinity()}; }
    static TransformSpec weak_order() { return {TransformKind::weak_order, 1.0}; }
    static TransformSpec generalized(double n) { return {TransformKind::generalized, n}; }

    void validate() const;
};

/// pi(w_i) = sum_j min(p(w_i), p(w_j))   (continuous, low specificity)
PossibilityDistribution transform_symmetric(const ProbabilityDistribution& p);

/// pi(w_i) = sum over {j : p(w_j) <= p(w_i)} of p(w_j). Ties are included in
/// full, so equal masses receive equal possibilities. Maximally specific
/// among consistent order-preserving transformations; discontinuous at ties.
PossibilityDistribution transform_optimal(const ProbabilityDistribution& p);

/// Suffix sums of p under an explicit non-increasing arrangement `order`
/// (order[k] = outcome index at rank k). The most specific consistent
/// transformation under weak order preservation; not unique -- tied masses
/// receive distinct possibilities that depend on the tie-breaking order.
PossibilityDistribution transform_weak_order(const ProbabilityDistribution& p,
                                             const std::vector<std::size_t>& order);

/// Direct evaluation of the generalized family (quadratic in M). Serves as
/// the oracle for the fast path. n = infinity dispatches to transform_optimal.
PossibilityDistribution transform_generalized(const ProbabilityDistribution& p, double n);

/// O(M log M) evaluation of the generalized family: sort masses descending,
/// then per outcome combine a raw suffix sum over the <= masses with a
/// log-stabilized scaled prefix sum over the strictly greater ones.
/// Componentwise equal to transform_generalized within 1e-12.
PossibilityDistribution transform_generalized_fast(const ProbabilityDistribution& p, double n);

/// Stable argsort of the masses, descending: the synthesized tie-breaking
/// order used when a weak-order transform is requested without one.
std::vector<std::size_t> canonical_descending_order(const ProbabilityDistribution& p);

/// Dispatch on spec.kind; generalized uses the fast path.
PossibilityDistribution apply_transform(const ProbabilityDistribution& p, const TransformSpec& spec);

}  // namespace pptrans
