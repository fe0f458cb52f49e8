#pragma once

// Possibility -> probability converses. The symmetric and optimal
// transformations invert in closed form (the optimal one via successive
// differences divided by the repetition count of each value, which reduces
// to plain differences when all values are distinct). The generalized
// family has no closed-form inverse: with values sorted decreasingly it
// defines the system
//
//   pi_i = sum_{j<i} p_j (p_i/p_j)^n + sum_{j>=i} p_j ,   i = 1..M
//
// to be solved under p_1 >= p_2 >= ... >= p_M > 0. We solve it with a
// damped Newton iteration on log-parameterized masses (positivity for
// free), one unknown per distinct possibility value (tied values force
// tied masses, which also keeps the Jacobian nonsingular), projecting onto
// the ordered cone after every step. Existence is not guaranteed for
// arbitrary inputs, so failures are reported, never guessed away.
//
// Each strict term p_j (p_i/p_j)^n is evaluated as exp of
// n ln p_i + (1-n) ln p_j, which stays bounded for every n > 0 because the
// exponent is nonpositive whenever p_j >= p_i.

#include <cstddef>
#include <vector>

#include "pptrans/distribution.hpp"

namespace pptrans {

struct SolverConfig {
    double residual_tolerance = 1e-10;  // convergence threshold on the inf-norm residual
    int max_iterations = 200;
    double damping_floor = 1e-4;        // smallest accepted Newton step fraction
    double ordering_tolerance = 1e-12;  // adjacent masses closer than this count as tied
    double seed_threshold_n = 3.0;      // below: seed from the symmetric converse; at or above: optimal

    void validate() const;
};

struct SolveReport {
    ProbabilityDistribution solution;  // best iterate, normalized to unit sum
    int iterations = 0;
    double final_residual = 0.0;       // inf-norm of the system residuals at `solution`
    bool converged = false;
};

/// Inverts the symmetric transformation: with values sorted non-increasingly,
/// p(w_i) = sum_{j>=i} (pi_j - pi_{j+1}) / j, taking pi_{M+1} = 0. Input may
/// arrive in any order; it is sorted internally and the result un-sorted.
/// Requires a normalized input (max value 1).
ProbabilityDistribution converse_symmetric(const PossibilityDistribution& pi);

/// Inverts the optimal transformation, repetitions included: sorted
/// decreasingly, p(w_i) = (pi_i - next strictly smaller value, or 0) divided
/// by the number of repetitions of pi_i. Requires a normalized input.
ProbabilityDistribution converse_optimal(const PossibilityDistribution& pi);

/// Numerically inverts the generalized transformation at finite n > 0.
/// Requires a normalized input (the i = 1 equation forces pi_1 = 1; it also
/// implies sum p_j = 1). Outcomes with possibility exactly 0 receive mass 0
/// and are excluded from the solve. Non-convergence is reported through the
/// SolveReport, not thrown. For n = infinity use converse_optimal.
SolveReport converse_generalized(const PossibilityDistribution& pi, double n,
                                 const SolverConfig& config = SolverConfig{});

}  // namespace pptrans
