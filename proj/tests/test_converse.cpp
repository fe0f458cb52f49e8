#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "pptrans/converse.hpp"
#include "pptrans/transforms.hpp"

using namespace pptrans;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double linf(const std::vector<double>& a, const std::vector<double>& b) {
    return oracles::max_abs_diff(a, b);
}

}  // namespace

TEST_CASE("symmetric converse closed-form references") {
    CHECK(linf(converse_symmetric(PossibilityDistribution({1.0, 0.998})).masses(), {0.501, 0.499}) <= 1e-12);
    CHECK(linf(converse_symmetric(PossibilityDistribution({1.0})).masses(), {1.0}) == 0.0);
    for (std::size_t m : {std::size_t{2}, std::size_t{7}}) {
        const auto p = converse_symmetric(PossibilityDistribution(std::vector<double>(m, 1.0)));
        for (double v : p.masses()) CHECK(v == doctest::Approx(1.0 / static_cast<double>(m)));
    }
}

TEST_CASE("symmetric converse handles unsorted input by permutation") {
    const auto p = converse_symmetric(PossibilityDistribution({0.3, 1.0, 0.7}));
    // sorted [1, .7, .3] inverts to [.6, .3, .1]; un-sorted to input positions
    CHECK(linf(p.masses(), {0.1, 0.6, 0.3}) <= 1e-12);
}

TEST_CASE("symmetric converse rejects unnormalized input") {
    CHECK_THROWS_AS(converse_symmetric(PossibilityDistribution({0.9, 0.5})), std::invalid_argument);
    CHECK_THROWS_AS(converse_optimal(PossibilityDistribution({0.9, 0.5})), std::invalid_argument);
}

TEST_CASE("optimal converse references, repetitions included") {
    CHECK(linf(converse_optimal(PossibilityDistribution({1.0, 1.0})).masses(), {0.5, 0.5}) == 0.0);
    CHECK(linf(converse_optimal(PossibilityDistribution({1.0, 0.4, 0.1})).masses(), {0.6, 0.3, 0.1}) <= 1e-12);
    CHECK(linf(converse_optimal(PossibilityDistribution({1.0, 0.499})).masses(), {0.501, 0.499}) <= 1e-12);
    // three-way tie below the top value
    CHECK(linf(converse_optimal(PossibilityDistribution({1.0, 0.6, 0.6, 0.6})).masses(),
               {0.4, 0.2, 0.2, 0.2}) <= 1e-12);
}

TEST_CASE("closed-form round trips recover the masses") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 1 + rng() % 20;
        auto masses = oracles::random_masses(rng, m, 1e-4);
        if (trial % 4 == 0 && m >= 3) masses = oracles::with_ties(rng, masses, 2);

        const ProbabilityDistribution p(masses);
        CHECK(linf(converse_symmetric(transform_symmetric(p)).masses(), masses) <= 1e-12);
        CHECK(linf(converse_optimal(transform_optimal(p)).masses(), masses) <= 1e-12);
    }
}

TEST_CASE("optimal converse output sums to 1 and is sorted on range inputs") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 50; ++trial) {
        auto masses = oracles::with_ties(rng, oracles::random_masses(rng, 2 + rng() % 12), 2);
        const auto pi = transform_optimal(ProbabilityDistribution(masses));
        const auto back = converse_optimal(pi).masses();
        double sum = 0.0;
        for (double v : back) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        // sorted decreasingly by possibility, the recovered masses are non-increasing
        std::vector<std::size_t> order(back.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return pi[a] > pi[b]; });
        for (std::size_t k = 1; k < order.size(); ++k)
            CHECK(back[order[k]] <= back[order[k - 1]] + 1e-12);
    }
}

TEST_CASE("generalized converse inverts the reference example") {
    const auto report = converse_generalized(PossibilityDistribution({1.0, 0.55, 0.15}), 2.0);
    CHECK(report.converged);
    CHECK(report.final_residual <= 1e-10);
    CHECK(linf(report.solution.masses(), {0.6, 0.3, 0.1}) <= 1e-8);
}

TEST_CASE("generalized converse agrees with the symmetric one at n = 1") {
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 30; ++trial) {
        const auto masses = oracles::random_masses(rng, 2 + rng() % 10, 1e-3);
        const auto pi = transform_symmetric(ProbabilityDistribution(masses));
        const auto direct = converse_symmetric(pi).masses();
        const auto report = converse_generalized(pi, 1.0);
        CHECK(report.converged);
        CHECK(linf(report.solution.masses(), direct) <= 1e-8);
    }
}

TEST_CASE("total ignorance inverts to uniform for any exponent") {
    for (double n : {0.5, 1.0, 4.0, 50.0}) {
        const auto report = converse_generalized(PossibilityDistribution({1.0, 1.0, 1.0, 1.0}), n);
        CHECK(report.converged);
        CHECK(report.iterations == 0);  // the tied-group seed is already exact
        for (double v : report.solution.masses()) CHECK(v == doctest::Approx(0.25));
    }
}

TEST_CASE("generalized round trips across exponents, ties and unsorted input") {
    std::mt19937_64 rng(24);
    int non_converged = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t m = 2 + rng() % 19;
        auto masses = oracles::random_masses(rng, m, 1e-4);
        if (trial % 5 == 0 && m >= 3) masses = oracles::with_ties(rng, masses, 2);
        const ProbabilityDistribution p(masses);
        for (double n : {1.0, 2.0, 5.0}) {
            const auto pi = transform_generalized_fast(p, n);
            const auto report = converse_generalized(pi, n);
            if (!report.converged) {
                ++non_converged;
                continue;
            }
            CHECK(report.iterations <= 200);
            CHECK(linf(report.solution.masses(), masses) <= 1e-8);
            // claimed convergence must be reproducible through the naive map
            const auto forward = oracles::generalized(report.solution.masses(), n);
            CHECK(linf(forward, pi.values()) <= 1e-10 + 1e-13);
        }
    }
    CHECK(non_converged <= 4);  // at least 99% of 450 solves converge
}

TEST_CASE("solver reports honest failure when starved of iterations") {
    SolverConfig cfg;
    cfg.max_iterations = 1;
    cfg.residual_tolerance = 1e-15;
    const PossibilityDistribution pi({1.0, 0.55, 0.15});
    const auto report = converse_generalized(pi, 2.0, cfg);
    CHECK_FALSE(report.converged);
    CHECK(report.final_residual > cfg.residual_tolerance);
    // the best iterate is still a valid distribution
    double sum = 0.0;
    for (double v : report.solution.masses()) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zeros pass through the generalized converse untouched") {
    const auto report = converse_generalized(PossibilityDistribution({0.55, 1.0, 0.0, 0.15}), 2.0);
    CHECK(report.converged);
    CHECK(report.solution[2] == 0.0);
    CHECK(linf(report.solution.masses(), {0.3, 0.6, 0.0, 0.1}) <= 1e-8);
}

TEST_CASE("generalized converse input validation") {
    const PossibilityDistribution ok({1.0, 0.5});
    CHECK_THROWS_AS(converse_generalized(ok, kInf), std::invalid_argument);
    CHECK_THROWS_AS(converse_generalized(ok, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(converse_generalized(ok, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(converse_generalized(ok, std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
    CHECK_THROWS_AS(converse_generalized(PossibilityDistribution({0.9, 0.5}), 2.0), std::invalid_argument);

    SolverConfig bad;
    bad.max_iterations = 0;
    CHECK_THROWS_AS(converse_generalized(ok, 2.0, bad), std::invalid_argument);
    bad = SolverConfig{};
    bad.residual_tolerance = 0.0;
    CHECK_THROWS_AS(converse_generalized(ok, 2.0, bad), std::invalid_argument);
    bad = SolverConfig{};
    bad.damping_floor = -1.0;
    CHECK_THROWS_AS(converse_generalized(ok, 2.0, bad), std::invalid_argument);
}

TEST_CASE("singleton inverts to the point mass under every converse") {
    const PossibilityDistribution one({1.0});
    CHECK(converse_symmetric(one).masses() == std::vector<double>{1.0});
    CHECK(converse_optimal(one).masses() == std::vector<double>{1.0});
    const auto report = converse_generalized(one, 3.0);
    CHECK(report.converged);
    CHECK(report.solution.masses() == std::vector<double>{1.0});
}
