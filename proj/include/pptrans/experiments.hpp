#pragma once

// Seeded Monte Carlo harness: empirical distributions sampled from a uniform
// or Zipf ground truth, specificity statistics of the generalized transform
// across an exponent list, and grid emitters for plot-ready figure data.
//
// Determinism contract: a fixed (config, seed) pair produces a bit-identical
// report. Each trial draws from its own generator, seeded by mixing the
// master seed with the trial counter, so trials are independent streams and
// the aggregation never depends on evaluation order.

#include <cstdint>
#include <vector>

#include "pptrans/distribution.hpp"
#include "pptrans/transforms.hpp"

namespace pptrans {

enum class SamplerKind { uniform, zipf };

struct ExperimentConfig {
    SamplerKind sampler = SamplerKind::uniform;
    double zipf_alpha = 1.0;
    int outcomes = 1000;
    long long samples_per_distribution = 250000;
    int trials = 100;
    std::vector<double> n_list = {1.0, 2.0, 3.0, 5.0, 10.0, 100.0};
    std::uint64_t seed = 0;

    void validate() const;
};

/// Mean and sample standard deviation of the specificity across trials for
/// one exponent. With a single trial the deviation is 0 by convention.
struct SpecificityRow {
    double n = 0.0;
    double mean = 0.0;
    double stddev = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;          // full provenance echo, seed included
    std::vector<SpecificityRow> rows; // one per entry of config.n_list, in order
};

/// Masses proportional to i^(-alpha) over ranks i = 1..m.
ProbabilityDistribution zipf_weights(std::size_t m, double alpha);

/// Counter-mixed per-trial sub-seed (SplitMix64 finalizer over
/// master + (trial+1) * golden-ratio increment).
std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t trial);

/// Draws `samples` outcomes from `base` by inverse-CDF binary search over a
/// 64-bit Mersenne Twister stream and returns the observed frequencies.
ProbabilityDistribution sample_empirical(const ProbabilityDistribution& base, long long samples,
                                         std::uint64_t seed);

/// For each trial: sample an empirical distribution from the configured
/// ground truth, then measure the specificity of its generalized transform
/// at every exponent in config.n_list. Aggregates mean and deviation per n.
ExperimentReport run_specificity_experiment(const ExperimentConfig& config);

struct BinaryCurveRow {
    double p = 0.0;       // mass of the first of the two outcomes
    double pi_w1 = 0.0;   // possibility of that outcome under the transform
};

/// Evaluates the transform on [p, 1-p] for `grid_points` values of p spaced
/// uniformly inside the open interval (0,1); rows in ascending p. Endpoints
/// are excluded so every grid distribution keeps two live outcomes.
std::vector<BinaryCurveRow> emit_binary_curve(const TransformSpec& spec, int grid_points);

struct TernaryMapRow {
    double p1 = 0.0;
    double p2 = 0.0;
    double pi_w3 = 0.0;   // generalized possibility of the third outcome
};

/// Walks the (p1, p2) grid with the given step, keeps points inside the
/// simplex p1 + p2 <= 1, sets p3 = 1 - p1 - p2, and evaluates the
/// generalized transform at exponent n (infinity selects the optimal one).
/// Rows ordered by p1 then p2, both ascending.
std::vector<TernaryMapRow> emit_ternary_map(double n, double grid_step);

}  // namespace pptrans
