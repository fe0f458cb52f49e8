#include "pptrans/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pptrans/specificity.hpp"

namespace pptrans {

namespace {

// Uniform double in [0,1) built from the top 53 bits, so the stream depends
// only on the engine's specified output and not on distribution internals.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (outcomes < 2) throw std::invalid_argument("experiment needs at least 2 outcomes");
    if (samples_per_distribution < 1) throw std::invalid_argument("samples_per_distribution must be at least 1");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (n_list.empty()) throw std::invalid_argument("n_list must not be empty");
    for (double n : n_list)
        if (std::isnan(n) || n <= 0.0) throw std::invalid_argument("every exponent in n_list must be positive");
    if (sampler == SamplerKind::zipf && !(zipf_alpha > 0.0))
        throw std::invalid_argument("zipf_alpha must be positive");
}

ProbabilityDistribution zipf_weights(std::size_t m, double alpha) {
    if (m < 1) throw std::invalid_argument("zipf_weights needs at least one outcome");
    if (!(alpha > 0.0)) throw std::invalid_argument("zipf_weights needs alpha > 0");
    std::vector<double> w(m);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        w[i] = std::pow(static_cast<double>(i + 1), -alpha);
        total += w[i];
    }
    for (double& x : w) x /= total;
    return ProbabilityDistribution(std::move(w), true);
}

std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t trial) {
    std::uint64_t z = master + (trial + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ProbabilityDistribution sample_empirical(const ProbabilityDistribution& base, long long samples,
                                         std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("sample_empirical needs at least one sample");
    const std::size_t m = base.size();
    std::vector<double> cdf(m);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        acc += base[i];
        cdf[i] = acc;
    }
    cdf[m - 1] = 1.0;  // guard against rounding shortfall in the last bucket

    std::mt19937_64 rng(seed);
    std::vector<long long> counts(m, 0);
    for (long long s = 0; s < samples; ++s) {
        const double u = next_unit(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), m - 1);
        ++counts[idx];
    }
    std::vector<double> freq(m);
    for (std::size_t i = 0; i < m; ++i)
        freq[i] = static_cast<double>(counts[i]) / static_cast<double>(samples);
    return ProbabilityDistribution(std::move(freq), true);
}

ExperimentReport run_specificity_experiment(const ExperimentConfig& config) {
    config.validate();
    const std::size_t m = static_cast<std::size_t>(config.outcomes);
    const ProbabilityDistribution base =
        (config.sampler == SamplerKind::zipf)
            ? zipf_weights(m, config.zipf_alpha)
            : ProbabilityDistribution(std::vector<double>(m, 1.0 / static_cast<double>(m)), true);

    // values[k][t]: specificity at exponent n_list[k] in trial t. Filled by
    // trial, aggregated by exponent, so the result is order-independent.
    const std::size_t nk = config.n_list.size();
    std::vector<std::vector<double>> values(nk, std::vector<double>(static_cast<std::size_t>(config.trials)));
    for (int t = 0; t < config.trials; ++t) {
        const auto sub = derive_subseed(config.seed, static_cast<std::uint64_t>(t));
        const auto empirical = sample_empirical(base, config.samples_per_distribution, sub);
        for (std::size_t k = 0; k < nk; ++k) {
            const auto spec = specificity_of_transform(empirical, TransformSpec::generalized(config.n_list[k]));
            values[k][static_cast<std::size_t>(t)] = spec.value;
        }
    }

    ExperimentReport report;
    report.config = config;
    report.rows.reserve(nk);
    for (std::size_t k = 0; k < nk; ++k) {
        const auto& v = values[k];
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double sd = 0.0;
        if (v.size() > 1) {
            double ss = 0.0;
            for (double x : v) ss += (x - mean) * (x - mean);
            sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
        }
        report.rows.push_back(SpecificityRow{config.n_list[k], mean, sd});
    }
    return report;
}

std::vector<BinaryCurveRow> emit_binary_curve(const TransformSpec& spec, int grid_points) {
    spec.validate();
    if (grid_points < 2) throw std::invalid_argument("binary curve needs at least 2 grid points");
    std::vector<BinaryCurveRow> rows;
    rows.reserve(static_cast<std::size_t>(grid_points));
    for (int k = 1; k <= grid_points; ++k) {
        const double p = static_cast<double>(k) / static_cast<double>(grid_points + 1);
        const ProbabilityDistribution dist(std::vector<double>{p, 1.0 - p});
        rows.push_back(BinaryCurveRow{p, apply_transform(dist, spec)[0]});
    }
    return rows;
}

std::vector<TernaryMapRow> emit_ternary_map(double n, double grid_step) {
    if (std::isnan(n) || n <= 0.0) throw std::invalid_argument("ternary map needs exponent n > 0");
    if (!(grid_step > 0.0) || !(grid_step < 1.0))
        throw std::invalid_argument("grid_step must lie strictly between 0 and 1");
    std::vector<TernaryMapRow> rows;
    const int steps = static_cast<int>(std::floor(1.0 / grid_step + 1e-9));
    for (int i = 0; i <= steps; ++i) {
        const double p1 = static_cast<double>(i) * grid_step;
        for (int j = 0; j <= steps; ++j) {
            const double p2 = static_cast<double>(j) * grid_step;
            if (p1 + p2 > 1.0 + 1e-12) continue;
            const double p3 = std::max(0.0, 1.0 - p1 - p2);
            const ProbabilityDistribution dist(std::vector<double>{std::min(p1, 1.0), std::min(p2, 1.0), p3},
                                               true);
            rows.push_back(TernaryMapRow{p1, p2, transform_generalized_fast(dist, n)[2]});
        }
    }
    return rows;
}

}  // namespace pptrans
