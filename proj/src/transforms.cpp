#include "pptrans/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace pptrans {

namespace {

// exp underflows to 0 below roughly -745; clamp there to a hard zero.
constexpr double kExpUnderflow = -745.0;

double clamped_exp(double x) { return x < kExpUnderflow ? 0.0 : std::exp(x); }

// Masses sorted descending plus the derived arrays every sorted-order
// transform needs: the inverse permutation, suffix sums, and for each rank
// the first rank of its tie group (= the count of strictly greater masses).
struct SortedView {
    std::vector<std::size_t> order;       // order[k] = original index at rank k
    std::vector<double> sorted;           // masses, non-increasing
    std::vector<double> suffix;           // suffix[k] = sum of sorted[k..M-1]; suffix[M] = 0
    std::vector<std::size_t> group_start; // group_start[k] = first rank with value sorted[k]
};

SortedView make_sorted_view(const std::vector<double>& masses) {
    const std::size_t m = masses.size();
    SortedView v;
    v.order.resize(m);
    std::iota(v.order.begin(), v.order.end(), std::size_t{0});
    std::stable_sort(v.order.begin(), v.order.end(),
                     [&](std::size_t a, std::size_t b) { return masses[a] > masses[b]; });
    v.sorted.resize(m);
    for (std::size_t k = 0; k < m; ++k) v.sorted[k] = masses[v.order[k]];
    v.suffix.assign(m + 1, 0.0);
    for (std::size_t k = m; k-- > 0;) v.suffix[k] = v.sorted[k] + v.suffix[k + 1];
    v.group_start.resize(m);
    for (std::size_t k = 0; k < m; ++k)
        v.group_start[k] = (k > 0 && v.sorted[k] == v.sorted[k - 1]) ? v.group_start[k - 1] : k;
    return v;
}

double clamp_unit(double x) { return x > 1.0 ? 1.0 : (x < 0.0 ? 0.0 : x); }

}  // namespace

void TransformSpec::validate() const {
    if (kind == TransformKind::generalized) {
        if (std::isnan(exponent_n) || exponent_n <= 0.0)
            throw std::invalid_argument("generalized transform requires exponent n > 0");
    }
}

PossibilityDistribution transform_symmetric(const ProbabilityDistribution& p) {
    const auto v = make_sorted_view(p.masses());
    const std::size_t m = p.size();
    std::vector<double> pi(m);
    for (std::size_t k = 0; k < m; ++k) {
        // min(p_i, p_j) is p_j for the <= masses and p_i for each strictly greater one
        const std::size_t s = v.group_start[k];
        pi[v.order[k]] = clamp_unit(v.suffix[s] + v.sorted[k] * static_cast<double>(s));
    }
    return PossibilityDistribution(std::move(pi), true);
}

PossibilityDistribution transform_optimal(const ProbabilityDistribution& p) {
    const auto v = make_sorted_view(p.masses());
    const std::size_t m = p.size();
    std::vector<double> pi(m);
    for (std::size_t k = 0; k < m; ++k) pi[v.order[k]] = clamp_unit(v.suffix[v.group_start[k]]);
    return PossibilityDistribution(std::move(pi), true);
}

PossibilityDistribution transform_weak_order(const ProbabilityDistribution& p,
                                             const std::vector<std::size_t>& order) {
    const std::size_t m = p.size();
    if (order.size() != m) throw std::invalid_argument("weak-order permutation has wrong length");
    std::vector<bool> seen(m, false);
    for (std::size_t idx : order) {
        if (idx >= m || seen[idx]) throw std::invalid_argument("weak-order permutation is not a permutation");
        seen[idx] = true;
    }
    for (std::size_t k = 1; k < m; ++k)
        if (p[order[k - 1]] < p[order[k]])
            throw std::invalid_argument("weak-order permutation must arrange masses non-increasingly");

    std::vector<double> pi(m);
    double suffix = 0.0;
    for (std::size_t k = m; k-- > 0;) {
        suffix += p[order[k]];
        pi[order[k]] = clamp_unit(suffix);
    }
    return PossibilityDistribution(std::move(pi), true);
}

PossibilityDistribution transform_generalized(const ProbabilityDistribution& p, double n) {
    if (std::isinf(n) && n > 0.0) return transform_optimal(p);
    if (std::isnan(n) || n <= 0.0) throw std::invalid_argument("generalized transform requires exponent n > 0");
    const auto& masses = p.masses();
    const std::size_t m = p.size();
    std::vector<double> pi(m);
    for (std::size_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double pj = masses[j];
            if (pj == 0.0) continue;  // zero-mass term contributes 0
            if (masses[i] >= pj)
                sum += pj;
            else
                sum += pj * std::min(1.0, std::pow(masses[i] / pj, n));
        }
        pi[i] = clamp_unit(sum);
    }
    return PossibilityDistribution(std::move(pi), true);
}

PossibilityDistribution transform_generalized_fast(const ProbabilityDistribution& p, double n) {
    if (std::isinf(n) && n > 0.0) return transform_optimal(p);
    if (std::isnan(n) || n <= 0.0) throw std::invalid_argument("generalized transform requires exponent n > 0");

    const auto v = make_sorted_view(p.masses());
    const std::size_t m = p.size();

    // Number of positive masses; zeros sit at the tail of the sorted order.
    std::size_t npos = m;
    while (npos > 0 && v.sorted[npos - 1] == 0.0) --npos;

    // For rank k with tie group starting at s, the strictly greater masses are
    // ranks 0..s-1 and contribute
    //   T_k = sum_{j<s} q_j (q_k/q_j)^n = exp(n L_k) * sum_{j<s} exp(e_j),
    // with L_j = ln q_j and e_j = (1-n) L_j. The inner sum is kept as a
    // running prefix scaled by the running max exponent, so every stored
    // term is exp of a nonpositive number regardless of n.
    std::vector<double> log_mass(npos), scaled_prefix(npos), prefix_scale(npos);
    for (std::size_t k = 0; k < npos; ++k) log_mass[k] = std::log(v.sorted[k]);
    double running = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < npos; ++k) {
        const double e = (1.0 - n) * log_mass[k];
        const double new_scale = (k == 0) ? e : std::max(scale, e);
        running = (k == 0) ? 1.0 : running * clamped_exp(scale - new_scale) + clamped_exp(e - new_scale);
        scale = new_scale;
        scaled_prefix[k] = running;
        prefix_scale[k] = scale;
    }

    std::vector<double> pi(m);
    for (std::size_t k = 0; k < m; ++k) {
        if (k >= npos) {
            pi[v.order[k]] = 0.0;
            continue;
        }
        const std::size_t s = v.group_start[k];
        double strict = 0.0;
        if (s > 0) {
            const double expo = n * log_mass[k] + prefix_scale[s - 1];
            strict = clamped_exp(expo) * scaled_prefix[s - 1];
        }
        pi[v.order[k]] = clamp_unit(strict + v.suffix[s]);
    }
    return PossibilityDistribution(std::move(pi), true);
}

std::vector<std::size_t> canonical_descending_order(const ProbabilityDistribution& p) {
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
    return order;
}

PossibilityDistribution apply_transform(const ProbabilityDistribution& p, const TransformSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case TransformKind::symmetric: return transform_symmetric(p);
        case TransformKind::optimal: return transform_optimal(p);
        case TransformKind::weak_order: return transform_weak_order(p, canonical_descending_order(p));
        case TransformKind::generalized: return transform_generalized_fast(p, spec.exponent_n);
    }
    throw std::invalid_argument("unknown transform kind");
}

}  // namespace pptrans
