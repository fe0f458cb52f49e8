#include "pptrans/converse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pptrans/transforms.hpp"

namespace pptrans {

namespace {

constexpr double kExpUnderflow = -745.0;

double clamped_exp(double x) { return x < kExpUnderflow ? 0.0 : std::exp(x); }

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return order;
}

void require_normalized(const std::vector<double>& values, const char* what) {
    const double max = *std::max_element(values.begin(), values.end());
    if (std::abs(max - 1.0) > kNormalizedMaxTolerance)
        throw std::invalid_argument(std::string(what) +
                                    " requires a normalized possibility distribution (max value 1), got max " +
                                    std::to_string(max));
}

// Masses for decreasingly sorted possibility values; shared by the closed
// forms and the solver seeds. Both formulas telescope to a unit sum.
std::vector<double> symmetric_masses_sorted(const std::vector<double>& v) {
    const std::size_t m = v.size();
    std::vector<double> p(m);
    p[m - 1] = v[m - 1] / static_cast<double>(m);
    for (std::size_t k = m - 1; k-- > 0;)
        p[k] = p[k + 1] + (v[k] - v[k + 1]) / static_cast<double>(k + 1);
    return p;
}

std::vector<double> optimal_masses_sorted(const std::vector<double>& v) {
    const std::size_t m = v.size();
    std::vector<double> p(m);
    std::size_t s = 0;
    while (s < m) {
        std::size_t e = s + 1;
        while (e < m && v[e] == v[s]) ++e;
        const double next = (e < m) ? v[e] : 0.0;
        const double mass = (v[s] - next) / static_cast<double>(e - s);
        for (std::size_t k = s; k < e; ++k) p[k] = mass;
        s = e;
    }
    return p;
}

// Pool-adjacent-violators projection onto the non-increasing cone, then
// snap adjacent values within `tie_tol` to exact equality.
void project_non_increasing(std::vector<double>& y, double tie_tol) {
    const std::size_t g = y.size();
    std::vector<double> mean(g);
    std::vector<std::size_t> count(g);
    std::size_t blocks = 0;
    for (std::size_t k = 0; k < g; ++k) {
        mean[blocks] = y[k];
        count[blocks] = 1;
        ++blocks;
        while (blocks > 1 && mean[blocks - 1] > mean[blocks - 2]) {
            const double total = mean[blocks - 2] * static_cast<double>(count[blocks - 2]) +
                                 mean[blocks - 1] * static_cast<double>(count[blocks - 1]);
            count[blocks - 2] += count[blocks - 1];
            mean[blocks - 2] = total / static_cast<double>(count[blocks - 2]);
            --blocks;
        }
    }
    std::size_t k = 0;
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t c = 0; c < count[b]; ++c) y[k++] = mean[b];
    for (std::size_t i = 1; i < g; ++i)
        if (y[i - 1] - y[i] <= tie_tol) y[i] = y[i - 1];
}

// One unknown per distinct possibility value: tied values force tied masses
// (order preservation), and collapsing them keeps the Jacobian nonsingular.
struct GroupedSystem {
    std::vector<double> target;      // distinct possibility values, decreasing
    std::vector<double> mult;        // repetition count of each value
    double n;

    std::size_t size() const { return target.size(); }

    // Forward map of the sorted system at group masses u = exp(y); also
    // returns the strictly-greater part T_g needed by the Jacobian diagonal.
    void forward(const std::vector<double>& y, std::vector<double>& pi_hat,
                 std::vector<double>& strict) const {
        const std::size_t g = size();
        std::vector<double> u(g);
        for (std::size_t k = 0; k < g; ++k) u[k] = clamped_exp(y[k]);
        std::vector<double> suf(g + 1, 0.0);
        for (std::size_t k = g; k-- > 0;) suf[k] = suf[k + 1] + mult[k] * u[k];
        pi_hat.assign(g, 0.0);
        strict.assign(g, 0.0);
        for (std::size_t i = 0; i < g; ++i) {
            double t = 0.0;
            for (std::size_t j = 0; j < i; ++j)
                t += mult[j] * clamped_exp(y[j] + n * (y[i] - y[j]));
            strict[i] = t;
            pi_hat[i] = t + suf[i];
        }
    }

    // d residual / d y, with residual_i = pi_hat_i - target_i.
    std::vector<double> jacobian(const std::vector<double>& y, const std::vector<double>& strict) const {
        const std::size_t g = size();
        std::vector<double> jac(g * g, 0.0);
        for (std::size_t i = 0; i < g; ++i) {
            for (std::size_t j = 0; j < g; ++j) {
                if (j > i) {
                    jac[i * g + j] = mult[j] * clamped_exp(y[j]);
                } else if (j == i) {
                    jac[i * g + j] = mult[i] * clamped_exp(y[i]) + n * strict[i];
                } else {
                    jac[i * g + j] = (1.0 - n) * mult[j] * clamped_exp(y[j] + n * (y[i] - y[j]));
                }
            }
        }
        return jac;
    }
};

// In-place Gaussian elimination with partial pivoting; returns false when a
// pivot degenerates.
bool solve_dense(std::vector<double> a, std::vector<double> b, std::size_t m, std::vector<double>& x) {
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(a[r * m + col]) > std::abs(a[piv * m + col])) piv = r;
        if (std::abs(a[piv * m + col]) < 1e-250) return false;
        if (piv != col) {
            for (std::size_t c = col; c < m; ++c) std::swap(a[col * m + c], a[piv * m + c]);
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < m; ++r) {
            const double f = a[r * m + col] / a[col * m + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
            b[r] -= f * b[col];
        }
    }
    x.assign(m, 0.0);
    for (std::size_t r = m; r-- > 0;) {
        double acc = b[r];
        for (std::size_t c = r + 1; c < m; ++c) acc -= a[r * m + c] * x[c];
        x[r] = acc / a[r * m + r];
    }
    return true;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(residual_tolerance > 0.0)) throw std::invalid_argument("residual_tolerance must be positive");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
    if (!(damping_floor > 0.0)) throw std::invalid_argument("damping_floor must be positive");
    if (!(ordering_tolerance > 0.0)) throw std::invalid_argument("ordering_tolerance must be positive");
    if (!(seed_threshold_n > 0.0)) throw std::invalid_argument("seed_threshold_n must be positive");
}

ProbabilityDistribution converse_symmetric(const PossibilityDistribution& pi) {
    require_normalized(pi.values(), "converse_symmetric");
    const auto order = descending_order(pi.values());
    std::vector<double> sorted(pi.size());
    for (std::size_t k = 0; k < pi.size(); ++k) sorted[k] = pi[order[k]];
    const auto p_sorted = symmetric_masses_sorted(sorted);
    std::vector<double> masses(pi.size());
    for (std::size_t k = 0; k < pi.size(); ++k) masses[order[k]] = p_sorted[k];
    return ProbabilityDistribution(std::move(masses));
}

ProbabilityDistribution converse_optimal(const PossibilityDistribution& pi) {
    require_normalized(pi.values(), "converse_optimal");
    const auto order = descending_order(pi.values());
    std::vector<double> sorted(pi.size());
    for (std::size_t k = 0; k < pi.size(); ++k) sorted[k] = pi[order[k]];
    const auto p_sorted = optimal_masses_sorted(sorted);
    std::vector<double> masses(pi.size());
    for (std::size_t k = 0; k < pi.size(); ++k) masses[order[k]] = p_sorted[k];
    return ProbabilityDistribution(std::move(masses));
}

SolveReport converse_generalized(const PossibilityDistribution& pi, double n, const SolverConfig& config) {
    config.validate();
    if (std::isnan(n) || n <= 0.0)
        throw std::invalid_argument("generalized converse requires exponent n > 0");
    if (std::isinf(n))
        throw std::invalid_argument("generalized converse is undefined at n = infinity; use converse_optimal");
    require_normalized(pi.values(), "converse_generalized");

    const std::size_t m = pi.size();
    const auto order = descending_order(pi.values());
    std::vector<double> sorted(m);
    for (std::size_t k = 0; k < m; ++k) sorted[k] = pi[order[k]];

    // Outcomes with possibility exactly 0 carry mass exactly 0; solve the rest.
    std::size_t npos = m;
    while (npos > 0 && sorted[npos - 1] == 0.0) --npos;
    const std::vector<double> positive(sorted.begin(), sorted.begin() + npos);

    GroupedSystem sys;
    sys.n = n;
    std::vector<std::size_t> group_first;
    for (std::size_t k = 0; k < npos; ++k) {
        if (k == 0 || positive[k] != positive[k - 1]) {
            sys.target.push_back(positive[k]);
            sys.mult.push_back(1.0);
            group_first.push_back(k);
        } else {
            sys.mult.back() += 1.0;
        }
    }
    const std::size_t g = sys.size();

    const PossibilityDistribution positive_pi(positive, true);
    const auto seed_masses = (n < config.seed_threshold_n)
                                 ? converse_symmetric(positive_pi).masses()
                                 : converse_optimal(positive_pi).masses();
    std::vector<double> y(g);
    for (std::size_t k = 0; k < g; ++k) y[k] = std::log(std::max(seed_masses[group_first[k]], 1e-300));
    project_non_increasing(y, config.ordering_tolerance);

    // Internal target a notch below the reported tolerance: the reported
    // residual is recomputed on the normalized solution and must stay under.
    const double internal_tol = 0.1 * config.residual_tolerance;

    std::vector<double> pi_hat, strict, residual(g);
    auto eval_residual = [&](const std::vector<double>& yy) {
        sys.forward(yy, pi_hat, strict);
        for (std::size_t k = 0; k < g; ++k) residual[k] = pi_hat[k] - sys.target[k];
        return inf_norm(residual);
    };

    double norm = eval_residual(y);
    std::vector<double> best_y = y;
    double best_norm = norm;
    int iterations = 0;
    while (iterations < config.max_iterations && norm > internal_tol) {
        const auto jac = sys.jacobian(y, strict);
        std::vector<double> neg_r(g), step;
        for (std::size_t k = 0; k < g; ++k) neg_r[k] = -residual[k];
        if (!solve_dense(jac, neg_r, g, step)) break;

        bool accepted = false;
        for (double lambda = 1.0; lambda >= config.damping_floor; lambda *= 0.5) {
            std::vector<double> y_try(g);
            for (std::size_t k = 0; k < g; ++k) y_try[k] = y[k] + lambda * step[k];
            project_non_increasing(y_try, config.ordering_tolerance);
            const double norm_try = eval_residual(y_try);
            if (norm_try < norm * (1.0 - 1e-4 * lambda) || norm_try <= internal_tol) {
                y = std::move(y_try);
                norm = norm_try;
                accepted = true;
                break;
            }
        }
        ++iterations;
        if (!accepted) {
            eval_residual(y);  // restore pi_hat/strict for the current iterate
            break;
        }
        if (norm < best_norm) {
            best_norm = norm;
            best_y = y;
        }
    }
    if (norm < best_norm) best_y = y;

    // Expand groups, un-sort, reinsert zeros, normalize to unit sum.
    std::vector<double> masses(m, 0.0);
    for (std::size_t grp = 0, k = 0; grp < g; ++grp) {
        const double u = clamped_exp(best_y[grp]);
        const std::size_t count = static_cast<std::size_t>(sys.mult[grp]);
        for (std::size_t c = 0; c < count; ++c, ++k) masses[order[k]] = u;
    }
    double total = 0.0;
    for (double v : masses) total += v;
    for (double& v : masses) v /= total;

    // Honest final residual: push the reported solution through the forward
    // map and compare against the input, so convergence is never claimed on
    // an iterate the caller cannot reproduce.
    ProbabilityDistribution solution(std::move(masses));
    const auto forward = transform_generalized_fast(solution, n);
    double final_residual = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        final_residual = std::max(final_residual, std::abs(forward[i] - pi[i]));

    const bool converged = final_residual <= config.residual_tolerance;
    return SolveReport{std::move(solution), iterations, final_residual, converged};
}

}  // namespace pptrans
