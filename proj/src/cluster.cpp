#include "xxrelay/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xxrelay/errors.hpp"
#include "xxrelay/parallel.hpp"

namespace xxrelay {

void validate_cluster(const ClusterSpec& spec, int n_sites) {
    if (spec.M < 2 || spec.M > n_sites)
        throw InvalidArgument("cluster size M must satisfy 2 <= M <= N");
    if (spec.i < 1 || spec.i > n_sites - spec.M + 1)
        throw InvalidArgument("cluster start i must satisfy 1 <= i <= N-M+1");
    if (!(spec.epsilon_C > 0.0) || !(spec.epsilon_C < 1.0))
        throw InvalidArgument("epsilon_C must lie in (0, 1)");
}

std::vector<std::pair<int, int>> cluster_pairs(const ClusterSpec& spec) {
    std::vector<std::pair<int, int>> pairs;
    for (int p = spec.i; p < spec.i + spec.M; ++p)
        for (int q = p + 1; q < spec.i + spec.M; ++q) pairs.emplace_back(p, q);
    return pairs;
}

double geometric_mean(const ConcurrenceField& field, const ClusterSpec& spec, int t_index) {
    validate_cluster(spec, field.n_sites());
    double prod = 1.0;
    for (auto [p, q] : cluster_pairs(spec)) {
        prod *= field.at(t_index, p, q);
        if (prod == 0.0) return 0.0;
    }
    const double exponent = 2.0 / (spec.M * (spec.M - 1));
    return std::pow(prod, exponent);
}

std::vector<double> cluster_series(const ConcurrenceField& field, const ClusterSpec& spec) {
    validate_cluster(spec, field.n_sites());
    const auto pairs = cluster_pairs(spec);
    const double exponent = 2.0 / (spec.M * (spec.M - 1));
    std::vector<double> p(field.times().size());
    for (size_t t = 0; t < p.size(); ++t) {
        double prod = 1.0;
        for (auto [a, b] : pairs) {
            prod *= field.at(static_cast<int>(t), a, b);
            if (prod == 0.0) break;
        }
        p[t] = prod == 0.0 ? 0.0 : std::pow(prod, exponent);
    }
    return p;
}

namespace {

// vertex of the parabola through three equally spaced samples; falls back to
// the middle point when the samples are collinear or the vertex escapes
void refine_peak(const std::vector<double>& times, const std::vector<double>& p, size_t k,
                 double& t_peak, double& p_max) {
    t_peak = times[k];
    p_max = p[k];
    if (k == 0 || k + 1 >= p.size()) return;
    const double denom = p[k - 1] - 2.0 * p[k] + p[k + 1];
    if (!(denom < 0.0)) return;
    const double shift = 0.5 * (p[k - 1] - p[k + 1]) / denom;
    if (std::abs(shift) >= 1.0) return;
    const double h = times[k + 1] - times[k];
    t_peak = times[k] + shift * h;
    p_max = p[k] - 0.25 * (p[k - 1] - p[k + 1]) * shift;
}

// time where the linear interpolant between grid points k and k+1 crosses eps
double cross_time(const std::vector<double>& times, const std::vector<double>& p, size_t k,
                  double eps) {
    const double dp = p[k + 1] - p[k];
    if (dp == 0.0) return times[k];
    const double f = (eps - p[k]) / dp;
    return times[k] + f * (times[k + 1] - times[k]);
}

}  // namespace

ClusterReport report_from_series(const std::vector<double>& times, const std::vector<double>& p,
                                 double epsilon) {
    if (times.size() != p.size() || times.empty())
        throw InvalidArgument("series and time grid sizes differ or are empty");
    ClusterReport rep;
    const size_t k = std::max_element(p.begin(), p.end()) - p.begin();
    refine_peak(times, p, k, rep.t_peak, rep.p_max);
    rep.exists = rep.p_max >= epsilon;
    if (!rep.exists) {
        rep.t_l = rep.t_r = rep.t_peak;
        return rep;
    }
    size_t lo = k, hi = k;
    while (lo > 0 && p[lo - 1] >= epsilon) --lo;
    while (hi + 1 < p.size() && p[hi + 1] >= epsilon) ++hi;
    rep.t_l = lo == 0 ? times.front() : cross_time(times, p, lo - 1, epsilon);
    rep.t_r = hi + 1 == p.size() ? times.back() : cross_time(times, p, hi, epsilon);
    rep.lifetime = rep.t_r - rep.t_l;
    return rep;
}

ClusterReport cluster_report(const ConcurrenceField& field, const ClusterSpec& spec) {
    return report_from_series(field.times(), cluster_series(field, spec), spec.epsilon_C);
}

std::vector<std::pair<double, double>> threshold_intervals(const ConcurrenceField& field,
                                                           const ClusterSpec& spec) {
    const auto& times = field.times();
    const auto p = cluster_series(field, spec);
    std::vector<std::pair<double, double>> intervals;
    size_t t = 0;
    while (t < p.size()) {
        if (p[t] < spec.epsilon_C) {
            ++t;
            continue;
        }
        const size_t lo = t;
        while (t + 1 < p.size() && p[t + 1] >= spec.epsilon_C) ++t;
        const double left =
            lo == 0 ? times.front() : cross_time(times, p, lo - 1, spec.epsilon_C);
        const double right =
            t + 1 == p.size() ? times.back() : cross_time(times, p, t, spec.epsilon_C);
        intervals.emplace_back(left, right);
        t += 2;
    }
    return intervals;
}

CriticalGrid default_critical_grid() {
    CriticalGrid grid;
    for (int k = 0; k <= 50; ++k) grid.lambdas.push_back(0.5 + 0.01 * k);
    for (int k = 0; k <= 50; ++k) grid.alphas.push_back(0.02 * k);
    return grid;
}

namespace {

// pairs reordered so the ones deepest inside the chain come first; those hit
// zero concurrence most often and abort the product early
std::vector<std::pair<int, int>> scan_order(std::vector<std::pair<int, int>> pairs, int n) {
    std::stable_sort(pairs.begin(), pairs.end(), [n](const auto& a, const auto& b) {
        const int da = std::min(a.first - 1, n - a.second);
        const int db = std::min(b.first - 1, n - b.second);
        return da > db;
    });
    return pairs;
}

bool cluster_reaches(const SweepEngine& engine, const std::vector<std::pair<int, int>>& pairs,
                     const PairCoefficients& coeff, double product_floor) {
    const auto& eval = engine.evaluator();
    for (size_t t = 0; t < engine.times().size(); ++t) {
        double prod = 1.0;
        for (auto [p, q] : pairs) {
            prod *= concurrence(eval.pair_state(coeff, engine.contraction(t, p, q)));
            if (prod <= product_floor) break;
        }
        if (prod > product_floor) return true;
    }
    return false;
}

}  // namespace

CriticalValues critical_values(const SweepEngine& engine, const ClusterSpec& spec,
                               const CriticalGrid& grid, double existence_threshold) {
    validate_cluster(spec, engine.n_sites());
    if (grid.lambdas.empty() || grid.alphas.empty())
        throw InvalidArgument("critical-value scan needs nonempty lambda and alpha grids");
    const auto pairs = scan_order(cluster_pairs(spec), engine.n_sites());
    const double floor = std::pow(existence_threshold, 0.5 * spec.M * (spec.M - 1));
    const auto exists_at = [&](double lambda, double alpha) {
        try {
            return cluster_reaches(engine, pairs,
                                   pair_coefficients(symmetric_params(lambda, alpha)), floor);
        } catch (const NumericalFailure& e) {
            rethrow_with_params(e, lambda, alpha);
        }
    };
    // existence region is an alpha interval starting at 0, so scan each lambda
    // row upward and stop at the first hit
    const auto row_exists = [&](double lambda) {
        for (double alpha : grid.alphas)
            if (exists_at(lambda, alpha)) return true;
        return false;
    };
    CriticalValues out;
    for (double lambda : grid.lambdas) {
        if (row_exists(lambda)) {
            out.lambda_c = lambda;
            out.defined = true;
            break;
        }
    }
    if (!out.defined) return out;
    for (auto a = grid.alphas.rbegin(); a != grid.alphas.rend(); ++a) {
        bool hit = false;
        for (auto l = grid.lambdas.rbegin(); l != grid.lambdas.rend(); ++l) {
            if (*l < out.lambda_c) break;
            if (exists_at(*l, *a)) {
                hit = true;
                break;
            }
        }
        if (hit) {
            out.alpha_c = *a;
            break;
        }
    }
    return out;
}

CriticalValues critical_values(const ChainConfig& config, const ClusterSpec& spec,
                               const CriticalGrid& grid, double existence_threshold, int threads) {
    if (!(config.T_reg > 0.0))
        throw InvalidArgument("critical-value scan needs a positive registration horizon");
    SweepEngine engine(config, config.T_reg, 0.01, threads);
    return critical_values(engine, spec, grid, existence_threshold);
}

std::vector<ClusterGridPoint> cluster_grid(const SweepEngine& engine, const ClusterSpec& spec,
                                           const CriticalGrid& grid) {
    validate_cluster(spec, engine.n_sites());
    if (grid.lambdas.empty() || grid.alphas.empty())
        throw InvalidArgument("cluster grid scan needs nonempty lambda and alpha grids");
    const auto pairs = cluster_pairs(spec);
    const double exponent = 2.0 / (spec.M * (spec.M - 1));
    const size_t n_alpha = grid.alphas.size();
    std::vector<ClusterGridPoint> out(grid.lambdas.size() * n_alpha);
    parallel_for(out.size(), engine.threads(), [&](size_t slot) {
        const double lambda = grid.lambdas[slot / n_alpha];
        const double alpha = grid.alphas[slot % n_alpha];
        const auto coeff = pair_coefficients(symmetric_params(lambda, alpha));
        const auto& eval = engine.evaluator();
        std::vector<double> p(engine.times().size());
        try {
            for (size_t t = 0; t < p.size(); ++t) {
                double prod = 1.0;
                for (auto [a, b] : pairs) {
                    prod *= concurrence(eval.pair_state(coeff, engine.contraction(t, a, b)));
                    if (prod == 0.0) break;
                }
                p[t] = prod == 0.0 ? 0.0 : std::pow(prod, exponent);
            }
        } catch (const NumericalFailure& e) {
            rethrow_with_params(e, lambda, alpha);
        }
        out[slot] = {lambda, alpha, report_from_series(engine.times(), p, spec.epsilon_C)};
    });
    return out;
}

MiddlePairSurfaces middle_pair_scan(const SweepEngine& engine, const CriticalGrid& grid) {
    const int n = engine.n_sites();
    if (n % 2 != 0) throw ConfigError("middle-pair scan needs an even number of sites");
    if (grid.lambdas.empty() || grid.alphas.empty())
        throw InvalidArgument("middle-pair scan needs nonempty lambda and alpha grids");
    MiddlePairSurfaces out;
    out.lambdas = grid.lambdas;
    out.alphas = grid.alphas;
    const size_t n_alpha = grid.alphas.size();
    out.c_edge.resize(grid.lambdas.size() * n_alpha);
    out.c_middle.resize(out.c_edge.size());
    const double no_exit = std::numeric_limits<double>::infinity();
    parallel_for(out.c_edge.size(), engine.threads(), [&](size_t slot) {
        const double lambda = grid.lambdas[slot / n_alpha];
        const double alpha = grid.alphas[slot % n_alpha];
        const auto coeff = pair_coefficients(symmetric_params(lambda, alpha));
        try {
            out.c_edge[slot] = engine.max_pair_concurrence(coeff, 1, 2, no_exit);
            out.c_middle[slot] = engine.max_pair_concurrence(coeff, n / 2, n / 2 + 1, no_exit);
        } catch (const NumericalFailure& e) {
            rethrow_with_params(e, lambda, alpha);
        }
    });
    return out;
}

}  // namespace xxrelay
