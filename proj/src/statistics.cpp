#include "xxrelay/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "xxrelay/errors.hpp"
#include "xxrelay/sweep.hpp"

namespace xxrelay {

StatSummary summarize_weighted(const std::vector<double>& weights,
                               const std::vector<double>& values, Axis axis) {
    double mean = 0.0;
    for (size_t j = 0; j < values.size(); ++j) mean += weights[j] * values[j];
    double var = 0.0;
    for (size_t j = 0; j < values.size(); ++j) {
        const double d = values[j] - mean;
        var += weights[j] * d * d;
    }
    if (!std::isfinite(mean) || !std::isfinite(var))
        throw NumericalFailure("quadrature produced a non-finite mean or deviation");
    StatSummary out;
    out.mean = mean;
    out.deviation = std::sqrt(std::max(0.0, var));
    out.axis = axis;
    return out;
}

StatSummary mean_over_alpha(const ParamFunction& f, double lambda, int nodes) {
    const auto rule = map_to(gauss_legendre(nodes), 0.0, 1.0);
    const double pi = std::acos(-1.0);
    std::vector<double> weights(rule.nodes.size()), values(rule.nodes.size());
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
        weights[j] = 0.5 * pi * rule.weights[j] * std::sin(rule.nodes[j] * pi);
        values[j] = f(lambda, rule.nodes[j]);
    }
    return summarize_weighted(weights, values, Axis::alpha);
}

StatSummary mean_over_lambda(const ParamFunction& f, double alpha, int nodes) {
    const auto rule = map_to(gauss_legendre(nodes), 0.5, 1.0);
    std::vector<double> weights(rule.nodes.size()), values(rule.nodes.size());
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
        weights[j] = 2.0 * rule.weights[j];
        values[j] = f(rule.nodes[j], alpha);
    }
    return summarize_weighted(weights, values, Axis::lambda);
}

AveragedSignal::AveragedSignal(const ChainConfig& config, int nodes) : eval_(config) {
    const auto base = gauss_legendre(nodes);
    const auto lam = map_to(base, 0.5, 1.0);
    const auto alp = map_to(base, 0.0, 1.0);
    const double pi = std::acos(-1.0);
    avg_ = {};
    for (size_t i = 0; i < lam.nodes.size(); ++i) {
        for (size_t j = 0; j < alp.nodes.size(); ++j) {
            const double w = pi * lam.weights[i] * alp.weights[j] * std::sin(alp.nodes[j] * pi);
            const auto c = pair_coefficients(symmetric_params(lam.nodes[i], alp.nodes[j]));
            avg_.c00 += w * c.c00;
            avg_.d1 += w * c.d1;
            avg_.d2 += w * c.d2;
            avg_.q02 += w * c.q02;
            avg_.cS += w * c.cS;
            avg_.cR += w * c.cR;
            avg_.cX += w * c.cX;
            avg_.e1 += w * c.e1;
            avg_.e2 += w * c.e2;
            avg_.c2 += w * c.c2;
        }
    }
}

double AveragedSignal::operator()(double t) const {
    return eval_.signal(avg_, eval_.frame_at(t));
}

double averaged_signal(const ChainConfig& config, double t, int nodes) {
    return AveragedSignal(config, nodes)(t);
}

double optimal_time(ChainConfig& config, double horizon, int nodes) {
    if (!(horizon > 0.0)) throw InvalidArgument("horizon must be positive");
    const AveragedSignal s(config, nodes);
    const auto grid = make_time_grid(horizon, 0.01);
    std::vector<double> v(grid.size());
    for (size_t k = 0; k < grid.size(); ++k) v[k] = s(grid[k]);
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (*hi - *lo < 1e-9)
        throw NumericalFailure("averaged signal is flat over the horizon; no registration peak");
    size_t best = 0;
    bool found = false;
    for (size_t k = 1; k + 1 < v.size(); ++k) {
        const bool peak =
            v[k] >= v[k - 1] && v[k] >= v[k + 1] && (v[k] > v[k - 1] || v[k] > v[k + 1]);
        if (peak && (!found || v[k] > v[best])) {
            best = k;
            found = true;
        }
    }
    if (!found)
        throw NumericalFailure("averaged signal has no interior maximum on (0, horizon)");
    double t = grid[best];
    for (double step = 0.01; step > 5e-5; step *= 0.5) {
        t = std::clamp(t, step, horizon - step);
        const double fm = s(t - step), f0 = s(t), fp = s(t + step);
        const double denom = fm - 2.0 * f0 + fp;
        if (denom < 0.0) t += std::clamp(0.5 * (fm - fp) / denom, -1.0, 1.0) * step;
    }
    config.T_reg = t;
    return t;
}

}  // namespace xxrelay
