#pragma once

#include <functional>

#include "xxrelay/field.hpp"
#include "xxrelay/quadrature.hpp"

namespace xxrelay {

enum class Axis { alpha, lambda };

struct StatSummary {
    double mean = 0.0;
    double deviation = 0.0;
    Axis axis = Axis::alpha;  // the parameter that was integrated out
};

using ParamFunction = std::function<double(double lambda, double alpha)>;

// two-pass mean and root-mean-square deviation under the given normalized
// weights
StatSummary summarize_weighted(const std::vector<double>& weights,
                               const std::vector<double>& values, Axis axis);

// (pi/2) * integral_0^1 sin(alpha pi) f dalpha at fixed lambda, with the
// root-mean-square deviation under the same normalized weight
StatSummary mean_over_alpha(const ParamFunction& f, double lambda, int nodes = 32);

// 2 * integral_{1/2}^1 f dlambda at fixed alpha
StatSummary mean_over_lambda(const ParamFunction& f, double alpha, int nodes = 32);

// End-pair signal averaged over (lambda, alpha) with the normalized
// sin-weighted measure. The signal is linear in the initial-state coefficient
// products, so the whole average collapses into one coefficient set evaluated
// once per time.
class AveragedSignal {
public:
    explicit AveragedSignal(const ChainConfig& config, int nodes = 32);

    double operator()(double t) const;

    const FieldEvaluator& evaluator() const { return eval_; }

private:
    FieldEvaluator eval_;
    PairCoefficients avg_;
};

double averaged_signal(const ChainConfig& config, double t, int nodes = 32);

// Largest interior local maximum of <s> on (0, horizon): coarse grid with
// step 0.01, then parabolic refinement to 1e-4. The endpoints are excluded
// because the signal starts at its global maximum before any transfer has
// happened; the first recurrence peak is the registration instant. Sets
// config.T_reg and returns it.
double optimal_time(ChainConfig& config, double horizon, int nodes = 32);

}  // namespace xxrelay
