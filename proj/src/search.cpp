#include "xxrelay/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xxrelay/errors.hpp"
#include "xxrelay/parallel.hpp"

namespace xxrelay {

namespace {

class SrProbe {
public:
    SrProbe(const ChainConfig& config, double dt, int threads)
        : engine_(config, require_horizon(config), dt, threads), n_(engine_.n_sites()) {}

    double max_sr(const InitialStateParams& params, double early_exit) const {
        return engine_.max_pair_concurrence(pair_coefficients(params), 1, n_, early_exit);
    }

    double max_sr(double lambda, double alpha, double early_exit) const {
        try {
            return max_sr(symmetric_params(lambda, alpha), early_exit);
        } catch (const NumericalFailure& e) {
            rethrow_with_params(e, lambda, alpha);
        }
    }

private:
    static double require_horizon(const ChainConfig& config) {
        if (!(config.T_reg > 0.0))
            throw InvalidArgument("search needs a positive registration horizon T_reg");
        return config.T_reg;
    }

    SweepEngine engine_;
    int n_;
};

// scans alpha outward from the origin in steps until the probe fires or the
// whole [0, 1] interval is exhausted; returns the hit through `witness`
bool scan_alpha_outward(const SrProbe& probe, double lambda, double step, double threshold,
                        double& witness) {
    for (int k = 0;; ++k) {
        bool any_in_range = false;
        for (const double sgn : {1.0, -1.0}) {
            if (k == 0 && sgn < 0.0) continue;
            const double alpha = witness + sgn * k * step;
            if (alpha < -1e-12 || alpha > 1.0 + 1e-12) continue;
            any_in_range = true;
            const double clamped = std::clamp(alpha, 0.0, 1.0);
            if (probe.max_sr(lambda, clamped, threshold) > threshold) {
                witness = clamped;
                return true;
            }
        }
        if (!any_in_range) return false;
    }
}

}  // namespace

CrossingPoint bisectrix_crossing(const ChainConfig& config, const SearchOptions& opts) {
    const SrProbe probe(config, opts.dt, opts.threads);
    const double fine = 0.005;
    double witness = 0.5;

    // coarse scan; the existence indicator must be monotone for the
    // bisection below to be meaningful
    double lambda_hi = 0.0;
    bool found = false;
    for (int k = 0; k <= 50; ++k) {
        const double lambda = 0.5 + 0.01 * k;
        const bool exists = scan_alpha_outward(probe, lambda, fine, opts.threshold, witness);
        if (exists && !found) {
            lambda_hi = lambda;
            found = true;
        } else if (!exists && found) {
            throw NumericalFailure(
                "entanglement-existence indicator is not monotone along the lambda scan");
        }
    }
    if (!found)
        throw NumericalFailure("end-pair concurrence is zero on the whole bisectrix domain");

    double lambda_lo = std::max(0.5, lambda_hi - 0.01);
    while (lambda_hi - lambda_lo > 1e-4) {
        const double mid = 0.5 * (lambda_lo + lambda_hi);
        if (scan_alpha_outward(probe, mid, fine, opts.threshold, witness))
            lambda_hi = mid;
        else
            lambda_lo = mid;
    }

    // locate the alpha with the strongest end-pair entanglement at the
    // critical lambda: fine bracketing scan, then golden-section inside the
    // bracket (the surrounding plateau is exactly zero, so the bracket has to
    // come from the scan)
    const double no_exit = std::numeric_limits<double>::infinity();
    const double span = 0.05, step = 0.001;
    const double a0 = std::max(0.0, witness - span), a1 = std::min(1.0, witness + span);
    double best_a = witness, best_c = -1.0;
    for (double alpha = a0; alpha <= a1 + 1e-12; alpha += step) {
        const double c = probe.max_sr(lambda_hi, std::min(alpha, 1.0), no_exit);
        if (c > best_c) {
            best_c = c;
            best_a = std::min(alpha, 1.0);
        }
    }
    if (best_c <= opts.threshold)
        throw NumericalFailure("no entangled alpha at the bisected critical lambda");
    double lo = std::max(0.0, best_a - step), hi = std::min(1.0, best_a + step);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = probe.max_sr(lambda_hi, x1, no_exit), f2 = probe.max_sr(lambda_hi, x2, no_exit);
    while (hi - lo > 1e-4) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = probe.max_sr(lambda_hi, x2, no_exit);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = probe.max_sr(lambda_hi, x1, no_exit);
        }
    }
    return {lambda_hi, 0.5 * (lo + hi)};
}

BoundaryCurve boundary_scan(const ChainConfig& config, const std::vector<double>& lambda_R,
                            const std::vector<double>& lambda_S, const BoundaryOptions& opts) {
    if (lambda_R.empty() || lambda_S.empty())
        throw InvalidArgument("boundary scan needs nonempty lambda grids");
    const SrProbe probe(config, opts.dt, opts.threads);
    BoundaryCurve curve;
    curve.lambda_R = lambda_R;
    curve.lambda_S = lambda_S;
    const size_t cols = lambda_S.size();
    curve.entangled.assign(lambda_R.size() * cols, 0);

    const auto entangled_at = [&](double lR, double lS) -> bool {
        if (!opts.independent_angles) {
            for (double alpha = 0.0; alpha <= 1.0 + 1e-12; alpha += opts.alpha_step) {
                const double a = std::min(alpha, 1.0);
                const InitialStateParams params{{lS, a, 0.0}, {lR, a, 0.0}};
                if (probe.max_sr(params, opts.threshold) > opts.threshold) return true;
            }
            return false;
        }
        for (double a1 = 0.0; a1 <= 1.0 + 1e-12; a1 += opts.angle_step) {
            for (double b1 = 0.0; b1 <= 1.0 + 1e-12; b1 += opts.angle_step) {
                const InitialStateParams params{{lS, std::min(a1, 1.0), 0.0},
                                                {lR, std::min(b1, 1.0), 0.0}};
                if (probe.max_sr(params, opts.threshold) > opts.threshold) return true;
            }
        }
        return false;
    };

    parallel_for(curve.entangled.size(), opts.threads, [&](size_t slot) {
        const double lR = lambda_R[slot / cols];
        const double lS = lambda_S[slot % cols];
        curve.entangled[slot] = entangled_at(lR, lS) ? 1 : 0;
    });

    for (size_t r = 0; r < lambda_R.size(); ++r) {
        for (size_t s = 1; s < cols; ++s) {
            if (curve.entangled[r * cols + s - 1] != curve.entangled[r * cols + s])
                curve.points.emplace_back(lambda_R[r], 0.5 * (lambda_S[s - 1] + lambda_S[s]));
        }
    }

    SearchOptions cross_opts;
    cross_opts.threshold = opts.threshold;
    cross_opts.dt = opts.dt;
    cross_opts.threads = opts.threads;
    curve.crossing = bisectrix_crossing(config, cross_opts);
    return curve;
}

}  // namespace xxrelay
