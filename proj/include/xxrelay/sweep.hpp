#pragma once

#include <vector>

#include "xxrelay/field.hpp"

namespace xxrelay {

std::vector<double> make_time_grid(double horizon, double dt);

// Precomputed frames and per-(time, pair) contractions for one chain, shared
// by every parameter point of a sweep. Frames do not depend on the initial
// qubit parameters, so sweeps only pay for 4x4 concurrence evaluations.
class SweepEngine {
public:
    SweepEngine(const ChainConfig& config, double horizon, double dt, int threads = 1);

    const FieldEvaluator& evaluator() const { return eval_; }
    const std::vector<double>& times() const { return times_; }
    int n_sites() const { return eval_.n_sites(); }
    int threads() const { return threads_; }

    const PairContraction& contraction(size_t t_index, int i, int j) const;

    // concurrence of one pair across the whole grid
    std::vector<double> pair_series(const PairCoefficients& coeff, int i, int j) const;

    // max over the grid; stops early once `early_exit` is exceeded (pass +inf
    // or any unreachable value to scan everything)
    double max_pair_concurrence(const PairCoefficients& coeff, int i, int j,
                                double early_exit) const;

    // full field; with mirror=true only canonical pairs are solved and the
    // partner slots are copied (exact for symmetric parameters)
    ConcurrenceField field_at(const InitialStateParams& params, bool mirror) const;

private:
    FieldEvaluator eval_;
    std::vector<double> times_;
    std::vector<PairContraction> contractions_;   // t-major, all pairs
    int threads_;
};

}  // namespace xxrelay
