#include "xxrelay/sweep.hpp"

#include <cmath>

#include "xxrelay/errors.hpp"
#include "xxrelay/parallel.hpp"

namespace xxrelay {

namespace {

[[noreturn]] void rethrow_with_time(const NumericalFailure& e, double t, int i, int j) {
    throw NumericalFailure(std::string(e.what()) + " (t=" + std::to_string(t) + ", pair (" +
                           std::to_string(i) + "," + std::to_string(j) + "))");
}

}  // namespace

std::vector<double> make_time_grid(double horizon, double dt) {
    if (!(horizon > 0.0) || !(dt > 0.0)) throw InvalidArgument("horizon and dt must be positive");
    const int count = static_cast<int>(std::floor(horizon / dt + 1e-12)) + 1;
    std::vector<double> grid(count);
    for (int k = 0; k < count; ++k) grid[k] = k * dt;
    return grid;
}

SweepEngine::SweepEngine(const ChainConfig& config, double horizon, double dt, int threads)
    : eval_(config), times_(make_time_grid(horizon, dt)), threads_(threads) {
    const int np = eval_.basis().dim(2);
    contractions_.resize(times_.size() * static_cast<size_t>(np));
    parallel_for(times_.size(), threads_, [&](size_t ti) {
        const Frame frame = eval_.frame_at(times_[ti]);
        for (int a = 0; a < np; ++a) {
            auto [i, j] = eval_.basis().pair_labels()[a];
            contractions_[ti * np + a] = eval_.contract_pair(frame, i, j);
        }
    });
}

const PairContraction& SweepEngine::contraction(size_t t_index, int i, int j) const {
    const int np = eval_.basis().dim(2);
    return contractions_[t_index * np + eval_.basis().pair_index(i, j)];
}

std::vector<double> SweepEngine::pair_series(const PairCoefficients& coeff, int i, int j) const {
    std::vector<double> out(times_.size());
    size_t t = 0;
    try {
        for (; t < times_.size(); ++t)
            out[t] = concurrence(eval_.pair_state(coeff, contraction(t, i, j)));
    } catch (const NumericalFailure& e) {
        rethrow_with_time(e, times_[t], i, j);
    }
    return out;
}

double SweepEngine::max_pair_concurrence(const PairCoefficients& coeff, int i, int j,
                                         double early_exit) const {
    double best = 0.0;
    size_t t = 0;
    try {
        for (; t < times_.size(); ++t) {
            best = std::max(best, concurrence(eval_.pair_state(coeff, contraction(t, i, j))));
            if (best > early_exit) return best;
        }
    } catch (const NumericalFailure& e) {
        rethrow_with_time(e, times_[t], i, j);
    }
    return best;
}

ConcurrenceField SweepEngine::field_at(const InitialStateParams& params, bool mirror) const {
    const PairCoefficients coeff = pair_coefficients(params);
    const int n = eval_.n_sites();
    ConcurrenceField field(times_, eval_.basis());
    parallel_for(times_.size(), threads_, [&](size_t ti) {
        for (auto [i, j] : field.pair_labels()) {
            const int mi = n + 1 - j, mj = n + 1 - i;
            if (mirror && std::make_pair(mi, mj) < std::make_pair(i, j)) {
                field.at(static_cast<int>(ti), i, j) = field.at(static_cast<int>(ti), mi, mj);
                continue;
            }
            try {
                field.at(static_cast<int>(ti), i, j) =
                    concurrence(eval_.pair_state(coeff, contraction(ti, i, j)));
            } catch (const NumericalFailure& e) {
                rethrow_with_time(e, times_[ti], i, j);
            }
        }
    });
    return field;
}

}  // namespace xxrelay
