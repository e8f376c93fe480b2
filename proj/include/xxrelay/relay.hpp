#pragma once

#include <functional>
#include <vector>

#include "xxrelay/field.hpp"

namespace xxrelay {

struct RelayExtrema {
    double s_max = 0.0;   // max over [0, t_max]
    double s_min = 0.0;   // min over [1, t_max]
};

struct RelayProfile {
    std::vector<double> times;
    // group_means[m-1][t_index] = C_m(t); partial_sums likewise
    std::vector<std::vector<double>> group_means;
    std::vector<std::vector<double>> partial_sums;
    std::vector<RelayExtrema> extrema;      // filled by time_extrema
    const std::vector<double>& relay() const { return partial_sums.back(); }
};

// C_m(t) = (1/(N-m)) * sum_i C_{i,i+m}(t)
std::vector<double> group_mean(const ConcurrenceField& field, int m);

// S_m(t) = sum_{k<=m} C_k(t); the relay entanglement is S_{N-1}
RelayProfile partial_sums(const ConcurrenceField& field);

// S_m at an arbitrary off-grid time, for extremum refinement
using ProfileResampler = std::function<double(int m, double t)>;

// Per-m max over [0, t_max] and min over [1, t_max]. With a resampler the
// extrema are relocated on a refined grid (step 1e-4) around the coarse
// candidates; without one the coarse grid values are reported.
void time_extrema(RelayProfile& profile, double t_max);
void time_extrema(RelayProfile& profile, double t_max, const ProfileResampler& resample);

// relative negligibility gaps |S_{m-1}^max - S_m^max| / S_{m-1}^max, m = 2..N-1,
// and the same for the minima
struct RelayGaps {
    std::vector<double> max_gap;
    std::vector<double> min_gap;
};
RelayGaps negligibility_gaps(const RelayProfile& profile);

}  // namespace xxrelay
