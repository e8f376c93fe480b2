#include "xxrelay/relay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xxrelay/errors.hpp"

namespace xxrelay {

std::vector<double> group_mean(const ConcurrenceField& field, int m) {
    const int n = field.n_sites();
    if (m < 1 || m > n - 1) throw InvalidArgument("group separation m must lie in [1, N-1]");
    std::vector<double> out(field.times().size(), 0.0);
    for (size_t t = 0; t < out.size(); ++t) {
        double sum = 0.0;
        for (int i = 1; i + m <= n; ++i) sum += field.at(static_cast<int>(t), i, i + m);
        out[t] = sum / (n - m);
    }
    return out;
}

RelayProfile partial_sums(const ConcurrenceField& field) {
    const int n = field.n_sites();
    RelayProfile profile;
    profile.times = field.times();
    profile.group_means.reserve(n - 1);
    for (int m = 1; m <= n - 1; ++m) profile.group_means.push_back(group_mean(field, m));
    profile.partial_sums.resize(n - 1);
    for (int m = 0; m < n - 1; ++m) {
        profile.partial_sums[m] = profile.group_means[m];
        if (m > 0)
            for (size_t t = 0; t < profile.times.size(); ++t)
                profile.partial_sums[m][t] += profile.partial_sums[m - 1][t];
    }
    return profile;
}

namespace {

// best value of +/-resample on a fine grid around the coarse candidate,
// clamped to the admissible window
double refine_extremum(const ProfileResampler& resample, int m, double t_best, double coarse_step,
                       double lo, double hi, double sign, double best) {
    const double a = std::max(lo, t_best - coarse_step);
    const double b = std::min(hi, t_best + coarse_step);
    const double step = 1e-4;
    for (double t = a; t <= b + step / 2; t += step)
        best = std::max(best, sign * resample(m, std::min(t, b)));
    return best;
}

}  // namespace

void time_extrema(RelayProfile& profile, double t_max) {
    time_extrema(profile, t_max, ProfileResampler{});
}

void time_extrema(RelayProfile& profile, double t_max, const ProfileResampler& resample) {
    if (t_max <= 1.0) throw InvalidArgument("extrema interval needs t_max > 1");
    profile.extrema.assign(profile.partial_sums.size(), RelayExtrema{});
    for (size_t m = 0; m < profile.partial_sums.size(); ++m) {
        const auto& s = profile.partial_sums[m];
        double smax = -1.0, smin = std::numeric_limits<double>::infinity();
        size_t kmax = 0, kmin = 0;
        for (size_t t = 0; t < profile.times.size(); ++t) {
            if (profile.times[t] > t_max + 1e-12) break;
            if (s[t] > smax) smax = s[t], kmax = t;
            if (profile.times[t] >= 1.0 - 1e-12 && s[t] < smin) smin = s[t], kmin = t;
        }
        if (smax < 0.0 || !std::isfinite(smin))
            throw InvalidArgument("profile does not cover the extrema interval");
        if (resample) {
            const double step =
                profile.times.size() > 1 ? profile.times[1] - profile.times[0] : 0.0;
            smax = refine_extremum(resample, static_cast<int>(m) + 1, profile.times[kmax], step,
                                   0.0, t_max, 1.0, smax);
            smin = -refine_extremum(resample, static_cast<int>(m) + 1, profile.times[kmin], step,
                                    1.0, t_max, -1.0, -smin);
        }
        profile.extrema[m] = RelayExtrema{smax, smin};
    }
}

RelayGaps negligibility_gaps(const RelayProfile& profile) {
    if (profile.extrema.empty()) throw InvalidArgument("run time_extrema first");
    RelayGaps gaps;
    for (size_t m = 1; m < profile.extrema.size(); ++m) {
        const double pmax = profile.extrema[m - 1].s_max;
        const double pmin = profile.extrema[m - 1].s_min;
        gaps.max_gap.push_back(
            pmax > 0.0 ? std::abs(pmax - profile.extrema[m].s_max) / pmax : 0.0);
        gaps.min_gap.push_back(
            pmin > 0.0 ? std::abs(pmin - profile.extrema[m].s_min) / pmin : 0.0);
    }
    return gaps;
}

}  // namespace xxrelay
