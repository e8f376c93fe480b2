#include "xxrelay/relay.hpp"

#include <cmath>

#include "doctest.h"
#include "xxrelay/errors.hpp"
#include "xxrelay/sweep.hpp"

using namespace xxrelay;

namespace {

// field with C_{i,i+m}(t) = base(m) * (1 + t), easy to average by hand
ConcurrenceField synthetic_field(int n, const std::vector<double>& times) {
    ConcurrenceField field(times, SectorBasis(n));
    for (size_t t = 0; t < times.size(); ++t)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                field.at(static_cast<int>(t), i, j) = 0.1 * (j - i) * (1.0 + times[t]);
    return field;
}

}  // namespace

TEST_CASE("group mean averages pairs at fixed separation") {
    const std::vector<double> times{0.0, 1.0, 2.0};
    const auto field = synthetic_field(5, times);
    for (int m = 1; m <= 4; ++m) {
        const auto c = group_mean(field, m);
        REQUIRE(c.size() == times.size());
        for (size_t t = 0; t < times.size(); ++t)
            CHECK(std::abs(c[t] - 0.1 * m * (1.0 + times[t])) < 1e-14);
    }
    CHECK_THROWS_AS(group_mean(field, 0), InvalidArgument);
    CHECK_THROWS_AS(group_mean(field, 5), InvalidArgument);
}

TEST_CASE("partial sums accumulate the group means") {
    const std::vector<double> times{0.0, 0.5, 1.5, 3.0};
    const auto field = synthetic_field(6, times);
    const auto profile = partial_sums(field);
    REQUIRE(profile.group_means.size() == 5);
    REQUIRE(profile.partial_sums.size() == 5);
    for (size_t t = 0; t < times.size(); ++t) {
        double acc = 0.0;
        for (int m = 1; m <= 5; ++m) {
            acc += profile.group_means[m - 1][t];
            CHECK(std::abs(profile.partial_sums[m - 1][t] - acc) < 1e-14);
        }
        CHECK(profile.relay()[t] == profile.partial_sums[4][t]);
    }
}

TEST_CASE("partial sums are nondecreasing in m") {
    const ChainConfig config{8, 1.0, 0.0};
    const SweepEngine engine(config, 10.0, 0.05);
    const auto field = engine.field_at(symmetric_params(0.7, 0.25), true);
    const auto profile = partial_sums(field);
    for (size_t t = 0; t < profile.times.size(); ++t)
        for (size_t m = 1; m < profile.partial_sums.size(); ++m)
            CHECK(profile.partial_sums[m][t] >= profile.partial_sums[m - 1][t]);
}

TEST_CASE("no pair is entangled at t=0") {
    const ChainConfig config{8, 1.0, 0.0};
    const SweepEngine engine(config, 2.0, 0.1);
    const auto field = engine.field_at(symmetric_params(0.8, 0.4), true);
    const auto profile = partial_sums(field);
    for (const auto& c : profile.group_means) CHECK(c.front() <= 1e-12);
}

TEST_CASE("extrema respect their time windows") {
    const std::vector<double> times{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    ConcurrenceField field(times, SectorBasis(3));
    // C_{1,2}: large at t=0, dips at t=2; the max window sees t=0, the min
    // window starts at t=1
    const std::vector<double> c12{0.9, 0.1, 0.3, 0.4, 0.05, 0.4, 0.6};
    for (size_t t = 0; t < times.size(); ++t) {
        field.at(static_cast<int>(t), 1, 2) = c12[t];
        field.at(static_cast<int>(t), 2, 3) = c12[t];
        field.at(static_cast<int>(t), 1, 3) = 0.0;
    }
    auto profile = partial_sums(field);
    time_extrema(profile, 3.0);
    CHECK(std::abs(profile.extrema[0].s_max - 0.9) < 1e-14);
    CHECK(std::abs(profile.extrema[0].s_min - 0.05) < 1e-14);

    time_extrema(profile, 1.6);
    CHECK(std::abs(profile.extrema[0].s_max - 0.9) < 1e-14);
    CHECK(std::abs(profile.extrema[0].s_min - 0.3) < 1e-14);
}

TEST_CASE("negligibility gaps match the hand computation") {
    const std::vector<double> times{0.0, 1.0, 2.0};
    const auto field = synthetic_field(4, times);
    auto profile = partial_sums(field);
    time_extrema(profile, 2.0);
    const auto gaps = negligibility_gaps(profile);
    REQUIRE(gaps.max_gap.size() == 2);
    // S_m(t) = 0.1 m(m+1)/2 (1+t): maxima at t=2 are 0.3, 0.9, 1.8 and the
    // minima at t=1 are 0.2, 0.6, 1.2
    CHECK(std::abs(gaps.max_gap[0] - (0.9 - 0.3) / 0.3) < 1e-12);
    CHECK(std::abs(gaps.max_gap[1] - (1.8 - 0.9) / 0.9) < 1e-12);
    CHECK(std::abs(gaps.min_gap[0] - (0.6 - 0.2) / 0.2) < 1e-12);
    CHECK(std::abs(gaps.min_gap[1] - (1.2 - 0.6) / 0.6) < 1e-12);
}

TEST_CASE("a resampler relocates extrema on the refined grid") {
    const std::vector<double> times{0.0, 1.0, 2.0, 3.0, 4.0};
    ConcurrenceField field(times, SectorBasis(2));
    auto shape = [](double t) { return 0.5 + 0.4 * std::sin(1.3 * t); };
    for (size_t t = 0; t < times.size(); ++t)
        field.at(static_cast<int>(t), 1, 2) = shape(times[t]);
    auto coarse = partial_sums(field);
    time_extrema(coarse, 4.0);

    auto refined = partial_sums(field);
    time_extrema(refined, 4.0, [&](int m, double t) {
        REQUIRE(m == 1);
        return shape(t);
    });
    CHECK(refined.extrema[0].s_max >= coarse.extrema[0].s_max);
    CHECK(refined.extrema[0].s_min <= coarse.extrema[0].s_min);
    // true max 0.9 at 1.3 t = pi/2, true min 0.1 at 1.3 t = 3 pi/2
    CHECK(std::abs(refined.extrema[0].s_max - 0.9) < 1e-6);
    CHECK(std::abs(refined.extrema[0].s_min - 0.1) < 1e-6);
}

TEST_CASE("extrema validate their input") {
    const std::vector<double> times{0.0, 1.0, 2.0};
    auto profile = partial_sums(synthetic_field(3, times));
    CHECK_THROWS_AS(time_extrema(profile, 0.5), InvalidArgument);
    RelayProfile empty;
    empty.times = {0.0, 0.25, 0.5};
    empty.partial_sums = {{0.1, 0.2, 0.3}};
    empty.group_means = empty.partial_sums;
    CHECK_THROWS_AS(time_extrema(empty, 2.0), InvalidArgument);
    RelayProfile fresh = partial_sums(synthetic_field(3, times));
    CHECK_THROWS_AS(negligibility_gaps(fresh), InvalidArgument);
}

TEST_CASE("halving the time step barely moves the extrema") {
    const ChainConfig config{10, 1.0, 0.0};
    const auto params = symmetric_params(0.7, 0.0);
    std::vector<RelayProfile> profiles;
    for (double dt : {0.01, 0.005}) {
        const SweepEngine engine(config, 12.238, dt);
        auto profile = partial_sums(engine.field_at(params, true));
        time_extrema(profile, 12.238);
        profiles.push_back(std::move(profile));
    }
    for (size_t m = 0; m < profiles[0].extrema.size(); ++m) {
        CHECK(std::abs(profiles[0].extrema[m].s_max - profiles[1].extrema[m].s_max) < 1e-3);
        CHECK(std::abs(profiles[0].extrema[m].s_min - profiles[1].extrema[m].s_min) < 1e-3);
    }
}
