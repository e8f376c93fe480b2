#include "xxrelay/statistics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "xxrelay/errors.hpp"

using namespace xxrelay;

TEST_CASE("weighted summary matches a hand computation") {
    const auto s = summarize_weighted({0.5, 0.5}, {1.0, 3.0}, Axis::alpha);
    CHECK(std::abs(s.mean - 2.0) < 1e-15);
    CHECK(std::abs(s.deviation - 1.0) < 1e-15);
    CHECK(s.axis == Axis::alpha);

    const auto c = summarize_weighted({0.3, 0.7}, {4.0, 4.0}, Axis::lambda);
    CHECK(std::abs(c.mean - 4.0) < 1e-15);
    CHECK(c.deviation < 1e-15);
    CHECK(c.axis == Axis::lambda);
}

TEST_CASE("non-finite values are reported as numerical failures") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(summarize_weighted({1.0}, {nan}, Axis::alpha), NumericalFailure);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(summarize_weighted({1.0}, {inf}, Axis::alpha), NumericalFailure);
}

TEST_CASE("alpha averages carry the normalized sine weight") {
    // (pi/2) sin(alpha pi) integrates to 1 on [0,1]: constants average to
    // themselves, alpha to 1/2, sin(alpha pi) to pi/4
    const auto unit = mean_over_alpha([](double, double) { return 1.0; }, 0.7);
    CHECK(std::abs(unit.mean - 1.0) < 1e-12);
    const auto lin = mean_over_alpha([](double, double a) { return a; }, 0.7);
    CHECK(std::abs(lin.mean - 0.5) < 1e-12);
    const auto sine = mean_over_alpha(
        [](double, double a) { return std::sin(a * std::numbers::pi); }, 0.7);
    CHECK(std::abs(sine.mean - std::numbers::pi / 4.0) < 1e-12);
    CHECK(unit.deviation < 1e-12);
    CHECK(unit.axis == Axis::alpha);
}

TEST_CASE("lambda averages use the doubled flat weight") {
    const auto unit = mean_over_lambda([](double, double) { return 1.0; }, 0.3);
    CHECK(std::abs(unit.mean - 1.0) < 1e-13);
    const auto lin = mean_over_lambda([](double l, double) { return l; }, 0.3);
    CHECK(std::abs(lin.mean - 0.75) < 1e-13);
    const auto sq = mean_over_lambda([](double l, double) { return l * l; }, 0.3);
    CHECK(std::abs(sq.mean - 7.0 / 12.0) < 1e-13);
    CHECK(sq.deviation > 0.0);
    CHECK(unit.axis == Axis::lambda);
}

TEST_CASE("doubling the node count leaves smooth averages unchanged") {
    const ChainConfig config{6, 1.0, 0.0};
    const FieldEvaluator eval(config);
    const auto frame = eval.frame_at(3.7);
    const auto signal_at = [&](double lambda, double alpha) {
        return eval.signal(pair_coefficients(symmetric_params(lambda, alpha)), frame);
    };
    const auto coarse = mean_over_alpha(signal_at, 0.8, 16);
    const auto fine = mean_over_alpha(signal_at, 0.8, 32);
    CHECK(std::abs(coarse.mean - fine.mean) < 1e-6);
    CHECK(std::abs(coarse.deviation - fine.deviation) < 1e-6);
}

TEST_CASE("the averaged signal starts at its closed-form value") {
    // at t=0 the signal is 1 - (lambda c^2 + (1-lambda) s^2)^2 with
    // c = cos(alpha pi / 2), s = sin(alpha pi / 2); its sine-weighted mean
    // over lambda and alpha is 13/18
    const ChainConfig config{10, 1.0, 0.0};
    const AveragedSignal avg(config);
    CHECK(std::abs(avg(0.0) - 13.0 / 18.0) < 1e-10);

    const auto s0 = [](double lambda, double alpha) {
        const double c = std::cos(alpha * std::numbers::pi / 2.0);
        const double s = std::sin(alpha * std::numbers::pi / 2.0);
        const double keep = lambda * c * c + (1.0 - lambda) * s * s;
        return 1.0 - keep * keep;
    };
    const auto by_quadrature =
        mean_over_lambda([&](double l, double) { return mean_over_alpha(s0, l).mean; }, 0.0);
    CHECK(std::abs(avg(0.0) - by_quadrature.mean) < 1e-12);
}

TEST_CASE("the free function matches the class") {
    const ChainConfig config{5, 1.0, 0.0};
    const AveragedSignal avg(config);
    for (double t : {0.0, 1.4, 5.9}) CHECK(averaged_signal(config, t) == avg(t));
}

TEST_CASE("the averaged signal varies smoothly in time") {
    const ChainConfig config{8, 1.0, 0.0};
    const AveragedSignal avg(config);
    for (double t0 : {0.9, 4.3, 11.6}) {
        CHECK(std::abs(avg(t0 + 0.01) - avg(t0)) < 0.02);
        CHECK(std::abs(avg(t0 + 0.001) - avg(t0)) < 0.002);
    }
}

TEST_CASE("registration time of the ten-site chain") {
    ChainConfig config{10, 1.0, 0.0};
    const double t = optimal_time(config, 20.0);
    CHECK(std::abs(t - 12.238) < 0.005);
    CHECK(config.T_reg == t);
}

TEST_CASE("optimal time rejects flat signals and bad horizons") {
    ChainConfig two{2, 1.0, 0.0};
    CHECK_THROWS_AS(optimal_time(two, 2.0 * std::numbers::pi), NumericalFailure);
    ChainConfig config{10, 1.0, 0.0};
    CHECK_THROWS_AS(optimal_time(config, 0.0), InvalidArgument);
    CHECK_THROWS_AS(optimal_time(config, -3.0), InvalidArgument);
}
