#include "xxrelay/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "xxrelay/errors.hpp"

using namespace xxrelay;

TEST_CASE("time grid covers [0, horizon] with the requested step") {
    const auto grid = make_time_grid(20.0, 0.01);
    CHECK(grid.size() == 2001);
    CHECK(grid.front() == 0.0);
    CHECK(std::abs(grid.back() - 20.0) < 1e-12);
    for (size_t k = 1; k < grid.size(); ++k)
        CHECK(std::abs(grid[k] - grid[k - 1] - 0.01) < 1e-12);
}

TEST_CASE("time grid keeps only on-step points") {
    const auto grid = make_time_grid(0.995, 0.01);
    CHECK(grid.size() == 100);
    CHECK(std::abs(grid.back() - 0.99) < 1e-12);
}

TEST_CASE("time grid rejects degenerate input") {
    CHECK_THROWS_AS(make_time_grid(10.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(make_time_grid(10.0, -0.1), InvalidArgument);
    CHECK_THROWS_AS(make_time_grid(0.0, 0.1), InvalidArgument);
    CHECK_THROWS_AS(make_time_grid(-5.0, 0.1), InvalidArgument);
}

TEST_CASE("pair series reproduces the direct field") {
    const ChainConfig config{6, 1.0, 0.0};
    const SweepEngine engine(config, 8.0, 0.05);
    const auto params = symmetric_params(0.7, 0.2);
    const auto coeff = pair_coefficients(params);
    const auto field = compute_field(params, config, engine.times());
    for (auto [i, j] : field.pair_labels()) {
        const auto series = engine.pair_series(coeff, i, j);
        REQUIRE(series.size() == engine.times().size());
        for (size_t k = 0; k < series.size(); ++k)
            CHECK(std::abs(series[k] - field.at(static_cast<int>(k), i, j)) < 1e-12);
    }
}

TEST_CASE("max over the grid matches the series maximum") {
    const ChainConfig config{6, 1.0, 0.0};
    const SweepEngine engine(config, 8.0, 0.05);
    const auto coeff = pair_coefficients(symmetric_params(0.8, 0.1));
    const double inf = std::numeric_limits<double>::infinity();
    for (auto [i, j] : engine.evaluator().basis().pair_labels()) {
        const auto series = engine.pair_series(coeff, i, j);
        const double expected = *std::max_element(series.begin(), series.end());
        CHECK(std::abs(engine.max_pair_concurrence(coeff, i, j, inf) - expected) < 1e-14);
    }
}

TEST_CASE("early exit returns a value above the threshold when one exists") {
    const ChainConfig config{6, 1.0, 0.0};
    const SweepEngine engine(config, 8.0, 0.05);
    const auto coeff = pair_coefficients(symmetric_params(0.7, 0.0));
    const double inf = std::numeric_limits<double>::infinity();
    const double full = engine.max_pair_concurrence(coeff, 1, 2, inf);
    REQUIRE(full > 0.02);
    const double early = engine.max_pair_concurrence(coeff, 1, 2, 0.02);
    CHECK(early > 0.02);
    CHECK(early <= full + 1e-14);
}

TEST_CASE("engine field matches direct computation for symmetric parameters") {
    const ChainConfig config{7, 1.0, 0.0};
    const SweepEngine engine(config, 6.0, 0.1);
    const auto params = symmetric_params(0.6, 0.35);
    const auto mirrored = engine.field_at(params, true);
    const auto direct = compute_field(params, config, engine.times());
    for (size_t k = 0; k < engine.times().size(); ++k)
        for (auto [i, j] : direct.pair_labels())
            CHECK(std::abs(mirrored.at(static_cast<int>(k), i, j) -
                           direct.at(static_cast<int>(k), i, j)) < 1e-8);
}
