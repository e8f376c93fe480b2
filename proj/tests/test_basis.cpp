#include "xxrelay/basis.hpp"

#include "doctest.h"
#include "xxrelay/errors.hpp"

using namespace xxrelay;

TEST_CASE("sector dimensions") {
    SectorBasis b(10);
    CHECK(b.dim(0) == 1);
    CHECK(b.dim(1) == 10);
    CHECK(b.dim(2) == 45);
    CHECK(SectorBasis(2).dim(2) == 1);
    CHECK(SectorBasis(5).dim(2) == 10);
    CHECK_THROWS_AS(b.dim(3), InvalidArgument);
}

TEST_CASE("pair labels are lexicographic with p < q") {
    SectorBasis b(6);
    const auto& pairs = b.pair_labels();
    REQUIRE(pairs.size() == 15);
    CHECK(pairs.front() == std::pair<int, int>(1, 2));
    CHECK(pairs.back() == std::pair<int, int>(5, 6));
    for (size_t k = 0; k < pairs.size(); ++k) {
        CHECK(pairs[k].first < pairs[k].second);
        if (k > 0) CHECK(pairs[k - 1] < pairs[k]);
    }
}

TEST_CASE("pair_index inverts the labels in either site order") {
    SectorBasis b(7);
    const auto& pairs = b.pair_labels();
    for (size_t k = 0; k < pairs.size(); ++k) {
        CHECK(b.pair_index(pairs[k].first, pairs[k].second) == static_cast<int>(k));
        CHECK(b.pair_index(pairs[k].second, pairs[k].first) == static_cast<int>(k));
    }
    CHECK_THROWS_AS(b.pair_index(3, 3), InvalidArgument);
    CHECK_THROWS_AS(b.pair_index(0, 2), InvalidArgument);
    CHECK_THROWS_AS(b.pair_index(1, 8), InvalidArgument);
}

TEST_CASE("chain validation") {
    CHECK_THROWS_AS(SectorBasis(1), ConfigError);
    CHECK_THROWS_AS(build_basis(ChainConfig{0, 1.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(build_basis(ChainConfig{5, 0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(build_basis(ChainConfig{5, -1.0, 0.0}), ConfigError);
    CHECK(build_basis(ChainConfig{2, 1.0, 0.0}).n_sites() == 2);
}
