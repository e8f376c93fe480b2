#include "xxrelay/hamiltonian.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "xxrelay/evolution.hpp"

using namespace xxrelay;

namespace {

BlockHamiltonian blocks_for(int n, double d) {
    const ChainConfig config{n, d, 0.0};
    return build_hamiltonian(config, build_basis(config));
}

}  // namespace

TEST_CASE("two-site single-excitation block") {
    for (double d : {1.0, 2.5}) {
        const auto h = blocks_for(2, d);
        REQUIRE(h.h1.rows() == 2);
        CHECK(h.h1(0, 0) == 0.0);
        CHECK(h.h1(1, 1) == 0.0);
        CHECK(h.h1(0, 1) == doctest::Approx(d / 2).epsilon(1e-15));
        CHECK(h.h1(1, 0) == doctest::Approx(d / 2).epsilon(1e-15));
    }
}

TEST_CASE("blocks are symmetric with zero diagonal") {
    const auto h = blocks_for(7, 1.3);
    CHECK(h.h0(0, 0) == 0.0);
    for (const auto* m : {&h.h1, &h.h2}) {
        CHECK((*m - m->transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(m->diagonal().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("single-excitation block is tridiagonal") {
    const auto h = blocks_for(6, 1.0);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) {
            if (std::abs(r - c) == 1)
                CHECK(h.h1(r, c) == doctest::Approx(0.5).epsilon(1e-15));
            else
                CHECK(h.h1(r, c) == 0.0);
        }
}

TEST_CASE("three-site pair block couples only single-hop labels") {
    const ChainConfig config{3, 1.0, 0.0};
    const auto basis = build_basis(config);
    const auto h = build_hamiltonian(config, basis);
    const int i12 = basis.pair_index(1, 2);
    const int i13 = basis.pair_index(1, 3);
    const int i23 = basis.pair_index(2, 3);
    CHECK(h.h2(i12, i13) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(h.h2(i13, i23) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(h.h2(i12, i23) == 0.0);
}

TEST_CASE("eigenvector matrices are orthogonal") {
    const auto spec = eigendecompose(blocks_for(10, 1.0));
    const auto id1 = Eigen::MatrixXd::Identity(spec.q1.cols(), spec.q1.cols());
    const auto id2 = Eigen::MatrixXd::Identity(spec.q2.cols(), spec.q2.cols());
    CHECK((spec.q1.transpose() * spec.q1 - id1).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((spec.q2.transpose() * spec.q2 - id2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sector-1 spectrum matches the analytic cosine band") {
    const double pi = std::acos(-1.0);
    for (int n = 2; n <= 20; ++n) {
        const double d = 1.0;
        const auto spec = eigendecompose(blocks_for(n, d));
        std::vector<double> expected(n);
        for (int k = 1; k <= n; ++k) expected[k - 1] = d * std::cos(k * pi / (n + 1));
        std::sort(expected.begin(), expected.end());
        REQUIRE(spec.e1.size() == n);
        for (int k = 0; k < n; ++k) CHECK(std::abs(spec.e1(k) - expected[k]) < 1e-10);
    }
}

TEST_CASE("blocks agree with the full-chain Hamiltonian on their sectors") {
    const ChainConfig config{5, 1.7, 0.0};
    const auto basis = build_basis(config);
    const auto h = build_hamiltonian(config, basis);
    const auto full = full_hamiltonian(config);
    const int n = config.N;

    auto site_bit = [n](int site) { return 1 << (n - site); };

    CHECK(full(0, 0) == 0.0);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            CHECK(h.h1(i - 1, j - 1) ==
                  doctest::Approx(full(site_bit(i), site_bit(j))).epsilon(1e-14));

    const auto& pairs = basis.pair_labels();
    for (size_t a = 0; a < pairs.size(); ++a)
        for (size_t b = 0; b < pairs.size(); ++b) {
            const int ia = site_bit(pairs[a].first) | site_bit(pairs[a].second);
            const int ib = site_bit(pairs[b].first) | site_bit(pairs[b].second);
            CHECK(h.h2(a, b) == doctest::Approx(full(ia, ib)).epsilon(1e-14));
        }
}

TEST_CASE("block traces vanish and eigenvalue sums match") {
    const auto h = blocks_for(9, 1.0);
    const auto spec = eigendecompose(h);
    CHECK(std::abs(h.h1.trace()) == 0.0);
    CHECK(std::abs(h.h2.trace()) == 0.0);
    CHECK(std::abs(spec.e1.sum()) < 1e-12);
    CHECK(std::abs(spec.e2.sum()) < 1e-12);
}

TEST_CASE("site reflection leaves the blocks invariant") {
    const int n = 8;
    const ChainConfig config{n, 1.0, 0.0};
    const auto basis = build_basis(config);
    const auto h = build_hamiltonian(config, basis);

    Eigen::MatrixXd p1 = Eigen::MatrixXd::Zero(n, n);
    for (int site = 1; site <= n; ++site) p1(n - site, site - 1) = 1.0;
    CHECK((p1 * h.h1 * p1.transpose() - h.h1).cwiseAbs().maxCoeff() < 1e-14);

    const int k = basis.dim(2);
    Eigen::MatrixXd p2 = Eigen::MatrixXd::Zero(k, k);
    const auto& pairs = basis.pair_labels();
    for (int a = 0; a < k; ++a)
        p2(basis.pair_index(n + 1 - pairs[a].second, n + 1 - pairs[a].first), a) = 1.0;
    CHECK((p2 * h.h2 * p2.transpose() - h.h2).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("eigendecomposition reconstructs the blocks") {
    const auto h = blocks_for(6, 0.8);
    const auto spec = eigendecompose(h);
    const Eigen::MatrixXd r1 = spec.q1 * spec.e1.asDiagonal() * spec.q1.transpose();
    const Eigen::MatrixXd r2 = spec.q2 * spec.e2.asDiagonal() * spec.q2.transpose();
    CHECK((r1 - h.h1).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r2 - h.h2).cwiseAbs().maxCoeff() < 1e-12);
}
