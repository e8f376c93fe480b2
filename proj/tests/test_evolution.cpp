#include "xxrelay/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "xxrelay/errors.hpp"

using namespace xxrelay;

namespace {

InitialStateParams random_params(std::mt19937& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {{u(gen), u(gen), u(gen)}, {u(gen), u(gen), u(gen)}};
}

}  // namespace

TEST_CASE("zero-time evolution is the identity") {
    const ChainConfig config{5, 1.0, 0.0};
    const auto basis = build_basis(config);
    const auto spec = eigendecompose(build_hamiltonian(config, basis));
    std::mt19937 gen(3);
    const auto rho0 = assemble_initial(random_params(gen), basis);
    const auto rho = evolve(rho0, spec, 0.0);
    CHECK((rho.assemble() - rho0.assemble()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("negative time is rejected") {
    const ChainConfig config{3, 1.0, 0.0};
    const auto basis = build_basis(config);
    const auto spec = eigendecompose(build_hamiltonian(config, basis));
    const auto rho0 = assemble_initial(symmetric_params(0.7, 0.1), basis);
    CHECK_THROWS_AS(evolve(rho0, spec, -0.5), InvalidArgument);
}

TEST_CASE("two-site excitation transfer follows sin^2(t/2)") {
    const ChainConfig config{2, 1.0, 0.0};
    const auto basis = build_basis(config);
    const auto spec = eigendecompose(build_hamiltonian(config, basis));
    // sender excited, receiver ground
    const auto rho0 = assemble_initial({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}, basis);
    CHECK(std::abs(rho0.r11(0, 0) - 1.0) < 1e-14);
    const double pi = std::acos(-1.0);
    for (double t : {0.3, 1.0, 2.5, pi}) {
        const auto rho = evolve(rho0, spec, t);
        const double p2 = rho.r11(1, 1).real();
        CHECK(std::abs(p2 - std::sin(t / 2) * std::sin(t / 2)) < 1e-12);
    }
    const auto swapped = evolve(rho0, spec, pi);
    CHECK(std::abs(swapped.r11(1, 1).real() - 1.0) < 1e-12);
}

TEST_CASE("evolution preserves trace, Hermiticity, and the spectrum") {
    const ChainConfig config{5, 1.0, 0.0};
    const auto basis = build_basis(config);
    const auto spec = eigendecompose(build_hamiltonian(config, basis));
    std::mt19937 gen(17);
    std::uniform_real_distribution<double> ut(0.0, 20.0);
    for (int trial = 0; trial < 5; ++trial) {
        const auto rho0 = assemble_initial(random_params(gen), basis);
        const auto rho = evolve(rho0, spec, ut(gen));
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
        const auto full = rho.assemble();
        CHECK((full - full.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e0(rho0.assemble()), e1(full);
        CHECK((e0.eigenvalues() - e1.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("diagonal block traces are conserved") {
    const ChainConfig config{6, 1.0, 0.0};
    const auto basis = build_basis(config);
    const auto spec = eigendecompose(build_hamiltonian(config, basis));
    std::mt19937 gen(23);
    const auto rho0 = assemble_initial(random_params(gen), basis);
    const double w0 = rho0.r00.trace().real();
    const double w1 = rho0.r11.trace().real();
    const double w2 = rho0.r22.trace().real();
    for (double t : {0.7, 4.2, 13.9}) {
        const auto rho = evolve(rho0, spec, t);
        CHECK(std::abs(rho.r00.trace().real() - w0) < 1e-12);
        CHECK(std::abs(rho.r11.trace().real() - w1) < 1e-12);
        CHECK(std::abs(rho.r22.trace().real() - w2) < 1e-12);
    }
}

TEST_CASE("block evolution matches the full-Hilbert oracle") {
    std::mt19937 gen(31);
    std::uniform_real_distribution<double> ut(0.0, 20.0);
    for (int n = 2; n <= 6; ++n) {
        const ChainConfig config{n, 1.0, 0.0};
        const auto basis = build_basis(config);
        const auto spec = eigendecompose(build_hamiltonian(config, basis));
        for (int trial = 0; trial < 3; ++trial) {
            const auto params = random_params(gen);
            const auto rho0 = assemble_initial(params, basis);
            for (int k = 0; k < 3; ++k) {
                const double t = ut(gen);
                const auto block = embed_full(evolve(rho0, spec, t), basis);
                const auto oracle = full_hilbert_oracle(params, config, t);
                CHECK((block - oracle).cwiseAbs().maxCoeff() < 1e-10);
            }
        }
    }
}

TEST_CASE("oracle keeps no weight outside the low-excitation subspace") {
    const ChainConfig config{5, 1.0, 0.0};
    std::mt19937 gen(37);
    const auto params = random_params(gen);
    const auto oracle = full_hilbert_oracle(params, config, 7.3);
    CHECK(std::abs(oracle.trace().real() - 1.0) < 1e-12);
    for (int idx = 0; idx < 32; ++idx) {
        int bits = 0;
        for (int b = 0; b < 5; ++b) bits += (idx >> b) & 1;
        if (bits > 2) CHECK(std::abs(oracle(idx, idx)) < 1e-12);
    }
}

TEST_CASE("oracle size guard") {
    const ChainConfig config{7, 1.0, 0.0};
    CHECK_THROWS_AS(full_hilbert_oracle(symmetric_params(0.7, 0.1), config, 1.0), SizeLimitError);
}

TEST_CASE("pair reduction of a kron product recovers the factors") {
    // three sites in the states a, b, c; tracing out the middle leaves a x c
    Eigen::Matrix2cd a = single_qubit_state({0.8, 0.2, 0.1});
    Eigen::Matrix2cd b = single_qubit_state({0.4, 0.7, 0.0});
    Eigen::Matrix2cd c = single_qubit_state({0.6, 0.5, 0.9});
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(8, 8);
    for (int r = 0; r < 8; ++r)
        for (int s = 0; s < 8; ++s)
            full(r, s) = a((r >> 2) & 1, (s >> 2) & 1) * b((r >> 1) & 1, (s >> 1) & 1) *
                         c(r & 1, s & 1);
    const auto red = reduce_pair_full(full, 3, 1, 3);
    Eigen::Matrix4cd expect;
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
            expect(r, s) = a((r >> 1) & 1, (s >> 1) & 1) * c(r & 1, s & 1);
    CHECK((red - expect).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_THROWS_AS(reduce_pair_full(full, 3, 2, 2), InvalidArgument);
}

TEST_CASE("reflection invariance of the evolved symmetric state") {
    const int n = 5;
    const ChainConfig config{n, 1.0, 0.0};
    const auto basis = build_basis(config);
    const auto spec = eigendecompose(build_hamiltonian(config, basis));
    const auto rho0 = assemble_initial(symmetric_params(0.75, 0.4), basis);
    const int dim = 1 << n;
    auto flip = [n](int idx) {
        int out = 0;
        for (int b = 0; b < n; ++b)
            if (idx & (1 << b)) out |= 1 << (n - 1 - b);
        return out;
    };
    for (double t : {1.3, 6.8}) {
        const auto full = embed_full(evolve(rho0, spec, t), basis);
        Eigen::MatrixXcd reflected(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) reflected(flip(r), flip(c)) = full(r, c);
        CHECK((reflected - full).cwiseAbs().maxCoeff() < 1e-10);
    }
}
