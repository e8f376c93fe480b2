#include "xxrelay/hamiltonian.hpp"

#include <cmath>

#include "xxrelay/errors.hpp"

namespace xxrelay {

BlockHamiltonian build_hamiltonian(const ChainConfig& config, const SectorBasis& basis) {
    const int n = basis.n_sites();
    const double hop = config.D / 2.0;
    BlockHamiltonian h;
    h.h0 = Eigen::MatrixXd::Zero(1, 1);

    h.h1 = Eigen::MatrixXd::Zero(n, n);
    for (int p = 0; p + 1 < n; ++p) {
        h.h1(p, p + 1) = hop;
        h.h1(p + 1, p) = hop;
    }

    const auto& pairs = basis.pair_labels();
    const int k = basis.dim(2);
    h.h2 = Eigen::MatrixXd::Zero(k, k);
    for (int a = 0; a < k; ++a) {
        auto [p, q] = pairs[a];
        // move either excitation one site left or right; the occupied-site
        // collision (p+1 == q etc.) just produces no valid target label
        const int cand[4][2] = {{p - 1, q}, {p + 1, q}, {p, q - 1}, {p, q + 1}};
        for (auto [cp, cq] : cand) {
            if (cp < 1 || cq > basis.n_sites() || cp >= cq) continue;
            h.h2(a, basis.pair_index(cp, cq)) = hop;
        }
    }
    return h;
}

static void solve_block(const Eigen::MatrixXd& h, Eigen::VectorXd& e, Eigen::MatrixXd& q) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("eigendecomposition failed on a sector block");
    e = solver.eigenvalues();
    q = solver.eigenvectors();
    if (!e.allFinite() || !q.allFinite())
        throw NumericalFailure("non-finite spectral data in a sector block");
}

SpectralBlocks eigendecompose(const BlockHamiltonian& h) {
    SpectralBlocks s;
    solve_block(h.h0, s.e0, s.q0);
    solve_block(h.h1, s.e1, s.q1);
    solve_block(h.h2, s.e2, s.q2);
    return s;
}

}  // namespace xxrelay
