#pragma once

#include <Eigen/Dense>

#include "xxrelay/basis.hpp"

namespace xxrelay {

// Real symmetric Hamiltonian blocks of the 0/1/2-excitation sectors.
struct BlockHamiltonian {
    Eigen::MatrixXd h0;   // 1x1, zero
    Eigen::MatrixXd h1;   // tridiagonal, off-diagonal D/2
    Eigen::MatrixXd h2;   // single-hop pair adjacency, entries D/2
};

struct SpectralBlocks {
    Eigen::VectorXd e0, e1, e2;
    Eigen::MatrixXd q0, q1, q2;
};

BlockHamiltonian build_hamiltonian(const ChainConfig& config, const SectorBasis& basis);
SpectralBlocks eigendecompose(const BlockHamiltonian& h);

}  // namespace xxrelay
