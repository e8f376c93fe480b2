#pragma once

#include <Eigen/Dense>

#include "xxrelay/hamiltonian.hpp"
#include "xxrelay/state.hpp"

namespace xxrelay {

// rho_kl(t) = V_k rho_kl V_l^+ with V_k = Q_k exp(-i E_k t) Q_k^T
BlockDensityMatrix evolve(const BlockDensityMatrix& rho0, const SpectralBlocks& spec, double t);

// Full 2^N Hamiltonian of the chain; site 1 is the most significant bit.
Eigen::MatrixXd full_hamiltonian(const ChainConfig& config);

// Brute-force reference evolution on the full Hilbert space, N <= 6.
Eigen::MatrixXcd full_hilbert_oracle(const InitialStateParams& params, const ChainConfig& config,
                                     double t);

// Embedding of the block state into the 2^N space (zero outside the
// 0/1/2-excitation subspace); test bridge between the two representations.
Eigen::MatrixXcd embed_full(const BlockDensityMatrix& rho, const SectorBasis& basis);

// Partial trace of a full 2^N density matrix down to sites (i, j), 1-based,
// in the two-qubit basis |00>, |01>, |10>, |11>.
Eigen::Matrix4cd reduce_pair_full(const Eigen::MatrixXcd& rho_full, int n, int i, int j);

}  // namespace xxrelay
