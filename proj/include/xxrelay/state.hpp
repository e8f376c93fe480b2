#pragma once

#include <Eigen/Dense>
#include <complex>

#include "xxrelay/basis.hpp"

namespace xxrelay {

using cd = std::complex<double>;

struct QubitParams {
    double lambda = 1.0;  // eigenvalue of the qubit density matrix
    double a1 = 0.0;      // eigenvector rotation angle, units of pi/2
    double a2 = 0.0;      // eigenvector phase, units of 2*pi
};

struct InitialStateParams {
    QubitParams sender;
    QubitParams receiver;
};

// rho = U diag(lambda, 1-lambda) U^+ in the {|0>=ground, |1>=excited} basis
Eigen::Matrix2cd single_qubit_state(const QubitParams& p);

// lambda^R = lambda^S, alpha_1 = beta_1, phases zero
InitialStateParams symmetric_params(double lambda, double alpha);

// Density matrix over the 0/1/2-excitation subspace, stored as sector-pair
// blocks r[k][l]; only k <= l is kept, the rest is implied by Hermiticity.
class BlockDensityMatrix {
public:
    BlockDensityMatrix(const SectorBasis& basis);

    Eigen::MatrixXcd r00, r01, r02;   // 1x1, 1xN, 1xK
    Eigen::MatrixXcd r11, r12;        // NxN, NxK
    Eigen::MatrixXcd r22;             // KxK

    int n_sites() const { return n_; }

    double trace() const;

    // dense (1+N+K)-dimensional Hermitian assembly, for checks and tests
    Eigen::MatrixXcd assemble() const;

private:
    int n_;
};

BlockDensityMatrix assemble_initial(const InitialStateParams& params, const SectorBasis& basis);

}  // namespace xxrelay
