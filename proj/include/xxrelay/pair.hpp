#pragma once

#include <Eigen/Dense>

#include "xxrelay/state.hpp"

namespace xxrelay {

// Reduced two-site density matrix in the ordered basis |00>, |01>, |10>, |11>
// (left slot = site i, right slot = site j).
struct TwoQubitState {
    Eigen::Matrix4cd matrix;
    int i = 0;
    int j = 0;
};

TwoQubitState reduce_pair(const BlockDensityMatrix& rho, const SectorBasis& basis, int i, int j);

// Wootters concurrence from the spectrum of rho * (sy x sy) * conj(rho) * (sy x sy).
double concurrence(const TwoQubitState& state);
double concurrence(const Eigen::Matrix4cd& rho);

// E(C) = h((1 + sqrt(1-C^2))/2) with the binary entropy h
double entanglement_of_formation(double c);

// Registration signal: total population outside |00> of the end pair (1, N).
double sr_signal(const TwoQubitState& state, int n_sites);

}  // namespace xxrelay
