#pragma once

#include <Eigen/Dense>
#include <vector>

#include "xxrelay/hamiltonian.hpp"
#include "xxrelay/pair.hpp"
#include "xxrelay/state.hpp"

namespace xxrelay {

// The ten products of sender/receiver matrix entries that the initial state
// factors into; everything downstream is bilinear in these.
struct PairCoefficients {
    cd c00, d1, d2, q02, cS, cR, cX, e1, e2, c2;
};

PairCoefficients pair_coefficients(const InitialStateParams& params);

// Propagated columns of the two nontrivial sector propagators at one time:
// f = V_1 e_sender, g = V_1 e_receiver, h = V_2 e_(1,N).
struct Frame {
    Eigen::VectorXcd f, g, h;
    Eigen::VectorXd h_row;   // h_row(p) = sum_q |h(p,q)|^2
    double h_tot = 0.0;
};

// Parameter-independent contraction of one frame against one site pair;
// reduced states are O(1) bilinear forms in (PairCoefficients, PairContraction).
struct PairContraction {
    cd f_i, f_j, g_i, g_j, h_ij;
    double a_ff, a_gg;
    cd a_fg;
    double b_i, b_j, b_rest;
    cd b_cross;
    cd v_i, v_j, w_i, w_j;
};

class FieldEvaluator {
public:
    explicit FieldEvaluator(const ChainConfig& config);

    const SectorBasis& basis() const { return basis_; }
    const SpectralBlocks& spectra() const { return spectra_; }
    int n_sites() const { return basis_.n_sites(); }

    Frame frame_at(double t) const;

    PairContraction contract_pair(const Frame& frame, int i, int j) const;

    Eigen::Matrix4cd pair_state(const PairCoefficients& coeff, const PairContraction& con) const;
    Eigen::Matrix4cd pair_state(const PairCoefficients& coeff, const Frame& frame, int i, int j) const;

    // populations outside |00> of the end pair (1, N); linear in the coefficients
    double signal(const PairCoefficients& coeff, const Frame& frame) const;

private:
    SectorBasis basis_;
    SpectralBlocks spectra_;
};

// Sampled concurrences of every site pair over a time grid.
class ConcurrenceField {
public:
    ConcurrenceField(std::vector<double> times, const SectorBasis& basis);

    const std::vector<double>& times() const { return times_; }
    int n_sites() const { return n_; }
    int n_pairs() const { return n_pairs_; }

    double at(int t_index, int i, int j) const { return values_[slot(t_index, i, j)]; }
    double& at(int t_index, int i, int j) { return values_[slot(t_index, i, j)]; }

    const std::vector<std::pair<int, int>>& pair_labels() const { return pairs_; }

private:
    size_t slot(int t_index, int i, int j) const;

    std::vector<double> times_;
    int n_, n_pairs_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> pair_lut_;
    std::vector<double> values_;
};

struct FieldOptions {
    int threads = 1;
    // copy C(i,j) to C(N+1-j, N+1-i) instead of recomputing; exact for
    // symmetric sender/receiver parameters
    bool mirror = false;
};

ConcurrenceField compute_field(const InitialStateParams& params, const ChainConfig& config,
                               const std::vector<double>& times, const FieldOptions& opts = {});

}  // namespace xxrelay
