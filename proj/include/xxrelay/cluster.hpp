#pragma once

#include <utility>
#include <vector>

#include "xxrelay/sweep.hpp"

namespace xxrelay {

struct ClusterSpec {
    int M = 2;               // number of adjacent spins
    int i = 1;               // first site of the cluster
    double epsilon_C = 0.1;  // destruction threshold on the geometric mean
};

void validate_cluster(const ClusterSpec& spec, int n_sites);

// site pairs inside {i, ..., i+M-1}, lexicographic
std::vector<std::pair<int, int>> cluster_pairs(const ClusterSpec& spec);

struct ClusterReport {
    double p_max = 0.0;
    double t_peak = 0.0;
    double lifetime = 0.0;
    double t_l = 0.0;
    double t_r = 0.0;
    bool exists = false;
};

struct CriticalValues {
    double lambda_c = 0.0;
    double alpha_c = 0.0;
    bool defined = false;
};

// P_{M,i}(t) = (product of the cluster's pair concurrences)^(2/(M(M-1)))
double geometric_mean(const ConcurrenceField& field, const ClusterSpec& spec, int t_index);

std::vector<double> cluster_series(const ConcurrenceField& field, const ClusterSpec& spec);

// peak of P over the field's grid (parabolic refinement) plus the contiguous
// super-threshold interval around it; crossings located by interpolation
ClusterReport cluster_report(const ConcurrenceField& field, const ClusterSpec& spec);
ClusterReport report_from_series(const std::vector<double>& times, const std::vector<double>& p,
                                 double epsilon);

// every maximal interval with P >= epsilon_C, diagnostic companion to the
// single peak interval of cluster_report
std::vector<std::pair<double, double>> threshold_intervals(const ConcurrenceField& field,
                                                           const ClusterSpec& spec);

struct CriticalGrid {
    std::vector<double> lambdas;  // ascending, within [1/2, 1]
    std::vector<double> alphas;   // ascending, within [0, 1]
};

// lambda step 0.01 on [1/2, 1], alpha step 0.02 on [0, 1]
CriticalGrid default_critical_grid();

// Smallest grid lambda / largest grid alpha at which the cluster exists for a
// symmetric initial state somewhere on the engine's time grid. Existence is
// P_max > existence_threshold; the epsilon_C destruction threshold only enters
// lifetimes, it is far too coarse to delimit where clusters appear at all.
CriticalValues critical_values(const SweepEngine& engine, const ClusterSpec& spec,
                               const CriticalGrid& grid, double existence_threshold = 1e-6);
CriticalValues critical_values(const ChainConfig& config, const ClusterSpec& spec,
                               const CriticalGrid& grid, double existence_threshold = 1e-6,
                               int threads = 1);

struct ClusterGridPoint {
    double lambda = 0.0;
    double alpha = 0.0;
    ClusterReport report;
};

// cluster_report at every symmetric (lambda, alpha) grid point
std::vector<ClusterGridPoint> cluster_grid(const SweepEngine& engine, const ClusterSpec& spec,
                                           const CriticalGrid& grid);

struct MiddlePairSurfaces {
    std::vector<double> lambdas, alphas;
    std::vector<double> c_edge;    // max over time of C_{1,2}, row-major (lambda, alpha)
    std::vector<double> c_middle;  // max over time of C_{N/2, N/2+1}
};

MiddlePairSurfaces middle_pair_scan(const SweepEngine& engine, const CriticalGrid& grid);

}  // namespace xxrelay
