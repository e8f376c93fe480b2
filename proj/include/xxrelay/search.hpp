#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "xxrelay/sweep.hpp"

namespace xxrelay {

struct CrossingPoint {
    double lambda = 0.0;
    double alpha = 0.0;
};

struct SearchOptions {
    double threshold = 1e-6;  // concurrence level counted as existing entanglement
    double dt = 0.01;         // time grid step of the max-over-time scans
    int threads = 1;
};

// Smallest lambda on [1/2, 1] whose symmetric initial state entangles the end
// pair somewhere on [0, T_reg], and the alpha maximizing that entanglement.
// Coarse lambda scan (step 0.01, indicator asserted monotone), bisection to
// 1e-4; the alpha witness is tracked by outward fine scans because the
// entangled alpha window collapses to a point at the critical lambda.
CrossingPoint bisectrix_crossing(const ChainConfig& config, const SearchOptions& opts = {});

struct BoundaryCurve {
    std::vector<double> lambda_R, lambda_S;
    std::vector<std::uint8_t> entangled;  // row-major over (lambda_R, lambda_S)
    std::vector<std::pair<double, double>> points;  // indicator flips along each row
    CrossingPoint crossing;
};

struct BoundaryOptions {
    double threshold = 1e-6;
    double dt = 0.01;
    double alpha_step = 0.005;        // tied-angle scan resolution
    bool independent_angles = false;  // scan the two rotation angles separately
    double angle_step = 0.02;         // resolution of the independent-angle scan
    int threads = 1;
};

// Zero SR-entanglement region over the (lambda_R, lambda_S) plane. By default
// the two rotation angles are tied and scanned together; independent_angles
// scans them separately for verification.
BoundaryCurve boundary_scan(const ChainConfig& config, const std::vector<double>& lambda_R,
                            const std::vector<double>& lambda_S,
                            const BoundaryOptions& opts = {});

}  // namespace xxrelay
