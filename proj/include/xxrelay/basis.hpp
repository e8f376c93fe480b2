#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace xxrelay {

struct ChainConfig {
    int N = 10;           // number of spins
    double D = 1.0;       // XY coupling constant
    double T_reg = 0.0;   // registration horizon, set by the optimal-time search
};

// Basis of the 0/1/2-excitation sectors. Sector 1 holds single flipped sites
// 1..N, sector 2 holds site pairs (p,q) with p<q in lexicographic order.
class SectorBasis {
public:
    explicit SectorBasis(int n);

    int n_sites() const { return n_; }
    int dim(int sector) const;

    const std::vector<std::pair<int, int>>& pair_labels() const { return pairs_; }

    // position of site pair (p,q), 1-based sites, either order
    int pair_index(int p, int q) const;

private:
    int n_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> pair_lut_;   // (p-1)*n + (q-1) -> sector-2 index
};

SectorBasis build_basis(const ChainConfig& config);

}  // namespace xxrelay
