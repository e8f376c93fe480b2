#include "xxrelay/basis.hpp"

#include "xxrelay/errors.hpp"

namespace xxrelay {

SectorBasis::SectorBasis(int n) : n_(n) {
    if (n < 2) throw ConfigError("chain needs at least 2 sites, got " + std::to_string(n));
    pairs_.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    pair_lut_.assign(static_cast<size_t>(n) * n, -1);
    for (int p = 1; p <= n; ++p)
        for (int q = p + 1; q <= n; ++q) {
            pair_lut_[static_cast<size_t>(p - 1) * n + (q - 1)] = static_cast<int>(pairs_.size());
            pair_lut_[static_cast<size_t>(q - 1) * n + (p - 1)] = static_cast<int>(pairs_.size());
            pairs_.emplace_back(p, q);
        }
}

int SectorBasis::dim(int sector) const {
    switch (sector) {
        case 0: return 1;
        case 1: return n_;
        case 2: return static_cast<int>(pairs_.size());
        default: throw InvalidArgument("sector must be 0, 1 or 2");
    }
}

int SectorBasis::pair_index(int p, int q) const {
    if (p < 1 || q < 1 || p > n_ || q > n_ || p == q)
        throw InvalidArgument("bad site pair (" + std::to_string(p) + "," + std::to_string(q) + ")");
    return pair_lut_[static_cast<size_t>(p - 1) * n_ + (q - 1)];
}

SectorBasis build_basis(const ChainConfig& config) {
    if (config.D <= 0.0) throw ConfigError("coupling D must be positive");
    return SectorBasis(config.N);
}

}  // namespace xxrelay
