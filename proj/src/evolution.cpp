#include "xxrelay/evolution.hpp"

#include <complex>

#include "xxrelay/errors.hpp"

namespace xxrelay {

using namespace std::complex_literals;

static Eigen::MatrixXcd propagator(const Eigen::VectorXd& e, const Eigen::MatrixXd& q, double t) {
    Eigen::VectorXcd phases = (-1i * t * e.array()).exp();
    return q.cast<cd>() * phases.asDiagonal() * q.transpose().cast<cd>();
}

BlockDensityMatrix evolve(const BlockDensityMatrix& rho0, const SpectralBlocks& spec, double t) {
    if (t < 0.0) throw InvalidArgument("negative evolution time");
    const Eigen::MatrixXcd v1 = propagator(spec.e1, spec.q1, t);
    const Eigen::MatrixXcd v2 = propagator(spec.e2, spec.q2, t);

    BlockDensityMatrix out = rho0;
    out.r00 = rho0.r00;                      // sector 0 has zero energy
    out.r01 = rho0.r01 * v1.adjoint();
    out.r02 = rho0.r02 * v2.adjoint();
    out.r11 = v1 * rho0.r11 * v1.adjoint();
    out.r12 = v1 * rho0.r12 * v2.adjoint();
    out.r22 = v2 * rho0.r22 * v2.adjoint();
    if (!out.r11.allFinite() || !out.r22.allFinite())
        throw NumericalFailure("non-finite state after evolution at t=" + std::to_string(t));
    return out;
}

Eigen::MatrixXd full_hamiltonian(const ChainConfig& config) {
    if (config.N > 6) throw SizeLimitError("full-Hilbert path is limited to N<=6");
    const int n = config.N;
    const int dim = 1 << n;
    const double hop = config.D / 2.0;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        for (int p = 1; p < n; ++p) {
            const int bp = (s >> (n - p)) & 1;
            const int bq = (s >> (n - p - 1)) & 1;
            if (bp == bq) continue;
            const int s2 = s ^ (1 << (n - p)) ^ (1 << (n - p - 1));
            h(s2, s) += hop;
        }
    }
    return h;
}

static Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::MatrixXcd full_hilbert_oracle(const InitialStateParams& params, const ChainConfig& config,
                                     double t) {
    if (config.N > 6) throw SizeLimitError("full-Hilbert oracle is limited to N<=6");
    if (t < 0.0) throw InvalidArgument("negative evolution time");
    const int n = config.N;
    const int mid = 1 << (n - 2);
    Eigen::MatrixXcd tl = Eigen::MatrixXcd::Zero(mid, mid);
    tl(0, 0) = 1.0;
    const Eigen::MatrixXcd rho0 =
        kron(kron(single_qubit_state(params.sender), tl), single_qubit_state(params.receiver));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(full_hamiltonian(config));
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("full-Hilbert eigendecomposition failed");
    const Eigen::VectorXcd phases = (-1i * t * solver.eigenvalues().array()).exp();
    const Eigen::MatrixXcd u =
        solver.eigenvectors().cast<cd>() * phases.asDiagonal() * solver.eigenvectors().transpose().cast<cd>();
    return u * rho0 * u.adjoint();
}

Eigen::MatrixXcd embed_full(const BlockDensityMatrix& rho, const SectorBasis& basis) {
    const int n = basis.n_sites();
    const int dim = 1 << n;
    // full-space index of each sector label, site 1 = most significant bit
    std::vector<int> code;
    code.push_back(0);
    for (int p = 1; p <= n; ++p) code.push_back(1 << (n - p));
    for (auto [p, q] : basis.pair_labels()) code.push_back((1 << (n - p)) | (1 << (n - q)));

    const Eigen::MatrixXcd small = rho.assemble();
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (int a = 0; a < small.rows(); ++a)
        for (int b = 0; b < small.cols(); ++b) full(code[a], code[b]) = small(a, b);
    return full;
}

Eigen::Matrix4cd reduce_pair_full(const Eigen::MatrixXcd& rho_full, int n, int i, int j) {
    if (i < 1 || j < 1 || i >= j || j > n) throw InvalidArgument("bad pair for partial trace");
    const int dim = 1 << n;
    const int bi = n - i, bj = n - j;
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    const int mask = ~((1 << bi) | (1 << bj));
    for (int s = 0; s < dim; ++s) {
        const int a = (((s >> bi) & 1) << 1) | ((s >> bj) & 1);
        for (int s2 = 0; s2 < dim; ++s2) {
            if ((s & mask) != (s2 & mask)) continue;
            const int b = (((s2 >> bi) & 1) << 1) | ((s2 >> bj) & 1);
            out(a, b) += rho_full(s, s2);
        }
    }
    return out;
}

}  // namespace xxrelay
