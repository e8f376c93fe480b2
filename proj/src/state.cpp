#include "xxrelay/state.hpp"

#include <cmath>
#include <numbers>

#include "xxrelay/errors.hpp"

namespace xxrelay {

static void check_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw InvalidArgument(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
}

Eigen::Matrix2cd single_qubit_state(const QubitParams& p) {
    check_unit_interval(p.lambda, "lambda");
    check_unit_interval(p.a1, "a1");
    check_unit_interval(p.a2, "a2");
    const double c = std::cos(std::numbers::pi * p.a1 / 2.0);
    const double s = std::sin(std::numbers::pi * p.a1 / 2.0);
    const cd phase = std::polar(1.0, 2.0 * std::numbers::pi * p.a2);
    Eigen::Matrix2cd u;
    u << c, -std::conj(phase) * s,
         phase * s, c;
    Eigen::Matrix2cd lam = Eigen::Vector2cd(p.lambda, 1.0 - p.lambda).asDiagonal();
    return u * lam * u.adjoint();
}

InitialStateParams symmetric_params(double lambda, double alpha) {
    check_unit_interval(lambda, "lambda");
    check_unit_interval(alpha, "alpha");
    QubitParams q{lambda, alpha, 0.0};
    return InitialStateParams{q, q};
}

BlockDensityMatrix::BlockDensityMatrix(const SectorBasis& basis) : n_(basis.n_sites()) {
    const int n = basis.dim(1), k = basis.dim(2);
    r00 = Eigen::MatrixXcd::Zero(1, 1);
    r01 = Eigen::MatrixXcd::Zero(1, n);
    r02 = Eigen::MatrixXcd::Zero(1, k);
    r11 = Eigen::MatrixXcd::Zero(n, n);
    r12 = Eigen::MatrixXcd::Zero(n, k);
    r22 = Eigen::MatrixXcd::Zero(k, k);
}

double BlockDensityMatrix::trace() const {
    return (r00.trace() + r11.trace() + r22.trace()).real();
}

Eigen::MatrixXcd BlockDensityMatrix::assemble() const {
    const int n = static_cast<int>(r11.rows());
    const int k = static_cast<int>(r22.rows());
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(1 + n + k, 1 + n + k);
    full.block(0, 0, 1, 1) = r00;
    full.block(0, 1, 1, n) = r01;
    full.block(0, 1 + n, 1, k) = r02;
    full.block(1, 1, n, n) = r11;
    full.block(1, 1 + n, n, k) = r12;
    full.block(1 + n, 1 + n, k, k) = r22;
    full.block(1, 0, n, 1) = r01.adjoint();
    full.block(1 + n, 0, k, 1) = r02.adjoint();
    full.block(1 + n, 1, k, n) = r12.adjoint();
    return full;
}

BlockDensityMatrix assemble_initial(const InitialStateParams& params, const SectorBasis& basis) {
    const Eigen::Matrix2cd s = single_qubit_state(params.sender);
    const Eigen::Matrix2cd r = single_qubit_state(params.receiver);
    const int n = basis.n_sites();
    const int sender = 0, receiver = n - 1;
    const int both = basis.pair_index(1, n);

    BlockDensityMatrix rho(basis);
    rho.r00(0, 0) = s(0, 0) * r(0, 0);
    rho.r01(0, sender) = s(0, 1) * r(0, 0);
    rho.r01(0, receiver) = s(0, 0) * r(0, 1);
    rho.r02(0, both) = s(0, 1) * r(0, 1);
    rho.r11(sender, sender) = s(1, 1) * r(0, 0);
    rho.r11(receiver, receiver) = s(0, 0) * r(1, 1);
    rho.r11(sender, receiver) = s(1, 0) * r(0, 1);
    rho.r11(receiver, sender) = std::conj(rho.r11(sender, receiver));
    rho.r12(sender, both) = s(1, 1) * r(0, 1);
    rho.r12(receiver, both) = s(0, 1) * r(1, 1);
    rho.r22(both, both) = s(1, 1) * r(1, 1);
    return rho;
}

}  // namespace xxrelay
