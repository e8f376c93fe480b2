#include "xxrelay/pair.hpp"

#include <algorithm>
#include <cmath>

#include "xxrelay/errors.hpp"

namespace xxrelay {

TwoQubitState reduce_pair(const BlockDensityMatrix& rho, const SectorBasis& basis, int i, int j) {
    const int n = basis.n_sites();
    if (i < 1 || j < 1 || i >= j || j > n)
        throw InvalidArgument("reduce_pair needs 1 <= i < j <= N");
    const int ii = i - 1, jj = j - 1;
    const int kij = basis.pair_index(i, j);

    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = rho.r00(0, 0);
    m(0, 1) = rho.r01(0, jj);
    m(0, 2) = rho.r01(0, ii);
    m(0, 3) = rho.r02(0, kij);
    m(1, 1) = rho.r11(jj, jj);
    m(2, 2) = rho.r11(ii, ii);
    m(1, 2) = rho.r11(jj, ii);
    m(1, 3) = rho.r12(jj, kij);
    m(2, 3) = rho.r12(ii, kij);
    m(3, 3) = rho.r22(kij, kij);
    for (int p = 1; p <= n; ++p) {
        if (p == i || p == j) continue;
        const int pp = p - 1;
        const int kpi = basis.pair_index(p, i);
        const int kpj = basis.pair_index(p, j);
        m(0, 0) += rho.r11(pp, pp);
        m(0, 1) += rho.r12(pp, kpj);
        m(0, 2) += rho.r12(pp, kpi);
        m(1, 1) += rho.r22(kpj, kpj);
        m(2, 2) += rho.r22(kpi, kpi);
        m(1, 2) += rho.r22(kpj, kpi);
        for (int q = p + 1; q <= n; ++q) {
            if (q == i || q == j) continue;
            const int kpq = basis.pair_index(p, q);
            m(0, 0) += rho.r22(kpq, kpq);
        }
    }
    m(1, 0) = std::conj(m(0, 1));
    m(2, 0) = std::conj(m(0, 2));
    m(3, 0) = std::conj(m(0, 3));
    m(2, 1) = std::conj(m(1, 2));
    m(3, 1) = std::conj(m(1, 3));
    m(3, 2) = std::conj(m(2, 3));
    return TwoQubitState{m, i, j};
}

double concurrence(const Eigen::Matrix4cd& rho) {
    // A two-qubit state is separable iff its partial transpose has
    // nonnegative determinant (it can have at most one negative eigenvalue),
    // which is far cheaper to test than the Wootters spectrum. Only clearly
    // positive determinants short-circuit; borderline cases fall through.
    Eigen::Matrix4cd pt;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) pt(2 * a + d, 2 * c + b) = rho(2 * a + b, 2 * c + d);
    if (pt.determinant().real() > 1e-14) return 0.0;

    // The Wootters values are the singular values of B = G Y G* with
    // G = rho^{1/2} and Y = sy x sy, since B B^+ = G (Y rho* Y) G shares its
    // spectrum with rho * rho~. Singular values are perfectly conditioned,
    // so this stays accurate where the nonsymmetric product matrix has a
    // cluster of near-zero eigenvalues and its eigensolver loses half the
    // digits.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    if (es.info() != Eigen::Success)
        throw NumericalFailure("concurrence eigensolve failed");
    if (es.eigenvalues()(0) < -1e-8)
        throw NumericalFailure("concurrence input has eigenvalue " +
                               std::to_string(es.eigenvalues()(0)));
    Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
    for (int k = 0; k < 4; ++k)
        g += std::sqrt(std::max(0.0, es.eigenvalues()(k))) * es.eigenvectors().col(k) *
             es.eigenvectors().col(k).adjoint();
    Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
    y(0, 3) = -1.0;
    y(1, 2) = 1.0;
    y(2, 1) = 1.0;
    y(3, 0) = -1.0;
    const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(g * y * g.conjugate());
    const Eigen::Vector4d& s = svd.singularValues();
    const double c = s(0) - s(1) - s(2) - s(3);
    return std::clamp(c, 0.0, 1.0);
}

double concurrence(const TwoQubitState& state) { return concurrence(state.matrix); }

double entanglement_of_formation(double c) {
    if (!(c >= 0.0 && c <= 1.0))
        throw InvalidArgument("concurrence must lie in [0,1], got " + std::to_string(c));
    const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
    auto plog2 = [](double v) { return v > 0.0 ? v * std::log2(v) : 0.0; };
    return -plog2(x) - plog2(1.0 - x);
}

double sr_signal(const TwoQubitState& state, int n_sites) {
    if (state.i != 1 || state.j != n_sites)
        throw InvalidArgument("registration signal is defined for the end pair (1, N)");
    const double s =
        state.matrix(1, 1).real() + state.matrix(2, 2).real() + state.matrix(3, 3).real();
    return std::clamp(s, 0.0, 1.0);
}

}  // namespace xxrelay
