#include "xxrelay/field.hpp"

#include <complex>

#include "xxrelay/errors.hpp"
#include "xxrelay/parallel.hpp"

namespace xxrelay {

using namespace std::complex_literals;

PairCoefficients pair_coefficients(const InitialStateParams& params) {
    const Eigen::Matrix2cd s = single_qubit_state(params.sender);
    const Eigen::Matrix2cd r = single_qubit_state(params.receiver);
    PairCoefficients c;
    c.c00 = s(0, 0) * r(0, 0);
    c.d1 = s(0, 1) * r(0, 0);
    c.d2 = s(0, 0) * r(0, 1);
    c.q02 = s(0, 1) * r(0, 1);
    c.cS = s(1, 1) * r(0, 0);
    c.cR = s(0, 0) * r(1, 1);
    c.cX = s(1, 0) * r(0, 1);
    c.e1 = s(1, 1) * r(0, 1);
    c.e2 = s(0, 1) * r(1, 1);
    c.c2 = s(1, 1) * r(1, 1);
    return c;
}

FieldEvaluator::FieldEvaluator(const ChainConfig& config)
    : basis_(build_basis(config)), spectra_(eigendecompose(build_hamiltonian(config, basis_))) {}

Frame FieldEvaluator::frame_at(double t) const {
    const int n = basis_.dim(1), k = basis_.dim(2);
    Frame fr;
    const Eigen::VectorXcd ph1 = (-1i * t * spectra_.e1.array()).exp();
    fr.f = spectra_.q1.cast<cd>() * ph1.cwiseProduct(spectra_.q1.row(0).transpose().cast<cd>());
    fr.g = spectra_.q1.cast<cd>() * ph1.cwiseProduct(spectra_.q1.row(n - 1).transpose().cast<cd>());
    const Eigen::VectorXcd ph2 = (-1i * t * spectra_.e2.array()).exp();
    const int start = basis_.pair_index(1, basis_.n_sites());
    fr.h = spectra_.q2.cast<cd>() * ph2.cwiseProduct(spectra_.q2.row(start).transpose().cast<cd>());

    fr.h_row = Eigen::VectorXd::Zero(basis_.n_sites());
    for (int a = 0; a < k; ++a) {
        auto [p, q] = basis_.pair_labels()[a];
        const double w = std::norm(fr.h(a));
        fr.h_row(p - 1) += w;
        fr.h_row(q - 1) += w;
        fr.h_tot += w;
    }
    return fr;
}

PairContraction FieldEvaluator::contract_pair(const Frame& frame, int i, int j) const {
    const int n = basis_.n_sites();
    if (i < 1 || j < 1 || i >= j || j > n)
        throw InvalidArgument("contract_pair needs 1 <= i < j <= N");
    const int ii = i - 1, jj = j - 1;
    const int kij = basis_.pair_index(i, j);

    PairContraction c{};
    c.f_i = frame.f(ii);
    c.f_j = frame.f(jj);
    c.g_i = frame.g(ii);
    c.g_j = frame.g(jj);
    c.h_ij = frame.h(kij);
    for (int p = 0; p < n; ++p) {
        if (p == ii || p == jj) continue;
        const cd fp = frame.f(p), gp = frame.g(p);
        const cd hpi = frame.h(basis_.pair_index(p + 1, i));
        const cd hpj = frame.h(basis_.pair_index(p + 1, j));
        c.a_ff += std::norm(fp);
        c.a_gg += std::norm(gp);
        c.a_fg += fp * std::conj(gp);
        c.b_i += std::norm(hpi);
        c.b_j += std::norm(hpj);
        c.b_cross += hpj * std::conj(hpi);
        c.v_i += fp * std::conj(hpi);
        c.v_j += fp * std::conj(hpj);
        c.w_i += gp * std::conj(hpi);
        c.w_j += gp * std::conj(hpj);
    }
    c.b_rest = frame.h_tot - frame.h_row(ii) - frame.h_row(jj) + std::norm(c.h_ij);
    return c;
}

Eigen::Matrix4cd FieldEvaluator::pair_state(const PairCoefficients& k,
                                            const PairContraction& c) const {
    Eigen::Matrix4cd m;
    m(0, 0) = k.c00 + k.cS * c.a_ff + k.cR * c.a_gg + 2.0 * (k.cX * c.a_fg).real() +
              k.c2 * c.b_rest;
    m(0, 1) = k.d1 * std::conj(c.f_j) + k.d2 * std::conj(c.g_j) + k.e1 * c.v_j + k.e2 * c.w_j;
    m(0, 2) = k.d1 * std::conj(c.f_i) + k.d2 * std::conj(c.g_i) + k.e1 * c.v_i + k.e2 * c.w_i;
    m(0, 3) = k.q02 * std::conj(c.h_ij);
    m(1, 1) = k.cS * std::norm(c.f_j) + k.cR * std::norm(c.g_j) +
              2.0 * (k.cX * c.f_j * std::conj(c.g_j)).real() + k.c2 * c.b_j;
    m(2, 2) = k.cS * std::norm(c.f_i) + k.cR * std::norm(c.g_i) +
              2.0 * (k.cX * c.f_i * std::conj(c.g_i)).real() + k.c2 * c.b_i;
    m(1, 2) = k.cS * c.f_j * std::conj(c.f_i) + k.cR * c.g_j * std::conj(c.g_i) +
              k.cX * c.f_j * std::conj(c.g_i) + std::conj(k.cX) * c.g_j * std::conj(c.f_i) +
              k.c2 * c.b_cross;
    m(1, 3) = (k.e1 * c.f_j + k.e2 * c.g_j) * std::conj(c.h_ij);
    m(2, 3) = (k.e1 * c.f_i + k.e2 * c.g_i) * std::conj(c.h_ij);
    m(3, 3) = k.c2 * std::norm(c.h_ij);
    m(1, 0) = std::conj(m(0, 1));
    m(2, 0) = std::conj(m(0, 2));
    m(3, 0) = std::conj(m(0, 3));
    m(2, 1) = std::conj(m(1, 2));
    m(3, 1) = std::conj(m(1, 3));
    m(3, 2) = std::conj(m(2, 3));
    return m;
}

Eigen::Matrix4cd FieldEvaluator::pair_state(const PairCoefficients& coeff, const Frame& frame,
                                            int i, int j) const {
    return pair_state(coeff, contract_pair(frame, i, j));
}

double FieldEvaluator::signal(const PairCoefficients& k, const Frame& frame) const {
    const int n = basis_.n_sites();
    const PairContraction c = contract_pair(frame, 1, n);
    const double p01 = k.cS.real() * std::norm(c.f_j) + k.cR.real() * std::norm(c.g_j) +
                       2.0 * (k.cX * c.f_j * std::conj(c.g_j)).real() + k.c2.real() * c.b_j;
    const double p10 = k.cS.real() * std::norm(c.f_i) + k.cR.real() * std::norm(c.g_i) +
                       2.0 * (k.cX * c.f_i * std::conj(c.g_i)).real() + k.c2.real() * c.b_i;
    const double p11 = k.c2.real() * std::norm(c.h_ij);
    return p01 + p10 + p11;
}

ConcurrenceField::ConcurrenceField(std::vector<double> times, const SectorBasis& basis)
    : times_(std::move(times)), n_(basis.n_sites()), n_pairs_(basis.dim(2)),
      pairs_(basis.pair_labels()) {
    for (size_t a = 1; a < times_.size(); ++a)
        if (!(times_[a] > times_[a - 1]))
            throw InvalidArgument("time grid must be strictly increasing");
    pair_lut_.assign(static_cast<size_t>(n_) * n_, -1);
    for (int a = 0; a < n_pairs_; ++a) {
        auto [p, q] = pairs_[a];
        pair_lut_[static_cast<size_t>(p - 1) * n_ + (q - 1)] = a;
        pair_lut_[static_cast<size_t>(q - 1) * n_ + (p - 1)] = a;
    }
    values_.assign(times_.size() * static_cast<size_t>(n_pairs_), 0.0);
}

size_t ConcurrenceField::slot(int t_index, int i, int j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_ || t_index < 0 ||
        t_index >= static_cast<int>(times_.size()))
        throw InvalidArgument("field lookup out of range");
    const int a = pair_lut_[static_cast<size_t>(i - 1) * n_ + (j - 1)];
    if (a < 0) throw InvalidArgument("field lookup out of range");
    return static_cast<size_t>(t_index) * n_pairs_ + a;
}

ConcurrenceField compute_field(const InitialStateParams& params, const ChainConfig& config,
                               const std::vector<double>& times, const FieldOptions& opts) {
    const FieldEvaluator eval(config);
    const PairCoefficients coeff = pair_coefficients(params);
    const int n = config.N;
    ConcurrenceField field(times, eval.basis());

    parallel_for(times.size(), opts.threads, [&](size_t ti) {
        const Frame frame = eval.frame_at(field.times()[ti]);
        for (auto [i, j] : field.pair_labels()) {
            const int mi = n + 1 - j, mj = n + 1 - i;
            if (opts.mirror && std::make_pair(mi, mj) < std::make_pair(i, j)) {
                field.at(static_cast<int>(ti), i, j) = field.at(static_cast<int>(ti), mi, mj);
                continue;
            }
            field.at(static_cast<int>(ti), i, j) =
                concurrence(eval.pair_state(coeff, frame, i, j));
        }
    });
    return field;
}

}  // namespace xxrelay
