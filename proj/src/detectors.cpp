#include "mimocap/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mimocap/randmat.hpp"
#include "mimocap/rng.hpp"

namespace mimocap {

namespace {

constexpr double kConditionLimit = 1e14;

// Scaled interferer columns sqrt(p_k) h_k.
CMatrix scaled_interferers(const NetworkRealization& r) {
    CMatrix g = r.channels;
    for (int k = 0; k < r.K(); ++k) g.col(k) *= std::sqrt(r.powers(k));
    return g;
}

void guard_conditioning(double frob_sq) {
    // I + X with X PSD: condition number is bounded by 1 + ||X||, and
    // ||X|| <= ||X||_F; cheap and monotone in the true condition number.
    if (1.0 + frob_sq > kConditionLimit)
        throw numeric_failure("detector: interference Gram conditioning exceeds 1e14");
}

}  // namespace

NetworkRealization build_realization(const Scenario& scen, int K, std::uint64_t seed) {
    if (K < 0) throw invalid_parameter("build_realization: K must be >= 0");
    scen.validate();

    // Fixed draw order (tagged channel, interferer channels, distances)
    // pins the determinism contract.
    Rng rng(seed);
    const CMatrix h0 = rng.complex_normal_matrix(scen.m, scen.m);
    const DominantMode mode = dominant_mode(h0);

    NetworkRealization r;
    r.signal_power = scen.signal_power();
    r.lambda1 = mode.lambda1;
    r.u = mode.u;
    r.channels = rng.complex_normal_matrix(scen.m, K);
    r.powers.resize(K);
    r.distances.resize(K);
    const double e2 = scen.eps * scen.eps;
    const double span = scen.R * scen.R - e2;
    for (int k = 0; k < K; ++k) {
        const double c = std::sqrt(e2 + rng.uniform() * span);
        r.distances(k) = c;
        r.powers(k) = received_power(c, scen);
    }
    return r;
}

double mmse_sinr(const NetworkRealization& r) {
    const int K = r.K();
    CMatrix gt(r.antennas(), K + 1);
    gt.col(0) = std::sqrt(r.signal_power) * r.lambda1 * r.u;
    gt.rightCols(K) = scaled_interferers(r);
    guard_conditioning(gt.squaredNorm());

    const int n = K + 1;
    CMatrix a = CMatrix::Identity(n, n) + gt.adjoint() * gt;
    CVector e1 = CVector::Zero(n);
    e1(0) = 1.0;
    const Complex inv11 = a.partialPivLu().solve(e1)(0);
    const double sinr = 1.0 / inv11.real() - 1.0;
    return std::max(sinr, 0.0);
}

double mmse_sinr_schur(const NetworkRealization& r) {
    const int m = r.antennas();
    const double base = r.signal_power * r.lambda1 * r.lambda1;
    if (r.K() == 0) return base * r.u.squaredNorm();

    const CMatrix g1 = scaled_interferers(r);
    guard_conditioning(base + g1.squaredNorm());
    Eigen::JacobiSVD<CMatrix> svd(g1, Eigen::ComputeFullU);
    const CVector y = svd.matrixU().adjoint() * r.u;
    const auto& d = svd.singularValues();

    double quad = 0.0;
    for (int i = 0; i < m; ++i) {
        const double di = i < d.size() ? d(i) : 0.0;
        quad += std::norm(y(i)) / (1.0 + di * di);
    }
    return base * quad;
}

double schur_inverse_entry(const CMatrix& a) {
    if (a.rows() != a.cols() || a.rows() < 1)
        throw invalid_parameter("schur_inverse_entry: matrix must be square");
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + a.cwiseAbs().maxCoeff()))
        throw invalid_parameter("schur_inverse_entry: matrix must be Hermitian");
    const int n = static_cast<int>(a.rows());
    const double a11 = a(0, 0).real();
    if (n == 1) {
        if (a11 <= 0.0) throw invalid_parameter("schur_inverse_entry: matrix must be positive definite");
        return 1.0 / a11;
    }
    const CMatrix block = a.bottomRightCorner(n - 1, n - 1);
    const CVector col = a.col(0).tail(n - 1);
    Eigen::LLT<CMatrix> llt(block);
    if (llt.info() != Eigen::Success)
        throw invalid_parameter("schur_inverse_entry: matrix must be positive definite");
    const double schur = a11 - (col.adjoint() * llt.solve(col))(0).real();
    if (schur <= 0.0)
        throw invalid_parameter("schur_inverse_entry: matrix must be positive definite");
    return 1.0 / schur;
}

LinearFilter mmse_filter(const NetworkRealization& r) {
    const int m = r.antennas();
    const CMatrix g1 = scaled_interferers(r);
    guard_conditioning(g1.squaredNorm());
    const CMatrix cov = CMatrix::Identity(m, m) + g1 * g1.adjoint();
    return {cov.llt().solve(r.u)};
}

double realized_sinr(const LinearFilter& f, const NetworkRealization& r) {
    const double wnorm2 = f.w.squaredNorm();
    if (!(wnorm2 > 0.0)) throw invalid_parameter("realized_sinr: filter must be nonzero");
    const double signal = r.signal_power * r.lambda1 * r.lambda1 * std::norm(f.w.dot(r.u));
    double denom = wnorm2;
    for (int k = 0; k < r.K(); ++k) denom += r.powers(k) * std::norm(f.w.dot(r.channels.col(k)));
    return signal / denom;
}

double zf_sinr(const NetworkRealization& r) {
    const int m = r.antennas();
    const int K = r.K();
    const int ncancel = std::min(K, m - 1);
    if (ncancel == 0) return realized_sinr({r.u}, r);

    std::vector<int> idx(K);
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + ncancel, idx.end(),
                      [&](int a, int b) { return r.powers(a) > r.powers(b); });

    CMatrix strongest(m, ncancel);
    for (int j = 0; j < ncancel; ++j) strongest.col(j) = r.channels.col(idx[j]);
    Eigen::HouseholderQR<CMatrix> qr(strongest);
    const CMatrix q = qr.householderQ() * CMatrix::Identity(m, ncancel);

    CVector w = r.u - q * (q.adjoint() * r.u);
    if (w.norm() <= 1e-12 * r.u.norm()) return 0.0;  // tagged mode lies in the nulled span
    return realized_sinr({std::move(w)}, r);
}

double partial_csi_sinr(const NetworkRealization& r, const Scenario& scen) {
    if (!(scen.csi_range > 0.0))
        throw invalid_parameter("partial_csi_sinr: csi_range must be set");
    const int m = r.antennas();
    double unknown_power = 0.0;
    std::vector<int> known;
    for (int k = 0; k < r.K(); ++k) {
        if (r.distances(k) <= scen.csi_range)
            known.push_back(k);
        else
            unknown_power += r.powers(k);
    }
    // Unknown interference is whitened: each unknown h_k has i.i.d.
    // unit-variance entries, so its expected covariance is p_k * I.
    CMatrix cov = (1.0 + unknown_power) * CMatrix::Identity(m, m);
    double known_frob = 0.0;
    for (int k : known) {
        cov += r.powers(k) * r.channels.col(k) * r.channels.col(k).adjoint();
        known_frob += r.powers(k) * r.channels.col(k).squaredNorm();
    }
    guard_conditioning(known_frob);
    return realized_sinr({cov.llt().solve(r.u)}, r);
}

double detect_sinr(const Scenario& scen, const NetworkRealization& r) {
    switch (scen.detector) {
        case DetectorKind::Mmse: {
            // u* (I + G1 G1*)^{-1} u route; algebraically equal to both
            // mmse_sinr paths and cheapest for repeated evaluation.
            const CVector w = mmse_filter(r).w;
            return r.signal_power * r.lambda1 * r.lambda1 * r.u.dot(w).real();
        }
        case DetectorKind::Zf: return zf_sinr(r);
        case DetectorKind::PartialCsi: return partial_csi_sinr(r, scen);
    }
    return mmse_sinr(r);
}

}  // namespace mimocap
