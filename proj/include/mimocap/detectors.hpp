#pragma once

#include <cstdint>

#include "mimocap/common.hpp"
#include "mimocap/geometry.hpp"

namespace mimocap {

/// One random network draw seen by the tagged receiver: the tagged link's
/// dominant mode and, per interferer, the equivalent post-beamforming
/// channel vector, the noise-normalized received power, and the distance
/// (kept for CSI-range filtering).
struct NetworkRealization {
    double signal_power = 0.0;  // alpha0 * p0
    double lambda1 = 0.0;       // dominant singular value of the tagged channel
    CVector u;                  // dominant left singular vector, unit norm
    CMatrix channels;           // m x K, column k is h_k with unit-variance entries
    RVector powers;             // K received powers alpha_k * p_k
    RVector distances;          // K interferer distances

    int K() const { return static_cast<int>(channels.cols()); }
    int antennas() const { return static_cast<int>(channels.rows()); }
};

/// Linear combining weights for the tagged stream.
struct LinearFilter {
    CVector w;
};

/// Draws a complete realization: tagged channel -> dominant mode, K
/// equivalent interferer channels, distances -> powers. Deterministic per
/// (scenario, K, seed).
NetworkRealization build_realization(const Scenario& scen, int K, std::uint64_t seed);

/// Post-detection SINR of the MMSE receiver, computed from the
/// (K+1) x (K+1) Gram matrix: 1/[(I + G~* G~)^{-1}]_{1,1} - 1.
double mmse_sinr(const NetworkRealization& r);

/// Same quantity via the interference-only SVD route:
/// a0p0 lambda^2 u* W (I + D D*)^{-1} W* u. Cross-checks mmse_sinr.
double mmse_sinr_schur(const NetworkRealization& r);

/// [A^{-1}]_{1,1} of a Hermitian positive-definite matrix through the
/// Schur complement of the trailing block.
double schur_inverse_entry(const CMatrix& a);

/// MMSE combining weights (unnormalized direction; realized_sinr is scale
/// invariant).
LinearFilter mmse_filter(const NetworkRealization& r);

/// SINR achieved by an arbitrary linear filter w under the true channel:
/// a0p0 lambda^2 |w*u|^2 / (||w||^2 + sum_k p_k |w*h_k|^2).
double realized_sinr(const LinearFilter& w, const NetworkRealization& r);

/// Zero-forcing receiver: the min(K, m-1) strongest interferers are
/// nulled by orthogonal projection; the rest contribute interference.
double zf_sinr(const NetworkRealization& r);

/// MMSE receiver built only against interferers within scen.csi_range;
/// unknown interference enters the filter as white noise of matching
/// per-antenna power but the returned SINR counts every interferer.
double partial_csi_sinr(const NetworkRealization& r, const Scenario& scen);

/// Dispatch on scen.detector.
double detect_sinr(const Scenario& scen, const NetworkRealization& r);

}  // namespace mimocap
