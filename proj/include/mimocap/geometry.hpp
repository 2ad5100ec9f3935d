#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "mimocap/common.hpp"

namespace mimocap {

enum class DetectorKind { Mmse, Zf, PartialCsi };

std::string to_string(DetectorKind d);
DetectorKind detector_from_string(const std::string& s);

/// Physical and network parameters of one evaluation scenario. Distances
/// are in units of the tagged-link length by default (c0 = 1), powers are
/// noise-normalized (unit-variance AWGN).
struct Scenario {
    int m = 4;               // antennas per node
    double c0 = 1.0;         // tagged-link length
    double R = 3.0;          // interference radius
    double eps = 0.1;        // minimum interferer separation
    double theta = 4.0;      // path-loss exponent
    double snr_db = 20.0;    // transmit SNR: alpha0*p0 = 10^(snr_db/10)
    double sinr_th_db = 10.0;  // decoding threshold
    DetectorKind detector = DetectorKind::Mmse;
    double csi_range = 2.0;  // channel-monitoring range (partial CSI only)

    double signal_power() const { return std::pow(10.0, snr_db / 10.0); }
    double sinr_threshold() const { return std::pow(10.0, sinr_th_db / 10.0); }
    double disc_area() const { return 3.14159265358979323846 * R * R; }

    /// Throws invalid_parameter naming the offending field.
    void validate() const;
};

/// K i.i.d. interferer distances with density 2x/(R^2 - eps^2) on
/// [eps, R], drawn by inverse CDF; deterministic per seed.
std::vector<double> sample_distances(int K, const Scenario& scen, std::uint64_t seed);

/// Analytic CDF of the interferer distance, (x^2 - eps^2)/(R^2 - eps^2)
/// clipped to [0, 1].
double distance_cdf(double x, const Scenario& scen);

/// Noise-normalized received power (c0/ck)^theta * alpha0*p0 from an
/// interferer at distance ck in [eps, R].
double received_power(double ck, const Scenario& scen);

/// Density of the received interference power; zero outside
/// [(c0/R)^theta, (c0/eps)^theta] * alpha0*p0.
double interference_power_density(double x, const Scenario& scen);

/// Support of the interference power distribution (lo, hi).
std::pair<double, double> interference_power_support(const Scenario& scen);

/// Poisson draw of the total active-link count with mean rho0*pi*R^2.
/// A draw of n means n links are active, of which n-1 interfere with the
/// tagged one.
int sample_active_count(double rho0, const Scenario& scen, std::uint64_t seed);

}  // namespace mimocap
