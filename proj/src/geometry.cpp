#include "mimocap/geometry.hpp"

#include <cmath>

#include "mimocap/rng.hpp"

namespace mimocap {

std::string to_string(DetectorKind d) {
    switch (d) {
        case DetectorKind::Mmse: return "mmse";
        case DetectorKind::Zf: return "zf";
        case DetectorKind::PartialCsi: return "partial-csi";
    }
    return "mmse";
}

DetectorKind detector_from_string(const std::string& s) {
    if (s == "mmse") return DetectorKind::Mmse;
    if (s == "zf") return DetectorKind::Zf;
    if (s == "partial-csi") return DetectorKind::PartialCsi;
    throw invalid_parameter("detector: expected mmse|zf|partial-csi, got '" + s + "'");
}

void Scenario::validate() const {
    if (m < 1) throw invalid_parameter("m: must be >= 1");
    if (!(eps > 0.0)) throw invalid_parameter("eps: must be > 0");
    if (!(eps < c0)) throw invalid_parameter("eps: must be < c0");
    if (!(c0 <= R)) throw invalid_parameter("c0: must be <= R");
    if (!(theta >= 2.0)) throw invalid_parameter("theta: must be >= 2");
    if (!std::isfinite(snr_db)) throw invalid_parameter("snr_db: must be finite");
    if (!std::isfinite(sinr_th_db)) throw invalid_parameter("sinr_th_db: must be finite");
    if (detector == DetectorKind::PartialCsi && !(csi_range > 0.0))
        throw invalid_parameter("csi_range: must be > 0 for the partial-csi detector");
}

std::vector<double> sample_distances(int K, const Scenario& scen, std::uint64_t seed) {
    if (K < 0) throw invalid_parameter("sample_distances: K must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(K));
    Rng rng(seed);
    const double e2 = scen.eps * scen.eps;
    const double span = scen.R * scen.R - e2;
    for (auto& x : out) x = std::sqrt(e2 + rng.uniform() * span);
    return out;
}

double distance_cdf(double x, const Scenario& scen) {
    if (x <= scen.eps) return 0.0;
    if (x >= scen.R) return 1.0;
    return (x * x - scen.eps * scen.eps) / (scen.R * scen.R - scen.eps * scen.eps);
}

double received_power(double ck, const Scenario& scen) {
    if (!(ck >= scen.eps && ck <= scen.R))
        throw invalid_parameter("received_power: distance outside [eps, R]");
    return std::pow(scen.c0 / ck, scen.theta) * scen.signal_power();
}

std::pair<double, double> interference_power_support(const Scenario& scen) {
    const double a0p0 = scen.signal_power();
    return {std::pow(scen.c0 / scen.R, scen.theta) * a0p0,
            std::pow(scen.c0 / scen.eps, scen.theta) * a0p0};
}

double interference_power_density(double x, const Scenario& scen) {
    const auto [lo, hi] = interference_power_support(scen);
    if (x < lo || x > hi) return 0.0;
    const double a0p0 = scen.signal_power();
    const double th = scen.theta;
    return 2.0 * std::pow(a0p0, 2.0 / th) * scen.c0 * scen.c0 /
           (th * (scen.R * scen.R - scen.eps * scen.eps) * std::pow(x, (th + 2.0) / th));
}

int sample_active_count(double rho0, const Scenario& scen, std::uint64_t seed) {
    if (rho0 < 0.0) throw invalid_parameter("sample_active_count: rho0 must be >= 0");
    if (rho0 == 0.0) return 0;
    Rng rng(seed);
    return rng.poisson(rho0 * scen.disc_area());
}

}  // namespace mimocap
