#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>

#include "mimocap/common.hpp"

namespace mimocap {

/// Largest singular value of a complex Gaussian matrix together with the
/// corresponding unit-norm left/right singular vectors. The global phase
/// is fixed so that the first nonzero entry of u is real-nonnegative.
struct DominantMode {
    double lambda1 = 0.0;
    CVector u;
    CVector v;
};

/// m x m matrix with i.i.d. unit-variance complex Gaussian entries
/// (real/imaginary parts N(0, 1/2) each). Identical seeds reproduce the
/// matrix bit-for-bit.
CMatrix sample_channel(int m, std::uint64_t seed);

/// Dominant singular triple of a square matrix.
DominantMode dominant_mode(const CMatrix& h);

/// Moments E(|u_i|^2), E(|u_i|^4) and E(|u_i|^2 |u_j|^2), i != j, of the
/// entries of a unit-norm isotropic complex vector of length m:
/// (1/m, 2/(m(m+1)), 1/(m(m+1))). The cross moment is reported as 0 at
/// m = 1 where no distinct pair exists.
struct SphereEntryMoments {
    double e2;
    double e4;
    double cross;
};
SphereEntryMoments sphere_entry_moments(int m);

inline constexpr std::int64_t kDefaultMomentSamples = 1000000;
inline constexpr std::uint64_t kDefaultMomentSeed = 0x6C616D626461ULL;

enum class MomentBackend { MonteCarlo, Exact };

/// First two moments of the largest squared singular value, tagged with
/// the backend that produced them.
struct LambdaMoments {
    int m = 0;
    double moment1 = 0.0;  // E[lambda_max^2]
    double moment2 = 0.0;  // E[lambda_max^4]
    MomentBackend method = MomentBackend::MonteCarlo;
    std::int64_t samples = 0;  // 0 for the exact backend
};

/// Both moments from the chosen backend; enforces moment2 >= moment1^2
/// and 1 <= moment1 <= m^2.
LambdaMoments lambda_moments_summary(int m, MomentBackend backend = MomentBackend::MonteCarlo,
                                     std::int64_t samples = kDefaultMomentSamples,
                                     std::uint64_t seed = kDefaultMomentSeed);

/// E[(lambda_max^2)^tau] for the largest squared singular value of an
/// m x m unit-variance complex Gaussian matrix, tau in {1, 2}. Monte
/// Carlo backend with per-sample counter seeding; deterministic given
/// (m, tau, samples, seed) and cached per key (optionally on disk, see
/// MomentCache).
double lambda_moments(int m, int tau,
                      std::int64_t samples = kDefaultMomentSamples,
                      std::uint64_t seed = kDefaultMomentSeed,
                      Execution exec = Execution::Parallel);

/// Exact backend: integrates the largest-eigenvalue CDF of the m x m
/// unit-variance complex Wishart matrix, written as a determinant of
/// lower incomplete gamma functions. Independent of the sampling path;
/// used as a cross-check.
double lambda_moment_exact(int m, int tau);

/// CDF of the largest eigenvalue of an m x m unit-variance complex
/// Wishart matrix (exposed for tests).
double wishart_lmax_cdf(double x, int m);

/// Process-wide cache for lambda_moments results, keyed by
/// (m, tau, samples, seed). When a path is set, records persist as
/// "m,tau,samples,seed,value" text lines; identical keys always map to
/// identical values, so concurrent rewrites are benign.
class MomentCache {
public:
    struct Key {
        int m;
        int tau;
        std::int64_t samples;
        std::uint64_t seed;
        auto operator<=>(const Key&) const = default;
    };

    static MomentCache& instance();

    /// Enable persistence at `path` (loads existing records immediately);
    /// an empty path disables persistence.
    void set_path(const std::filesystem::path& path);
    const std::filesystem::path& path() const { return path_; }

    std::optional<double> lookup(const Key& key) const;
    void store(const Key& key, double value);
    void clear();

private:
    mutable std::mutex mu_;
    std::map<Key, double> entries_;
    std::filesystem::path path_;
};

}  // namespace mimocap
