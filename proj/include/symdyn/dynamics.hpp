// Floating-point projective iteration: unit-norm dynamics on CP^{d-1},
// basin classification against the superattracting orbits, and seeded
// coverage statistics with thread-count-independent reproducibility.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "symdyn/group.hpp"
#include "symdyn/mapfamily.hpp"

namespace symdyn {

struct ProjPointFloat {
    std::vector<std::complex<double>> c;

    // Scale to Euclidean norm 1. Returns false on numerical underflow.
    bool normalize(double underflow = 1e-300);
    static ProjPointFloat from_exact(const ProjPointExact& p);
};

// Chordal distance sqrt(1 - |<a,b>|^2) between unit representatives.
double fs_distance(const ProjPointFloat& a, const ProjPointFloat& b);

struct Attractor {
    int id = 0;        // index in the full attractor list
    int orbit = 0;     // 0-based orbit index
    int point = 0;     // index within the orbit
    ProjPointFloat pos;
};

// Float images of every point of every distinct superattracting orbit,
// ordered by orbit then by canonical point order. The exact points (same
// order) are available separately for equivariance bookkeeping.
std::vector<Attractor> attractor_points(int n);
std::vector<ProjPointExact> attractor_points_exact(int n);

// One application of the compiled map followed by renormalization.
// Returns false on underflow (the point is left untouched).
bool step(const FloatMap& map, ProjPointFloat& x, double underflow = 1e-300);

struct IterateParams {
    int max_iter = 500;
    double eps = 1e-8;          // capture tolerance
    int confirm = 5;            // confirmation window length
    double confirm_factor = 10.0;
    double underflow = 1e-300;
};

enum class BasinStatus { resolved, unresolved, underflow };

struct BasinResult {
    BasinStatus status = BasinStatus::unresolved;
    int attractor = -1;  // id into the attractor list when resolved
    int orbit = -1;
    int iterations = 0;
    double final_distance = 1.0;
};

// Classify a start point: iterate until some attractor is within eps
// (checked before the first application, so exact attractor starts resolve
// at iteration 0), then confirm with `confirm` further iterations staying
// within confirm_factor * eps. Ties go to the lowest orbit id, then the
// lowest point id. Underflow of the image vector aborts with a diagnostic
// status.
BasinResult iterate(const FloatMap& map, ProjPointFloat start,
                    const std::vector<Attractor>& attractors,
                    const IterateParams& params = {});

// Counter-based splitmix64 stream; sample i of seed s is independent of
// thread layout.
struct SplitMix64 {
    std::uint64_t s = 0;
    explicit SplitMix64(std::uint64_t state) : s(state) {}
    std::uint64_t next();
    // Uniform in the open interval (0, 1).
    double u01();
};

// The i-th per-sample generator for a given seed.
SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t i);

// Unit vector with independent complex-Gaussian coordinates (the unitarily
// invariant distribution on the projective space).
ProjPointFloat random_proj_point(int dim, SplitMix64& rng);

struct CoverageStat {
    int n = 0;
    int samples = 0;
    int resolved = 0;
    int unresolved = 0;
    int underflow = 0;
    std::vector<long> orbit_histogram;
    double resolved_fraction = 0.0;
    double mean_iterations = 0.0;  // over resolved samples
    int max_iterations = 0;
};

// Deterministic for a fixed seed, independent of the thread count
// (threads = 0 means: use SYMDYN_THREADS or the hardware concurrency).
CoverageStat coverage_stat(int n, int samples, std::uint64_t seed,
                           int max_iter = 500, double eps = 1e-8,
                           int threads = 0);

// Thread count resolution used by coverage and rendering.
int resolve_threads(int requested);

}  // namespace symdyn
