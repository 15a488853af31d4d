#include "symdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace symdyn {

bool ProjPointFloat::normalize(double underflow) {
    double n2 = 0.0;
    for (const auto& z : c) n2 += std::norm(z);
    double n = std::sqrt(n2);
    if (!(n >= underflow)) return false;
    for (auto& z : c) z /= n;
    return true;
}

ProjPointFloat ProjPointFloat::from_exact(const ProjPointExact& p) {
    ProjPointFloat out;
    for (const Rational& r : p.rationals()) out.c.push_back({r.to_double(), 0.0});
    out.normalize();
    return out;
}

double fs_distance(const ProjPointFloat& a, const ProjPointFloat& b) {
    // Lagrange form of 1 - |<a,b>|^2 for unit vectors: the wedge norm
    // sum_{i<j} |a_i b_j - a_j b_i|^2. Unlike the inner-product form it has
    // no catastrophic cancellation near coincident points.
    double v = 0.0;
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = i + 1; j < a.c.size(); ++j)
            v += std::norm(a.c[i] * b.c[j] - a.c[j] * b.c[i]);
    return std::sqrt(std::min(1.0, v));
}

std::vector<ProjPointExact> attractor_points_exact(int n) {
    std::vector<ProjPointExact> out;
    int kmax = (n - 1 + 1) / 2;  // ceil((n-1)/2): one seed per distinct orbit
    for (int k = 1; k <= kmax; ++k) {
        std::vector<long> seed(n - 1, 0);
        for (int i = 0; i < k; ++i) seed[i] = 1;
        for (const ProjPointExact& p : orbit(ProjPointExact::from_ints(seed), n))
            out.push_back(p);
    }
    return out;
}

std::vector<Attractor> attractor_points(int n) {
    std::vector<Attractor> out;
    int kmax = (n - 1 + 1) / 2;
    int id = 0;
    for (int k = 1; k <= kmax; ++k) {
        std::vector<long> seed(n - 1, 0);
        for (int i = 0; i < k; ++i) seed[i] = 1;
        auto orb = orbit(ProjPointExact::from_ints(seed), n);
        for (size_t j = 0; j < orb.size(); ++j) {
            Attractor a;
            a.id = id++;
            a.orbit = k - 1;
            a.point = int(j);
            a.pos = ProjPointFloat::from_exact(orb[j]);
            out.push_back(a);
        }
    }
    return out;
}

bool step(const FloatMap& map, ProjPointFloat& x, double underflow) {
    std::vector<std::complex<double>> out(map.dim);
    map.eval(x.c.data(), out.data());
    ProjPointFloat y{std::move(out)};
    if (!y.normalize(underflow)) return false;
    x = std::move(y);
    return true;
}

namespace {

// Nearest attractor; ties resolved by list order (lowest orbit, then point).
std::pair<int, double> nearest(const ProjPointFloat& x,
                               const std::vector<Attractor>& as) {
    int best = -1;
    double bd = 2.0;
    for (const Attractor& a : as) {
        double d = fs_distance(x, a.pos);
        if (d < bd) {
            bd = d;
            best = a.id;
        }
    }
    return {best, bd};
}

}  // namespace

BasinResult iterate(const FloatMap& map, ProjPointFloat start,
                    const std::vector<Attractor>& attractors,
                    const IterateParams& params) {
    BasinResult res;
    if (!start.normalize(params.underflow)) {
        res.status = BasinStatus::underflow;
        return res;
    }
    int it = 0;
    while (it <= params.max_iter) {
        auto [cand, dist] = nearest(start, attractors);
        res.final_distance = dist;
        res.iterations = it;
        if (cand >= 0 && dist < params.eps) {
            // Confirmation window: stay near the candidate.
            ProjPointFloat probe = start;
            bool confirmed = true;
            int used = 0;
            for (int c = 0; c < params.confirm; ++c) {
                if (!step(map, probe, params.underflow)) {
                    res.status = BasinStatus::underflow;
                    res.iterations = it + used;
                    return res;
                }
                ++used;
                if (!(fs_distance(probe, attractors[cand].pos) <
                      params.confirm_factor * params.eps)) {
                    confirmed = false;
                    break;
                }
            }
            if (confirmed) {
                res.status = BasinStatus::resolved;
                res.attractor = cand;
                res.orbit = attractors[cand].orbit;
                res.iterations = it;
                res.final_distance = dist;
                return res;
            }
            // False capture near a basin boundary: resume from the probe.
            start = probe;
            it += used;
            continue;
        }
        if (it == params.max_iter) break;
        if (!step(map, start, params.underflow)) {
            res.status = BasinStatus::underflow;
            return res;
        }
        ++it;
    }
    res.status = BasinStatus::unresolved;
    return res;
}

std::uint64_t SplitMix64::next() {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::u01() {
    return (double(next() >> 11) + 0.5) * 0x1.0p-53;
}

SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t i) {
    // Decorrelate the per-sample state with one splitmix transition.
    SplitMix64 outer(seed + i * 0x9E3779B97F4A7C15ULL);
    return SplitMix64(outer.next());
}

ProjPointFloat random_proj_point(int dim, SplitMix64& rng) {
    ProjPointFloat p;
    p.c.resize(dim);
    for (int i = 0; i < dim; ++i) {
        // Box-Muller: one Gaussian pair per complex coordinate.
        double u1 = rng.u01(), u2 = rng.u01();
        double r = std::sqrt(-2.0 * std::log(u1));
        p.c[i] = {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }
    p.normalize();
    return p;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SYMDYN_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

CoverageStat coverage_stat(int n, int samples, std::uint64_t seed, int max_iter,
                           double eps, int threads) {
    FloatMap map = compile_float(build_map(n));
    std::vector<Attractor> as = attractor_points(n);
    int orbits = as.empty() ? 0 : as.back().orbit + 1;

    IterateParams params;
    params.max_iter = max_iter;
    params.eps = eps;

    std::vector<BasinResult> results(samples);
    int nthreads = std::max(1, std::min(resolve_threads(threads), samples));
    auto worker = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            SplitMix64 rng = sample_stream(seed, std::uint64_t(i));
            ProjPointFloat x = random_proj_point(map.dim, rng);
            results[i] = iterate(map, x, as, params);
        }
    };
    if (nthreads == 1) {
        worker(0, samples);
    } else {
        std::vector<std::thread> pool;
        int chunk = (samples + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            int lo = t * chunk, hi = std::min(samples, lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    CoverageStat st;
    st.n = n;
    st.samples = samples;
    st.orbit_histogram.assign(orbits, 0);
    long iter_sum = 0;
    for (const BasinResult& r : results) {
        if (r.status == BasinStatus::resolved) {
            ++st.resolved;
            ++st.orbit_histogram[r.orbit];
            iter_sum += r.iterations;
            st.max_iterations = std::max(st.max_iterations, r.iterations);
        } else if (r.status == BasinStatus::underflow) {
            ++st.underflow;
        } else {
            ++st.unresolved;
        }
    }
    st.resolved_fraction = samples ? double(st.resolved) / samples : 0.0;
    st.mean_iterations = st.resolved ? double(iter_sum) / st.resolved : 0.0;
    return st;
}

}  // namespace symdyn
